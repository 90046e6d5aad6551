"""CSS code constructors, syndromes, normalizers, coset tables."""

import itertools

import pytest

from qproduct import classical, gf2, quantum
from qproduct.gf2 import BitMatrix, GF2Error
from qproduct.quantum import PauliOp, pauli_from_string


ALL_CODES = [quantum.rep3, quantum.steane, quantum.color17, quantum.golay_css]


@pytest.mark.parametrize("ctor", ALL_CODES)
def test_css_validity_and_rank(ctor):
    q = ctor()
    if q.hx.rows and q.hz.rows:
        assert gf2.mul(q.hx, q.hz.transpose()).is_zero()
    if q.kind == "rep3":
        assert gf2.rank(q.hz) == q.n - q.k
    else:
        assert gf2.rank(q.hx) + gf2.rank(q.hz) == q.n - q.k


def test_rep3_matrices():
    q = quantum.rep3()
    assert q.hz.to_lists() == [[1, 1, 0], [1, 0, 1]]
    assert q.hx.rows == 0


def test_steane_first_row():
    q = quantum.steane()
    assert q.hx.row_bits(0) == [1, 0, 0, 1, 0, 1, 1]
    assert q.hx == q.hz


def test_color17_row_weights():
    q = quantum.color17()
    weights = q.hx.row_weights()
    assert sorted(weights) == [4] * 7 + [8]
    assert q.hx.rows == 8 and q.hx.cols == 17


def test_golay_css_parameters():
    q = quantum.golay_css()
    assert (q.n, q.k, q.d) == (23, 1, 7)
    assert q.hx.rows == 11  # 2*12 - 23 = 1 logical qubit


@pytest.mark.parametrize("ctor", ALL_CODES)
def test_distance_by_bounded_weight_search(ctor):
    """No nondetectable same-type pattern of weight < d exists, and one of
    weight exactly d does (kernel of the check minus the stabilizer span)."""
    q = ctor()
    check = q.check_matrix("X")
    stab = quantum._rowspace_set(q.stabilizer_matrix("X"))
    col_syn = [gf2.bits_to_int([check.get(i, j) for i in range(check.rows)])
               for j in range(q.n)]
    limit = min(q.d, 4)  # golay's weight-7 witness is checked via its logical
    for w in range(1, limit):
        for supp in itertools.combinations(range(q.n), w):
            syn = 0
            pat = 0
            for i in supp:
                syn ^= col_syn[i]
                pat |= 1 << i
            assert not (syn == 0 and pat not in stab)
    logical = quantum.logical_matrix(q, "X")
    coset_min = min((row ^ s).bit_count()
                    for row in logical.row_data for s in stab)
    assert coset_min == q.d


def test_q_syndrome_identity_zero():
    q = quantum.steane()
    sx, sz = quantum.q_syndrome(q, PauliOp(n=7))
    assert sx.is_zero() and sz.is_zero()


def test_q_syndrome_steane_x6():
    q = quantum.steane()
    sx, _ = quantum.q_syndrome(q, pauli_from_string("X6", 7))
    assert sx.row_bits(0) == [1, 0, 1]


def test_q_syndrome_color17_x1x3_row_reduced():
    q = quantum.color17()
    rr = q.row_reduced("X")
    e = pauli_from_string("X1X3", 17)
    syn = gf2.mul(rr, BitMatrix([e.x], 17).transpose()).transpose()
    assert "".join(map(str, syn.row_bits(0))) == "10100000"


def test_q_syndrome_length_mismatch():
    with pytest.raises(GF2Error, match="length"):
        quantum.q_syndrome(quantum.steane(), PauliOp(n=5))


def test_weight_le_t_detectable():
    for ctor in ALL_CODES:
        q = ctor()
        check = q.check_matrix("X")
        for supp in itertools.combinations(range(q.n), 1):
            v = BitMatrix([sum(1 << i for i in supp)], q.n)
            assert not gf2.mul(check, v.transpose()).is_zero()


def test_steane_normalizer_includes_table_generators():
    q = quantum.steane()
    gens = {g.x for g in quantum.normalizer_generators(q, "X")}
    for row in q.hx.row_data:
        assert row in gens
    # the weight-3 generator X2X3X5 commutes with the code yet is not a
    # stabilizer, and differs from the recorded logical by a stabilizer
    op = pauli_from_string("X2X3X5", 7)
    sx, sz = quantum.q_syndrome(q, op)
    assert sx.is_zero() and sz.is_zero()
    stab = quantum._rowspace_set(q.hx)
    assert op.x not in stab
    logical = quantum.logical_matrix(q, "X").row_data[0]
    assert (op.x ^ logical) in stab


def test_color17_normalizer_weight_d_logical():
    q = quantum.color17()
    gens = {g.x for g in quantum.normalizer_generators(q, "X")}
    assert quantum.pauli_from_string("X1X2X5X9X13", 17).x in gens


@pytest.mark.parametrize("ctor", ALL_CODES)
def test_normalizer_generators_zero_syndrome(ctor):
    q = ctor()
    for etype in ("X", "Z"):
        for op in quantum.normalizer_generators(q, etype):
            sx, sz = quantum.q_syndrome(q, op)
            assert sx.is_zero() and sz.is_zero()


def test_coset_table_color17_counts():
    q = quantum.color17()
    table = quantum.build_coset_table(q, 2)
    assert table.num_patterns == 17 + 17 * 16 // 2  # all weight-1 and 2
    assert len(table.entries) == 115  # degenerate cosets collapse


def test_coset_table_steane_weight1():
    table = quantum.build_coset_table(quantum.steane(), 1)
    assert table.num_patterns == 7 and len(table.entries) == 7


def test_coset_table_degenerate_coset_members():
    q = quantum.color17()
    table = quantum.build_coset_table(q, 2, row_reduced=True)
    key = gf2.bitstring_to_int("10100000")
    members = {str(PauliOp(n=17, x=m)) for m in table.entries[key]}
    assert members == {"X1X3", "X2X4", "X5X6", "X9X10", "X13X14"}
    # the member products are stabilizer elements
    stab = quantum._rowspace_set(q.hx)
    for a, b in itertools.combinations(table.entries[key], 2):
        assert (a ^ b) in stab


def test_coset_table_corrections_return_to_codespace():
    q = quantum.steane()
    table = quantum.build_coset_table(q, 1)
    stab = quantum._rowspace_set(q.hx)
    for key, members in table.entries.items():
        rep = table.representative(key)
        for m in members:
            assert (rep ^ m) in stab


def test_coset_table_conflict_detected():
    # pushing steane past its radius creates a genuine weight-2 conflict
    with pytest.raises(GF2Error, match="conflict"):
        quantum.build_coset_table(quantum.steane(), 2)


def test_coset_table_size_guard():
    q = quantum.golay_css()
    with pytest.raises(GF2Error, match="too large"):
        quantum.build_coset_table(q, 4)


def test_pauli_string_roundtrip():
    op = pauli_from_string("X1Z3Y5", 7)
    assert str(op) == "X1Z3Y5"
    assert op.weight == 3
    with pytest.raises(GF2Error):
        pauli_from_string("X9", 7)
    with pytest.raises(GF2Error):
        pauli_from_string("Q1", 7)
