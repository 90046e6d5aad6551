"""Product parity checks, syndrome extraction, class membership, tables."""

import itertools
import random

import pytest

from qproduct import classical, gf2, product, quantum
from qproduct.gf2 import BitMatrix, GF2Error
from qproduct.product import ErrorPattern, ProductCode, ProductSyndrome


def desk_instance():
    """[7,4,3] Hamming parity-transpose with the 3-qubit repetition code."""
    return ProductCode(classical.hamming(3), quantum.rep3(), hc_mode="pt")


def pattern(pc, bits):
    return ErrorPattern.from_packed(bits, pc.q.n, pc.L)


def test_dimensions_pt_and_full():
    pc = desk_instance()
    assert (pc.L, pc.R, pc.N) == (4, 3, 12)
    assert pc.key_bits("X") == 6
    full = ProductCode(classical.hamming(3), quantum.rep3())
    assert (full.L, full.R, full.N) == (7, 3, 21)


def test_product_parity_check_is_kron():
    pc = desk_instance()
    h = product.product_parity_check(pc, "X")
    assert h == gf2.kron(pc.c.pt, pc.q.hz)
    assert (h.rows, h.cols) == (6, 12)


def test_distance_ordering_enforced():
    with pytest.raises(GF2Error, match="distance"):
        ProductCode(classical.hamming(3), quantum.golay_css())


def test_t_src_bounds():
    with pytest.raises(GF2Error, match="t_src"):
        ProductCode(classical.bch(4, 3), quantum.steane(), t_src=4)


@pytest.mark.parametrize("seed", range(10))
def test_extract_syndrome_matches_flattened_product(seed):
    """Xi = H_Q eps H_C^T agrees with (H_C kron H_Q) vec(eps) bit for bit."""
    pc = desk_instance()
    rng = random.Random(seed)
    bits = rng.randrange(1 << pc.N)
    e = pattern(pc, bits)
    xi = product.extract_syndrome(pc, e)
    h = product.product_parity_check(pc, "X")
    flat = gf2.mul(h, BitMatrix([bits], pc.N).transpose()).transpose()
    assert gf2.vec(xi.matrix) == flat
    # the lookup key uses the transposed (stabilizer-major) packing
    assert xi.flattened == gf2.vec(xi.matrix.transpose())


def test_extract_syndrome_shape_check():
    pc = desk_instance()
    with pytest.raises(GF2Error, match="shape"):
        product.extract_syndrome(pc, ErrorPattern(BitMatrix.zeros(3, 5)))


def test_syndrome_key_layout_and_roundtrip():
    pc = desk_instance()
    xi = product.extract_syndrome(pc, pattern(pc, 0b10))  # qubit 2
    key = xi.key
    # bits [i*R, (i+1)*R) of the key hold row i of Xi
    for i in range(xi.matrix.rows):
        assert (key >> (i * pc.R)) & ((1 << pc.R) - 1) == xi.matrix.row_data[i]
    back = ProductSyndrome.from_key(key, xi.matrix.rows, pc.R)
    assert back.matrix == xi.matrix


def test_class_membership():
    pc = desk_instance()
    assert product.in_class_E(pc, pattern(pc, 0))
    assert product.in_class_E(pc, pattern(pc, 0b10))       # one weight-1 column
    assert not product.in_class_E(pc, pattern(pc, 0b11))   # weight-2 column
    assert not product.in_class_E(pc, pattern(pc, 0b1001))  # two columns, t_c=1
    # weight-2 columns stay below d_Q = 3, so they are still localizable
    assert product.in_class_D(pc, pattern(pc, 0b11))
    assert not product.in_class_D(pc, pattern(pc, 0b111))  # weight 3 = d_Q


def test_column_helpers():
    pc = desk_instance()
    e = pattern(pc, 0b101 << 3)  # qubits 4 and 6 (column 1)
    assert e.column_weights() == [0, 2, 0, 0]
    assert e.colwt() == 1
    assert e.column(1) == 0b101
    assert ErrorPattern.from_packed(e.packed(), 3, 4).matrix == e.matrix


@pytest.mark.parametrize("make", [
    desk_instance,
    lambda: ProductCode(classical.hamming(3), quantum.rep3()),
    lambda: ProductCode(classical.bch(4, 3), quantum.steane(), t_c=2),
])
def test_normalizer_generators_have_zero_syndrome(make):
    pc = make()
    gens = product.normalizer_generators(pc, "X")
    assert gens
    for g in gens:
        assert product.is_normalizer_element(pc, g)


def test_normalizer_row_generator_weight():
    """A weight-3 classical codeword paired with one qubit gives a weight-3
    undetectable pattern in full mode; per-column weight stays at 1."""
    pc = ProductCode(classical.hamming(3), quantum.rep3())
    cw_basis = gf2.nullspace(pc.c.H)
    g = min(cw_basis.row_data, key=int.bit_count)
    assert g.bit_count() == 3
    cols = [(1 << 0) if (g >> ell) & 1 else 0 for ell in range(pc.L)]
    e = product._pattern_from_columns(cols, 3, "X")
    assert product.is_normalizer_element(pc, e)
    assert e.packed().bit_count() == 3
    assert max(e.column_weights()) == 1


def test_lookup_table_desk_instance():
    pc = desk_instance()
    table = product.build_lookup_table(pc)
    # zero plus every single-qubit pattern; all 12 keys distinct
    assert len(table.entries) == 13
    assert product.class_E_size(pc) == 13
    assert table.entries[0] == 0


def test_lookup_table_roundtrips_single_errors():
    pc = desk_instance()
    table = product.build_lookup_table(pc)
    for qubit in range(pc.N):
        e = pattern(pc, 1 << qubit)
        got = table.correction(product.extract_syndrome(pc, e).key)
        assert got is not None and got.packed() == e.packed()


def test_lookup_table_degenerate_alias():
    """Qubit 7 and the pair {1, 10} share a syndrome; their difference is a
    classical-codeword normalizer element, and the table returns qubit 7."""
    pc = desk_instance()
    table = product.build_lookup_table(pc)
    x7 = pattern(pc, 1 << 6)
    alias = pattern(pc, (1 << 0) | (1 << 9))
    k7 = product.extract_syndrome(pc, x7).key
    assert product.extract_syndrome(pc, alias).key == k7
    assert product.is_normalizer_element(pc, pattern(pc, x7.packed() ^ alias.packed()))
    assert table.correction(k7).packed() == x7.packed()


def test_lookup_table_full_steane_bch_count():
    """[15,5,7] x Steane at t_C=2: the whole class keys injectively."""
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), t_c=2)
    table = product.build_lookup_table(pc)
    assert product.class_E_size(pc) == 1 + 15 * 7 + 105 * 49 == 5251
    assert len(table.entries) == 5251  # no degenerate collapse, no conflicts


def test_lookup_table_max_cols_cap():
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), t_c=2, t_src=1)
    table = product.build_lookup_table(pc, max_cols=pc.t_src)
    assert len(table.entries) == 1 + 15 * 7 == 106
    assert table.max_cols == 1


def test_lookup_table_conflict_aborts():
    # pushing t_Q past the Steane radius mixes X7 with X1X2
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), t_c=1, t_q=2)
    with pytest.raises(GF2Error, match="conflict"):
        product.build_lookup_table(pc)


def test_lookup_table_size_guard():
    pc = ProductCode(classical.bch(7, 6), quantum.golay_css())
    with pytest.raises(GF2Error, match="entries"):
        product.build_lookup_table(pc)


def test_save_load_roundtrip(tmp_path):
    pc = desk_instance()
    table = product.build_lookup_table(pc)
    path = str(tmp_path / "desk.lut")
    digest = product.save_lookup_table(table, path)
    assert len(digest) == 64
    loaded = product.load_lookup_table(path, pc)
    assert loaded.entries == table.entries
    assert loaded.error_type == "X" and loaded.key_bits == 6
    assert loaded.max_cols == table.max_cols


def test_load_rejects_wrong_product(tmp_path):
    pc = desk_instance()
    path = str(tmp_path / "desk.lut")
    product.save_lookup_table(product.build_lookup_table(pc), path)
    other = ProductCode(classical.bch(4, 3), quantum.steane(), t_c=2)
    with pytest.raises(GF2Error, match="key length"):
        product.load_lookup_table(path, other)
    with pytest.raises(GF2Error, match="not a lookup-table"):
        (tmp_path / "junk.lut").write_text("garbage\n")
        product.load_lookup_table(str(tmp_path / "junk.lut"), pc)


def test_stabilizer_equivalent():
    pc = ProductCode(classical.bch(4, 3), quantum.steane(), t_c=2)
    a = pattern(pc, 0b0001001)           # X1 X4 in column 0
    b = pattern(pc, 0b0110010)           # X2 X5 X6 ... build from stabilizer
    s = pc.q.hx.row_data[0]              # X1 X4 X6 X7
    b = pattern(pc, a.packed() ^ s)
    assert product.stabilizer_equivalent(pc, a, b)
    assert not product.stabilizer_equivalent(pc, a, pattern(pc, a.packed() ^ 1))


# -- channel coding ----------------------------------------------------------

def channel_setup():
    pc = desk_instance()
    g1 = classical.single_parity_check(pc.R + 1)       # protects rows of Xi
    g2 = classical.single_parity_check(3)              # protects columns
    return pc, g1, g2


def test_channel_encode_shape_and_identity():
    pc, g1, g2 = channel_setup()
    h = product.channel_encode(pc, g1, g2)
    assert (h.rows, h.cols) == (g1.n * g2.n, pc.N)
    rng = random.Random(1)
    for _ in range(10):
        bits = rng.randrange(1 << pc.N)
        e = pattern(pc, bits)
        xi = product.extract_syndrome(pc, e).matrix
        coded = gf2.mul(gf2.mul(g2.G.transpose(), xi), g1.G)
        lhs = gf2.mul(h, BitMatrix([bits], pc.N).transpose()).transpose()
        assert lhs == gf2.vec(coded)


def test_channel_block_rows_and_columns_are_codewords():
    pc, g1, g2 = channel_setup()
    e = pattern(pc, 0b10)
    xi = product.extract_syndrome(pc, e)
    block = product.channel_block(xi, g1, g2)
    assert (block.rows, block.cols) == (g2.n, g1.n)
    for i in range(block.rows):
        assert classical.syndrome(g1, block.row(i)).is_zero()
    bt = block.transpose()
    for j in range(bt.rows):
        assert classical.syndrome(g2, bt.row(j)).is_zero()
    # data block sits bottom-right
    data = block.submatrix(range(g2.n - g2.k, g2.n), range(g1.n - g1.k, g1.n))
    assert data == xi.matrix


def test_channel_encode_dimension_checks():
    pc, g1, g2 = channel_setup()
    with pytest.raises(GF2Error, match="g1.k"):
        product.channel_encode(pc, g2, g2)
    with pytest.raises(GF2Error, match="g2.k"):
        product.channel_encode(pc, g1, g1)
    xi = product.extract_syndrome(pc, pattern(pc, 1))
    with pytest.raises(GF2Error, match="g1.k"):
        product.channel_block(xi, g2, g2)
