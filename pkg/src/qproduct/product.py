"""Kronecker product of a classical parity check with a CSS code.

Builds the product parity check H_C (x) H_Q, extracts product syndromes
Xi = H_Q eps H_C^T, classifies error patterns, enumerates normalizer
generators, constructs the syndrome lookup table, and channel-encodes
measured syndromes with a two-dimensional product code.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field

from . import classical, gf2, quantum
from .classical import ClassicalCode
from .gf2 import BitMatrix, GF2Error
from .quantum import CssCode

TABLE_SIZE_GUARD = 10 ** 8


@dataclass(frozen=True)
class ProductCode:
    """A (ClassicalCode, CssCode) pair with correction radii.

    ``hc_mode`` selects the classical matrix used as H_C:
      * "full": H_C = c.H, so L = c.n logical qubits;
      * "pt":   H_C = P^T of a systematic code, so L = c.k and the rows
        of Xi are themselves parity parts of codewords — the layout that
        tolerates syndrome measurement noise.
    """

    c: ClassicalCode
    q: CssCode
    hc_mode: str = "full"
    t_c: int = -1  # -1 means "use the classical code's radius"
    t_q: int = -1
    t_src: int = 0

    def __post_init__(self):
        if self.hc_mode not in ("full", "pt"):
            raise GF2Error(f"hc_mode must be 'full' or 'pt', got {self.hc_mode!r}")
        if self.hc_mode == "pt" and not self.c.is_systematic():
            raise GF2Error("pt mode requires a systematic classical code")
        if self.t_c < 0:
            object.__setattr__(self, "t_c", self.c.t)
        if self.t_q < 0:
            object.__setattr__(self, "t_q", self.q.t)
        if self.c.d and self.q.d and self.c.d < self.q.d:
            raise GF2Error(
                f"classical distance {self.c.d} < quantum distance {self.q.d}"
            )
        if not 0 <= self.t_src <= self.t_c:
            raise GF2Error(f"t_src={self.t_src} outside [0, t_c={self.t_c}]")

    @property
    def h_c(self) -> BitMatrix:
        return self.c.pt if self.hc_mode == "pt" else self.c.H

    @property
    def L(self) -> int:
        """Logical-qubit block length (columns of H_C)."""
        return self.h_c.cols

    @property
    def R(self) -> int:
        """Classical parity rows (rows of H_C)."""
        return self.h_c.rows

    @property
    def N(self) -> int:
        """Physical qubits in the block."""
        return self.q.n * self.L

    def key_bits(self, error_type: str = "X") -> int:
        return self.q.check_matrix(error_type).rows * self.R


@dataclass(frozen=True)
class ErrorPattern:
    """n_Q x L error pattern, one column per logical qubit."""

    matrix: BitMatrix
    error_type: str = "X"

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def L(self) -> int:
        return self.matrix.cols

    def column_weights(self) -> list[int]:
        return self.matrix.transpose().row_weights()

    def colwt(self) -> int:
        """Number of logical qubits hit (nonzero columns)."""
        return sum(1 for w in self.column_weights() if w)

    def packed(self) -> int:
        """vec() packing: bit L*n_q + q holds entry (q, L)."""
        return gf2.vec(self.matrix).row_data[0]

    @classmethod
    def from_packed(cls, value: int, n: int, L: int, error_type: str = "X") -> "ErrorPattern":
        return cls(gf2.unvec(BitMatrix([value], n * L), n, L), error_type)

    def column(self, idx: int) -> int:
        """Column idx as a packed n-bit integer."""
        return (self.packed() >> (idx * self.n)) & ((1 << self.n) - 1)


@dataclass(frozen=True)
class ProductSyndrome:
    """Xi = H_Q eps H_C^T plus its flattened form vec(Xi^T).

    The flattened key is stabilizer-major: bits [i*R, (i+1)*R) hold row i
    of Xi, i.e. the classical syndrome measured against stabilizer i.
    """

    matrix: BitMatrix  # stabilizer rows x R

    @property
    def key(self) -> int:
        r = self.matrix.cols
        acc = 0
        for i, row in enumerate(self.matrix.row_data):
            acc |= row << (i * r)
        return acc

    @property
    def flattened(self) -> BitMatrix:
        return BitMatrix([self.key], self.matrix.rows * self.matrix.cols)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    @classmethod
    def from_key(cls, key: int, stab_rows: int, r: int) -> "ProductSyndrome":
        mask = (1 << r) - 1
        return cls(BitMatrix([(key >> (i * r)) & mask for i in range(stab_rows)], r))


def product_parity_check(pc: ProductCode, error_type: str = "X") -> BitMatrix:
    """H_C (x) H_Q for the requested error type."""
    return gf2.kron(pc.h_c, pc.q.check_matrix(error_type))


def extract_syndrome(pc: ProductCode, e: ErrorPattern) -> ProductSyndrome:
    """Xi = H_Q eps H_C^T; equals the reshaped (H_C (x) H_Q) vec(eps)."""
    if (e.n, e.L) != (pc.q.n, pc.L):
        raise GF2Error(
            f"pattern shape {e.n}x{e.L} does not match product {pc.q.n}x{pc.L}"
        )
    hq = pc.q.check_matrix(e.error_type)
    xi = gf2.mul(gf2.mul(hq, e.matrix), pc.h_c.transpose())
    return ProductSyndrome(xi)


def in_class_E(pc: ProductCode, e: ErrorPattern) -> bool:
    """Uniquely decodable class: per-column weight <= t_Q, <= t_C columns hit."""
    weights = e.column_weights()
    return (max(weights, default=0) <= pc.t_q
            and sum(1 for w in weights if w) <= pc.t_c)


def in_class_D(pc: ProductCode, e: ErrorPattern) -> bool:
    """Detectable/localizable class: per-column weight < d_Q, <= t_C columns."""
    weights = e.column_weights()
    return (max(weights, default=0) < pc.q.d
            and sum(1 for w in weights if w) <= pc.t_c)


def is_normalizer_element(pc: ProductCode, e: ErrorPattern) -> bool:
    """True iff the pattern commutes with every product stabilizer (Xi = 0)."""
    return extract_syndrome(pc, e).is_zero()


def normalizer_generators(pc: ProductCode, error_type: str = "X") -> list[ErrorPattern]:
    """Column generators e_l (x) eta and row generators g (x) E_q.

    eta ranges over the quantum code's same-type stabilizers and logical
    operators; g over a basis of the classical code ker(H_C); E_q over
    single-qubit errors.  Every generator has zero product syndrome.
    """
    q = pc.q
    etas = [op.x if error_type == "X" else op.z
            for op in quantum.normalizer_generators(q, error_type)]
    gens = []
    for ell in range(pc.L):
        for eta in etas:
            cols = [0] * pc.L
            cols[ell] = eta
            gens.append(_pattern_from_columns(cols, q.n, error_type))
    codeword_basis = gf2.nullspace(pc.h_c)
    for m in range(codeword_basis.rows):
        g = codeword_basis.row_data[m]
        for qi in range(q.n):
            cols = [(1 << qi) if (g >> ell) & 1 else 0 for ell in range(pc.L)]
            gens.append(_pattern_from_columns(cols, q.n, error_type))
    return gens


def _pattern_from_columns(cols: list[int], n: int, error_type: str) -> ErrorPattern:
    packed = 0
    for ell, c in enumerate(cols):
        packed |= c << (ell * n)
    return ErrorPattern.from_packed(packed, n, len(cols), error_type)


def class_E_size(pc: ProductCode, max_cols: int | None = None) -> int:
    """Number of patterns (including zero) the lookup table will hold."""
    n = pc.q.n
    if max_cols is None:
        max_cols = pc.t_c
    per_col = sum(math.comb(n, w) for w in range(1, pc.t_q + 1))
    return sum(math.comb(pc.L, c) * per_col ** c for c in range(max_cols + 1))


@dataclass
class LookupTable:
    """Flattened product syndrome -> packed correction pattern.

    Keys and values are the integer packings of ProductSyndrome.key and
    ErrorPattern.packed().  ``bk_index`` is filled in lazily by the
    decoder module for nearest-neighbor queries.
    """

    pc: ProductCode
    error_type: str
    key_bits: int
    entries: dict[int, int]
    max_cols: int = -1  # colwt cap the table was built with (-1: pc.t_c)
    bk_index: object = field(default=None, repr=False, compare=False)

    def correction(self, key: int) -> ErrorPattern | None:
        value = self.entries.get(key)
        if value is None:
            return None
        return ErrorPattern.from_packed(value, self.pc.q.n, self.pc.L, self.error_type)


def build_lookup_table(pc: ProductCode, error_type: str = "X",
                       max_cols: int | None = None) -> LookupTable:
    """Enumerate the uniquely decodable class and key it by syndrome.

    Patterns sharing a syndrome must differ column-wise by quantum
    stabilizer elements (degeneracy); any other collision aborts with the
    two patterns and the shared key.  Enumeration order is by number of
    columns hit, then column combination, then per-column pattern, so the
    stored correction is the first-enumerated representative.

    ``max_cols`` caps the number of columns hit (default t_C).  Noisy
    syndrome decoding passes t_src here, so the keys keep the pairwise
    separation d_C - 2 t_src that nearest-neighbor queries rely on.
    """
    if max_cols is None:
        max_cols = pc.t_c
    size = class_E_size(pc, max_cols)
    if size > TABLE_SIZE_GUARD:
        raise GF2Error(
            f"lookup table would hold {size} entries (limit {TABLE_SIZE_GUARD})"
        )
    q = pc.q
    n = q.n
    check = q.check_matrix(error_type)
    stab_space = quantum._rowspace_set(q.stabilizer_matrix(error_type))
    r = pc.R
    hc_cols = [gf2.bits_to_int([pc.h_c.get(i, ell) for i in range(r)])
               for ell in range(pc.L)]
    col_syn = [gf2.bits_to_int([check.get(i, j) for i in range(check.rows)])
               for j in range(n)]

    # per-column patterns of weight 1..t_q with their key contribution factor
    col_patterns: list[tuple[int, int]] = []  # (pattern bits, quantum syndrome)
    for w in range(1, pc.t_q + 1):
        for supp in itertools.combinations(range(n), w):
            pat = syn = 0
            for i in supp:
                pat |= 1 << i
                syn ^= col_syn[i]
            col_patterns.append((pat, syn))

    def key_contrib(ell: int, qsyn: int) -> int:
        acc = 0
        s = qsyn
        while s:
            low = s & -s
            acc |= hc_cols[ell] << ((low.bit_length() - 1) * r)
            s ^= low
        return acc

    contribs = [[key_contrib(ell, syn) for _, syn in col_patterns]
                for ell in range(pc.L)]

    entries: dict[int, int] = {0: 0}
    npat = len(col_patterns)
    for c in range(1, max_cols + 1):
        for cols in itertools.combinations(range(pc.L), c):
            for choice in itertools.product(range(npat), repeat=c):
                packed = 0
                key = 0
                for ell, pi in zip(cols, choice):
                    packed |= col_patterns[pi][0] << (ell * n)
                    key ^= contribs[ell][pi]
                if key in entries:
                    other = entries[key]
                    diff = other ^ packed
                    mask = (1 << n) - 1
                    degenerate = all(
                        ((diff >> (ell * n)) & mask) in stab_space
                        for ell in range(pc.L)
                    )
                    if not degenerate:
                        raise GF2Error(
                            f"syndrome conflict: patterns {other:#x} and "
                            f"{packed:#x} share key {key:#x} but are not "
                            f"stabilizer-equivalent"
                        )
                else:
                    entries[key] = packed
    return LookupTable(pc=pc, error_type=error_type,
                       key_bits=pc.key_bits(error_type), entries=entries,
                       max_cols=max_cols)


def stabilizer_equivalent(pc: ProductCode, a: ErrorPattern, b: ErrorPattern) -> bool:
    """True when a and b differ column-wise by quantum stabilizer elements."""
    stab_space = quantum._rowspace_set(pc.q.stabilizer_matrix(a.error_type))
    diff = a.packed() ^ b.packed()
    n = pc.q.n
    mask = (1 << n) - 1
    return all(((diff >> (ell * n)) & mask) in stab_space for ell in range(pc.L))


# -- lookup-table file format ----------------------------------------------
# Text header, then sorted hex records "key value", one per line; the sort
# makes files diffable and supports binary-search loading.

def save_lookup_table(table: LookupTable, path: str) -> str:
    pc = table.pc
    lines = [
        f"qproduct-lut c={pc.c.kind}:{pc.c.n}:{pc.c.k} q={pc.q.kind} "
        f"mode={pc.hc_mode} type={table.error_type} tc={pc.t_c} tq={pc.t_q} "
        f"mc={table.max_cols} key_bits={table.key_bits} n={pc.q.n} L={pc.L} "
        f"entries={len(table.entries)}"
    ]
    for key in sorted(table.entries):
        lines.append(f"{key:x} {table.entries[key]:x}")
    blob = "\n".join(lines) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(blob)
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def load_lookup_table(path: str, pc: ProductCode) -> LookupTable:
    with open(path, encoding="ascii") as fh:
        header = fh.readline().split()
        if not header or header[0] != "qproduct-lut":
            raise GF2Error(f"{path} is not a lookup-table file")
        fields = dict(tok.split("=", 1) for tok in header[1:])
        entries = {}
        for line in fh:
            k, v = line.split()
            entries[int(k, 16)] = int(v, 16)
    if len(entries) != int(fields["entries"]):
        raise GF2Error(
            f"{path}: expected {fields['entries']} entries, found {len(entries)}"
        )
    expected_bits = pc.key_bits(fields["type"])
    if int(fields["key_bits"]) != expected_bits:
        raise GF2Error(
            f"{path}: key length {fields['key_bits']} does not match "
            f"product code ({expected_bits})"
        )
    return LookupTable(pc=pc, error_type=fields["type"],
                       key_bits=expected_bits, entries=entries,
                       max_cols=int(fields.get("mc", -1)))


# -- channel coding of the measured syndrome --------------------------------

def channel_encode(pc: ProductCode, g1: ClassicalCode, g2: ClassicalCode,
                   error_type: str = "X") -> BitMatrix:
    """Channel-coded parity check G1^T H_C (x) G2^T H_Q.

    g1 protects the R-bit rows of Xi and g2 the per-stabilizer columns;
    measuring the rows of the result yields an already-encoded syndrome.
    """
    hq = pc.q.check_matrix(error_type)
    if g1.k != pc.R:
        raise GF2Error(f"g1.k={g1.k} must equal R={pc.R}")
    if g2.k != hq.rows:
        raise GF2Error(f"g2.k={g2.k} must equal stabilizer count {hq.rows}")
    left = gf2.mul(g1.G.transpose(), pc.h_c)
    right = gf2.mul(g2.G.transpose(), hq)
    return gf2.kron(left, right)


def channel_block(xi: ProductSyndrome, g1: ClassicalCode, g2: ClassicalCode) -> BitMatrix:
    """Two-dimensional systematic layout of a measured syndrome.

    Returns the n2 x n1 array [[P2^T Xi P1, P2^T Xi], [Xi P1, Xi]]: data
    block bottom-right, row/column parities alongside, and the corner
    block holding parities of parities (the check-on-checks).
    """
    m = xi.matrix
    if g1.k != m.cols:
        raise GF2Error(f"g1.k={g1.k} must equal Xi columns {m.cols}")
    if g2.k != m.rows:
        raise GF2Error(f"g2.k={g2.k} must equal Xi rows {m.rows}")
    p1 = g1.P  # k1 x (n1-k1)
    p2 = g2.P
    row_par = gf2.mul(m, p1)                     # k2 x (n1-k1)
    col_par = gf2.mul(p2.transpose(), m)         # (n2-k2) x k1
    corner = gf2.mul(p2.transpose(), row_par)    # (n2-k2) x (n1-k1)
    top = corner.hstack(col_par)
    bottom = row_par.hstack(m)
    return top.vstack(bottom)
