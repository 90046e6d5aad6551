"""Classical binary linear block codes.

Constructors for the Hamming, BCH, Golay, repetition and single-parity-check
families, syndrome/standard-array machinery, and an algebraic BCH decoder
(Berlekamp-Massey plus Chien search) over GF(2^m).

All cyclic constructions emit systematic matrices G = [P | I_k] and
H = [I_{n-k} | P^T], so codewords carry the parity part first and the
message last.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import gf2
from .gf2 import BitMatrix, GF2Error

# Standard minimal-weight primitive polynomials, as integer bit masks
# (bit i = coefficient of x^i).  These fix the codeword bit patterns of
# the BCH constructions; the code parameters do not depend on the choice.
PRIMITIVE_POLYS = {
    2: 0b111,              # x^2 + x + 1
    3: 0b1011,             # x^3 + x + 1
    4: 0b10011,            # x^4 + x + 1
    5: 0b100101,           # x^5 + x^2 + 1
    6: 0b1000011,          # x^6 + x + 1
    7: 0b10001001,         # x^7 + x^3 + 1
    8: 0b100011101,        # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,       # x^9 + x^4 + 1
    10: 0b10000001001,     # x^10 + x^3 + 1
}

GOLAY23_GENPOLY = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1


class GaloisField:
    """GF(2^m) with exp/log tables over a fixed primitive polynomial."""

    def __init__(self, m: int, primitive_poly: int | None = None):
        if primitive_poly is None:
            if m not in PRIMITIVE_POLYS:
                raise GF2Error(f"no default primitive polynomial for m={m}")
            primitive_poly = PRIMITIVE_POLYS[m]
        self.m = m
        self.primitive_poly = primitive_poly
        self.order = (1 << m) - 1
        self.exp = [0] * (2 * self.order)
        self.log = [0] * (1 << m)
        x = 1
        for i in range(self.order):
            self.exp[i] = x
            self.log[x] = i
            x <<= 1
            if x >> m:
                x ^= primitive_poly
        if x != 1:
            raise GF2Error(f"polynomial {primitive_poly:#b} is not primitive for m={m}")
        for i in range(self.order, 2 * self.order):
            self.exp[i] = self.exp[i - self.order]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^m)")
        return self.exp[self.order - self.log[a]]

    def pow_alpha(self, e: int) -> int:
        return self.exp[e % self.order]

    def cyclotomic_coset(self, i: int) -> list[int]:
        coset = []
        j = i % self.order
        while j not in coset:
            coset.append(j)
            j = (2 * j) % self.order
        return coset

    def minimal_polynomial(self, i: int) -> int:
        """Minimal polynomial of alpha^i over GF(2), as an integer bit mask."""
        coset = self.cyclotomic_coset(i)
        # product of (x - alpha^j), coefficients in GF(2^m); low index = x^0
        poly = [1]
        for j in coset:
            root = self.pow_alpha(j)
            nxt = [0] * (len(poly) + 1)
            for d, c in enumerate(poly):
                nxt[d + 1] ^= c
                nxt[d] ^= self.mul(c, root)
            poly = nxt
        mask = 0
        for d, c in enumerate(poly):
            if c == 1:
                mask |= 1 << d
            elif c != 0:
                raise GF2Error("minimal polynomial has non-binary coefficient")
        return mask


def _polymul2(a: int, b: int) -> int:
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def _polymod2(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


@dataclass(frozen=True)
class ClassicalCode:
    """[n, k, d] binary linear block code with systematic matrices where possible."""

    n: int
    k: int
    d: int  # design distance; 0 means unknown
    G: BitMatrix
    H: BitMatrix
    kind: str
    gf: GaloisField | None = field(default=None, compare=False, repr=False)
    gen_poly: int = 0
    design_t: int = 0

    @property
    def t(self) -> int:
        return (self.d - 1) // 2 if self.d else self.design_t

    @property
    def r(self) -> int:
        return self.n - self.k

    def is_systematic(self) -> bool:
        """True when G = [P | I_k]."""
        ident = gf2.BitMatrix.identity(self.k)
        tail = self.G.submatrix(range(self.k), range(self.r, self.n))
        return tail == ident

    @property
    def P(self) -> BitMatrix:
        """The k x (n-k) parity block of G = [P | I_k]."""
        if not self.is_systematic():
            raise GF2Error(
                "generator is not in systematic [P | I] form; "
                "use gf2.systematic_form first"
            )
        return self.G.submatrix(range(self.k), range(self.r))

    @property
    def pt(self) -> BitMatrix:
        """P^T, the (n-k) x k parity block used as H_C in noisy-syndrome mode."""
        return self.P.transpose()

    def contains(self, v: BitMatrix) -> bool:
        return gf2.mul(self.H, v.transpose()).is_zero()


def _cyclic_systematic(n: int, genpoly: int, d: int, kind: str,
                       gf: GaloisField | None = None, design_t: int = 0) -> ClassicalCode:
    """Systematic code from a cyclic generator polynomial.

    Row j of G is x^(r+j) + (x^(r+j) mod g): parity bits in coordinates
    0..r-1, message bit at coordinate r+j.
    """
    r = genpoly.bit_length() - 1
    k = n - r
    g_rows = []
    pt_rows = [0] * r  # row i of P^T accumulates bit i of each parity column
    for j in range(k):
        parity = _polymod2(1 << (r + j), genpoly)
        g_rows.append(parity | (1 << (r + j)))
        for i in range(r):
            if (parity >> i) & 1:
                pt_rows[i] |= 1 << j
    G = BitMatrix(g_rows, n)
    h_rows = [(1 << i) | (pt_rows[i] << r) for i in range(r)]
    H = BitMatrix(h_rows, n)
    return ClassicalCode(n=n, k=k, d=d, G=G, H=H, kind=kind, gf=gf,
                         gen_poly=genpoly, design_t=design_t)


def hamming(m: int) -> ClassicalCode:
    """[2^m - 1, 2^m - 1 - m, 3] Hamming code in systematic form."""
    if m < 2:
        raise GF2Error(f"hamming requires m >= 2, got {m}")
    n = (1 << m) - 1
    k = n - m
    if m == 3:
        # Column order fixed by the worked bit-flip example: the P^T columns
        # for logical qubits 1..4 are [1,0,1], [1,1,1], [1,1,0], [0,1,1].
        pt_cols = [(1, 0, 1), (1, 1, 1), (1, 1, 0), (0, 1, 1)]
    else:
        cols = [v for v in range(1, 1 << m) if v.bit_count() >= 2]
        cols.sort()
        pt_cols = [tuple((v >> i) & 1 for i in range(m)) for v in cols]
    pt = BitMatrix.from_rows([[c[i] for c in pt_cols] for i in range(m)], k)
    H = BitMatrix.identity(m).hstack(pt)
    G = pt.transpose().hstack(BitMatrix.identity(k))
    return ClassicalCode(n=n, k=k, d=3, G=G, H=H, kind="hamming")


def bch(m: int, t: int) -> ClassicalCode:
    """Narrow-sense binary BCH code of length 2^m - 1 and design distance 2t+1."""
    n = (1 << m) - 1
    if 2 * t + 1 > n:
        raise GF2Error(f"bch design distance 2*{t}+1 exceeds length {n}")
    gf = GaloisField(m)
    genpoly = 1
    seen: set[int] = set()
    for i in range(1, 2 * t, 2):
        rep = min(gf.cyclotomic_coset(i))
        if rep in seen:
            continue
        seen.add(rep)
        genpoly = _polymul2(genpoly, gf.minimal_polynomial(i))
    if genpoly.bit_length() - 1 >= n:
        raise GF2Error(f"bch t={t} leaves no message bits at length {n}")
    return _cyclic_systematic(n, genpoly, 2 * t + 1, "bch", gf=gf, design_t=t)


def golay23() -> ClassicalCode:
    """[23, 12, 7] binary Golay code."""
    return _cyclic_systematic(23, GOLAY23_GENPOLY, 7, "golay")


def repetition(n: int) -> ClassicalCode:
    """[n, 1, n] repetition code; H rows match the ZZI/ZIZ stabilizer layout."""
    if n < 2:
        raise GF2Error(f"repetition requires n >= 2, got {n}")
    G = BitMatrix([(1 << n) - 1], n)
    H = BitMatrix([1 | (1 << (r + 1)) for r in range(n - 1)], n)
    return ClassicalCode(n=n, k=1, d=n, G=G, H=H, kind="repetition")


def single_parity_check(n: int) -> ClassicalCode:
    """[n, n-1, 2] single-parity-check code."""
    if n < 2:
        raise GF2Error(f"spc requires n >= 2, got {n}")
    H = BitMatrix([(1 << n) - 1], n)
    ones = BitMatrix([1] * (n - 1), 1)
    G = ones.hstack(BitMatrix.identity(n - 1))
    return ClassicalCode(n=n, k=n - 1, d=2, G=G, H=H, kind="spc")


def custom_code(H: BitMatrix, kind: str = "custom") -> ClassicalCode:
    """Code from an arbitrary full-row-rank parity-check matrix.

    Distance is brute forced only when the enumeration is small, else
    recorded as unknown (0).
    """
    r = gf2.rank(H)
    if r != H.rows:
        raise GF2Error(f"parity-check matrix is rank deficient ({r} < {H.rows})")
    G = gf2.nullspace(H)
    k = G.rows
    d = 0
    if k <= 20 or H.rows <= 20:
        d = minimum_distance(G)
    return ClassicalCode(n=H.cols, k=k, d=d, G=G, H=H, kind=kind)


def minimum_distance(G: BitMatrix) -> int:
    """Minimum codeword weight by exhaustive span enumeration (2^k words)."""
    if G.rows == 0:
        return 0
    best = G.cols + 1
    for mask in range(1, 1 << G.rows):
        acc = 0
        mm = mask
        while mm:
            low = mm & -mm
            acc ^= G.row_data[low.bit_length() - 1]
            mm ^= low
        w = acc.bit_count()
        if w and w < best:
            best = w
    return best


def shorten(code: ClassicalCode, columns: list[int]) -> ClassicalCode:
    """Shorten by deleting the given coordinates from H (message positions)."""
    keep = [j for j in range(code.n) if j not in set(columns)]
    H = code.H.submatrix(range(code.H.rows), keep)
    return custom_code(H, kind=f"{code.kind}-shortened")


def syndrome(code: ClassicalCode, v: BitMatrix) -> BitMatrix:
    """H v^T as a 1 x (n-k) row vector."""
    if v.rows != 1 or v.cols != code.n:
        raise GF2Error(f"expected a 1x{code.n} vector, got {v.rows}x{v.cols}")
    return gf2.mul(code.H, v.transpose()).transpose()


def encode(code: ClassicalCode, msg: BitMatrix) -> BitMatrix:
    """Systematic encoding m -> [m P | m]."""
    if msg.rows != 1 or msg.cols != code.k:
        raise GF2Error(f"expected a 1x{code.k} message, got {msg.rows}x{msg.cols}")
    parity = gf2.mul(msg, code.P)
    return parity.hstack(msg)


@dataclass(frozen=True)
class StandardArray:
    """Complete coset-leader table: syndrome (packed int) -> leader (packed int)."""

    code: ClassicalCode
    leaders: dict[int, int]

    def leader(self, syn: BitMatrix) -> BitMatrix:
        key = syn.row_data[0]
        return BitMatrix([self.leaders[key]], self.code.n)


def _vectors_by_weight_lex(n: int, w: int):
    """All weight-w length-n vectors in lexicographic bit-string order.

    Bit-string order means comparing (b_0, b_1, ..., b_{n-1}); the smallest
    weight-w vector has its support packed at the high coordinates.
    """
    for support_ in itertools.combinations(range(n), w):
        yield sum(1 << i for i in support_)


def build_standard_array(code: ClassicalCode, max_size: int = 1 << 24) -> StandardArray:
    """Leader table for all 2^(n-k) syndromes, minimum weight, lex tie-break."""
    total = 1 << code.r
    if total > max_size:
        raise GF2Error(
            f"standard array would need {total} entries (limit {max_size})"
        )
    h_cols = [gf2.mul(code.H, gf2.vector_from_support([j], code.n).transpose())
              for j in range(code.n)]
    col_syn = [gf2.bits_to_int([c.get(i, 0) for i in range(code.r)]) for c in h_cols]
    leaders: dict[int, int] = {0: 0}
    for w in range(1, code.n + 1):
        if len(leaders) == total:
            break
        # lexicographic bit-string order: sort candidate vectors by their
        # bit tuple so the first leader seen per coset is the lex-smallest
        batch: dict[int, int] = {}
        cands = sorted(
            _vectors_by_weight_lex(code.n, w),
            key=lambda v: tuple((v >> i) & 1 for i in range(code.n)),
        )
        for v in cands:
            s = 0
            vv = v
            while vv:
                low = vv & -vv
                s ^= col_syn[low.bit_length() - 1]
                vv ^= low
            if s not in leaders and s not in batch:
                batch[s] = v
        leaders.update(batch)
    if len(leaders) != total:
        raise GF2Error("standard array incomplete; H is rank deficient")
    return StandardArray(code=code, leaders=leaders)


# -- Berlekamp-Massey decoding ---------------------------------------------

def _bch_syndromes(code: ClassicalCode, received: int) -> list[int]:
    gf = code.gf
    t = code.design_t
    syn = []
    for j in range(1, 2 * t + 1):
        s = 0
        r = received
        while r:
            low = r & -r
            i = low.bit_length() - 1
            s ^= gf.pow_alpha(i * j)
            r ^= low
        syn.append(s)
    return syn


def bm_decode(code: ClassicalCode, received: BitMatrix) -> list[int] | None:
    """Decode a received word of a BCH code to its error support.

    Returns the error locations when a codeword lies within Hamming
    distance t, otherwise None.  A None return is the normal
    beyond-radius outcome, not a fault.
    """
    if code.kind != "bch" or code.gf is None:
        raise GF2Error(f"bm_decode requires a BCH code, got kind={code.kind!r}")
    if received.rows != 1 or received.cols != code.n:
        raise GF2Error(f"expected a 1x{code.n} word, got {received.rows}x{received.cols}")
    gf = code.gf
    t = code.design_t
    word = received.row_data[0]
    syn = _bch_syndromes(code, word)
    if not any(syn):
        return []

    # Berlekamp-Massey: error-locator polynomial sigma (low degree first)
    sigma = [1]
    prev = [1]
    L = 0
    shift = 1
    b = 1
    for idx in range(2 * t):
        delta = syn[idx]
        for j in range(1, L + 1):
            if j < len(sigma):
                delta ^= gf.mul(sigma[j], syn[idx - j])
        if delta == 0:
            shift += 1
            continue
        coef = gf.mul(delta, gf.inv(b))
        candidate = sigma[:]
        scaled = [gf.mul(coef, c) for c in prev]
        need = len(scaled) + shift
        if need > len(candidate):
            candidate += [0] * (need - len(candidate))
        for j, c in enumerate(scaled):
            candidate[j + shift] ^= c
        if 2 * L <= idx:
            prev = sigma
            b = delta
            L = idx + 1 - L
            shift = 1
        else:
            shift += 1
        sigma = candidate
    while sigma and sigma[-1] == 0:
        sigma.pop()
    deg = len(sigma) - 1
    if deg > t:
        return None

    # Chien search: position i is an error iff sigma(alpha^{-i}) = 0
    locations = []
    for i in range(code.n):
        acc = 0
        for d, c in enumerate(sigma):
            if c:
                acc ^= gf.mul(c, gf.pow_alpha((-i * d) % gf.order))
        if acc == 0:
            locations.append(i)
    if len(locations) != deg:
        return None
    corrected = word
    for i in locations:
        corrected ^= 1 << i
    if any(_bch_syndromes(code, corrected)):
        return None
    return locations
