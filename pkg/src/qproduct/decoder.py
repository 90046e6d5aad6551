"""Decoding paths over product-code lookup tables.

Exact key lookup, BK-tree nearest-neighbor decoding of noisy syndromes,
and logical-qubit localization from the rows of the product syndrome.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import classical, gf2
from .gf2 import BitMatrix, GF2Error
from .product import ErrorPattern, LookupTable, ProductCode, ProductSyndrome


class LocalizationError(GF2Error):
    """A syndrome row failed to decode; carries the failing row index."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class BKTree:
    """Burkhard-Keller tree over integer keys under Hamming distance.

    Children are keyed by their distance to the parent, so a radius query
    only descends into edges within [d - radius, d + radius] (triangle
    inequality).  ``last_visit_count`` records nodes touched by the most
    recent query, for pruning diagnostics.
    """

    __slots__ = ("_root", "size", "last_visit_count")

    def __init__(self, keys=()):
        self._root: list | None = None  # [key, {distance: child}]
        self.size = 0
        self.last_visit_count = 0
        for key in keys:
            self.add(key)

    def add(self, key: int) -> None:
        if self._root is None:
            self._root = [key, {}]
            self.size = 1
            return
        node = self._root
        while True:
            d = (key ^ node[0]).bit_count()
            if d == 0:
                raise GF2Error(f"duplicate key {key:#x}")
            child = node[1].get(d)
            if child is None:
                node[1][d] = [key, {}]
                self.size += 1
                return
            node = child

    def query(self, key: int, radius: int) -> list[tuple[int, int]]:
        """All (stored key, distance) pairs within the Hamming radius."""
        out: list[tuple[int, int]] = []
        self.last_visit_count = 0
        if self._root is None:
            return out
        stack = [self._root]
        while stack:
            node = stack.pop()
            self.last_visit_count += 1
            d = (key ^ node[0]).bit_count()
            if d <= radius:
                out.append((node[0], d))
            for edge, child in node[1].items():
                if d - radius <= edge <= d + radius:
                    stack.append(child)
        return out


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of a table decode: status is 'ok', 'not_found' or 'ambiguous'."""

    status: str
    pattern: ErrorPattern | None = None
    distance: int = -1
    matched_key: int = -1


def lookup_decode(table: LookupTable, key: int) -> DecodeResult:
    """Exact-match decode; not-found is a normal outcome."""
    pattern = table.correction(key)
    if pattern is None:
        return DecodeResult(status="not_found")
    return DecodeResult(status="ok", pattern=pattern, distance=0, matched_key=key)


def ensure_index(table: LookupTable) -> BKTree:
    if table.bk_index is None:
        table.bk_index = BKTree(sorted(table.entries))
    return table.bk_index


def min_distance_decode(table: LookupTable, key: int,
                        max_radius: int | None = None) -> DecodeResult:
    """Nearest-key decode of a possibly corrupted syndrome.

    Returns the unique nearest key within ``max_radius`` (default
    t_C - t_src, the corruption budget the key separation guarantees).
    Equal-distance ties are surfaced as 'ambiguous', never broken.
    """
    if max_radius is None:
        max_radius = table.pc.t_c - table.pc.t_src
    tree = ensure_index(table)
    matches = tree.query(key, max_radius)
    if not matches:
        return DecodeResult(status="not_found")
    best = min(d for _, d in matches)
    nearest = [k for k, d in matches if d == best]
    if len(nearest) > 1:
        return DecodeResult(status="ambiguous", distance=best)
    k = nearest[0]
    pattern = table.correction(k)
    return DecodeResult(status="ok", pattern=pattern, distance=best, matched_key=k)


@dataclass(frozen=True)
class LocalizationResult:
    """Index set of logical qubits with errors, with per-row evidence."""

    logical_indices: frozenset[int]
    per_row_supports: tuple[frozenset[int], ...]
    confidence: str = "exact"  # 'exact' or 'nearest'
    syndrome_flips: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        union = frozenset().union(*self.per_row_supports) if self.per_row_supports else frozenset()
        if union != self.logical_indices:
            raise GF2Error("logical index set must be the union of row supports")


_ARRAY_CACHE: dict[classical.ClassicalCode, classical.StandardArray] = {}


def _coset_leader_support(code: classical.ClassicalCode, syn: int) -> list[int] | None:
    """Support of the minimum-weight error with the given syndrome.

    Uses Berlekamp-Massey for BCH codes (via the [syndrome | zeros]
    received word, valid because H = [I | P^T]) and the standard array
    otherwise.  None means no explanation within the decoding radius.
    """
    if code.kind == "bch":
        received = BitMatrix([syn], code.n)  # parity coordinates come first
        return classical.bm_decode(code, received)
    arr = _ARRAY_CACHE.get(code)
    if arr is None:
        arr = classical.build_standard_array(code)
        _ARRAY_CACHE[code] = arr
    leader = arr.leaders.get(syn)
    if leader is None:
        return None
    return gf2.support(BitMatrix([leader], code.n))


def localize_rows(pc: ProductCode, xi: ProductSyndrome) -> LocalizationResult:
    """Decode each row of Xi with the classical code; union the supports.

    Requires full-H mode, where row i of Xi is the classical syndrome of
    row i of H_Q eps (a length-L word supported on the hit columns).
    """
    if pc.hc_mode != "full":
        raise GF2Error("localize_rows requires full-H mode; use localize_bm for P^T mode")
    supports = []
    for i in range(xi.matrix.rows):
        supp = _coset_leader_support(pc.c, xi.matrix.row_data[i])
        if supp is None:
            raise LocalizationError(i, "no coset leader within the decoding radius")
        if len(supp) > pc.t_c:
            raise LocalizationError(i, f"row weight {len(supp)} exceeds t_C={pc.t_c}")
        supports.append(frozenset(supp))
    union = frozenset().union(*supports) if supports else frozenset()
    return LocalizationResult(logical_indices=union,
                              per_row_supports=tuple(supports))


def localize_bm(pc: ProductCode, xi_noisy: ProductSyndrome) -> LocalizationResult:
    """Localization from noisy syndrome rows via Berlekamp-Massey.

    P^T-mode only: row i of a clean Xi is the parity part m_i P of the
    codeword [m_i P | m_i], so appending a zero message to the measured
    row gives a word within distance wt(T_i) + |support(m_i)| of that
    codeword.  Decoded error positions below R are syndrome-bit flips;
    positions >= R map to logical indices p - R.
    """
    if pc.hc_mode != "pt":
        raise GF2Error("localize_bm requires P^T mode")
    if pc.c.kind != "bch":
        raise GF2Error("localize_bm requires a BCH classical code")
    r = pc.R
    supports = []
    flips = []
    for i in range(xi_noisy.matrix.rows):
        received = BitMatrix([xi_noisy.matrix.row_data[i]], pc.c.n)
        locs = classical.bm_decode(pc.c, received)
        if locs is None:
            raise LocalizationError(
                i, f"decoding budget wt(T) + |L| <= {pc.c.t} exceeded")
        supports.append(frozenset(p - r for p in locs if p >= r))
        flips.append(frozenset(p for p in locs if p < r))
    union = frozenset().union(*supports) if supports else frozenset()
    return LocalizationResult(logical_indices=union,
                              per_row_supports=tuple(supports),
                              syndrome_flips=tuple(flips))
