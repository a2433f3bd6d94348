"""GF(2) linear algebra, simplicial (co)homology, cup powers and persistence.

Vectors over GF(2) are Python ints used as bitsets; bit ``i`` is row ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Real
from typing import Iterable, Mapping, Sequence

from .symcx import (
    Simplex,
    SubcomplexRef,
    SymmetricComplex,
    as_sub,
    boundary_faces,
    format_value,
)

INF = math.inf


def _low(x: int) -> int:
    return x.bit_length() - 1


def bits(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out ^= 1 << i
    return out


def support(x: int) -> list[int]:
    out = []
    while x:
        lsb = x & -x
        out.append(lsb.bit_length() - 1)
        x ^= lsb
    return out


class BitMatrix:
    """Sparse GF(2) matrix stored by columns (sorted row supports)."""

    def __init__(self, n_rows: int, columns: Sequence[Iterable[int]]):
        self.n_rows = n_rows
        cols = []
        for col in columns:
            # repeated row entries cancel mod 2
            rows = support(col if isinstance(col, int) else bits(col))
            if rows and rows[-1] >= n_rows:
                raise ValueError(f"row index {rows[-1]} out of range for {n_rows} rows")
            cols.append(tuple(rows))
        self.columns: list[tuple[int, ...]] = cols

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def column_bits(self) -> list[int]:
        return [bits(c) for c in self.columns]

    def __matmul__(self, x: int) -> int:
        """Matrix times a column-index bitset."""
        out = 0
        for j in support(x):
            out ^= bits(self.columns[j])
        return out

    def rank(self) -> int:
        return len(_Reducer(self.column_bits()).pivots)

    def solve(self, b: int) -> int | None:
        """A bitset ``x`` of columns with ``self @ x == b``, or None."""
        red = _Reducer(self.column_bits(), track=True)
        return red.express(b)

    def nullspace(self) -> list[int]:
        """Basis of the kernel, as bitsets over column indices."""
        return _Reducer(self.column_bits(), track=True).kernel


class _Reducer:
    """Column reduction keyed by lowest (highest-index) nonzero row."""

    def __init__(self, cols: list[int], track: bool = False):
        self.pivots: dict[int, tuple[int, int]] = {}
        self.kernel: list[int] = []
        for j, c in enumerate(cols):
            combo = 1 << j if track else 0
            while c:
                piv = self.pivots.get(_low(c))
                if piv is None:
                    break
                c ^= piv[0]
                combo ^= piv[1]
            if c:
                self.pivots[_low(c)] = (c, combo)
            elif track:
                self.kernel.append(combo)

    def express(self, b: int) -> int | None:
        combo = 0
        while b:
            piv = self.pivots.get(_low(b))
            if piv is None:
                return None
            b ^= piv[0]
            combo ^= piv[1]
        return combo


# -- chain complexes of subcomplexes ------------------------------------


def _by_dim(sub: SubcomplexRef, p: int) -> list[Simplex]:
    return sub.of_dim(p)


def boundary_matrix(sub: SubcomplexRef | SymmetricComplex, p: int) -> tuple[BitMatrix, list[Simplex], list[Simplex]]:
    """Boundary map C_p -> C_{p-1}; also returns the row and column simplices."""
    sub = as_sub(sub)
    cols = _by_dim(sub, p)
    rows = _by_dim(sub, p - 1) if p > 0 else []
    idx = {s: i for i, s in enumerate(rows)}
    m = BitMatrix(len(rows), [[idx[f] for f in boundary_faces(s)] for s in cols] if p > 0 else [[] for _ in cols])
    return m, rows, cols


def coboundary_matrix(sub: SubcomplexRef | SymmetricComplex, p: int) -> tuple[BitMatrix, list[Simplex], list[Simplex]]:
    """Coboundary map C^p -> C^{p+1}; rows are (p+1)-simplices, columns p-simplices."""
    sub = as_sub(sub)
    src = _by_dim(sub, p)
    dst = _by_dim(sub, p + 1)
    col_of = {s: j for j, s in enumerate(src)}
    cols: list[list[int]] = [[] for _ in src]
    for i, t in enumerate(dst):
        for f in boundary_faces(t):
            cols[col_of[f]].append(i)
    return BitMatrix(len(dst), cols), dst, src


def betti(sub: SubcomplexRef | SymmetricComplex, p: int) -> int:
    """Dimension of H_p(sub; GF(2))."""
    sub = as_sub(sub)
    if p < 0:
        return 0
    n_p = len(_by_dim(sub, p))
    if n_p == 0:
        return 0
    rank_p = boundary_matrix(sub, p)[0].rank() if p > 0 else 0
    rank_next = boundary_matrix(sub, p + 1)[0].rank()
    return n_p - rank_p - rank_next


def betti_numbers(sub: SubcomplexRef | SymmetricComplex) -> tuple[int, ...]:
    sub = as_sub(sub)
    return tuple(betti(sub, p) for p in range(sub.dimension + 1))


# -- cochains and cup powers --------------------------------------------


@dataclass(frozen=True)
class CochainClass:
    """A GF(2) cochain representative (support only)."""

    dimension: int
    support: frozenset[Simplex]

    def __call__(self, s: Sequence[int]) -> int:
        return int(tuple(s) in self.support)

    def restrict(self, sub: SubcomplexRef) -> "CochainClass":
        return CochainClass(self.dimension, frozenset(s for s in self.support if s in sub.simplices))


def covering_class(c: SymmetricComplex) -> CochainClass:
    return CochainClass(1, frozenset(c.cocycle))


def is_cocycle(sub: SubcomplexRef | SymmetricComplex, z: CochainClass) -> bool:
    sub = as_sub(sub)
    for t in _by_dim(sub, z.dimension + 1):
        if sum(z(f) for f in boundary_faces(t)) % 2:
            return False
    return True


def cup_power(sub: SubcomplexRef | SymmetricComplex, w: CochainClass, p: int) -> CochainClass:
    """Representative of w^p via the front-face/back-face rule.

    With the vertex order fixed, w^p on ``(v0 < ... < vp)`` is the product of
    ``w(v_i, v_{i+1})`` along the ordered vertex path.
    """
    sub = as_sub(sub)
    if w.dimension != 1:
        raise ValueError("cup powers are taken of 1-cocycles")
    if p == 0:
        return CochainClass(0, frozenset(_by_dim(sub, 0)))
    edges = w.support
    supp = frozenset(
        s for s in _by_dim(sub, p)
        if all((s[i], s[i + 1]) in edges for i in range(p))
    )
    return CochainClass(p, supp)


def coboundary_solution(sub: SubcomplexRef | SymmetricComplex, z: CochainClass) -> CochainClass | None:
    """A (p-1)-cochain x with dx = z on ``sub``, or None if z is not a coboundary."""
    sub = as_sub(sub)
    p = z.dimension
    if p == 0:
        return None if z.support else CochainClass(-1, frozenset())
    delta, rows, cols = coboundary_matrix(sub, p - 1)
    row_of = {s: i for i, s in enumerate(rows)}
    target = bits(row_of[s] for s in z.support if s in row_of)
    x = delta.solve(target)
    if x is None:
        return None
    return CochainClass(p - 1, frozenset(cols[j] for j in support(x)))


def apply_coboundary(sub: SubcomplexRef | SymmetricComplex, x: CochainClass) -> CochainClass:
    sub = as_sub(sub)
    out = set()
    for t in _by_dim(sub, x.dimension + 1):
        if sum(x(f) for f in boundary_faces(t)) % 2:
            out.add(t)
    return CochainClass(x.dimension + 1, frozenset(out))


def cup_power_nonzero(sub: SubcomplexRef | SymmetricComplex, w: CochainClass, p: int) -> bool:
    """True iff [w]^p is nonzero in H^p(sub; GF(2))."""
    sub = as_sub(sub)
    if p == 0:
        return len(sub) > 0
    z = cup_power(sub, w.restrict(sub), p)
    if not z.support:
        return False
    return coboundary_solution(sub, z) is None


# -- persistence ---------------------------------------------------------


@dataclass
class PersistenceDiagram:
    """Bars per dimension; zero-length pairs are not recorded."""

    bars: dict[int, list[tuple[Real, Real]]] = field(default_factory=dict)
    betti: tuple[int, ...] = ()
    levels: tuple[Real, ...] = ()

    def dims(self) -> list[int]:
        return sorted(self.bars)

    def of_dim(self, p: int) -> list[tuple[Real, Real]]:
        return self.bars.get(p, [])

    def essential(self, p: int) -> list[Real]:
        return sorted(b for b, d in self.of_dim(p) if d == INF)

    def alive_at(self, p: int, t: Real) -> int:
        return sum(1 for b, d in self.of_dim(p) if b <= t < d)

    def all_bars(self) -> list[tuple[int, Real, Real]]:
        return sorted((p, b, d) for p in self.bars for b, d in self.bars[p])

    def export(self) -> str:
        return "".join(f"{p} {format_value(b)} {format_value(d)}\n" for p, b, d in self.all_bars())


def persistence(c: SymmetricComplex) -> PersistenceDiagram:
    """Standard column reduction with clearing over the lower-star order."""
    order = c.order
    index = order.index
    simplices = order.simplices
    levels = order.levels
    n = len(simplices)
    by_dim: dict[int, list[int]] = {}
    for i, s in enumerate(simplices):
        by_dim.setdefault(len(s) - 1, []).append(i)

    pair_of: dict[int, int] = {}  # negative column -> positive row
    positive_paired: set[int] = set()
    for d in sorted(by_dim, reverse=True):
        if d == 0:
            continue
        pivots: dict[int, int] = {}
        for j in by_dim[d]:
            if j in positive_paired:
                continue  # cleared: this column reduces to zero
            col = bits(index[f] for f in boundary_faces(simplices[j]))
            while col:
                low = _low(col)
                other = pivots.get(low)
                if other is None:
                    break
                col ^= other
            if col:
                low = _low(col)
                pivots[low] = col
                pair_of[j] = low
                positive_paired.add(low)

    bars: dict[int, list[tuple[Real, Real]]] = {}
    negative = set(pair_of)
    for j, i in pair_of.items():
        birth, death = levels[i], levels[j]
        if birth != death:
            bars.setdefault(len(simplices[i]) - 1, []).append((birth, death))
    for i in range(n):
        if i not in negative and i not in positive_paired:
            bars.setdefault(len(simplices[i]) - 1, []).append((levels[i], INF))
    for p in bars:
        bars[p].sort()
    top = c.dimension
    betti_full = tuple(sum(1 for _, d in bars.get(p, []) if d == INF) for p in range(top + 1))
    return PersistenceDiagram(bars, betti_full, tuple(c.levels))


def essential_rank_at(d: PersistenceDiagram, p: int, t: Real) -> int:
    """Rank of H_p(sublevel(t)) -> H_p(whole complex)."""
    return sum(1 for b in d.essential(p) if b <= t)


def inclusion_rank(sub: SubcomplexRef, p: int) -> int:
    """Rank of H_p(sub) -> H_p(parent) computed directly from chain data.

    Independent of the persistence algorithm: image rank equals
    rank[B_p(parent) | Z_p(sub)] - rank B_p(parent).
    """
    parent = sub.parent.full()
    d_next, rows, _ = boundary_matrix(parent, p + 1)
    row_of = {s: i for i, s in enumerate(rows)}
    if p > 0:
        d_p, _, cols = boundary_matrix(sub, p)
        cycles = [[row_of[cols[j]] for j in support(z)] for z in d_p.nullspace()]
    else:
        cycles = [[row_of[s]] for s in sub.of_dim(0)]
    base = d_next.rank()
    aug = BitMatrix(len(rows), list(d_next.columns) + cycles)
    return aug.rank() - base


def chain_is_boundary(c: SymmetricComplex, chain: Iterable[Simplex]) -> bool:
    """Whether a p-chain (given by its simplices) is a GF(2) boundary in ``c``."""
    chain = [tuple(s) for s in chain]
    if not chain:
        return True
    p = len(chain[0]) - 1
    d_next, rows, _ = boundary_matrix(c, p + 1)
    row_of = {s: i for i, s in enumerate(rows)}
    return d_next.solve(bits(row_of[s] for s in chain)) is not None


def chain_boundary(chain: Iterable[Simplex]) -> set[Simplex]:
    out: set[Simplex] = set()
    for s in chain:
        for f in boundary_faces(tuple(s)):
            out ^= {f}
    return out
