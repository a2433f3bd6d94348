"""Min-max values of a vertex function on a quotient complex.

``kr_min``/``kr_max`` are the extremes, ``kr2`` is the first level whose
sublevel carries a loop of odd cover holonomy, and the index sweep gives
``iv_k``: the first level whose sublevel has cohomological index >= k.
The cohomological index never exceeds the Krasnoselskii genus, so ``iv_k``
bounds ``kr_k`` from above; on the bundled projective-space fixtures the
two agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Real

from .symcx import SubcomplexRef, SymmetricComplex, as_sub, format_value, sublevel
from .z2algebra import CochainClass, covering_class, cup_power_nonzero

INF = math.inf

CAVEAT = "iv_k bounds kr_k from above (cohomological index <= genus); exact on bundled fixtures"


class SpectrumError(ValueError):
    pass


def kr_extremes(c: SymmetricComplex) -> tuple[Real, Real]:
    if not c.values:
        raise SpectrumError("empty complex")
    return min(c.values.values()), max(c.values.values())


class _ParityDSU:
    """Union-find where every vertex stores its GF(2) offset to the root."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.offset: dict[int, int] = {}
        self.size: dict[int, int] = {}

    def add(self, v: int):
        self.parent[v] = v
        self.offset[v] = 0
        self.size[v] = 1

    def find(self, v: int) -> tuple[int, int]:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root, acc = v, 0
        for u in reversed(path):
            acc ^= self.offset[u]
            self.offset[u] = acc
            self.parent[u] = root
        return root, (self.offset[path[0]] if path else 0)

    def union(self, u: int, v: int, label: int) -> bool:
        """Join u and v with edge label; False if this closes an odd cycle."""
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            return (pu ^ pv ^ label) == 0
        if self.size[ru] < self.size[rv]:
            ru, rv, pu, pv = rv, ru, pv, pu
        self.parent[rv] = ru
        self.offset[rv] = pu ^ pv ^ label
        self.size[ru] += self.size[rv]
        return True


@dataclass(frozen=True)
class Kr2Result:
    value: Real
    witness: tuple[tuple[int, int], ...]


def kr2_sweep(c: SymmetricComplex) -> Kr2Result:
    """First level at which an odd-holonomy loop appears, with that loop."""
    dsu = _ParityDSU()
    tree: dict[int, list[int]] = {}
    for s, level in zip(c.order.simplices, c.order.levels):
        if len(s) == 1:
            dsu.add(s[0])
            tree[s[0]] = []
        elif len(s) == 2:
            u, v = s
            same = dsu.find(u)[0] == dsu.find(v)[0]
            if not dsu.union(u, v, c.w(u, v)):
                return Kr2Result(level, _close_cycle(tree, u, v))
            if not same:
                tree[u].append(v)
                tree[v].append(u)
    raise SpectrumError("no loop of odd holonomy: the covering is trivial")


def _close_cycle(tree: dict[int, list[int]], u: int, v: int) -> tuple[tuple[int, int], ...]:
    prev = {u: None}
    queue = [u]
    for x in queue:
        if x == v:
            break
        for y in tree[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    edges = [tuple(sorted(e)) for e in zip(path, path[1:])]
    edges.append(tuple(sorted((u, v))))
    return tuple(edges)


def index_of(sub: SubcomplexRef | SymmetricComplex, w: CochainClass | None = None) -> int:
    """Cohomological index: 0 if empty, else 1 + the largest p with w^p != 0."""
    sub = as_sub(sub)
    if w is None:
        w = covering_class(sub.parent)
    if not sub.simplices:
        return 0
    p = 1
    while p <= sub.dimension and cup_power_nonzero(sub, w, p):
        p += 1
    return p


@dataclass
class SpectrumReport:
    kr_min: Real
    kr_max: Real
    kr2: Real
    witness: tuple[tuple[int, int], ...]
    index_values: list[Real]
    caveat: str = CAVEAT
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> list[str]:
        out = [
            f"kr_min {format_value(self.kr_min)}",
            f"kr_max {format_value(self.kr_max)}",
            f"kr2 {format_value(self.kr2)}",
        ]
        out += [f"{k} {format_value(v)}" for k, v in enumerate(self.index_values, start=1)]
        out += [f"check {name} {'ok' if ok else 'FAIL'}" for name, ok in sorted(self.checks.items())]
        out.append(f"caveat {self.caveat}")
        out.append("witness")
        out += [f"{u} {v}" for u, v in self.witness]
        out.append("end")
        return out

    def to_dict(self) -> dict:
        return {
            "kr_min": format_value(self.kr_min),
            "kr_max": format_value(self.kr_max),
            "kr2": format_value(self.kr2),
            "index_values": {str(k): format_value(v) for k, v in enumerate(self.index_values, start=1)},
            "checks": {k: v for k, v in sorted(self.checks.items())},
            "caveat": self.caveat,
            "witness": [list(e) for e in self.witness],
        }


def index_sweep(c: SymmetricComplex, k: int, w: CochainClass | None = None) -> Real:
    """Least distinct level whose sublevel has index >= k (inf if none).

    The index is monotone under inclusion, so the levels are bisected.
    """
    w = w if w is not None else covering_class(c)
    levels = c.levels
    lo, hi = 0, len(levels)
    while lo < hi:
        mid = (lo + hi) // 2
        if index_of(sublevel(c, levels[mid]), w) >= k:
            hi = mid
        else:
            lo = mid + 1
    return levels[lo] if lo < len(levels) else INF


def index_spectrum(c: SymmetricComplex, k_max: int | None = None, tol: Real = 0) -> SpectrumReport:
    if k_max is None:
        k_max = c.dimension + 1
    if k_max > c.dimension + 1:
        raise SpectrumError(f"k_max={k_max} exceeds dimension+1={c.dimension + 1}")
    w = covering_class(c)
    values = [index_sweep(c, k, w) for k in range(1, k_max + 1)]
    lo, hi = kr_extremes(c)
    kr2 = kr2_sweep(c)
    checks = {
        "iv1=kr_min": bool(values) and abs(values[0] - lo) <= tol,
        "nondecreasing": all(a <= b for a, b in zip(values, values[1:])),
    }
    if k_max >= 2:
        checks["iv2=kr2"] = abs(values[1] - kr2.value) <= tol
    return SpectrumReport(lo, hi, kr2.value, kr2.witness, values, checks=checks)
