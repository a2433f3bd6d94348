"""Total variation, medians and the Cheeger constant on weighted graphs.

Measures and weights are held as ``Fraction``.  Values parsed from text are
exact; Python floats are converted exactly (binary value) and the graph is
flagged ``approximate``, in which case the measure normalisation is checked
to ``MEASURE_TOL`` and then divided out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Real
from typing import Iterator, Sequence

from .symcx import format_value, parse_value

MEASURE_TOL = 1e-9
BRUTE_LIMIT = 24

Function = tuple[Fraction, ...]


class GraphError(ValueError):
    pass


def _exact(x) -> tuple[Fraction, bool]:
    if isinstance(x, float):
        return Fraction(x), True
    if isinstance(x, str):
        return parse_value(x), False
    return Fraction(x), False


@dataclass(frozen=True)
class WeightedGraph:
    measure: tuple[Fraction, ...]
    edges: tuple[tuple[int, int, Fraction], ...]
    approximate: bool = False

    @classmethod
    def build(cls, measure: Sequence, edges) -> "WeightedGraph":
        """Validate and normalise; ``edges`` maps (u, v) to weight or lists triples."""
        approx = False
        ms = []
        for x in measure:
            f, a = _exact(x)
            ms.append(f)
            approx |= a
        n = len(ms)
        items = edges.items() if isinstance(edges, dict) else ((e[:2], e[2]) for e in edges)
        seen: dict[tuple[int, int], Fraction] = {}
        for (u, v), wt in items:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u} {v} names a vertex outside 0..{n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key[0]} {key[1]}")
            f, a = _exact(wt)
            if f <= 0:
                raise GraphError(f"edge {key[0]} {key[1]} has non-positive weight")
            seen[key] = f
            approx |= a
        if n == 0:
            raise GraphError("graph has no vertices")
        if any(m <= 0 for m in ms):
            raise GraphError("vertex measures must be positive")
        total = sum(ms)
        if approx:
            if abs(float(total) - 1) > MEASURE_TOL:
                raise GraphError(f"measures sum to {float(total)}, not 1")
            ms = [m / total for m in ms]
        elif total != 1:
            raise GraphError(f"measures sum to {format_value(total)}, not 1")
        g = cls(tuple(ms), tuple((u, v, w) for (u, v), w in sorted(seen.items())), approx)
        if not g.connected():
            raise GraphError("graph is not connected")
        return g

    @classmethod
    def uniform(cls, n: int, edges) -> "WeightedGraph":
        return cls.build([Fraction(1, n)] * n, edges)

    @property
    def n(self) -> int:
        return len(self.measure)

    def neighbours(self) -> list[list[tuple[int, Fraction]]]:
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def connected(self) -> bool:
        adj = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            for v, _ in adj[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def mass(self, subset) -> Fraction:
        return sum((self.measure[v] for v in subset), Fraction(0))

    def cut(self, subset) -> Fraction:
        a = set(subset)
        return sum((w for u, v, w in self.edges if (u in a) != (v in a)), Fraction(0))


def as_function(g: WeightedGraph, u: Sequence) -> Function:
    if len(u) != g.n:
        raise GraphError(f"function has {len(u)} values for {g.n} vertices")
    return tuple(_exact(x)[0] for x in u)


# -- basic functionals ---------------------------------------------------


def tv(g: WeightedGraph, u: Sequence) -> Fraction:
    u = as_function(g, u)
    return sum((w * abs(u[a] - u[b]) for a, b, w in g.edges), Fraction(0))


def l1_norm(g: WeightedGraph, u: Sequence) -> Fraction:
    u = as_function(g, u)
    return sum((m * abs(x) for m, x in zip(g.measure, u)), Fraction(0))


def l1_deviation(g: WeightedGraph, u: Sequence, c) -> Fraction:
    """sum_v m_v |u_v - c|."""
    c = _exact(c)[0]
    return l1_norm(g, [x - c for x in as_function(g, u)])


def _mass_where(g: WeightedGraph, u: Function, pred) -> Fraction:
    return sum((m for m, x in zip(g.measure, u) if pred(x)), Fraction(0))


def median_interval(g: WeightedGraph, u: Sequence) -> tuple[Fraction, Fraction]:
    """Closed interval of all medians of u under the vertex measure."""
    u = as_function(g, u)
    half = Fraction(1, 2)
    values = sorted(set(u))
    lo = next(c for c in values if _mass_where(g, u, lambda x: x <= c) >= half)
    hi = next(c for c in reversed(values) if _mass_where(g, u, lambda x: x >= c) >= half)
    return lo, hi


def is_median(g: WeightedGraph, u: Sequence, c) -> bool:
    lo, hi = median_interval(g, u)
    return lo <= _exact(c)[0] <= hi


def energy(g: WeightedGraph, v: Sequence) -> Fraction:
    """tv(v) / ||v||_1, the functional evaluated along function paths."""
    norm = l1_norm(g, v)
    if norm == 0:
        raise GraphError("energy undefined on the zero function")
    return tv(g, v) / norm


def cheeger_ratio(g: WeightedGraph, subset) -> Fraction:
    a = set(subset)
    if not a or len(a) == g.n:
        raise GraphError("subset must be nonempty and proper")
    return g.cut(a) / min(g.mass(a), 1 - g.mass(a))


# -- the Cheeger constant --------------------------------------------------


@dataclass(frozen=True)
class CheegerResult:
    value: Fraction
    subset: tuple[int, ...]


def cheeger_brute(g: WeightedGraph) -> CheegerResult:
    """Exact minimum of cut(A)/min(m(A), m(A^c)) over proper subsets.

    Integer arithmetic after clearing denominators; Gray-code enumeration
    keeps the cut and mass incremental.  Ties go to the smallest bitmask.
    """
    n = g.n
    if n > BRUTE_LIMIT:
        raise GraphError(f"brute force limited to {BRUTE_LIMIT} vertices, got {n}")
    if n < 2:
        raise GraphError("need at least two vertices")
    wd = lcm(*(w.denominator for _, _, w in g.edges)) if g.edges else 1
    md = lcm(*(m.denominator for m in g.measure))
    weights = [[0] * n for _ in range(n)]
    for u, v, w in g.edges:
        weights[u][v] = weights[v][u] = int(w * wd)
    mass = [int(m * md) for m in g.measure]
    total = md

    best: tuple[int, int, int] | None = None  # (cut, side mass, mask)
    inside = [False] * n
    cut = 0
    m_a = 0
    mask = 0
    for k in range(1, 1 << n):
        v = (k & -k).bit_length() - 1  # Gray code flips this vertex
        delta = 0
        for x in range(n):
            wx = weights[v][x]
            if wx:
                delta += -wx if inside[x] != inside[v] else wx
        cut += delta
        inside[v] = not inside[v]
        m_a += mass[v] if inside[v] else -mass[v]
        mask ^= 1 << v
        if mask == (1 << n) - 1:
            continue
        side = min(m_a, total - m_a)
        if best is None:
            best = (cut, side, mask)
            continue
        lhs, rhs = cut * best[1], best[0] * side
        if lhs < rhs or (lhs == rhs and mask < best[2]):
            best = (cut, side, mask)
    assert best is not None
    c, s, m = best
    value = Fraction(c, wd) / Fraction(s, md)
    return CheegerResult(value, tuple(i for i in range(n) if m >> i & 1))


def indicator_minimum(g: WeightedGraph) -> CheegerResult:
    """Minimum of tv over the scaled indicators 1_A / m(A) with m(A) <= 1/2.

    Each such function has unit L1 norm and median 0, so this is the
    restriction of the Cheeger variational problem to indicators.  It is
    evaluated through ``tv`` and ``median_interval`` only.
    """
    best: CheegerResult | None = None
    for mask in range(1, (1 << g.n) - 1):
        a = [i for i in range(g.n) if mask >> i & 1]
        ma = g.mass(a)
        if ma > Fraction(1, 2):
            continue
        u = [Fraction(1) / ma if mask >> i & 1 else Fraction(0) for i in range(g.n)]
        assert l1_norm(g, u) == 1 and is_median(g, u, 0)
        t = tv(g, u)
        if best is None or t < best.value:
            best = CheegerResult(t, tuple(a))
    assert best is not None
    return best


@dataclass(frozen=True)
class FunctionBound:
    energy: Fraction
    median: tuple[Fraction, Fraction]
    median_verified: bool
    rounded_subset: tuple[int, ...]
    rounded_ratio: Fraction


def cheeger_function_bound(g: WeightedGraph, u: Sequence) -> FunctionBound:
    """tv(u) / min_c sum m|u - c| and the best threshold set of u."""
    u = as_function(g, u)
    if len(set(u)) < 2:
        raise GraphError("cheeger bound needs a non-constant function")
    lo, hi = median_interval(g, u)
    dev = l1_deviation(g, u, lo)
    verified = dev == l1_deviation(g, u, hi)
    value = tv(g, u) / dev

    best: tuple[Fraction, tuple[int, ...]] | None = None
    for t in sorted(set(u))[:-1]:
        a = tuple(i for i, x in enumerate(u) if x > t)
        r = cheeger_ratio(g, a)
        if best is None or r < best[0]:
            best = (r, a)
    assert best is not None
    return FunctionBound(value, (lo, hi), verified, best[1], best[0])


# -- paths of functions ----------------------------------------------------


@dataclass(frozen=True)
class FunctionPath:
    functions: tuple[Function, ...]
    offsets: tuple[Real, ...] = ()

    def __post_init__(self):
        if not self.functions:
            raise GraphError("function path is empty")

    def __len__(self):
        return len(self.functions)

    def __getitem__(self, i) -> Function:
        return self.functions[i]

    def __iter__(self) -> Iterator[Function]:
        return iter(self.functions)

    def negated(self) -> "FunctionPath":
        return FunctionPath(tuple(tuple(-x for x in f) for f in self.functions),
                            tuple(-c for c in self.offsets))


def tan_loop(g: WeightedGraph, u: Sequence, samples: int = 8) -> FunctionPath:
    """Constant offsets u + c from the constant -1 to the constant +1.

    The offsets are a symmetric grid through 0 reaching past max|u|, so the
    inner ends already have constant sign; the outer ends are the constant
    functions that close the loop in projective space.
    """
    if samples < 1:
        raise GraphError("samples must be positive")
    u = as_function(g, u)
    norm = l1_norm(g, u)
    off = abs(float(norm) - 1) > MEASURE_TOL if g.approximate else norm != 1
    if off:
        raise GraphError(f"tan_loop needs ||u||_1 = 1, got {format_value(norm)}")
    if not is_median(g, u, 0):
        raise GraphError("tan_loop needs 0 in the median interval of u")
    reach = max(abs(x) for x in u) + 1
    offsets = [reach * Fraction(i, samples) for i in range(-samples, samples + 1)]
    fns = [tuple(Fraction(-1) for _ in u)]
    fns += [tuple(x + c for x in u) for c in offsets]
    fns.append(tuple(Fraction(1) for _ in u))
    inf = float("inf")
    return FunctionPath(tuple(fns), (-inf, *offsets, inf))


def path_energy(g: WeightedGraph, p: FunctionPath) -> list[Fraction]:
    return [energy(g, f) for f in p]


@dataclass(frozen=True)
class MedianExtraction:
    index: int
    is_median: bool
    negated: bool

    def __iter__(self):
        return iter((self.index, self.is_median))


def path_median_extract(g: WeightedGraph, p: FunctionPath) -> MedianExtraction:
    """Last index where mass{p <= 0} >= 1/2, and whether 0 is a median there.

    If the first function has mass{<= 0} below 1/2 the path is negated
    first.  On a continuous path 0 is always a median at that index; on a
    coarse discrete path it may not be, and the verdict says so.
    """
    if len(p) == 0:
        raise GraphError("function path is empty")
    half = Fraction(1, 2)
    below = lambda f: _mass_where(g, f, lambda x: x <= 0) >= half  # noqa: E731
    negated = not below(p[0])
    if negated:
        p = p.negated()
    sigma = max(i for i, f in enumerate(p) if below(f))
    return MedianExtraction(sigma, _mass_where(g, p[sigma], lambda x: x >= 0) >= half, negated)


# -- files -----------------------------------------------------------------


def parse_graph(text: str) -> WeightedGraph:
    n = None
    measure: dict[int, str] = {}
    edges: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "n" and len(rest) == 1:
                if n is not None:
                    raise GraphError("duplicate 'n' line")
                n = int(rest[0])
            elif head == "m" and len(rest) == 2:
                v = int(rest[0])
                if v in measure:
                    raise GraphError(f"duplicate measure for vertex {v}")
                measure[v] = rest[1]
            elif head == "e" and len(rest) == 3:
                edges.append((int(rest[0]), int(rest[1]), rest[2]))
            else:
                raise GraphError(f"unknown or malformed record {line!r}")
        except ValueError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    if n is None:
        raise GraphError("missing 'n' line")
    missing = [v for v in range(n) if v not in measure]
    if missing or len(measure) != n:
        raise GraphError(f"measures must be given for exactly vertices 0..{n - 1}")
    return WeightedGraph.build([measure[v] for v in range(n)], edges)


def dump_graph(g: WeightedGraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"m {v} {format_value(m)}" for v, m in enumerate(g.measure)]
    lines += [f"e {u} {v} {format_value(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def parse_function(text: str, g: WeightedGraph) -> Function:
    """Function file: one ``u <vertex> <value>`` line per vertex."""
    values: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "u":
            raise GraphError(f"line {lineno}: expected 'u <vertex> <value>'")
        try:
            v = int(parts[1])
            values[v] = parse_value(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    if sorted(values) != list(range(g.n)):
        raise GraphError(f"function must give a value for exactly vertices 0..{g.n - 1}")
    return tuple(values[v] for v in range(g.n))


def dump_function(u: Sequence) -> str:
    return "".join(f"u {v} {format_value(x)}\n" for v, x in enumerate(u))


# -- named graphs used by fixtures and tests --------------------------------


def cycle_graph(n: int) -> WeightedGraph:
    return WeightedGraph.uniform(n, {(i, (i + 1) % n): 1 for i in range(n)})


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.uniform(n, {(i, j): 1 for i in range(n) for j in range(i + 1, n)})


def bridged_triangles() -> WeightedGraph:
    edges = {(0, 1): 1, (1, 2): 1, (0, 2): 1, (3, 4): 1, (4, 5): 1, (3, 5): 1, (2, 3): 1}
    return WeightedGraph.uniform(6, edges)
