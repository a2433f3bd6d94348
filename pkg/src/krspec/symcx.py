"""Quotient simplicial complexes carrying a double-cover cocycle and a vertex function.

A :class:`SymmetricComplex` stores the quotient ``X = S / Z2`` of a free
involution only.  The cover itself is never built: every edge carries a
GF(2) label ``w`` and a closed edge path lifts to a path between antipodes
exactly when the labels along it sum to one.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from numbers import Real
from typing import Iterable, Iterator, Mapping, Sequence

Simplex = tuple[int, ...]

MAX_DIM = 3


def faces(simplex: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of ``simplex``, including itself."""
    for k in range(1, len(simplex) + 1):
        yield from combinations(simplex, k)


def boundary_faces(simplex: Simplex) -> list[Simplex]:
    """Codimension-one faces, in lexicographic order."""
    if len(simplex) == 1:
        return []
    return [simplex[:i] + simplex[i + 1:] for i in range(len(simplex))][::-1]


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class SymmetricComplex:
    """Finite quotient complex with covering cocycle and filtration values.

    ``simplices`` is kept exactly as given (sorted vertex tuples) so that
    :func:`validate` can report duplicates and missing faces; use
    :meth:`from_maximal` to build a face-closed complex from facets.
    """

    values: Mapping[int, Real]
    simplices: tuple[Simplex, ...]
    cocycle: Mapping[tuple[int, int], int] = field(default_factory=dict)
    declared_dim: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", dict(sorted(self.values.items())))
        object.__setattr__(self, "simplices", tuple(tuple(sorted(s)) for s in self.simplices))
        w = {}
        for (u, v), bit in self.cocycle.items():
            if bit % 2:
                w[_edge(u, v)] = 1
        object.__setattr__(self, "cocycle", w)

    @classmethod
    def from_maximal(
        cls,
        values: Mapping[int, Real],
        maximal: Iterable[Sequence[int]],
        cocycle: Mapping[tuple[int, int], int] | None = None,
        declared_dim: int | None = None,
    ) -> "SymmetricComplex":
        simplices: set[Simplex] = {(v,) for v in values}
        for s in maximal:
            simplices.update(faces(tuple(sorted(s))))
        ordered = sorted(simplices, key=lambda s: (len(s), s))
        return cls(values, tuple(ordered), cocycle or {}, declared_dim)

    # -- basic structure ---------------------------------------------------

    @cached_property
    def simplex_set(self) -> frozenset[Simplex]:
        return frozenset(self.simplices)

    @property
    def vertices(self) -> list[int]:
        return list(self.values)

    @cached_property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplex_set), default=-1)

    def n_simplices(self, p: int) -> int:
        return sum(1 for s in self.simplex_set if len(s) == p + 1)

    def w(self, u: int, v: int) -> int:
        """Cocycle value on the edge ``{u, v}`` (0 when absent)."""
        return self.cocycle.get(_edge(u, v), 0)

    def entry(self, simplex: Simplex) -> Real:
        """Lower-star entry level: the largest vertex value."""
        return max(self.values[v] for v in simplex)

    @cached_property
    def levels(self) -> list[Real]:
        """Distinct vertex filtration values, ascending."""
        return sorted(set(self.values.values()))

    @cached_property
    def order(self) -> "FiltrationOrder":
        return filtration_order(self)

    def full(self) -> "SubcomplexRef":
        return SubcomplexRef(self, self.simplex_set)

    def sub(self, simplices: Iterable[Sequence[int]], close: bool = True) -> "SubcomplexRef":
        """Subcomplex generated by ``simplices`` (face closure unless ``close`` is false)."""
        gen = {tuple(sorted(s)) for s in simplices}
        if close:
            gen = {f for s in gen for f in faces(s)}
        return SubcomplexRef(self, frozenset(gen))

    def with_values(self, values: Mapping[int, Real]) -> "SymmetricComplex":
        return SymmetricComplex(values, self.simplices, self.cocycle, self.declared_dim)

    def __repr__(self) -> str:
        counts = [self.n_simplices(p) for p in range(self.dimension + 1)]
        return f"SymmetricComplex(dim={self.dimension}, f-vector={counts})"


@dataclass(frozen=True, eq=False)
class SubcomplexRef:
    """A set of simplices of a parent complex."""

    parent: SymmetricComplex
    simplices: frozenset[Simplex]

    def __iter__(self):
        return iter(self.simplices)

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubcomplexRef):
            return NotImplemented
        return self.parent is other.parent and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __le__(self, other: "SubcomplexRef") -> bool:
        return self.simplices <= other.simplices

    def __or__(self, other: "SubcomplexRef") -> "SubcomplexRef":
        return SubcomplexRef(self.parent, self.simplices | other.simplices)

    def __and__(self, other: "SubcomplexRef") -> "SubcomplexRef":
        return SubcomplexRef(self.parent, self.simplices & other.simplices)

    def of_dim(self, p: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == p + 1)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def is_closed(self) -> bool:
        return all(f in self.simplices for s in self.simplices for f in boundary_faces(s))

    def in_parent(self) -> bool:
        return self.simplices <= self.parent.simplex_set

    def entry(self) -> Real:
        """Level at which the whole subcomplex is present in the filtration."""
        return max(self.parent.entry(s) for s in self.simplices)


@dataclass(frozen=True)
class FiltrationOrder:
    simplices: tuple[Simplex, ...]
    levels: tuple[Real, ...]

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}


def filtration_order(c: SymmetricComplex) -> FiltrationOrder:
    """Lower-star order; ties broken by dimension, then vertex ids."""
    keyed = sorted((c.entry(s), len(s), s) for s in c.simplex_set)
    return FiltrationOrder(tuple(k[2] for k in keyed), tuple(k[0] for k in keyed))


def as_sub(x) -> SubcomplexRef:
    return x.full() if isinstance(x, SymmetricComplex) else x


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    simplex: Simplex | None
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return bool(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self):
        return "\n".join(str(v) for v in self.violations) or "valid"


def validate(c: SymmetricComplex) -> ValidationReport:
    """Collect every invariant violation of ``c``; never raises."""
    report = ValidationReport()
    add = report.violations.append

    seen: set[Simplex] = set()
    for s in c.simplices:
        if s in seen:
            add(Violation("duplicate", s, f"simplex {list(s)} listed more than once"))
        seen.add(s)
        if len(set(s)) != len(s):
            add(Violation("degenerate", s, f"simplex {list(s)} repeats a vertex"))

    for v, x in c.values.items():
        if not isinstance(x, Real) or (isinstance(x, float) and not math.isfinite(x)):
            add(Violation("filtration", (v,), f"vertex {v} has non-finite value {x!r}"))

    simplex_set = c.simplex_set
    for s in sorted(simplex_set, key=lambda s: (len(s), s)):
        if len(s) - 1 > MAX_DIM:
            add(Violation("dimension", s, f"simplex {list(s)} exceeds dimension {MAX_DIM}"))
        for v in s:
            if v not in c.values:
                add(Violation("vertex", s, f"simplex {list(s)} uses vertex {v} without a value"))
        for f in boundary_faces(s):
            if f not in simplex_set:
                add(Violation("face-closure", s, f"simplex {list(s)} is missing face {list(f)}"))
    for v in c.values:
        if (v,) not in simplex_set:
            add(Violation("face-closure", (v,), f"vertex {v} has a value but no 0-simplex"))

    if c.declared_dim is not None and c.declared_dim != c.dimension:
        add(Violation("dimension", None,
                      f"declared dimension {c.declared_dim} but simplices reach {c.dimension}"))

    for e in sorted(c.cocycle):
        if e not in simplex_set:
            add(Violation("cocycle-support", e, f"cocycle set on non-edge {list(e)}"))

    for t in sorted(s for s in simplex_set if len(s) == 3):
        a, b, d = t
        if (c.w(a, b) + c.w(b, d) + c.w(a, d)) % 2:
            add(Violation("cocycle", t, f"cocycle sums to 1 around triangle {list(t)}"))
    return report


# -- sublevels and subdivision -------------------------------------------


def sublevel(c: SymmetricComplex, t: Real) -> SubcomplexRef:
    """All simplices whose lower-star entry level is at most ``t``."""
    low = {v for v, x in c.values.items() if x <= t}
    return SubcomplexRef(c, frozenset(s for s in c.simplex_set if all(v in low for v in s)))


def holonomy(c: SymmetricComplex, cycle: Iterable[Sequence[int]]) -> int:
    """Sum of cocycle values over a list of edges, mod 2."""
    return sum(c.w(*e) for e in cycle) % 2


def _barycentric(c: SymmetricComplex) -> tuple[SymmetricComplex, dict[Simplex, int]]:
    if c.dimension > MAX_DIM:
        raise ValueError(f"subdivision supports dimension <= {MAX_DIM}, got {c.dimension}")
    ordered = sorted(c.simplex_set, key=lambda s: (len(s), s))
    bary = {s: i for i, s in enumerate(ordered)}
    values = {bary[s]: c.entry(s) for s in ordered}

    def flags(s: Simplex) -> Iterator[list[Simplex]]:
        if len(s) == 1:
            yield [s]
            return
        for f in boundary_faces(s):
            for chain in flags(f):
                yield chain + [s]

    maximal = []
    for s in maximal_simplices(c):
        for chain in flags(s):
            maximal.append(tuple(bary[x] for x in chain))

    # each barycentre is lifted to the sheet of the smallest vertex of its simplex
    cocycle = {}
    for m in maximal:
        for i, j in combinations(range(len(m)), 2):
            si, sj = ordered[m[i]], ordered[m[j]]
            if c.w(si[0], sj[0]):
                cocycle[_edge(m[i], m[j])] = 1
    return SymmetricComplex.from_maximal(values, maximal, cocycle), bary


def subdivide(c: SymmetricComplex) -> SymmetricComplex:
    """Barycentric subdivision; values by the max rule, cocycle pulled back."""
    return _barycentric(c)[0]


def subdivide_sub(c: SymmetricComplex, sub: SubcomplexRef, fine: SymmetricComplex | None = None) -> SubcomplexRef:
    """Image of ``sub`` inside ``subdivide(c)`` (pass ``fine`` to reuse it)."""
    sd, bary = _barycentric(c)
    target = fine if fine is not None else sd
    keep = {bary[s] for s in sub.simplices}
    return SubcomplexRef(target, frozenset(s for s in target.simplex_set if all(v in keep for v in s)))


# -- SCX text format -----------------------------------------------------


class ScxParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_value(token: str) -> Fraction:
    return Fraction(token)


def format_value(x) -> str:
    """Render a filtration value without binary rounding where possible."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    if isinstance(x, int):
        return str(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = abs(x.numerator) * 10**digits // x.denominator
    sign = "-" if x < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


_ID = re.compile(r"^\d+$")


def parse_scx(text: str) -> SymmetricComplex:
    """Parse SCX text; raise :class:`ScxParseError` with the offending line."""
    dim = None
    values: dict[int, Fraction] = {}
    maximal: list[tuple[Simplex, int]] = []
    cocycle: dict[tuple[int, int], tuple[int, int]] = {}
    seen_simplex: dict[Simplex, int] = {}

    def ids(tokens, lineno):
        for tok in tokens:
            if not _ID.match(tok):
                raise ScxParseError(f"bad vertex id {tok!r}", lineno)
        return [int(tok) for tok in tokens]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "dim":
            if dim is not None:
                raise ScxParseError("duplicate dim declaration", lineno)
            if len(rest) != 1 or not _ID.match(rest[0]):
                raise ScxParseError("expected 'dim <D>'", lineno)
            dim = int(rest[0])
        elif head == "v":
            if len(rest) != 2:
                raise ScxParseError("expected 'v <id> <value>'", lineno)
            (vid,) = ids(rest[:1], lineno)
            if vid in values:
                raise ScxParseError(f"duplicate vertex {vid}", lineno)
            try:
                values[vid] = parse_value(rest[1])
            except (ValueError, ZeroDivisionError):
                raise ScxParseError(f"bad filtration value {rest[1]!r}", lineno) from None
        elif head == "s":
            if not rest:
                raise ScxParseError("empty simplex", lineno)
            s = tuple(sorted(ids(rest, lineno)))
            if len(set(s)) != len(s):
                raise ScxParseError(f"simplex {list(s)} repeats a vertex", lineno)
            if s in seen_simplex:
                raise ScxParseError(f"duplicate simplex {list(s)}", lineno)
            seen_simplex[s] = lineno
            maximal.append((s, lineno))
        elif head == "w":
            if len(rest) != 3 or rest[2] not in ("0", "1"):
                raise ScxParseError("expected 'w <id> <id> <0|1>'", lineno)
            u, v = ids(rest[:2], lineno)
            e = _edge(u, v)
            if e in cocycle:
                raise ScxParseError(f"duplicate cocycle entry for edge {list(e)}", lineno)
            cocycle[e] = (int(rest[2]), lineno)
        else:
            raise ScxParseError(f"unknown record {head!r}", lineno)

    if not values:
        raise ScxParseError("no vertices")
    for s, lineno in maximal:
        for v in s:
            if v not in values:
                raise ScxParseError(f"simplex uses undeclared vertex {v}", lineno)
    c = SymmetricComplex.from_maximal(values, [s for s, _ in maximal],
                                      {e: b for e, (b, _) in cocycle.items()}, dim)
    for e, (_, lineno) in cocycle.items():
        if e not in c.simplex_set:
            raise ScxParseError(f"cocycle entry on non-edge {list(e)}", lineno)
    return c


def maximal_simplices(sub: SubcomplexRef | SymmetricComplex) -> list[Simplex]:
    sub = as_sub(sub)
    simplices = sub.simplices
    covered: set[Simplex] = set()
    for s in simplices:
        for f in boundary_faces(s):
            covered.add(f)
    return sorted((s for s in simplices if s not in covered), key=lambda s: (len(s), s))


def dump_scx(c: SymmetricComplex, header: str | None = None) -> str:
    lines = []
    if header:
        lines += [f"# {h}" for h in header.splitlines()]
    lines.append(f"dim {c.dimension}")
    lines += [f"v {v} {format_value(x)}" for v, x in c.values.items()]
    lines += ["s " + " ".join(map(str, s)) for s in maximal_simplices(c) if len(s) > 1]
    lines += [f"w {u} {v} 1" for (u, v) in sorted(c.cocycle)]
    return "\n".join(lines) + "\n"
