"""Fixture generators: projective spaces, Rayleigh quotients and the Dyck complex.

Every projective space is produced as the quotient of a triangulated space by
a free involution.  The cocycle comes from choosing one representative
("sheet 0") in every orbit: a cover edge ``u v`` gets the label
``sheet(u) + sheet(v)`` mod 2, which does not depend on the lift chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from numbers import Real
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .symcx import (
    SubcomplexRef,
    SymmetricComplex,
    faces,
    parse_scx,
    validate,
)


class GeneratorError(ValueError):
    pass


def _quotient(
    cover: Iterable[Sequence[Hashable]],
    orbit: Callable[[Hashable], Hashable],
    sheet: Callable[[Hashable], int],
    ids: dict[Hashable, int],
    glued: Callable[[tuple], bool] = lambda s: True,
) -> tuple[list[tuple[int, ...]], dict[tuple[int, int], int]]:
    """Push cover simplices down to the quotient and read off the cocycle.

    ``glued(s)`` says whether the involution carries ``s`` onto a different
    cover simplex.  Each quotient simplex must receive exactly two cover
    simplices when glued and one otherwise; anything else means the
    identification is not simplicial at this mesh size.
    """
    cover = [tuple(s) for s in cover]
    maximal = set()
    cocycle: dict[tuple[int, int], int] = {}
    preimages: dict[tuple[int, ...], set] = {}
    for s in cover:
        for f in faces(tuple(sorted(s, key=repr))):
            preimages.setdefault(tuple(sorted(ids[orbit(v)] for v in f)), set()).add(frozenset(f))
        q = tuple(sorted(ids[orbit(v)] for v in s))
        if len(set(q)) != len(q):
            raise GeneratorError("involution identifies two vertices of one simplex")
        maximal.add(q)
        for u, v in combinations(s, 2):
            e = tuple(sorted((ids[orbit(u)], ids[orbit(v)])))
            bit = (sheet(u) + sheet(v)) % 2
            if cocycle.setdefault(e, bit) != bit:
                raise GeneratorError(f"quotient is not simplicial near edge {list(e)}")
    for q, pre in preimages.items():
        want = 2 if glued(tuple(next(iter(pre)))) else 1
        if len(pre) != want:
            raise GeneratorError(f"quotient is not simplicial at {list(q)}")
    return sorted(maximal), {e: b for e, b in cocycle.items() if b}


def _sphere_quotient(points: np.ndarray, facets: Sequence[Sequence[int]], values=None) -> tuple[SymmetricComplex, np.ndarray]:
    """Antipodal quotient of a centrally symmetric triangulated sphere.

    Returns the complex and, per quotient vertex, the coordinates of its
    sheet-0 representative.  Quotient ids follow first appearance in
    ``points`` so nested meshes keep their old vertex ids.
    """
    key = {tuple(np.round(p, 9) + 0.0): i for i, p in enumerate(points)}
    antipode = np.empty(len(points), dtype=int)
    for i, p in enumerate(points):
        j = key.get(tuple(np.round(-p, 9) + 0.0))
        if j is None:
            raise GeneratorError("point set is not centrally symmetric")
        antipode[i] = j

    def is_rep(i):
        p = points[i]
        nz = np.flatnonzero(np.abs(p) > 1e-9)
        return p[nz[0]] > 0

    ids: dict[int, int] = {}
    reps = []
    for i in range(len(points)):
        r = i if is_rep(i) else int(antipode[i])
        if r not in ids:
            ids[r] = len(ids)
            reps.append(r)
    orbit = lambda i: i if is_rep(i) else int(antipode[i])  # noqa: E731
    sheet = lambda i: 0 if is_rep(i) else 1  # noqa: E731
    maximal, cocycle = _quotient(facets, orbit, sheet, ids)
    rep_points = points[reps]
    if values is None:
        values = {i: 0 for i in range(len(reps))}
    return SymmetricComplex.from_maximal(values, maximal, cocycle), rep_points


# -- projective spaces ---------------------------------------------------


def _cross_polytope_sd(n: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Barycentric subdivision of the boundary of the cross-polytope in R^(n+1)."""
    m = n + 1
    cells = []
    for k in range(1, m + 1):
        for axes in combinations(range(m), k):
            for signs in product((1, -1), repeat=k):
                cells.append(tuple(zip(axes, signs)))
    idx = {cell: i for i, cell in enumerate(cells)}
    points = np.zeros((len(cells), m))
    for cell, i in idx.items():
        for a, s in cell:
            points[i, a] = s / len(cell)
        points[i] /= np.linalg.norm(points[i])
    facets = []
    for signs in product((1, -1), repeat=m):
        for perm in permutations(range(m)):
            chain = []
            for k in range(1, m + 1):
                chain.append(idx[tuple(sorted((a, signs[a]) for a in perm[:k]))])
            facets.append(tuple(chain))
    return points, facets


def _icosahedron() -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    phi = (1 + 5**0.5) / 2
    pts = []
    for a, b in product((1, -1), repeat=2):
        pts += [(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)]
    pts = np.array(pts, dtype=float)
    near = lambda i, j: abs(np.linalg.norm(pts[i] - pts[j]) - 2) < 1e-9  # noqa: E731
    faces3 = [t for t in combinations(range(12), 3) if near(t[0], t[1]) and near(t[1], t[2]) and near(t[0], t[2])]
    return pts / np.linalg.norm(pts, axis=1, keepdims=True), faces3


def icosphere(level: int) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Icosahedron refined ``level`` times by 1-to-4 splits, projected to S^2."""
    pts, tris = _icosahedron()
    points = [p for p in pts]
    for _ in range(level):
        cache: dict[tuple[int, int], int] = {}

        def mid(i, j):
            e = (i, j) if i < j else (j, i)
            if e not in cache:
                p = points[i] + points[j]
                points.append(p / np.linalg.norm(p))
                cache[e] = len(points) - 1
            return cache[e]

        new = []
        for a, b, c in tris:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        tris = new
    return np.array(points), tris


def _rp_base(n: int) -> SymmetricComplex:
    if n == 1:
        angles = np.arange(8) * np.pi / 4
        pts = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        pts[np.abs(pts) < 1e-12] = 0.0
        return _sphere_quotient(pts, [(k, (k + 1) % 8) for k in range(8)])[0]
    if n == 2:
        pts, tris = _icosahedron()
        return _sphere_quotient(pts, tris)[0]
    if n == 3:
        pts, facets = _cross_polytope_sd(3)
        return _sphere_quotient(pts, facets)[0]
    raise GeneratorError(f"RP^{n} not supported (n must be 1, 2 or 3)")


def gen_rp(n: int, values: Sequence[Real] | None = None, constant: Real | None = None) -> SymmetricComplex:
    """Triangulated RP^n with the generating covering cocycle.

    RP^1 has 4 vertices (octagon / antipody), RP^2 is the 6-vertex
    hemi-icosahedron, RP^3 the 40-vertex quotient of the subdivided
    16-cell boundary.  Vertex values come from ``values`` (one per vertex,
    in id order) or ``constant`` (default 0).
    """
    base = _rp_base(n)
    nv = len(base.values)
    if values is not None:
        if len(values) != nv:
            raise GeneratorError(f"RP^{n} fixture has {nv} vertices, got {len(values)} values")
        vals = {v: x for v, x in zip(base.values, values)}
    else:
        vals = {v: (constant if constant is not None else 0) for v in base.values}
    return base.with_values(vals)


def gen_torus(values: Sequence[Real] | None = None) -> SymmetricComplex:
    """9-vertex torus (3x3 grid) whose cocycle is the first coordinate class."""
    vid = lambda i, j: 3 * (i % 3) + (j % 3)  # noqa: E731
    tris = []
    for i, j in product(range(3), repeat=2):
        tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
        tris.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    cocycle = {}
    for t in tris:
        for a, b in combinations(t, 2):
            if {a // 3, b // 3} == {0, 2}:
                cocycle[tuple(sorted((a, b)))] = 1
    vals = {v: (values[v] if values is not None else 0) for v in range(9)}
    return SymmetricComplex.from_maximal(vals, tris, cocycle)


# -- Rayleigh quotients --------------------------------------------------


def gen_rayleigh(A, level: int) -> SymmetricComplex:
    """Quotient icosphere carrying f([x]) = x^T A x / x^T x."""
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise GeneratorError("matrix must be 3x3")
    if not np.array_equal(A, A.T):
        raise GeneratorError("matrix must be symmetric")
    if not 0 <= level <= 6:
        raise GeneratorError("mesh level must lie in 0..6")
    pts, tris = icosphere(level)
    c, reps = _sphere_quotient(pts, tris)
    vals = {i: float(x @ A @ x / (x @ x)) for i, x in enumerate(reps)}
    return c.with_values(vals)


# -- the Dyck-surface counterexample -------------------------------------


@dataclass(frozen=True)
class GeneratorParams:
    r: Fraction = Fraction(1)
    R: Fraction = Fraction(4)
    mode: str = "combinatorial"

    def __post_init__(self):
        if not (self.r > 0 and self.R > 0):
            raise GeneratorError("r and R must be positive")
        if not self.R > 3 * self.r:
            raise GeneratorError(f"need R > 3r, got R={self.R}, r={self.r}")
        if self.mode not in ("combinatorial", "metric"):
            raise GeneratorError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class DyckFixture:
    complex: SymmetricComplex
    dyck_witness: SubcomplexRef
    rp2_witness: SubcomplexRef
    r_level: Real
    f_max: Real


Point = tuple[Fraction, Fraction, Fraction]


def _square(low: Point, axes: tuple[int, int], hi: Point) -> list[tuple[Point, ...]]:
    """Two Kuhn triangles of an axis-aligned rectangle from ``low`` to ``hi``."""
    i, j = axes

    def step(p, *ks):
        q = list(p)
        for k in ks:
            q[k] = hi[k]
        return tuple(q)

    return [
        (low, step(low, i), step(low, i, j)),
        (low, step(low, j), step(low, i, j)),
    ]


class _CubeComplex:
    """Kuhn-triangulated rectilinear box; points are interned as integer ids."""

    def __init__(self, xs, ys, zs):
        self.extent = (xs[-1], ys[-1], zs[-1])
        self.coords: list[Point] = []
        self.id_of: dict[Point, int] = {}
        self.boundary: list[bool] = []
        self.tets: set[tuple[int, ...]] = set()
        for a, b, c in product(range(len(xs) - 1), range(len(ys) - 1), range(len(zs) - 1)):
            lo = (xs[a], ys[b], zs[c])
            hi = (xs[a + 1], ys[b + 1], zs[c + 1])
            for perm in permutations(range(3)):
                chain = [lo]
                p = list(lo)
                for k in perm:
                    p[k] = hi[k]
                    chain.append(tuple(p))
                self.tets.add(tuple(sorted(self.point(q) for q in chain)))

    def point(self, p: Point) -> int:
        i = self.id_of.get(p)
        if i is None:
            i = self.id_of[p] = len(self.coords)
            self.coords.append(p)
            self.boundary.append(any(abs(p[k]) == self.extent[k] for k in range(3)))
        return i

    def in_boundary_face(self, sigma) -> bool:
        pts = [self.coords[v] for v in sigma]
        return any(
            all(p[k] == side for p in pts)
            for k in range(3)
            for side in (self.extent[k], -self.extent[k])
        )

    def simplices(self) -> set[tuple[int, ...]]:
        return {f for t in self.tets for f in faces(t)}

    def stellar(self, sigma: tuple[int, ...], surfaces: list[set]) -> int:
        """Stellar subdivision at the barycentre of ``sigma`` (tets and tracked surfaces)."""
        pts = [self.coords[v] for v in sigma]
        m = self.point(tuple(sum(p[k] for p in pts) / len(pts) for k in range(3)))
        sig = set(sigma)

        def split(collection):
            out = set()
            for t in collection:
                if sig <= set(t):
                    rest = [p for p in t if p not in sig]
                    for v in sigma:
                        out.add(tuple(sorted([m] + rest + [u for u in sigma if u != v])))
                else:
                    out.add(t)
            return out

        self.tets = split(self.tets)
        for i, s in enumerate(surfaces):
            surfaces[i] = split(s)
        return m


def _rect_distance(p: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    d = np.maximum(np.maximum(lo - p, 0), p - hi)
    return np.sqrt((d * d).sum(axis=-1))


def gen_dyck(params: GeneratorParams | None = None) -> DyckFixture:
    """RP^3 = box / (antipodes on the boundary) with Dyck's surface inside.

    Dyck's surface is the equatorial plane z = 0 (an RP^2 after the boundary
    identification) with two square holes joined by a U-shaped tube of
    half-width r whose legs sit at x = +-R.  The RP^2 witness is the full
    equatorial plane.  Chords of the box triangulation that join two
    surface vertices without lying on the surface are removed by stellar
    subdivision, so the level-0 sublevel is exactly the surface.
    """
    params = params or GeneratorParams()
    r, R = Fraction(params.r), Fraction(params.R)
    a, b = R + 3 * r, 3 * r
    h1, h2 = 2 * r, 4 * r
    c = h2 + 2 * r
    xs = [-a, -R - r, -R + r, R - r, R + r, a]
    ys = [-b, -r, r, b]
    zs = [-c, -h2, -h1, Fraction(0), h1, h2, c]
    box = _CubeComplex(xs, ys, zs)

    # U-shaped solid: two legs over the holes plus the bridge on top
    legs = [(-R - r, -R + r), (R - r, R + r)]
    cells = [((x0, -r, Fraction(0)), (x1, r, h1)) for x0, x1 in legs]
    cells += [((x0, -r, h1), (x1, r, h2)) for x0, x1 in zip(xs[1:4], xs[2:5])]

    def cell_faces(lo, hi):
        out = []
        for k in range(3):
            i, j = [m for m in range(3) if m != k]
            for side in (lo[k], hi[k]):
                flo = list(lo)
                fhi = list(hi)
                flo[k] = fhi[k] = side
                out.append((tuple(flo), tuple(fhi), (i, j)))
        return out

    rect_count: dict[tuple, int] = {}
    for lo, hi in cells:
        for flo, fhi, axes in cell_faces(lo, hi):
            rect_count[(flo, fhi, axes)] = rect_count.get((flo, fhi, axes), 0) + 1
    tube = {key for key, k in rect_count.items() if k == 1}
    plane = set()
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            plane.add(((x0, y0, Fraction(0)), (x1, y1, Fraction(0)), (0, 1)))
    dyck_rects = plane ^ tube
    rp2_rects = plane

    def tris(rects):
        return {tuple(sorted(box.point(q) for q in t)) for lo, hi, axes in rects for t in _square(lo, axes, hi)}

    surfaces = [tris(dyck_rects), tris(rp2_rects)]

    # a simplex spanned by boundary points but crossing the interior would be
    # glued to its antipode; give each such simplex an interior vertex
    while True:
        crossing = [
            s for s in box.simplices()
            if len(s) > 1 and all(box.boundary[v] for v in s) and not box.in_boundary_face(s)
        ]
        if not crossing:
            break
        low = min(len(s) for s in crossing)
        for sigma in sorted(s for s in crossing if len(s) == low):
            if any(set(sigma) <= set(t) for t in box.tets):
                box.stellar(sigma, surfaces)

    # make the surface a full subcomplex: subdivide chords, lowest dimension first
    while True:
        dyck_simplices = {f for t in surfaces[0] for f in faces(t)}
        dyck_vertices = {s[0] for s in dyck_simplices if len(s) == 1}
        chords = [s for s in box.simplices() if s not in dyck_simplices and all(v in dyck_vertices for v in s)]
        if not chords:
            break
        low = min(len(s) for s in chords)
        for sigma in sorted(s for s in chords if len(s) == low):
            if all(box.boundary[v] for v in sigma):
                raise GeneratorError("mesh too coarse: surface chord on the identified boundary")
            if any(set(sigma) <= set(t) for t in box.tets):
                box.stellar(sigma, surfaces)

    dyck_tris, rp2_tris = surfaces
    dyck_vertices = {v for t in dyck_tris for v in t}
    rp2_vertices = {v for t in rp2_tris for v in t}

    def negate(p):
        return tuple(-x for x in p)

    coords = box.coords
    antipode = [box.id_of[negate(p)] if box.boundary[i] else i for i, p in enumerate(coords)]

    def orbit(v):
        return max(v, antipode[v], key=lambda u: coords[u])

    def sheet(p):
        return int(orbit(p) != p)

    all_vertices = {v for t in box.tets for v in t}
    reps = sorted({orbit(v) for v in all_vertices}, key=lambda v: coords[v][::-1])
    ids = {p: i for i, p in enumerate(reps)}
    maximal, cocycle = _quotient(box.tets, orbit, sheet, ids, glued=box.in_boundary_face)

    if params.mode == "combinatorial":
        f_max = R
        values = {}
        for p in reps:
            if p in dyck_vertices:
                values[ids[p]] = Fraction(0)
            elif p in rp2_vertices:
                values[ids[p]] = r
            else:
                values[ids[p]] = f_max
        r_level: Real = r
    else:
        rects = sorted(dyck_rects)
        lo = np.array([[float(x) for x in rect[0]] for rect in rects])
        hi = np.array([[float(x) for x in rect[1]] for rect in rects])
        values = {}
        for p in reps:
            cands = {coords[p], coords[antipode[p]]}
            dist = min(float(_rect_distance(np.array([float(x) for x in q]), lo, hi).min()) for q in cands)
            values[ids[p]] = 0.0 if p in dyck_vertices else dist
        f_max = max(values.values())
        r_level = max(values[ids[orbit(p)]] for p in rp2_vertices)

    cx = SymmetricComplex.from_maximal(values, maximal, cocycle)
    to_q = lambda t: tuple(sorted(ids[orbit(p)] for p in t))  # noqa: E731
    dyck = cx.sub([to_q(t) for t in dyck_tris])
    rp2 = cx.sub([to_q(t) for t in rp2_tris])
    return DyckFixture(cx, dyck, rp2, r_level, f_max)


# -- files ---------------------------------------------------------------


class LoadError(ValueError):
    pass


def load_scx(path) -> SymmetricComplex:
    """Read and validate an SCX file."""
    path = Path(path)
    if not path.exists():
        raise LoadError(f"file not found: {path}")
    c = parse_scx(path.read_text())
    report = validate(c)
    if report:
        raise LoadError(f"invalid complex in {path}:\n{report}")
    return c
