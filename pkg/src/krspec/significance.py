"""Detectors for (weakly) homotopy-significant levels beyond the index sweep.

Three kinds of evidence are kept apart and labelled:

* ``candidate`` -- levels where sublevel homology changes (necessary only);
* ``certified`` -- jumps of the essential rank, i.e. of the image of
  H_*(sublevel) in H_*(whole).  A deformation of the larger sublevel into
  a smaller one would factor that map through the smaller sublevel, so a
  jump rules it out;
* ``certificate`` -- a checked surface pair whose degree obstruction
  certifies a level that homology alone cannot see.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from numbers import Real
from .symcx import (
    SubcomplexRef,
    SymmetricComplex,
    boundary_faces,
    format_value,
    maximal_simplices,
    parse_value,
    sublevel,
)
from .z2algebra import INF, PersistenceDiagram, chain_boundary, chain_is_boundary


# -- homology screens ----------------------------------------------------


def homology_critical_values(d: PersistenceDiagram) -> list[Real]:
    """Sorted distinct levels where some bar is born or dies."""
    out = set()
    for _, b, death in d.all_bars():
        out.add(b)
        if death != INF:
            out.add(death)
    return sorted(out)


@dataclass(frozen=True, order=True)
class CertifiedLevel:
    dimension: int
    level: Real
    multiplicity: int = 1


def certified_weak_significant(d: PersistenceDiagram) -> list[CertifiedLevel]:
    """Levels where the essential rank jumps, per dimension."""
    out = []
    for p in d.dims():
        counts: dict[Real, int] = defaultdict(int)
        for b in d.essential(p):
            counts[b] += 1
        for level in sorted(counts):
            out.append(CertifiedLevel(p, level, counts[level]))
    return out


# -- surfaces ------------------------------------------------------------


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceClass:
    euler_characteristic: int
    orientable: bool

    def __post_init__(self):
        if self.euler_characteristic > 2:
            raise SurfaceError(f"no closed surface has Euler characteristic {self.euler_characteristic}")
        if self.orientable and self.euler_characteristic % 2:
            raise SurfaceError("an orientable closed surface has even Euler characteristic")
        if not self.orientable and self.euler_characteristic > 1:
            raise SurfaceError("a non-orientable closed surface has Euler characteristic <= 1")

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        return (2 - chi) // 2 if self.orientable else 2 - chi

    @property
    def nonorientable_genus(self) -> int:
        """Genus on the scale where orientable genus g counts as 2g."""
        return 2 - self.euler_characteristic

    def __str__(self):
        kind = "orientable" if self.orientable else "non-orientable"
        return f"chi={self.euler_characteristic} {kind} genus={self.genus}"


def classify_surface(sub: SubcomplexRef) -> SurfaceClass:
    """Euler characteristic and orientability of a closed connected surface."""
    tops = maximal_simplices(sub)
    if not tops or any(len(s) != 3 for s in tops):
        raise SurfaceError("not a pure 2-dimensional complex")
    tris = tops
    edge_tris: dict[tuple, list] = defaultdict(list)
    for t in tris:
        for e in boundary_faces(t):
            edge_tris[e].append(t)
    for e, ts in sorted(edge_tris.items()):
        if len(ts) != 2:
            raise SurfaceError(f"not closed: edge {list(e)} lies in {len(ts)} triangles")

    link: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for t in tris:
        for v in t:
            a, b = [x for x in t if x != v]
            link[v][a].append(b)
            link[v][b].append(a)
    for v in sorted(link):
        graph = link[v]
        start = next(iter(graph))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in graph[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(graph) or any(len(n) != 2 for n in graph.values()):
            raise SurfaceError(f"not a surface: link of vertex {v} is not a single cycle")

    # coherent orientation search over the dual graph
    sign = {tris[0]: 1}
    queue = [tris[0]]
    orientable = True
    for t in queue:
        for e in boundary_faces(t):
            (u,) = [x for x in edge_tris[e] if x != t]
            induced = sign[t] * _incidence(t, e)
            want = -induced * _incidence(u, e)
            if u not in sign:
                sign[u] = want
                queue.append(u)
            elif sign[u] != want:
                orientable = False
    if len(sign) != len(tris):
        raise SurfaceError("not connected")
    n_vertices = len({v for t in tris for v in t})
    chi = n_vertices - len(edge_tris) + len(tris)
    return SurfaceClass(chi, orientable)


def _incidence(t: tuple, e: tuple) -> int:
    """Sign of edge e in the oriented boundary of the sorted triangle t."""
    (missing,) = [i for i, x in enumerate(t) if x not in e]
    return -1 if missing % 2 else 1


def degree_obstruction(source: SurfaceClass, target: SurfaceClass) -> bool:
    """True when no map source -> target can have mod-2 degree one.

    A degree-one map cannot raise genus, so the obstruction holds exactly
    when the target's non-orientable genus is strictly larger.
    """
    return target.nonorientable_genus > source.nonorientable_genus


# -- certificates --------------------------------------------------------


@dataclass(frozen=True)
class SurfaceCertificate:
    witness: SubcomplexRef
    level: Real
    claimed_class: SurfaceClass
    claims_essential: bool


@dataclass
class CertificateVerdict:
    containment: bool
    classification: bool
    essentiality: bool
    observed_class: SurfaceClass | None
    observed_essential: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.containment and self.classification and self.essentiality

    def lines(self) -> list[str]:
        ok = lambda b: "pass" if b else "fail"  # noqa: E731
        out = [
            f"containment {ok(self.containment)}",
            f"classification {ok(self.classification)}",
            f"essentiality {ok(self.essentiality)}",
            f"observed_class {self.observed_class if self.observed_class else 'none'}",
            f"observed_essential {int(self.observed_essential)}",
        ]
        out += [f"note {n}" for n in self.notes]
        out.append(f"verdict {'all-checks-pass' if self.passed else 'rejected'}")
        return out


class CertificateError(ValueError):
    pass


def verify_surface_certificate(c: SymmetricComplex, cert: SurfaceCertificate) -> CertificateVerdict:
    """Check containment, surface class and essentiality independently."""
    w = cert.witness
    if not w.simplices:
        raise CertificateError("empty witness")
    if not w.is_closed():
        raise CertificateError("witness is not closed under faces")
    if not w.simplices <= c.simplex_set:
        raise CertificateError("witness uses simplices missing from the complex")
    notes = []

    contained = w.simplices <= sublevel(c, cert.level).simplices

    observed = None
    try:
        observed = classify_surface(w)
    except SurfaceError as exc:
        notes.append(str(exc))
    classified = observed == cert.claimed_class

    tris = [s for s in w.simplices if len(s) == 3]
    if chain_boundary(tris):
        notes.append("witness triangles do not form a mod-2 cycle")
        essential = False
    else:
        essential = not chain_is_boundary(c, tris)
    return CertificateVerdict(contained, classified, essential == cert.claims_essential,
                              observed, essential, notes)


@dataclass
class ObstructionVerdict:
    lower_level: Real
    upper_level: Real
    lower_ok: bool
    upper_ok: bool
    degree_obstructed: bool
    exact_collapse: bool

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok and self.degree_obstructed and self.lower_level < self.upper_level

    def lines(self) -> list[str]:
        lo, hi = format_value(self.lower_level), format_value(self.upper_level)
        return [
            f"lower_certificate {'pass' if self.lower_ok else 'fail'}",
            f"upper_certificate {'pass' if self.upper_ok else 'fail'}",
            f"degree_obstruction {int(self.degree_obstructed)}",
            f"exact_collapse {int(self.exact_collapse)}",
            f"obstruction {'holds' if self.holds else 'not-established'} between {lo} and {hi}",
        ]


def obstruction_between(c: SymmetricComplex, lower: SurfaceCertificate, upper: SurfaceCertificate) -> ObstructionVerdict:
    """Combine two certificates into a significance-beyond-index verdict.

    ``upper`` (entering at its level) cannot be homotoped into the lower
    surface when the degree obstruction holds.  ``exact_collapse`` records
    whether every sublevel strictly below ``upper.level`` equals the lower
    witness, which makes the sublevel side of the argument exact.
    """
    lv = verify_surface_certificate(c, lower)
    uv = verify_surface_certificate(c, upper)
    below = [t for t in c.levels if t < upper.level]
    exact = bool(below) and below[0] >= lower.level and all(
        sublevel(c, t).simplices == lower.witness.simplices for t in below if t >= lower.level
    ) and sublevel(c, below[-1]).simplices == lower.witness.simplices
    return ObstructionVerdict(
        lower.level, upper.level, lv.passed, uv.passed,
        degree_obstruction(upper.claimed_class, lower.claimed_class), exact,
    )


def certificate_for(witness: SubcomplexRef, level: Real | None = None, essential: bool | None = None) -> SurfaceCertificate:
    """Certificate claiming what the witness actually is (for generators and the CLI)."""
    cls = classify_surface(witness)
    if level is None:
        level = witness.entry()
    if essential is None:
        essential = not chain_is_boundary(witness.parent, [s for s in witness.simplices if len(s) == 3])
    return SurfaceCertificate(witness, level, cls, essential)


def dump_certificate(cert: SurfaceCertificate) -> str:
    lines = [
        "# surface certificate",
        f"level {format_value(cert.level)}",
        f"chi {cert.claimed_class.euler_characteristic}",
        f"orientable {int(cert.claimed_class.orientable)}",
        f"essential {int(cert.claims_essential)}",
    ]
    lines += ["s " + " ".join(map(str, s)) for s in sorted(s for s in cert.witness.simplices if len(s) == 3)]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, c: SymmetricComplex) -> SurfaceCertificate:
    header: dict[str, str] = {}
    tris = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head in ("level", "chi", "orientable", "essential"):
            if head in header:
                raise CertificateError(f"line {lineno}: duplicate {head}")
            if len(rest) != 1:
                raise CertificateError(f"line {lineno}: expected '{head} <value>'")
            header[head] = rest[0]
        elif head == "s":
            try:
                tris.append(tuple(sorted(int(x) for x in rest)))
            except ValueError:
                raise CertificateError(f"line {lineno}: bad vertex id") from None
        else:
            raise CertificateError(f"line {lineno}: unknown record {head!r}")
    missing = [k for k in ("level", "chi", "orientable", "essential") if k not in header]
    if missing:
        raise CertificateError(f"missing header lines: {', '.join(missing)}")
    if not tris:
        raise CertificateError("empty witness")
    try:
        level: Real = parse_value(header["level"])
        chi = int(header["chi"])
        orientable = header["orientable"] == "1"
        essential = header["essential"] == "1"
        cls = SurfaceClass(chi, orientable)
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateError(f"bad header: {exc}") from None
    return SurfaceCertificate(c.sub(tris), level, cls, essential)


# -- combined report ------------------------------------------------------


@dataclass
class SignificanceReport:
    candidates: list[Real]
    certified: list[CertifiedLevel]
    index_values: list[Real] = field(default_factory=list)
    certificates: list[tuple[str, CertificateVerdict]] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"candidate {format_value(t)}" for t in self.candidates]
        out += [f"certified {x.dimension} {format_value(x.level)} {x.multiplicity}" for x in self.certified]
        out += [f"index {k} {format_value(v)}" for k, v in enumerate(self.index_values, start=1)]
        for name, verdict in self.certificates:
            out += [f"certificate {name} {line}" for line in verdict.lines()]
        return out

    def to_dict(self) -> dict:
        return {
            "candidate": [format_value(t) for t in self.candidates],
            "certified": [[x.dimension, format_value(x.level), x.multiplicity] for x in self.certified],
            "index": {str(k): format_value(v) for k, v in enumerate(self.index_values, start=1)},
            "certificate": {name: v.lines() for name, v in self.certificates},
        }


def beyond_index(report: SignificanceReport) -> list[Real]:
    """Certified levels that the index sweep does not explain."""
    known = set(report.index_values) | set(report.candidates)
    return sorted({x.level for x in report.certified if x.level not in known})

