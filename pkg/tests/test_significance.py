import random
from fractions import Fraction

import pytest

from krspec.significance import (
    CertificateError,
    SurfaceCertificate,
    SurfaceClass,
    SurfaceError,
    certificate_for,
    certified_weak_significant,
    classify_surface,
    degree_obstruction,
    dump_certificate,
    homology_critical_values,
    obstruction_between,
    parse_certificate,
    verify_surface_certificate,
)
from krspec.spaces import gen_rp
from krspec.spectrum import index_spectrum
from krspec.symcx import SubcomplexRef, SymmetricComplex, subdivide, subdivide_sub
from krspec.z2algebra import persistence

from conftest import random_values

RP2 = SurfaceClass(1, False)
DYCK = SurfaceClass(-1, False)
TORUS = SurfaceClass(0, True)
SPHERE = SurfaceClass(2, True)


def _tetra_shell(offset=0):
    v = [offset + i for i in range(4)]
    return [tuple(x for x in v if x != y) for y in v]


def _pairs(levels):
    return [(x.dimension, x.level) for x in levels]


def test_critical_values_constant_and_rp1():
    d = persistence(gen_rp(2, constant=Fraction(2)))
    assert homology_critical_values(d) == [2]
    c = gen_rp(1, values=[Fraction("0.2"), Fraction("0.4"), Fraction("0.5"), Fraction("0.9")])
    crit = homology_critical_values(persistence(c))
    assert set(crit) <= {Fraction("0.2"), Fraction("0.4"), Fraction("0.5"), Fraction("0.9")}


def test_certified_examples(dyck):
    d = persistence(gen_rp(2, constant=Fraction(2)))
    assert _pairs(certified_weak_significant(d)) == [(0, 2), (1, 2), (2, 2)]
    c = gen_rp(1, values=[Fraction("0.2"), Fraction("0.4"), Fraction("0.5"), Fraction("0.9")])
    assert _pairs(certified_weak_significant(persistence(c))) == [(0, Fraction("0.2")), (1, Fraction("0.9"))]
    certified = certified_weak_significant(persistence(dyck.complex))
    assert not [x for x in certified if 0 < x.level < dyck.f_max]


@pytest.mark.parametrize("seed", range(8))
def test_detector_outputs_are_levels_and_explained(seed):
    rng = random.Random(seed)
    base = gen_rp(1 + seed % 3)
    c = base.with_values(random_values(base, rng))
    d = persistence(c)
    crit = homology_critical_values(d)
    iv = index_spectrum(c).index_values
    assert set(crit) <= set(c.levels)
    for x in certified_weak_significant(d):
        assert x.level in set(crit) | set(iv)
        assert x.multiplicity >= 1


def test_classify_examples(rp, torus, dyck):
    assert classify_surface(rp[2].full()) == RP2
    assert classify_surface(torus.full()) == TORUS
    assert classify_surface(dyck.dyck_witness) == DYCK
    assert (RP2.genus, TORUS.genus, DYCK.genus, SPHERE.genus) == (1, 1, 3, 0)


def test_classification_survives_subdivision(rp, dyck):
    assert classify_surface(subdivide(rp[2]).full()) == RP2
    c = dyck.complex
    fine = subdivide(c)
    assert classify_surface(subdivide_sub(c, dyck.dyck_witness, fine)) == DYCK


def test_classify_failures():
    one = SymmetricComplex.from_maximal({0: 0, 1: 0, 2: 0}, [(0, 1, 2)])
    with pytest.raises(SurfaceError, match="edge"):
        classify_surface(one.full())
    pinched = SymmetricComplex.from_maximal({i: 0 for i in range(7)}, _tetra_shell(0) + _tetra_shell(3))
    with pytest.raises(SurfaceError, match="link of vertex 3"):
        classify_surface(pinched.full())
    apart = SymmetricComplex.from_maximal({i: 0 for i in range(8)}, _tetra_shell(0) + _tetra_shell(4))
    with pytest.raises(SurfaceError, match="not connected"):
        classify_surface(apart.full())
    mixed = SymmetricComplex.from_maximal({i: 0 for i in range(5)}, _tetra_shell(0) + [(3, 4)])
    with pytest.raises(SurfaceError, match="pure"):
        classify_surface(mixed.full())


def test_surface_class_invariants():
    with pytest.raises(SurfaceError):
        SurfaceClass(3, True)
    with pytest.raises(SurfaceError):
        SurfaceClass(1, True)
    with pytest.raises(SurfaceError):
        SurfaceClass(2, False)


@pytest.mark.parametrize(
    "source, target, expected",
    [(RP2, DYCK, True), (RP2, RP2, False), (DYCK, RP2, False), (SPHERE, RP2, True), (TORUS, RP2, False), (RP2, TORUS, True)],
)
def test_degree_obstruction(source, target, expected):
    assert degree_obstruction(source, target) is expected


def test_rp2_certificate_on_dyck(dyck):
    c = dyck.complex
    cert = SurfaceCertificate(dyck.rp2_witness, dyck.r_level, RP2, True)
    assert verify_surface_certificate(c, cert).passed
    low = SurfaceCertificate(dyck.rp2_witness, dyck.r_level - Fraction(1, 10**6), RP2, True)
    v = verify_surface_certificate(c, low)
    assert not v.containment and v.classification and v.essentiality
    assert v.lines()[-1] == "verdict rejected"


def test_bounding_sphere_in_rp3(rp):
    c = rp[3]
    tet = next(s for s in c.simplices if len(s) == 4)
    shell = c.sub([tuple(x for x in tet if x != v) for v in tet])
    level = max(c.values.values())
    claimed = verify_surface_certificate(c, SurfaceCertificate(shell, level, SPHERE, True))
    assert claimed.classification and not claimed.essentiality
    honest = verify_surface_certificate(c, SurfaceCertificate(shell, level, SPHERE, False))
    assert honest.passed


def test_witness_must_be_face_closed(rp):
    c = rp[2]
    tri = next(s for s in c.simplices if len(s) == 3)
    with pytest.raises(CertificateError, match="closed"):
        verify_surface_certificate(c, SurfaceCertificate(SubcomplexRef(c, frozenset([tri])), 0, RP2, True))


def test_obstruction_between_levels(dyck):
    c = dyck.complex
    lower = certificate_for(dyck.dyck_witness, level=0)
    upper = certificate_for(dyck.rp2_witness, level=dyck.r_level)
    ob = obstruction_between(c, lower, upper)
    assert ob.holds and ob.exact_collapse
    assert ob.lines()[-1] == "obstruction holds between 0 and 1"
    reverse = obstruction_between(c, upper, lower)
    assert not reverse.holds


def test_certificate_file_round_trip(dyck):
    cert = certificate_for(dyck.rp2_witness, level=dyck.r_level)
    text = dump_certificate(cert)
    assert text.splitlines()[1:5] == ["level 1", "chi 1", "orientable 0", "essential 1"]
    back = parse_certificate(text, dyck.complex)
    assert back == cert
    with pytest.raises(CertificateError, match="missing header"):
        parse_certificate("s 0 1 2\n", dyck.complex)
    with pytest.raises(CertificateError, match="unknown record"):
        parse_certificate("level 0\nchi 1\norientable 0\nessential 1\nt 0 1 2\n", dyck.complex)
