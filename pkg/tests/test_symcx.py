from fractions import Fraction

import pytest

from krspec.spaces import gen_rp
from krspec.symcx import (
    ScxParseError,
    SymmetricComplex,
    boundary_faces,
    dump_scx,
    faces,
    format_value,
    holonomy,
    maximal_simplices,
    parse_scx,
    subdivide,
    subdivide_sub,
    sublevel,
    validate,
)
from krspec.z2algebra import betti_numbers

TRIANGLE = SymmetricComplex.from_maximal({0: 1, 1: 2, 2: 3}, [(0, 1, 2)])


def test_faces_and_boundary():
    assert sorted(faces((0, 1, 2))) == [(0,), (0, 1), (0, 1, 2), (0, 2), (1,), (1, 2), (2,)]
    assert sorted(boundary_faces((0, 1, 2))) == [(0, 1), (0, 2), (1, 2)]


def test_from_maximal_is_face_closed():
    assert TRIANGLE.n_simplices(0) == 3 and TRIANGLE.n_simplices(1) == 3 and TRIANGLE.n_simplices(2) == 1
    assert validate(TRIANGLE).ok


def test_lower_star_entry_and_order():
    assert TRIANGLE.entry((0, 1)) == 2
    levels = TRIANGLE.order.levels
    assert list(levels) == sorted(levels)
    # faces come before cofaces at equal level
    index = TRIANGLE.order.index
    for s in TRIANGLE.simplices:
        for f in boundary_faces(s):
            assert index[f] < index[s]


@pytest.mark.parametrize(
    "complex_, kind",
    [
        (SymmetricComplex({0: 0, 1: 0}, ((0,), (1,), (0, 1), (0, 1))), "duplicate"),
        (SymmetricComplex({0: 0, 1: 0}, ((0,), (1,), (0, 1, 2))), "vertex"),
        (SymmetricComplex({0: 0, 1: 0, 2: 0}, ((0,), (1,), (2,), (0, 1, 2))), "face-closure"),
        (SymmetricComplex({0: float("nan"), 1: 0}, ((0,), (1,), (0, 1))), "filtration"),
        (SymmetricComplex({0: 0, 1: 0, 2: 0}, ((0,), (1,), (2,), (0, 1)), {(1, 2): 1}), "cocycle-support"),
        (SymmetricComplex.from_maximal({0: 0, 1: 0, 2: 0}, [(0, 1, 2)], {(0, 1): 1}), "cocycle"),
        (SymmetricComplex({0: 0}, ((0,),), declared_dim=2), "dimension"),
    ],
)
def test_validate_reports_each_defect(complex_, kind):
    report = validate(complex_)
    assert kind in report.kinds()
    assert not report.ok


def test_sublevel_is_closed_and_monotone():
    c = gen_rp(2, values=[0, 1, 2, 3, 4, 5])
    previous = frozenset()
    for t in c.levels:
        s = sublevel(c, t)
        assert s.is_closed()
        assert previous <= s.simplices
        previous = s.simplices
    assert sublevel(c, Fraction(-1)).simplices == frozenset()


def test_holonomy_of_generator_loop(rp):
    c = rp[1]
    loop = [tuple(s) for s in c.simplices if len(s) == 2]
    assert holonomy(c, loop) == 1


def test_subdivision_preserves_topology_and_cover(rp):
    c = rp[2]
    fine = subdivide(c)
    assert validate(fine).ok
    assert betti_numbers(fine) == betti_numbers(c) == (1, 1, 1)
    # cocycle still generates: some loop is odd
    from krspec.spectrum import index_of

    assert index_of(fine.full()) == 3


def test_subdivide_sub_tracks_subcomplex(rp):
    c = rp[2]
    tri = next(s for s in c.simplices if len(s) == 3)
    sub = c.sub([tri])
    fine_sub = subdivide_sub(c, sub)
    assert fine_sub.is_closed()
    assert fine_sub.of_dim(2) and len(fine_sub.of_dim(2)) == 6


def test_round_trip(rp):
    for c in rp.values():
        back = parse_scx(dump_scx(c, "header line"))
        assert back.simplex_set == c.simplex_set
        assert back.cocycle == c.cocycle
        assert back.values == c.values


def test_parse_errors_name_the_line():
    with pytest.raises(ScxParseError, match="no vertices"):
        parse_scx("")
    text = "dim 1\nv 0 0\nv 1 0\nv 2 0\ns 0 1\nw 0 2 1\n"
    with pytest.raises(ScxParseError) as info:
        parse_scx(text)
    assert info.value.line == 6
    with pytest.raises(ScxParseError, match="duplicate vertex"):
        parse_scx("v 0 0\nv 0 1\n")
    with pytest.raises(ScxParseError, match="undeclared"):
        parse_scx("v 0 0\ns 0 1\n")
    with pytest.raises(ScxParseError, match="unknown record"):
        parse_scx("v 0 0\nq 1\n")


def test_maximal_simplices():
    assert maximal_simplices(TRIANGLE) == [(0, 1, 2)]


@pytest.mark.parametrize(
    "value, text",
    [(Fraction(1, 5), "0.2"), (Fraction(9, 10), "0.9"), (Fraction(1, 3), "1/3"), (3, "3"),
     (Fraction(-1, 4), "-0.25"), (2.5, "2.5"), (float("inf"), "inf")],
)
def test_format_value(value, text):
    assert format_value(value) == text
