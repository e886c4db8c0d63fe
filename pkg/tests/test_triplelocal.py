from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given

from dualstokes.findiff import central_difference, monomial
from dualstokes.triplelocal import (
    build_ball,
    check_stokes_surface,
    d1_surface_eval,
    d2_surface_eval,
    d3_surface_eval,
    flip_coorientation,
    region_coefficients,
    shumakovitch_surface,
)
from helpers import halves

h = Fraction(1, 2)


def test_values_at_one_half():
    assert build_ball(h).values() == Counter({2: 1, 1: 3, 0: 3, -1: 1})


def test_values_next_to_unbounded_region():
    assert build_ball(Fraction(-3, 2)).values() == Counter({0: 1, -1: 3, -2: 3, -3: 1})


@given(halves)
def test_sheet_between_top_octants(x):
    ball = build_ball(x)
    top = next(o for o in ball.octants if o.value == x + Fraction(3, 2))
    for f in ball.sheet_pieces(top.signs):
        assert f.index == x + 1


@pytest.mark.parametrize("x,raw", [(h, 3), (0, 0), (Fraction(5, 2), 15)])
def test_edge_level(x, raw):
    c = d1_surface_eval(build_ball(x))
    assert (c.raw, c.value) == (raw, x)


@pytest.mark.parametrize("x,raw", [(h, 9), (0, 0), (Fraction(-3, 2), -27)])
def test_face_level(x, raw):
    c = d2_surface_eval(build_ball(x))
    assert (c.raw, c.value) == (raw, x)


@pytest.mark.parametrize("x,raw", [(h, 12), (0, 0), (Fraction(3, 2), 36)])
def test_region_level(x, raw):
    c = d3_surface_eval(build_ball(x))
    assert (c.raw, c.value) == (raw, x)


def test_region_level_terms_at_one_half():
    ball = build_ball(h)
    terms = sorted(((o.value, o.sign) for o in ball.octants), reverse=True)
    assert sum(s * v**4 for v, s in terms) == 16 - 3 + 0 - 1


@pytest.mark.parametrize("x", [h, 0])
def test_stokes_pairing_examples(x):
    c = check_stokes_surface(build_ball(x))
    assert c.value == c.paired == x and c.passed


@given(halves)
def test_all_levels_equal_x(x):
    ball = build_ball(x)
    for c in (d1_surface_eval(ball), d2_surface_eval(ball), d3_surface_eval(ball),
              check_stokes_surface(ball)):
        assert c.passed and c.value == x


@given(halves)
def test_raw_sums_are_finite_differences(x):
    # the three raw sums are 3, 3 and 1 copies of D^r x^(r+1)
    ball = build_ball(x)
    assert d1_surface_eval(ball).raw == 3 * central_difference(1, 1, monomial(2), x)
    assert d2_surface_eval(ball).raw == 3 * central_difference(2, 1, monomial(3), x)
    assert d3_surface_eval(ball).raw == central_difference(3, 1, monomial(4), x)


@given(halves)
def test_region_coefficients(x):
    c = region_coefficients(build_ball(x))
    assert list(c) == [x + Fraction(3, 2), x + h, x - h, x - Fraction(3, 2)]
    assert list(c.values()) == [1, -3, 3, -1]


@given(halves)
def test_cube_combinatorics(x):
    ball = build_ball(x)
    assert (len(ball.octants), len(ball.sheets), len(ball.germs)) == (8, 12, 6)
    assert sum(f.sign == 1 for f in ball.sheets) == 6
    for o in ball.octants:
        assert len(ball.sheet_pieces(o.signs)) == 3
    # each germ points towards increasing index
    for g in ball.germs:
        assert g.index == x + g.direction * h


@given(halves)
def test_flip_negates_every_level(x):
    a, b = build_ball(x), flip_coorientation(build_ball(x))
    for f in (d1_surface_eval, d2_surface_eval, d3_surface_eval):
        assert f(b).value == -f(a).value


def test_totals():
    t = shumakovitch_surface([build_ball(h)])
    assert (t.point, t.edge, t.face, t.region) == (h, h, h, h)
    t = shumakovitch_surface([])
    assert (t.point, t.edge, t.face, t.region) == (0, 0, 0, 0)
    t = shumakovitch_surface([build_ball(h), build_ball(-h)])
    assert (t.point, t.edge, t.face, t.region) == (0, 0, 0, 0) and t.passed
