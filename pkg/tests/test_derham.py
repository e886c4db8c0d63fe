from fractions import Fraction

import pytest
from hypothesis import given

from dualstokes.alexander import cell_indices, compute_alexander
from dualstokes.corpus import CURVES
from dualstokes.derham import (
    Chain,
    Cochain,
    DegreeMismatch,
    check_stokes_curve,
    d1_curve,
    d2_curve,
    evaluate,
    signed_power_sum,
)
from dualstokes.diagram import reverse
from helpers import random_curves

h = Fraction(1, 2)


@pytest.mark.parametrize("i,want", [(1, 2), (0, 0), (-3, -6)])
def test_edge_level_difference(i, want):
    assert signed_power_sum([(1, i + h), (-1, i - h)], 2) == want


@pytest.mark.parametrize("i,want", [(2, 12), (0, 0), (-1, -6)])
def test_region_level_difference(i, want):
    assert signed_power_sum([(1, i + 1), (-1, i), (-1, i), (1, i - 1)], 3) == want


def test_evaluation_is_linear():
    psi = Cochain(2, {"p": Fraction(5, 3)})
    x = Chain(2, {"p": 1})
    assert evaluate(psi, x + x.scale(-1)) == 0
    assert evaluate(psi, x.scale(3)) == 5


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        evaluate(Cochain(1, {}), Chain(2, {}))
    with pytest.raises(DegreeMismatch):
        Chain(1, {}) + Chain(2, {})


def test_one_kink_at_unit_index():
    d = next(e for e in CURVES if e.name == "one-kink").diagram
    phi = compute_alexander(d)
    (v,) = d.crossings
    assert d2_curve(d, phi, v) == 6
    assert d1_curve(d, phi, v) == 2
    (row,) = check_stokes_curve(d).rows
    assert (row.index, row.lhs, row.rhs) == (1, 1, 1)


def test_figure_eight_zero():
    d = next(e for e in CURVES if e.name == "figure-eight").diagram
    (row,) = check_stokes_curve(d).rows
    assert (row.index, row.lhs, row.rhs) == (0, 0, 0)
    assert row.passed


@given(random_curves(max_n=12))
def test_stokes_at_every_double_point(sample):
    _, d = sample
    phi = compute_alexander(d)
    ind = cell_indices(d, phi)
    rep = check_stokes_curve(d, phi)
    assert rep.passed
    for row in rep.rows:
        assert row.lhs == row.rhs == row.index == ind.vertices[row.vertex]
        assert d2_curve(d, phi, row.vertex) == 6 * row.index
        assert d1_curve(d, phi, row.vertex) == 2 * row.index


@given(random_curves())
def test_all_germs_doubles_edge_level(sample):
    _, d = sample
    phi = compute_alexander(d)
    for v in d.crossings:
        assert d1_curve(d, phi, v, all_germs=True) == 2 * d1_curve(d, phi, v)
    assert check_stokes_curve(d, phi, all_germs=True).passed


@given(random_curves())
def test_region_level_is_odd_under_reversal(sample):
    _, d = sample
    r = reverse(d)
    a, b = compute_alexander(d), compute_alexander(r)
    for v in d.crossings:
        assert d2_curve(r, b, v) == -d2_curve(d, a, v)
