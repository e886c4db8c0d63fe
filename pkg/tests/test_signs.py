from fractions import Fraction

import pytest
from hypothesis import given

from dualstokes.alexander import cell_indices, compute_alexander
from dualstokes.corpus import CURVES
from dualstokes.diagram import DiagramError, mirror, reverse
from dualstokes.invariants import st_original
from dualstokes.signs import epsilon, gleams, outer_base_edges, untwisted_signs
from helpers import random_curves


def _entry(name):
    return next(e for e in CURVES if e.name == name).diagram


def test_unit_index_vertex_levels():
    d = _entry("one-kink")
    phi = compute_alexander(d)
    u = untwisted_signs(d, phi)
    ind = cell_indices(d, phi)
    (v,) = d.crossings
    edge = sum(u.edge[g] * ind.edges[d.edge_of(g[1])] ** 2 for g in u.incoming)
    assert edge == 2
    terms = sorted((phi[d.region(h)], u.region[(v, h)]) for h in d.sectors(v))
    # slots 0, 1, 1, 2 with signs +, -, -, +: -2*1 + 8 + 0
    assert terms == [(0, 1), (1, -1), (1, -1), (2, 1)]
    assert sum(s * x**3 for x, s in terms) == 6


def test_zero_index_vertex_levels():
    d = _entry("figure-eight")
    phi = compute_alexander(d)
    u = untwisted_signs(d, phi)
    (v,) = d.crossings
    assert sum(u.region[(v, h)] * phi[d.region(h)] ** 3 for h in d.sectors(v)) == 0


def test_figure_eight_both_base_edges():
    d = _entry("figure-eight")
    bases = outer_base_edges(d)
    assert len(bases) == 2
    for b in bases:
        (e,) = epsilon(d, b).values()
        assert e in (1, -1)
    assert len({st_original(d, base=b).point for b in bases}) == 1


def test_one_kink_epsilon_matches_gleam_level():
    d = _entry("one-kink")
    phi = compute_alexander(d)
    eps = epsilon(d)
    tw = gleams(d, phi, eps)
    (v,) = d.crossings
    region = sum(tw.gleam_local[(v, h)] * phi[d.region(h)] ** 3 for h in d.sectors(v)) / 3
    assert region == eps[v] * cell_indices(d, phi).vertices[v]


def test_gleam_instance_at_index_two():
    # local gleams +-1/2 on the slots i+1, i, i, i-1 with eps = +1
    i = 2
    local = [(Fraction(1, 2), i + 1), (Fraction(-1, 2), i), (Fraction(-1, 2), i),
             (Fraction(1, 2), i - 1)]
    assert Fraction(1, 3) * sum(g * x**3 for g, x in local) == 2


@given(random_curves())
def test_local_gleams_cancel(sample):
    _, d = sample
    phi = compute_alexander(d)
    tw = gleams(d, phi, epsilon(d))
    for v in d.crossings:
        assert sum(tw.gleam_local[(v, h)] for h in d.sectors(v)) == 0
    assert sum(tw.gleam.values()) == 0


def test_one_kink_gleams_sum_to_zero():
    d = _entry("one-kink")
    phi = compute_alexander(d)
    assert sum(gleams(d, phi, epsilon(d)).gleam.values()) == 0


@given(random_curves())
def test_reversal_and_mirror_negate_epsilon(sample):
    _, d = sample
    b = outer_base_edges(d)[0]
    eps = epsilon(d, b)
    r = reverse(d)
    m = mirror(d)
    assert epsilon(r, r.edge_of(d[b].twin)) == {v: -e for v, e in eps.items()}
    assert epsilon(m, b) == {v: -e for v, e in eps.items()}


@given(random_curves())
def test_conventions_differ_by_sign(sample):
    _, d = sample
    a, b = epsilon(d, None, "paper"), epsilon(d, None, "opposite")
    assert b == {v: -e for v, e in a.items()}


def test_epsilon_needs_a_single_curve():
    from dualstokes.movie import SliceEvent, apply_event, empty_diagram

    two = apply_event(apply_event(empty_diagram(), SliceEvent("birth", ("outer", "ccw"))).diagram,
                      SliceEvent("birth", ("outer", "ccw")), "n").diagram
    with pytest.raises(DiagramError):
        epsilon(two)
