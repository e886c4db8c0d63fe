from fractions import Fraction

import pytest
from hypothesis import given

from dualstokes.alexander import SURFACE_SHIFT, cell_indices, compute_alexander, vertex_slots
from dualstokes.corpus import CURVES
from dualstokes.diagram import parse_diagram, reverse
from helpers import DATA, random_curves


def _entry(name):
    return next(e for e in CURVES if e.name == name)


def _values_by_probe(name):
    """Numbering read off the ray-casting oracle at the sector probes."""
    from dualstokes.geometry import sector_probes, winding_number

    e = _entry(name)
    return sorted({winding_number(e.polyline, p) for _, p in sector_probes(e.polyline, e.diagram)})


def test_ccw_circle():
    d = parse_diagram((DATA / "curves" / "circle.curve").read_text())
    phi = compute_alexander(d)
    assert phi[d.outer] == 0
    assert sorted(phi.values.values()) == [0, 1]


def test_figure_eight_lobes():
    assert _values_by_probe("figure-eight") == [-1, 0, 1]
    d = parse_diagram((DATA / "curves" / "figure-eight.curve").read_text())
    phi = compute_alexander(d)
    assert phi[d.outer] == 0
    assert sorted(phi.values.values()) == [-1, 0, 1]


def test_one_kink_regions():
    assert _values_by_probe("one-kink") == [0, 1, 2]
    d = parse_diagram((DATA / "curves" / "one-kink.curve").read_text())
    assert sorted(compute_alexander(d).values.values()) == [0, 1, 2]


def test_one_kink_vertex_index():
    d = _entry("one-kink").diagram
    phi = compute_alexander(d)
    (v,) = d.crossings
    assert sorted(vertex_slots(d, phi, v)) == [0, 1, 1, 2]
    assert cell_indices(d, phi).vertices[v] == 1


def test_figure_eight_vertex_index():
    d = _entry("figure-eight").diagram
    phi = compute_alexander(d)
    (v,) = d.crossings
    assert sorted(vertex_slots(d, phi, v)) == [-1, 0, 0, 1]
    assert cell_indices(d, phi).vertices[v] == 0


@given(random_curves())
def test_left_exceeds_right_by_one(sample):
    _, d = sample
    phi = compute_alexander(d)
    ind = cell_indices(d, phi)
    for e in d.edges:
        a = phi[d.right_region(e)]
        assert phi[d.region(e)] == a + 1
        assert ind.edges[e] == a + Fraction(1, 2)


@given(random_curves())
def test_vertex_slots_form_a_square(sample):
    _, d = sample
    phi = compute_alexander(d)
    for v in d.crossings:
        s = sorted(vertex_slots(d, phi, v))
        i = cell_indices(d, phi).vertices[v]
        assert s == [i - 1, i, i, i + 1]


@given(random_curves())
def test_surface_convention_is_a_shift(sample):
    _, d = sample
    a, b = compute_alexander(d), compute_alexander(d, "surface")
    assert all(b[r] == a[r] + SURFACE_SHIFT for r in d.regions)
    assert SURFACE_SHIFT == Fraction(-3, 2)


@given(random_curves())
def test_reversal_negates_numbering(sample):
    _, d = sample
    a, b = compute_alexander(d), compute_alexander(reverse(d))
    assert all(b[r] == -a[r] for r in d.regions)


@pytest.mark.parametrize("entry", CURVES, ids=lambda e: e.name)
def test_outer_region_is_zero(entry):
    d = entry.diagram
    assert compute_alexander(d)[d.outer] == 0
