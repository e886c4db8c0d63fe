from fractions import Fraction

import pytest
from hypothesis import given

from dualstokes.corpus import CURVES
from dualstokes.diagram import (
    DiagramSyntaxError,
    NonRealizableError,
    OuterFaceError,
    cells,
    is_isomorphic,
    mirror,
    parse_diagram,
    reverse,
    serialize_diagram,
    trace_faces,
)
from dualstokes.geometry import random_sample
from helpers import DATA, random_curves, raw_faces

CIRCLE = (DATA / "curves" / "circle.curve").read_text()
FIGURE_EIGHT = (DATA / "curves" / "figure-eight.curve").read_text()
ONE_KINK = (DATA / "curves" / "one-kink.curve").read_text()


def test_circle_counts():
    d = parse_diagram(CIRCLE)
    # one closed arc without crossings, stored as a single edge
    assert (d.V, d.E, d.F) == (0, 1, 2)
    assert len(d.strands()) == 1
    assert len(trace_faces(d)) == 2


def test_figure_eight_counts():
    d = parse_diagram(FIGURE_EIGHT)
    assert (d.V, d.E, d.F) == (1, 2, 3)
    assert d.V - d.E + d.F == 2
    # two lobes bounded by one half-edge each, the outside by two
    assert sorted(len(f) for f in trace_faces(d)) == [1, 1, 2]


def test_one_kink_faces():
    assert len(trace_faces(parse_diagram(ONE_KINK))) == 3


def test_interleaved_gauss_word_is_not_planar():
    text = (DATA / "invalid" / "interleaved.curve").read_text()
    assert raw_faces(text) != 2 + 2  # V + 2 for two crossings
    with pytest.raises(NonRealizableError, match="V - E \\+ F"):
        parse_diagram(text)


def test_reflected_vertex_rejected_iff_face_count_breaks():
    rejected = 0
    for n, seed in [(n, s) for n in range(2, 7) for s in range(4)]:
        _, d = random_sample(n, seed)
        text = serialize_diagram(d)
        for v in d.crossings:
            g = d.sectors(v)
            bad = text.replace(f"vertex {v} " + " ".join(g), f"vertex {v} " + " ".join(g[::-1]))
            if raw_faces(bad) == d.V + 2:
                parse_diagram(bad)
            else:
                rejected += 1
                with pytest.raises(NonRealizableError):
                    parse_diagram(bad)
    assert rejected


@pytest.mark.parametrize(
    "text",
    [
        "curve x\nvertex p a b c\n",
        "curve x\nfrobnicate a\n",
        "curve x\nvertex p a b c d\nvertex q a e f g\n",
    ],
)
def test_syntax_errors(text):
    with pytest.raises(DiagramSyntaxError):
        parse_diagram(text)


def test_base_must_touch_outer_region():
    d = next(e for e in CURVES if e.name == "one-kink").diagram
    inner = [e for e in d.edges if d.outer not in (d.region(e), d.right_region(e))]
    assert inner
    with pytest.raises(OuterFaceError):
        d.with_base(inner[0])


def test_figure_eight_vertex_slots():
    d = parse_diagram(FIGURE_EIGHT)
    c = cells(d)
    (v,) = c[0]
    # four sector slots; the outside fills two of them
    slots = [d.region(h) for h in d.sectors(v.id)]
    assert len(slots) == 4 and len(set(slots)) == 3


def test_circle_edge_has_two_regions():
    d = parse_diagram(CIRCLE)
    (e,) = d.edges
    assert d.region(e) != d.right_region(e)


def test_one_kink_loop_edge_regions():
    d = parse_diagram(ONE_KINK)
    outer = d.outer
    loop = [e for e in d.edges if outer not in (d.region(e), d.right_region(e))]
    assert len(loop) == 1
    (e,) = loop
    # the small loop separates its own face from the middle face
    sides = {d.region(e), d.right_region(e)}
    assert len(sides) == 2 and outer not in sides


@given(random_curves())
def test_serialisation_round_trip(sample):
    _, d = sample
    again = parse_diagram(serialize_diagram(d))
    assert serialize_diagram(again) == serialize_diagram(d)
    assert is_isomorphic(again, d)


@given(random_curves())
def test_euler_and_face_count(sample):
    _, d = sample
    assert d.F == d.V + 2
    assert raw_faces(serialize_diagram(d)) == d.F
    assert d.E == 2 * d.V


@given(random_curves())
def test_symmetries_are_involutions(sample):
    _, d = sample
    assert is_isomorphic(reverse(reverse(d)), d)
    assert is_isomorphic(mirror(mirror(d)), d)
    assert is_isomorphic(reverse(d), d, up_to_symmetry=True)


@pytest.mark.parametrize("name", ["circle", "figure-eight", "one-kink"])
def test_data_files_match_coordinates(name):
    entry = next(e for e in CURVES if e.name == name)
    text = (DATA / "curves" / f"{name}.curve").read_text()
    assert is_isomorphic(parse_diagram(text), entry.diagram)


def test_every_data_curve_parses():
    for p in sorted((DATA / "curves").glob("*.curve")):
        d = parse_diagram(p.read_text())
        assert d.F == d.V + 2, p.name


def test_isomorphism_separates_the_two_one_crossing_maps():
    a = parse_diagram(FIGURE_EIGHT)
    b = parse_diagram(ONE_KINK)
    assert not is_isomorphic(a, b, up_to_symmetry=True)
    assert Fraction(a.V) == b.V
