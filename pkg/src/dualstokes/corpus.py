"""Shipped example curves and movies.

Every curve comes with integer coordinates so the ray-casting winding
number can check its numbering.  Expected values are recorded only where
they were derived independently of the formulas under test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .diagram import CurveDiagram
from .geometry import diagram_from_polyline
from .movie import Movie, SliceEvent, run_movie

__all__ = [
    "CURVES",
    "CorpusEntry",
    "MOVIES",
    "RIII_PAIR",
    "corpus",
    "movie_corpus",
    "riii_pair_movies",
    "single_riii_movie",
]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    polyline: tuple[tuple[int, int], ...]
    expected: Mapping[str, Fraction] = field(default_factory=dict)

    @property
    def diagram(self) -> CurveDiagram:
        return diagram_from_polyline(self.polyline, name=self.name)


CURVES: tuple[CorpusEntry, ...] = (
    CorpusEntry("circle", ((0, 0), (4, 0), (4, 4), (0, 4)),
                {"st1": Fraction(0), "st": Fraction(0)}),
    CorpusEntry("figure-eight", ((0, 0), (4, 4), (4, 0), (0, 4)),
                {"st1": Fraction(0), "st": Fraction(0)}),
    CorpusEntry("one-kink", ((0, 0), (10, 0), (10, 10), (0, 10), (1, 6), (5, 3), (5, 6), (1, 3)),
                {"st1": Fraction(1), "st": Fraction(1)}),
    CorpusEntry("two-kink", ((0, 0), (10, 0), (9, 3), (6, 6), (6, 3), (9, 6), (10, 10), (0, 10),
                             (1, 6), (4, 3), (4, 6), (1, 3)),
                {"st": Fraction(2)}),
    CorpusEntry("trefoil", ((0, -10), (22, -1), (26, 15), (10, 20), (-9, 5), (-12, -19),
                            (0, -30), (12, -19), (9, 5), (-10, 20), (-26, 15), (-22, -1))),
    CorpusEntry("six-crossing", ((20, 12), (8, 20), (10, 8), (9, 10), (15, 18), (3, 7))),
)


def corpus() -> list[tuple[CorpusEntry, CurveDiagram]]:
    return [(e, e.diagram) for e in CURVES]


def _ev(line: str) -> SliceEvent:
    tok = line.split()
    wit: list[str] = []
    if "with" in tok:
        j = tok.index("with")
        tok, wit = tok[:j], tok[j + 1:]
    return SliceEvent(tok[0], tuple(tok[1:]), tuple(wit))


# three circles inside a fourth, two fingers, one triangle flip
_RIII_SETUP = (
    "birth outer ccw",
    "birth m0o ccw",
    "birth m0o ccw",
    "birth m0o ccw",
    "rii-create m1i m2i",
    "rii-create m3i m4pW",
    "rii-create m4pN m5pN",
    "riii m4pN",
)

MOVIES: dict[str, tuple[str, ...]] = {
    "sphere": ("birth outer ccw", "death m0o"),
    # one circle splits and rejoins: Euler characteristic 1 - 2 + 1 = 0
    "torus": ("birth outer ccw", "saddle m0o m0o", "saddle m0i m1s1i", "death m0o"),
    "two-spheres-tubed": (
        "birth outer ccw",
        "birth outer ccw",
        "saddle m0i m1i",
        "saddle m0o m0o",
        "death m0o",
        "death m3s1o",
    ),
    "two-triple-points": _RIII_SETUP + (
        "riii m4pE",
        "rii-annihilate m4pS",
        "rii-annihilate m4qE",
        "rii-annihilate m6pN",
        "death m11o0",
        "death m11o1",
        "death m10o0",
        "death m0o",
    ),
}


# the same surface without and with a flip followed by its inverse
_AFTER_DEATHS = (
    "death m11i0",
    "death m11i1",
    "death m10i0",
    "death m0i",
)
RIII_PAIR: tuple[tuple[str, ...], tuple[str, ...]] = (
    _RIII_SETUP[:-1] + (
        "rii-annihilate m4pS",
        "rii-annihilate m5pS",
        "rii-annihilate m6pE",
        "death m9i0",
        "death m9i1",
        "death m8i0",
        "death m0i",
    ),
    _RIII_SETUP + (
        "riii m7a0",
        "rii-annihilate m4pS",
        "rii-annihilate m5pS",
        "rii-annihilate m6pE",
    ) + _AFTER_DEATHS,
)


def movie_corpus() -> dict[str, Movie]:
    return {name: run_movie([_ev(x) for x in evs], name) for name, evs in MOVIES.items()}


def single_riii_movie() -> Movie:
    """Open movie: from the empty frame up to just after one triangle flip.

    An oriented closed surface has an even number of triple points, so a
    single flip only occurs in a piece of surface.
    """
    return run_movie([_ev(x) for x in _RIII_SETUP], "single-riii", closed=False)


def riii_pair_movies() -> tuple[Movie, Movie]:
    """Closed movies differing by a triangle flip and its inverse."""
    before, after = RIII_PAIR
    return (run_movie([_ev(x) for x in before], "riii-pair-before"),
            run_movie([_ev(x) for x in after], "riii-pair-after"))
