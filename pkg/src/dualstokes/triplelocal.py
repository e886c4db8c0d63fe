"""Local cubical model of a surface triple point.

Three coordinate planes through the origin cut a ball into 8 octants,
12 quarter-plane sheet pieces and 6 half-axis germs of the 3 double
lines.  An octant with sign vector s carries x + (s1+s2+s3)/2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Literal

from .findiff import normalization

__all__ = [
    "Germ",
    "LevelCheck",
    "Octant",
    "Sheet",
    "SurfaceTotals",
    "TriplePointBall",
    "build_ball",
    "check_stokes_surface",
    "d1_surface_eval",
    "d2_surface_eval",
    "d3_surface_eval",
    "flip_coorientation",
    "region_coefficients",
    "shumakovitch_surface",
]

Signs = tuple[int, int, int]
Level = Literal["edge", "face", "region", "stokes"]


@dataclass(frozen=True)
class Octant:
    signs: Signs
    value: Fraction
    sign: int


@dataclass(frozen=True)
class Sheet:
    """Quarter plane lying in the coordinate plane ``axis = 0``.

    ``side`` holds the signs of the two remaining coordinates, in
    increasing axis order.
    """

    axis: int
    side: tuple[int, int]
    index: Fraction
    sign: int
    octants: tuple[Signs, Signs]


@dataclass(frozen=True)
class Germ:
    """Half of double line ``axis`` on the ``direction`` side of t."""

    axis: int
    direction: int
    index: Fraction
    sign: int


@dataclass(frozen=True)
class TriplePointBall:
    x: Fraction
    octants: tuple[Octant, ...]
    sheets: tuple[Sheet, ...]
    germs: tuple[Germ, ...]
    point_sign: int = 1

    def values(self) -> Counter:
        return Counter(o.value for o in self.octants)

    def sheet_pieces(self, s: Signs) -> list[Sheet]:
        """The three sheet pieces bounding the octant ``s``."""
        return [f for f in self.sheets if s in f.octants]


def _other(axis: int) -> tuple[int, int]:
    return tuple(j for j in range(3) if j != axis)  # type: ignore[return-value]


def build_ball(x) -> TriplePointBall:
    """Ball around a triple point of index ``x``.

    Each double line points towards increasing index, so a germ is
    signed +1 when it leaves t and -1 when it points at t.  A sheet is
    signed +1 when its two boundary germs both leave or both enter t.
    An octant takes the product of the signs of its three bounding
    line germs.
    """
    x = Fraction(x)
    octants = tuple(
        Octant(s, x + Fraction(sum(s), 2), s[0] * s[1] * s[2])
        for s in product((1, -1), repeat=3)
    )
    value = {o.signs: o.value for o in octants}
    sheets = []
    for axis in range(3):
        j, k = _other(axis)
        for a, b in product((1, -1), repeat=2):
            adj = []
            for t in (1, -1):
                s = [0, 0, 0]
                s[axis], s[j], s[k] = t, a, b
                adj.append(tuple(s))
            idx = (value[adj[0]] + value[adj[1]]) / 2
            sheets.append(Sheet(axis, (a, b), idx, 1 if a == b else -1, tuple(adj)))
    germs = []
    for axis in range(3):
        for t in (1, -1):
            adj = [o.value for o in octants if o.signs[axis] == t]
            germs.append(Germ(axis, t, sum(adj, Fraction(0)) / 4, t))
    return TriplePointBall(x, octants, tuple(sheets), tuple(germs))


def flip_coorientation(ball: TriplePointBall) -> TriplePointBall:
    """Reverse every coorientation: values negate, lines reverse."""
    return build_ball(-ball.x)


@dataclass(frozen=True)
class LevelCheck:
    level: Level
    raw: Fraction
    normalization: Fraction
    value: Fraction
    expected: Fraction
    paired: Fraction | None = None  # other side of a Stokes pairing

    @property
    def passed(self) -> bool:
        return self.value == self.expected and self.paired in (None, self.expected)


def _check(level: Level, raw: Fraction, norm: Fraction, x: Fraction) -> LevelCheck:
    return LevelCheck(level, raw, norm, norm * raw, x)


def _edge_raw(ball: TriplePointBall) -> Fraction:
    return sum((g.sign * g.index**2 for g in ball.germs), Fraction(0))


def _face_raw(ball: TriplePointBall) -> Fraction:
    return sum((f.sign * f.index**3 for f in ball.sheets), Fraction(0))


def _region_raw(ball: TriplePointBall) -> Fraction:
    return sum((o.sign * o.value**4 for o in ball.octants), Fraction(0))


def d1_surface_eval(ball: TriplePointBall) -> LevelCheck:
    return _check("edge", _edge_raw(ball), normalization(1, 3), ball.x)


def d2_surface_eval(ball: TriplePointBall) -> LevelCheck:
    return _check("face", _face_raw(ball), normalization(2, 3), ball.x)


def d3_surface_eval(ball: TriplePointBall) -> LevelCheck:
    return _check("region", _region_raw(ball), normalization(3, 1), ball.x)


def check_stokes_surface(ball: TriplePointBall) -> LevelCheck:
    """Region-level evaluation on the dual 3-cell against the face-level
    evaluation on its boundary; passes when both normalise to x."""
    region = d3_surface_eval(ball)
    face = d2_surface_eval(ball)
    return LevelCheck(
        "stokes", region.raw, region.normalization, region.value, ball.x, face.value
    )


def region_coefficients(ball: TriplePointBall) -> dict[Fraction, int]:
    """Region signs summed per octant value, ordered from the top value."""
    c: Counter = Counter()
    for o in ball.octants:
        c[o.value] += o.sign
    return dict(sorted(c.items(), reverse=True))


@dataclass(frozen=True)
class SurfaceTotals:
    point: Fraction
    edge: Fraction
    face: Fraction
    region: Fraction

    @property
    def passed(self) -> bool:
        return self.point == self.edge == self.face == self.region


def shumakovitch_surface(balls: Iterable[TriplePointBall]) -> SurfaceTotals:
    balls = list(balls)
    z = Fraction(0)
    return SurfaceTotals(
        sum((b.point_sign * b.x for b in balls), z),
        normalization(1, 3) * sum((_edge_raw(b) for b in balls), z),
        normalization(2, 3) * sum((_face_raw(b) for b in balls), z),
        normalization(3, 1) * sum((_region_raw(b) for b in balls), z),
    )
