"""Local maps d1, d2 on the dual complex of a curve and the normalised
Stokes compatibility at each double point."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .alexander import AlexanderCochain, cell_indices, compute_alexander
from .diagram import CurveDiagram
from .dual import DualComplex, build_dual
from .findiff import normalization
from .signs import UntwistedSigns, untwisted_signs

__all__ = [
    "Chain",
    "Cochain",
    "DegreeMismatch",
    "StokesReport",
    "StokesRow",
    "check_stokes_curve",
    "d1_curve",
    "d1_local",
    "d2_curve",
    "evaluate",
    "signed_power_sum",
]


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Cochain:
    degree: int
    values: Mapping[str, Fraction]


@dataclass(frozen=True)
class Chain:
    degree: int
    terms: Mapping[str, int] = field(default_factory=dict)

    def __add__(self, other: "Chain") -> "Chain":
        if other.degree != self.degree:
            raise DegreeMismatch("cannot add chains of different degree")
        c = Counter(self.terms)
        for k, v in other.terms.items():
            c[k] += v
        return Chain(self.degree, dict(c))

    def scale(self, a: int) -> "Chain":
        return Chain(self.degree, {k: a * v for k, v in self.terms.items()})


def evaluate(psi: Cochain, chain: Chain) -> Fraction:
    if psi.degree != chain.degree:
        raise DegreeMismatch(f"cannot pair a degree-{psi.degree} cochain with a degree-{chain.degree} chain")
    return sum((k * psi.values[x] for x, k in chain.terms.items()), Fraction(0))


def signed_power_sum(terms: Iterable[tuple[int, Fraction]], power: int) -> Fraction:
    return sum((s * Fraction(x) ** power for s, x in terms), Fraction(0))


def d1_local(
    d: CurveDiagram,
    phi: AlexanderCochain,
    v: str,
    *,
    all_germs: bool = False,
    signs: UntwistedSigns | None = None,
) -> Cochain:
    """d1 at the double point ``v`` as a cochain on its four edge germs.

    By default only the two germs pointing into ``v`` contribute.
    """
    u = signs if signs is not None else untwisted_signs(d, phi)
    ind = cell_indices(d, phi)
    vals = {}
    for h in d.sectors(v):
        counted = all_germs or (v, h) in u.incoming
        vals[h] = u.edge[(v, h)] * ind.edges[d.edge_of(h)] ** 2 if counted else Fraction(0)
    return Cochain(1, vals)


def d1_curve(
    d: CurveDiagram,
    phi: AlexanderCochain,
    v: str,
    edge: str | None = None,
    *,
    all_germs: bool = False,
) -> Fraction:
    """Sum of sgn * ind^2 over the relevant germs at ``v`` (all of them, or
    those of one dual 1-cell when ``edge`` is given)."""
    loc = d1_local(d, phi, v, all_germs=all_germs)
    return sum((x for h, x in loc.values.items() if edge is None or d.edge_of(h) == edge), Fraction(0))


def d2_curve(d: CurveDiagram, phi: AlexanderCochain, v: str, signs: UntwistedSigns | None = None) -> Fraction:
    u = signs if signs is not None else untwisted_signs(d, phi)
    return signed_power_sum(((u.region[(v, h)], phi[d.region(h)]) for h in d.sectors(v)), 3)


@dataclass(frozen=True)
class StokesRow:
    vertex: str
    index: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs == self.index


@dataclass(frozen=True)
class StokesReport:
    name: str
    rows: tuple[StokesRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def check_stokes_curve(
    d: CurveDiagram,
    phi: AlexanderCochain | None = None,
    *,
    all_germs: bool = False,
    dual: DualComplex | None = None,
) -> StokesReport:
    """(1/3!) <d2 phi, X2> against (1/2!) <d1 phi, dX2> at every crossing.

    With ``all_germs`` the d1 side counts all four germs and is divided
    by the multiplicity 2.
    """
    phi = phi if phi is not None else compute_alexander(d)
    dual = dual if dual is not None else build_dual(d, phi)
    u = untwisted_signs(d, phi)
    ind = cell_indices(d, phi)
    d2 = Cochain(2, {v: d2_curve(d, phi, v, u) for v in d.crossings})
    m = 2 if all_germs else 1
    rows = []
    for v in d.crossings:
        loc = d1_local(d, phi, v, all_germs=all_germs, signs=u)
        loop = Chain(1, {t.germ: 1 for t in dual.loops[v]})
        lhs = normalization(2, 1) * evaluate(d2, Chain(2, {v: 1}))
        rhs = normalization(1, m) * evaluate(loc, loop)
        rows.append(StokesRow(v, ind.vertices[v], lhs, rhs))
    return StokesReport(d.name, tuple(rows))
