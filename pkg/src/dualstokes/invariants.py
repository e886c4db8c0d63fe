"""St_(1) and Arnold's St at the point, edge and region levels."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .alexander import AlexanderCochain, cell_indices, compute_alexander
from .diagram import CurveDiagram, OuterFaceError
from .findiff import normalization
from .signs import (
    EpsilonConvention,
    TwistedSigns,
    UntwistedSigns,
    epsilon,
    gleams,
    outer_base_edges,
    untwisted_signs,
)

__all__ = [
    "InvariantReport",
    "LedgerRow",
    "base_sweep",
    "per_vertex_ledger",
    "st1",
    "st_original",
]


@dataclass(frozen=True)
class InvariantReport:
    family: str
    point: Fraction
    edge: Fraction
    region: Fraction

    @property
    def passed(self) -> bool:
        return self.point == self.edge == self.region

    @property
    def value(self) -> Fraction:
        return self.point


def st1(
    d: CurveDiagram,
    phi: AlexanderCochain | None = None,
    signs: UntwistedSigns | None = None,
) -> InvariantReport:
    phi = phi if phi is not None else compute_alexander(d)
    u = signs if signs is not None else untwisted_signs(d, phi)
    ind = cell_indices(d, phi)
    point = sum(ind.vertices.values(), Fraction(0))
    edge = sum((u.edge[g] * ind.edges[d.edge_of(g[1])] ** 2 for g in u.incoming), Fraction(0))
    region = sum((s * phi[d.region(h)] ** 3 for (v, h), s in u.region.items()), Fraction(0))
    return InvariantReport(
        "St1", point, normalization(1, 1) * edge, normalization(2, 1) * region
    )


def st_original(
    d: CurveDiagram,
    phi: AlexanderCochain | None = None,
    twisted: TwistedSigns | None = None,
    *,
    base: str | None = None,
    convention: EpsilonConvention = "paper",
) -> InvariantReport:
    """Arnold's St by the three-level formula.  The edge level sums over
    arcs with one sign per arc; the region level uses global gleams."""
    phi = phi if phi is not None else compute_alexander(d)
    if twisted is None:
        if base is None and d.base is None and d.crossings and not outer_base_edges(d):
            raise OuterFaceError("no base edge available")
        eps = epsilon(d, base, convention) if d.crossings else {}
        twisted = gleams(d, phi, eps)
    ind = cell_indices(d, phi)
    point = sum((twisted.epsilon[v] * ind.vertices[v] for v in d.crossings), Fraction(0))
    edge = sum((s * ind.edges[e] ** 2 for e, s in twisted.edge.items()), Fraction(0))
    region = sum((g * phi[r] ** 3 for r, g in twisted.gleam.items()), Fraction(0))
    return InvariantReport("St", point, Fraction(1, 2) * edge, Fraction(1, 3) * region)


@dataclass(frozen=True)
class LedgerRow:
    vertex: str
    index: Fraction
    epsilon: int
    point: Fraction
    edge: Fraction
    region: Fraction

    @property
    def passed(self) -> bool:
        return self.point == self.edge == self.region == self.epsilon * self.index


def per_vertex_ledger(
    d: CurveDiagram,
    phi: AlexanderCochain,
    twisted: TwistedSigns,
) -> list[LedgerRow]:
    """Contribution of every double point at the three levels."""
    ind = cell_indices(d, phi)
    rows = []
    for v in d.crossings:
        eps = twisted.epsilon[v]
        i = ind.vertices[v]
        edge = sum(
            (s * ind.edges[d.edge_of(h)] ** 2 for (w, h), s in twisted.germ.items() if w == v),
            Fraction(0),
        ) / 2
        region = sum(
            (twisted.gleam_local[(v, h)] * phi[d.region(h)] ** 3 for h in d.sectors(v)),
            Fraction(0),
        ) / 3
        rows.append(LedgerRow(v, i, eps, eps * i, edge, region))
    return rows


def base_sweep(
    d: CurveDiagram,
    phi: AlexanderCochain | None = None,
    convention: EpsilonConvention = "paper",
) -> dict[str, InvariantReport]:
    """St for every admissible base edge."""
    phi = phi if phi is not None else compute_alexander(d)
    return {b: st_original(d, phi, base=b, convention=convention) for b in outer_base_edges(d)}
