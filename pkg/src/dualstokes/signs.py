"""Local sign systems at double points.

Untwisted signs depend only on the numbering.  The twisted system used
for Arnold's St multiplies them by a sign eps(p) read off from the order
in which a walk from a base point meets the two branches at p.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping

from .alexander import AlexanderCochain, cell_indices
from .diagram import CurveDiagram, DiagramError, OuterFaceError

__all__ = [
    "EpsilonConvention",
    "TwistedSigns",
    "UntwistedSigns",
    "epsilon",
    "gleams",
    "outer_base_edges",
    "untwisted_signs",
]

EpsilonConvention = Literal["paper", "opposite"]

Germ = tuple[str, str]  # (crossing, half-edge)


@dataclass(frozen=True)
class UntwistedSigns:
    edge: Mapping[Germ, int]
    region: Mapping[Germ, int]
    incoming: frozenset[Germ]


@dataclass(frozen=True)
class TwistedSigns:
    epsilon: Mapping[str, int]
    germ: Mapping[Germ, int]
    edge: Mapping[str, int]
    gleam_local: Mapping[Germ, Fraction]
    gleam: Mapping[str, Fraction]


def untwisted_signs(d: CurveDiagram, phi: AlexanderCochain) -> UntwistedSigns:
    """Edge germs of index i+1/2 get +1 and those of index i-1/2 get -1.
    A sector whose two bounding germs both leave or both enter the
    crossing gets -1, the other two sectors +1."""
    ind = cell_indices(d, phi)
    edge: dict[Germ, int] = {}
    region: dict[Germ, int] = {}
    incoming = set()
    for v in d.crossings:
        i = ind.vertices[v]
        for h in d.sectors(v):
            ie = ind.edges[d.edge_of(h)]
            edge[(v, h)] = 1 if ie == i + Fraction(1, 2) else -1
            if not d[h].forward:
                incoming.add((v, h))
            same = d[h].forward == d[d[h].rot].forward
            region[(v, h)] = -1 if same else 1
    return UntwistedSigns(edge, region, frozenset(incoming))


def outer_base_edges(d: CurveDiagram) -> list[str]:
    return [e for e in d.edges if d.outer in (d.region(e), d.right_region(e))]


def epsilon(
    d: CurveDiagram,
    base: str | None = None,
    convention: EpsilonConvention = "paper",
) -> dict[str, int]:
    """eps(p) from a walk starting at the midpoint of the base edge.

    With outgoing germs o1 (first pass) and o2 (second pass), the default
    convention sets eps(p) = +1 exactly when o1 follows o2
    counterclockwise, i.e. when det(t_second, t_first) > 0.
    """
    d.require_single_curve()
    base = base if base is not None else d.base
    if base is None:
        base = outer_base_edges(d)[0]
    base = d.edge_of(base)
    if base not in outer_base_edges(d):
        raise OuterFaceError(f"base edge {base!r} is not adjacent to the unbounded region")
    first: dict[str, str] = {}
    second: dict[str, str] = {}
    h = base
    for _ in range(len(d.edges)):
        h = d.strand_next(h)
        v = d[h].vertex
        if d.is_bead(v):
            continue
        (second if v in first else first)[v] = h
    if set(first) != set(d.crossings) or set(second) != set(d.crossings):
        raise DiagramError("walk from the base point did not pass every crossing twice")
    eps = {}
    for v in d.crossings:
        s = 1 if d[second[v]].rot == first[v] else -1
        eps[v] = s if convention == "paper" else -s
    return eps


def gleams(
    d: CurveDiagram,
    phi: AlexanderCochain,
    eps: Mapping[str, int],
    untwisted: UntwistedSigns | None = None,
) -> TwistedSigns:
    u = untwisted if untwisted is not None else untwisted_signs(d, phi)
    germ = {g: eps[g[0]] * s for g, s in u.edge.items() if g in u.incoming}
    edge: dict[str, int] = {}
    for (v, h), s in germ.items():
        e = d.edge_of(h)
        if edge.setdefault(e, s) != s:
            raise DiagramError(f"arc {e!r} receives contradictory signs at its ends")
    local = {(v, h): Fraction(eps[v] * s, 2) for (v, h), s in u.region.items()}
    total: dict[str, Fraction] = defaultdict(Fraction)
    for r in d.regions:
        total[r] = Fraction(0)
    for (v, h), g in local.items():
        total[d.region(h)] += g
    return TwistedSigns(dict(eps), germ, edge, local, dict(total))
