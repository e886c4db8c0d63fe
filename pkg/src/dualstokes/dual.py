"""Dual complex of the cell decomposition induced by a plane curve.

Dual 0-cells are regions, dual 1-cells cross arcs (oriented along the
coorientation: from the right side of the arc to its left side) and
each crossing gives a dual 2-cell whose boundary loop runs
counterclockwise through the four sectors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .alexander import AlexanderCochain, compute_alexander
from .diagram import CurveDiagram

__all__ = [
    "BoundaryTerm",
    "DualCell",
    "DualComplex",
    "boundary",
    "boundary_of_chain",
    "build_dual",
    "chain_sum",
]


@dataclass(frozen=True)
class BoundaryTerm:
    """One germ crossing of a dual 2-cell's boundary loop."""

    sign: int
    cell: str
    germ: str
    src: str
    dst: str


@dataclass(frozen=True)
class DualCell:
    dimension: int
    id: str
    primal: str
    incident_lower: tuple[tuple[int, str], ...] = ()


def chain_sum(terms) -> Counter:
    """Collapse (coefficient, cell) pairs into a formal sum, dropping zeros."""
    c: Counter = Counter()
    for k, cell in terms:
        c[cell] += k
    return Counter({x: k for x, k in c.items() if k})


class DualComplex:
    def __init__(self, d: CurveDiagram, phi: AlexanderCochain):
        self.diagram = d
        self.phi = phi
        self.cells: dict[int, dict[str, DualCell]] = {0: {}, 1: {}, 2: {}}
        self.loops: dict[str, tuple[BoundaryTerm, ...]] = {}
        for r in d.regions:
            self.cells[0][r] = DualCell(0, r, r)
        for e in d.edges:
            inc = ((1, d.region(e)), (-1, d.right_region(e)))
            self.cells[1][e] = DualCell(1, e, e, inc)
        for v in d.crossings:
            terms = self._loop(v)
            self.loops[v] = terms
            self.cells[2][v] = DualCell(2, v, v, tuple((t.sign, t.cell) for t in terms))

    def _loop(self, v: str) -> tuple[BoundaryTerm, ...]:
        d = self.diagram
        germs = d.sectors(v)
        vals = [self.phi[d.region(h)] for h in germs]
        top = max(range(4), key=lambda k: vals[k])
        out = []
        for j in range(1, 5):
            h = germs[(top + j) % 4]
            prev = germs[(top + j - 1) % 4]
            # the loop passes from the sector before h to the one after it
            sign = 1 if d[h].forward else -1
            out.append(BoundaryTerm(sign, d.edge_of(h), h, d.region(prev), d.region(h)))
        return tuple(out)

    def sector_cycle(self, v: str) -> tuple[str, ...]:
        """Regions met by the boundary loop of the dual 2-cell, starting
        with the sector of maximal value."""
        return tuple(t.src for t in self.loops[v])

    def counts(self) -> tuple[int, int, int]:
        return tuple(len(self.cells[k]) for k in range(3))


def build_dual(d: CurveDiagram, phi: AlexanderCochain | None = None) -> DualComplex:
    return DualComplex(d, phi if phi is not None else compute_alexander(d))


def boundary(dc: DualComplex, dim: int, cell: str) -> Counter:
    """Signed formal sum of the incident dual (dim-1)-cells."""
    if dim == 0:
        return Counter()
    return chain_sum(dc.cells[dim][cell].incident_lower)


def boundary_of_chain(dc: DualComplex, dim: int, chain: Mapping[str, int]) -> Counter:
    total: Counter = Counter()
    for cell, k in chain.items():
        for x, c in boundary(dc, dim, cell).items():
            total[x] += k * c
    return Counter({x: c for x, c in total.items() if c})
