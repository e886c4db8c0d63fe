"""Alexander numbering of complementary regions and indices of cells."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping

from .diagram import CurveDiagram, natural_key

__all__ = [
    "AlexanderCochain",
    "CellIndex",
    "Convention",
    "NumberingError",
    "SURFACE_SHIFT",
    "cell_indices",
    "compute_alexander",
    "dump_alexander",
    "vertex_slots",
]

Convention = Literal["curve", "surface"]

SURFACE_SHIFT = Fraction(-3, 2)


class NumberingError(AssertionError):
    """Two propagation paths disagree; impossible for a validated diagram."""


@dataclass(frozen=True)
class AlexanderCochain:
    values: Mapping[str, Fraction]
    convention: Convention = "curve"

    def __getitem__(self, region: str) -> Fraction:
        return self.values[region]

    def shifted(self, convention: Convention) -> "AlexanderCochain":
        if convention == self.convention:
            return self
        delta = SURFACE_SHIFT if convention == "surface" else -SURFACE_SHIFT
        return AlexanderCochain({r: v + delta for r, v in self.values.items()}, convention)

    def negated(self) -> "AlexanderCochain":
        return AlexanderCochain({r: -v for r, v in self.values.items()}, self.convention)


@dataclass(frozen=True)
class CellIndex:
    vertices: Mapping[str, Fraction]
    edges: Mapping[str, Fraction]
    regions: Mapping[str, Fraction]

    def __getitem__(self, cell: str) -> Fraction:
        for table in (self.vertices, self.edges, self.regions):
            if cell in table:
                return table[cell]
        raise KeyError(cell)


def compute_alexander(d: CurveDiagram, convention: Convention = "curve") -> AlexanderCochain:
    """Breadth-first propagation from the unbounded region.

    Crossing an arc from its right to its left (the left normal of the
    orientation) raises the value by one.
    """
    base = Fraction(0) if convention == "curve" else SURFACE_SHIFT
    steps: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for e in d.edges:
        left, right = d.region(e), d.right_region(e)
        steps[right].append((left, 1))
        steps[left].append((right, -1))
    values = {d.outer: base}
    queue = deque([d.outer])
    while queue:
        r = queue.popleft()
        for s, delta in steps[r]:
            want = values[r] + delta
            if s not in values:
                values[s] = want
                queue.append(s)
            elif values[s] != want:
                raise NumberingError(f"region {s!r} reached with values {values[s]} and {want}")
    missing = set(d.regions) - set(values)
    if missing:
        raise NumberingError(f"regions {sorted(missing)} are unreachable from the outer region")
    return AlexanderCochain(values, convention)


def vertex_slots(d: CurveDiagram, phi: AlexanderCochain, v: str) -> tuple[Fraction, ...]:
    """Values of the four sectors at a crossing, counterclockwise from its
    first germ.  A region filling two sectors is counted twice."""
    return tuple(phi[d.region(h)] for h in d.sectors(v))


def cell_indices(d: CurveDiagram, phi: AlexanderCochain) -> CellIndex:
    verts = {v: sum(vertex_slots(d, phi, v), Fraction(0)) / 4 for v in d.crossings}
    edges = {e: (phi[d.region(e)] + phi[d.right_region(e)]) / 2 for e in d.edges}
    return CellIndex(verts, edges, dict(phi.values))


def dump_alexander(d: CurveDiagram, phi: AlexanderCochain) -> list[tuple[str, Fraction]]:
    """Region/value table in sorted region order."""
    return [(r, phi[r]) for r in sorted(d.regions, key=natural_key)]
