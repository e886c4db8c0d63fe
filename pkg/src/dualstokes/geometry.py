"""Closed polylines with rational vertices.

Used to build corpus and random diagrams from coordinates and as the
independent ray-casting oracle for the Alexander numbering.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

from .diagram import CurveDiagram, DiagramError

__all__ = [
    "DegeneratePolyline",
    "Point",
    "SamplingExhausted",
    "diagram_from_polyline",
    "intersections",
    "random_diagram",
    "random_polyline",
    "random_sample",
    "sector_probes",
    "winding_number",
]

Point = tuple[Fraction, Fraction]


class DegeneratePolyline(DiagramError):
    """Polyline is not in general position."""


class SamplingExhausted(RuntimeError):
    pass


def _pts(poly: Sequence[Sequence]) -> list[Point]:
    return [(Fraction(x), Fraction(y)) for x, y in poly]


def _cross(ax, ay, bx, by) -> Fraction:
    return ax * by - ay * bx


def intersections(poly: Sequence[Sequence]) -> list[tuple[int, Fraction, int, Fraction, Point]]:
    """Proper crossings (seg a, t_a, seg b, t_b, point) with a < b.

    Raises :class:`DegeneratePolyline` on touching, overlapping or
    vertex-incident intersections.
    """
    P = _pts(poly)
    n = len(P)
    if n < 3:
        raise DegeneratePolyline("need at least three vertices")
    if len(set(P)) != n:
        raise DegeneratePolyline("repeated vertex")
    # segment parameters do not change under scaling, so work on integers
    scale = math.lcm(*(c.denominator for pt in P for c in pt))
    Z = [(int(x * scale), int(y * scale)) for x, y in P]
    out = []
    for a in range(n):
        (px, py), (p2x, p2y) = Z[a], Z[(a + 1) % n]
        rx, ry = p2x - px, p2y - py
        for b in range(a + 1, n):
            (qx, qy), (q2x, q2y) = Z[b], Z[(b + 1) % n]
            sx, sy = q2x - qx, q2y - qy
            den = rx * sy - ry * sx
            qpx, qpy = qx - px, qy - py
            adjacent = b == a + 1 or (a == 0 and b == n - 1)
            if den == 0:
                if qpx * ry - qpy * rx == 0:
                    raise DegeneratePolyline(f"segments {a} and {b} are collinear")
                continue
            if adjacent:
                continue
            tn = qpx * sy - qpy * sx
            un = qpx * ry - qpy * rx
            if den < 0:
                den, tn, un = -den, -tn, -un
            if 0 <= tn <= den and 0 <= un <= den:
                if tn in (0, den) or un in (0, den):
                    raise DegeneratePolyline(f"segments {a} and {b} meet at a vertex")
                t = Fraction(tn, den)
                pa, pb = P[a], P[(a + 1) % n]
                out.append((a, t, b, Fraction(un, den),
                            (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))))
    pts = [o[4] for o in out]
    if len(set(pts)) != len(pts):
        raise DegeneratePolyline("three segments through one point")
    return out


def winding_number(poly: Sequence[Sequence], q: Sequence) -> int:
    """Crossings of the ray from ``q`` towards +x, counted right-to-left
    minus left-to-right relative to the oriented polyline."""
    P = _pts(poly)
    qx, qy = Fraction(q[0]), Fraction(q[1])
    w = 0
    for k in range(len(P)):
        (ax, ay), (bx, by) = P[k], P[(k + 1) % len(P)]
        if (ay > qy) != (by > qy):
            x = ax + (qy - ay) * (bx - ax) / (by - ay)
            if x > qx:
                w += 1 if by > ay else -1
    return w


def diagram_from_polyline(poly: Sequence[Sequence], name: str = "curve") -> CurveDiagram:
    P = _pts(poly)
    n = len(P)
    xs = intersections(P)
    if not xs:
        return _circle_from_polyline(P, name)
    events, direction = _events(P, xs)
    m = len(events)
    rot, twin, vertex, region = {}, {}, {}, {}
    forward = set()
    germs: dict[int, list[tuple[float, str]]] = {k: [] for k in range(len(xs))}
    for j, (_, _, k) in enumerate(events):
        o, i = f"o{j}", f"i{j}"
        dx, dy = direction[j]
        germs[k].append((math.atan2(float(dy), float(dx)), o))
        germs[k].append((math.atan2(float(-dy), float(-dx)), i))
        vertex[o] = vertex[i] = f"v{k}"
        forward.add(o)
        twin[o] = f"i{(j + 1) % m}"
        twin[f"i{(j + 1) % m}"] = o
    for k, gs in germs.items():
        gs.sort()
        for a in range(4):
            rot[gs[a][1]] = gs[(a + 1) % 4][1]
    prev = {v: h for h, v in rot.items()}
    for h in rot:
        if h in region:
            continue
        g = h
        while g not in region:
            region[g] = h
            g = prev[twin[g]]
    # outer face: at the lowest-leftmost vertex the unbounded side is to
    # the right of a left turn and to the left of a right turn
    s = min(range(n), key=lambda k: P[k])
    u = (P[s][0] - P[s - 1][0], P[s][1] - P[s - 1][1])
    w = (P[(s + 1) % n][0] - P[s][0], P[(s + 1) % n][1] - P[s][1])
    turn = _cross(*u, *w)
    if turn == 0:
        raise DegeneratePolyline("straight angle at the extreme vertex")
    # the arc through vertex s starts at the last event before it
    before = [j for j, ev in enumerate(events) if ev[0] < s]
    arc = f"o{before[-1] if before else m - 1}"
    outer = region[twin[arc]] if turn > 0 else region[arc]
    return CurveDiagram.from_parts(rot, twin, vertex, forward, region, outer, name=name)


def _events(P: list[Point], xs) -> tuple[list[tuple[int, Fraction, int]], dict[int, Point]]:
    """Crossing passages in curve order with the direction of travel."""
    n = len(P)
    events = []  # (segment, parameter, crossing index)
    for k, (a, ta, b, tb, _) in enumerate(xs):
        events.append((a, ta, k))
        events.append((b, tb, k))
    events.sort()
    direction = {}
    for j, (seg, _, _) in enumerate(events):
        p, p2 = P[seg], P[(seg + 1) % n]
        direction[j] = (p2[0] - p[0], p2[1] - p[1])
    return events, direction


def _circle_from_polyline(P: list[Point], name: str) -> CurveDiagram:
    area2 = sum(_cross(*P[k], *P[(k + 1) % len(P)]) for k in range(len(P)))
    if area2 == 0:
        raise DegeneratePolyline("zero-area polygon")
    bead = "~o0"
    rot = {"o0": "i0", "i0": "o0"}
    twin = {"o0": "i0", "i0": "o0"}
    vertex = {"o0": bead, "i0": bead}
    region = {"o0": "o0", "i0": "i0"}
    outer = "i0" if area2 > 0 else "o0"
    return CurveDiagram.from_parts(rot, twin, vertex, ["o0"], region, outer, name=name)


def sector_probes(poly: Sequence[Sequence], d: CurveDiagram, scale: Fraction = Fraction(1, 10**6)):
    """Sample points in each sector of each crossing, paired with the region
    occupying that sector.  For a crossing-free polygon, one point on each
    side of the first edge."""
    P = _pts(poly)
    xs = intersections(P)
    probes: list[tuple[str, Point]] = []
    if not xs:
        (ax, ay), (bx, by) = P[0], P[1]
        mx, my = (ax + bx) / 2, (ay + by) / 2
        nx, ny = -(by - ay) * scale, (bx - ax) * scale
        left, right = (mx + nx, my + ny), (mx - nx, my - ny)
        e = d.edges[0]
        return [(d.region(e), left), (d.right_region(e), right)]
    _, direction = _events(P, xs)

    def germ_dir(h: str) -> Point:
        dx, dy = direction[int(h[1:])]
        return (dx, dy) if h[0] == "o" else (-dx, -dy)

    for k, (_, _, _, _, X) in enumerate(xs):
        v = f"v{k}"
        germs = d.sectors(v)
        for idx, h in enumerate(germs):
            h2 = germs[(idx + 1) % 4]
            a, b = germ_dir(h), germ_dir(h2)
            na = abs(a[0]) + abs(a[1])
            nb = abs(b[0]) + abs(b[1])
            dx = a[0] / na + b[0] / nb
            dy = a[1] / na + b[1] / nb
            probes.append((d.region(h), (X[0] + scale * dx, X[1] + scale * dy)))
    return probes


def random_polyline(n: int, rng: random.Random, grid: int = 64, max_tries: int = 20000):
    if n < 1:
        raise ValueError("random diagrams need at least one crossing")
    lo = 3
    hi = max(4, n + 3)
    for _ in range(max_tries):
        m = rng.randint(lo, hi)
        poly = [(rng.randint(0, grid), rng.randint(0, grid)) for _ in range(m)]
        try:
            xs = intersections(poly)
        except DegeneratePolyline:
            continue
        if len(xs) == n:
            return poly
    raise SamplingExhausted(f"no polyline with {n} crossings after {max_tries} tries")


def random_sample(n: int, seed: int) -> tuple[list[tuple[int, int]], CurveDiagram]:
    """Polyline with exactly ``n`` crossings and its diagram.

    Deterministic for a fixed ``(n, seed)``.
    """
    rng = random.Random(f"{n}:{seed}")
    poly = random_polyline(n, rng)
    return poly, diagram_from_polyline(poly, name=f"random-n{n}-s{seed}")


def random_diagram(n: int, seed: int, name: str | None = None) -> CurveDiagram:
    """Random single closed curve with exactly ``n`` crossings."""
    _, d = random_sample(n, seed)
    return d.renamed(name) if name else d
