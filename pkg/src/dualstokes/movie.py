"""Surfaces as movies of plane curve diagrams.

A movie is a list of frames joined by elementary events: birth and
death of a small circle, saddles, creation and removal of a bigon, and
the triangle flip.  St_(2) of the surface is the sum of the indices of
its triple points, each of which shows up as one triangle flip.

Event sites are half-edge ids of the frame the event applies to:

* ``birth outer ccw`` or ``birth h cw``: new circle in the region left of ``h``
* ``death h``: remove the crossing-free circle through ``h``
* ``saddle hx hy``: band joining two arcs across the region on the
  left of both (``hx == hy`` places both feet on one arc)
* ``rii-create hx hy``: push arc ``hx`` across arc ``hy`` through the
  region on the left of both
* ``rii-annihilate h``: remove the bigon on the left of ``h``
* ``riii h``: flip the triangle on the left of ``h``

When a move cuts a region in two, the part reached from the second site
gets a fresh label.  The other boundary cycles of the old region stay
with the first part unless listed after ``with``; listing ``outer``
makes the second part the unbounded one.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .alexander import SURFACE_SHIFT, compute_alexander
from .diagram import (
    BEAD_PREFIX,
    OUTER_EMPTY,
    CurveDiagram,
    DiagramError,
    DiagramSyntaxError,
    is_isomorphic,
    natural_key,
    parse_diagram,
    serialize_diagram,
)
from .invariants import st1
from .triplelocal import build_ball

__all__ = [
    "EVENT_KINDS",
    "EventOutcome",
    "Movie",
    "MovieError",
    "SliceCheck",
    "SliceEvent",
    "TriplePointRecord",
    "apply_event",
    "empty_diagram",
    "format_movie",
    "parse_movie",
    "reverse_movie",
    "run_movie",
    "slice_formula_check",
    "st1_trace",
    "st2_of_movie",
]

EVENT_KINDS = ("birth", "death", "saddle", "rii-create", "rii-annihilate", "riii")


class MovieError(DiagramError):
    """Invalid event site or malformed movie."""


@dataclass(frozen=True)
class SliceEvent:
    kind: str
    args: tuple[str, ...]
    witnesses: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise MovieError(f"unknown event kind {self.kind!r}")
        arity = {"birth": 2, "death": 1, "saddle": 2, "rii-create": 2,
                 "rii-annihilate": 1, "riii": 1}[self.kind]
        if len(self.args) != arity:
            raise MovieError(f"{self.kind} takes {arity} site arguments, got {len(self.args)}")
        if self.witnesses and self.kind not in ("saddle", "rii-create"):
            raise MovieError(f"{self.kind} takes no 'with' list")
        if self.kind == "birth" and self.args[1] not in ("ccw", "cw"):
            raise MovieError("birth orientation must be 'ccw' or 'cw'")

    def __str__(self) -> str:
        s = " ".join((self.kind,) + self.args)
        if self.witnesses:
            s += " with " + " ".join(self.witnesses)
        return s


def empty_diagram(name: str = "empty") -> CurveDiagram:
    return CurveDiagram({}, OUTER_EMPTY, name=name)


# ----------------------------------------------------------------------
# mutable map used while rewiring


class _MapBuilder:
    def __init__(self, d: CurveDiagram, tag: str):
        hs = d.half_edges
        self.tag = tag
        self.rot = {h: e.rot for h, e in hs.items()}
        self.twin = {h: e.twin for h, e in hs.items()}
        self.vertex = {h: e.vertex for h, e in hs.items()}
        self.forward = {h for h, e in hs.items() if e.forward}
        self.region = {h: e.region for h, e in hs.items()}
        self.outer = d.outer
        self.alias: dict[str, str] = {}

    def fresh(self, stem: str) -> str:
        return f"{self.tag}{stem}"

    # navigation on the current state
    def rot_prev(self, h: str) -> str:
        for g, r in self.rot.items():
            if r == h:
                return g
        raise KeyError(h)

    def face_next(self, h: str) -> str:
        return self.rot_prev(self.twin[h])

    def cycle(self, h: str) -> list[str]:
        prev = {r: g for g, r in self.rot.items()}
        out = [h]
        g = prev[self.twin[h]]
        while g != h:
            out.append(g)
            g = prev[self.twin[g]]
        return out

    def is_bead(self, h: str) -> bool:
        return self.vertex[h].startswith(BEAD_PREFIX)

    def opposite(self, h: str) -> str:
        return self.rot[h] if self.is_bead(h) else self.rot[self.rot[h]]

    def add(self, h: str, vertex: str, rot: str, twin: str, forward: bool, region: str) -> None:
        if h in self.rot:
            raise MovieError(f"half-edge id {h!r} already in use")
        self.vertex[h] = vertex
        self.rot[h] = rot
        self.twin[h] = twin
        self.region[h] = region
        if forward:
            self.forward.add(h)

    def drop(self, h: str) -> None:
        for table in (self.rot, self.twin, self.vertex, self.region):
            del table[h]
        self.forward.discard(h)

    def relabel(self, old: str, new: str) -> None:
        """Merge region ``old`` into ``new``; the merged region stays
        unbounded if either part was."""
        if old == new:
            return
        for h, r in self.region.items():
            if r == old:
                self.region[h] = new
        if self.outer == old:
            self.outer = new

    def cycles_of(self, label: str) -> list[list[str]]:
        seen: set[str] = set()
        out = []
        for h in sorted(self.region, key=natural_key):
            if self.region[h] == label and h not in seen:
                c = self.cycle(h)
                seen.update(c)
                out.append(c)
        return out

    def subdivide(self, h: str, pieces: int) -> list[str]:
        """Cut the arc of ``h`` into ``pieces`` arcs by inserting beads.
        Returns the half-edges pointing the way ``h`` points, from the
        vertex of ``h`` onwards."""
        t = self.twin[h]
        fwd = h in self.forward
        left, right = self.region[h], self.region[t]
        along = [h]
        prev = h
        for j in range(1, pieces):
            bead = BEAD_PREFIX + self.fresh(f"s{j}")
            b_in, b_out = self.fresh(f"s{j}i"), self.fresh(f"s{j}o")
            self.add(b_in, bead, b_out, prev, not fwd, right)
            self.add(b_out, bead, b_in, "", fwd, left)
            self.twin[prev] = b_in
            along.append(b_out)
            prev = b_out
        self.twin[prev] = t
        self.twin[t] = prev
        return along

    def pieces(self) -> list[set[str]]:
        parent = {h: h for h in self.rot}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h in self.rot:
            for o in (self.rot[h], self.twin[h]):
                a, b = find(h), find(o)
                if a != b:
                    parent[a] = b
        groups: dict[str, set[str]] = defaultdict(set)
        for h in self.rot:
            groups[find(h)].add(h)
        return list(groups.values())

    def simplify_beads(self) -> None:
        """Drop every bead of a piece that has another vertex."""
        for piece in self.pieces():
            beads = sorted({self.vertex[h] for h in piece if self.is_bead(h)}, key=natural_key)
            verts = {self.vertex[h] for h in piece}
            keep = len(verts) - len(beads) == 0
            pairs = [sorted(h for h in piece if self.vertex[h] == v) for v in beads]
            for b1, b2 in pairs[1:] if keep else pairs:
                t1, t2 = self.twin[b1], self.twin[b2]
                self.twin[t1], self.twin[t2] = t2, t1
                self.alias[b1], self.alias[b2] = t2, t1
                self.drop(b1)
                self.drop(b2)

    def resolve(self, h: str) -> str:
        while h in self.alias:
            h = self.alias[h]
        return h

    def build(self, name: str) -> CurveDiagram:
        outer = self.outer if self.rot else OUTER_EMPTY
        return CurveDiagram.from_parts(
            self.rot, self.twin, self.vertex, self.forward, self.region, outer, name=name
        )


# ----------------------------------------------------------------------
# the moves


@dataclass(frozen=True)
class EventOutcome:
    diagram: CurveDiagram
    inverse: SliceEvent
    info: Mapping[str, object] = field(default_factory=dict)


def _need(d: CurveDiagram, h: str) -> None:
    if h not in d.half_edges:
        raise MovieError(f"site {h!r} is not a half-edge of the frame")


def _split(b: _MapBuilder, keep_from: str, new_from: str, label: str, witnesses: Sequence[str],
           new_label: str) -> bool:
    """After rewiring, cut region ``label`` if the cycles through the two
    sites have come apart.  Returns True when a cut happened."""
    if new_from in b.cycle(keep_from):
        if witnesses:
            raise MovieError("'with' given but the move does not cut a region")
        return False
    moved = set(b.cycle(new_from))
    keep = set(b.cycle(keep_from))
    for h in moved:
        b.region[h] = new_label
    for w in witnesses:
        if w == "outer":
            if b.outer != label:
                raise MovieError("'with outer' given but the cut region is bounded")
            b.outer = new_label
            continue
        if w not in b.region or b.region[w] != label or w in keep:
            raise MovieError(f"witness {w!r} is not a further boundary cycle of the cut region")
        for h in b.cycle(w):
            b.region[h] = new_label
    return True


def _other_cycles(b: _MapBuilder, label: str, touched: Iterable[str]) -> list[str]:
    """One representative per cycle of ``label`` avoiding ``touched``."""
    touched = set(touched)
    return [min(c, key=natural_key) for c in b.cycles_of(label) if not touched & set(c)]


def _birth(d: CurveDiagram, ev: SliceEvent, tag: str) -> EventOutcome:
    site, orient = ev.args
    b = _MapBuilder(d, tag)
    if site == "outer":
        host = b.outer
    else:
        _need(d, site)
        host = d.region(site)
    o, i = b.fresh("o"), b.fresh("i")
    disk = b.fresh("r")
    bead = BEAD_PREFIX + b.fresh("")
    inner_left = orient == "ccw"
    b.add(o, bead, i, i, True, disk if inner_left else host)
    b.add(i, bead, o, o, False, host if inner_left else disk)
    out = b.build(d.name)
    return EventOutcome(out, SliceEvent("death", (o,)))


def _death(d: CurveDiagram, ev: SliceEvent, tag: str) -> EventOutcome:
    (h,) = ev.args
    _need(d, h)
    pi = d.piece_of(h)
    piece = d.pieces[pi]
    if any(not d.is_bead(d[g].vertex) for g in piece) or len(piece) != 2:
        raise MovieError(f"{h!r} does not lie on a crossing-free circle")
    outside = d.faces[d.piece_outer[pi]][0]
    inside = d[outside].twin
    disk = d.region(inside)
    if len(d.region_faces(disk)) != 1:
        raise MovieError(f"the circle through {h!r} encloses other curves")
    host = d.region(outside)
    orient = "ccw" if d[inside].forward else "cw"
    b = _MapBuilder(d, tag)
    b.drop(outside)
    b.drop(inside)
    rest = [g for g in sorted(b.region, key=natural_key) if b.region[g] == host]
    site = rest[0] if rest else "outer"
    if not rest and host != d.outer:
        raise MovieError("bounded region without boundary")  # cannot happen
    return EventOutcome(b.build(d.name), SliceEvent("birth", (site, orient)))


def _saddle(d: CurveDiagram, ev: SliceEvent, tag: str) -> EventOutcome:
    hx, hy = ev.args
    _need(d, hx)
    _need(d, hy)
    b = _MapBuilder(d, tag)
    if hx == hy:
        along = b.subdivide(hx, 3)
        hx, hy = along[0], along[2]
    if b.twin[hx] == hy:
        raise MovieError("saddle sites are the two sides of one arc")
    band = b.region[hx]
    if b.region[hy] != band:
        raise MovieError(f"saddle sites {hx!r}, {hy!r} do not face a common region")
    if (hx in b.forward) != (hy in b.forward):
        raise MovieError("saddle band would be non-orientable")
    tx, ty = b.twin[hx], b.twin[hy]
    ra, rb = b.region[tx], b.region[ty]
    b_others = _other_cycles(b, rb, (ty,)) if ra != rb else []
    b_outer = rb == b.outer and ra != rb
    b.twin[hx], b.twin[ty] = ty, hx
    b.twin[hy], b.twin[tx] = tx, hy
    b.relabel(rb, ra)
    cut = _split(b, hx, hy, band, ev.witnesses, b.fresh("r"))
    b.simplify_beads()
    out = b.build(d.name)
    wit = tuple(b.resolve(w) for w in b_others) + (("outer",) if b_outer else ())
    inv = SliceEvent("saddle", (b.resolve(tx), b.resolve(ty)), wit)
    return EventOutcome(out, inv, {"cut": cut})


def _rii_create(d: CurveDiagram, ev: SliceEvent, tag: str) -> EventOutcome:
    hx, hy = ev.args
    _need(d, hx)
    _need(d, hy)
    b = _MapBuilder(d, tag)
    if hx == hy:
        along = b.subdivide(hx, 3)
        hx, hy = along[0], along[2]
    elif b.twin[hx] == hy:
        hx = b.subdivide(hx, 2)[0]
    F = b.region[hx]
    if b.region[hy] != F:
        raise MovieError(f"sites {hx!r}, {hy!r} do not face a common region")
    tx, ty = b.twin[hx], b.twin[hy]
    H, G = b.region[tx], b.region[ty]
    fx, fy = hx in b.forward, hy in b.forward
    p, q = b.fresh("p"), b.fresh("q")
    n = {k: b.fresh(k) for k in ("pE", "pN", "pW", "pS", "qE", "qN", "qW", "qS")}
    bigon = b.fresh("g")
    # p = (E, N, W, S) counterclockwise; x runs S-N through p, y runs E-W
    plan = {
        "pE": (p, "pN", "qW", not fy, bigon),
        "pN": (p, "pW", "qN", fx, G),
        "pW": (p, "pS", None, fy, F),
        "pS": (p, "pE", None, not fx, H),
        "qE": (q, "qN", None, not fy, G),
        "qN": (q, "qW", "pN", not fx, bigon),
        "qW": (q, "qS", "pE", fy, H),
        "qS": (q, "qE", None, fx, F),
    }
    for k, (v, r, t, fw, lab) in plan.items():
        b.add(n[k], v, n[r], n[t] if t else "", fw, lab)
    for ext, germ in ((hx, "pS"), (tx, "qS"), (hy, "qE"), (ty, "pW")):
        b.twin[ext] = n[germ]
        b.twin[n[germ]] = ext
    cut = _split(b, n["pW"], n["qS"], F, ev.witnesses, b.fresh("r"))
    b.simplify_beads()
    out = b.build(d.name)
    return EventOutcome(out, SliceEvent("rii-annihilate", (n["pE"],)),
                        {"vertices": (p, q), "cut": cut})


def _rii_annihilate(d: CurveDiagram, ev: SliceEvent, tag: str) -> EventOutcome:
    (h,) = ev.args
    _need(d, h)
    ap = h
    p = d[ap].vertex
    aq = d.face_next(ap)
    if d.face_next(aq) != ap or d.is_bead(p):
        raise MovieError(f"the face left of {h!r} is not a bigon between two crossings")
    q = d[aq].vertex
    if p == q or d.is_bead(q):
        raise MovieError(f"the face left of {h!r} is not a bigon between two crossings")
    if d.region(ap) == d.outer:
        raise MovieError(f"the face left of {h!r} is the unbounded region")
    if len(d.region_faces(d.region(ap))) != 1:
        raise MovieError(f"the bigon left of {h!r} encloses other curves")
    bp, bq = d[ap].rot, d[aq].rot
    b = _MapBuilder(d, tag)
    opp = b.opposite
    Fp, Fq = b.region[opp(ap)], b.region[opp(aq)]
    dead = set(d.rotations[p]) | set(d.rotations[q])
    touched = {h2 for g in dead for h2 in b.cycle(g)}
    q_others = _other_cycles(b, Fq, touched) if Fp != Fq else []
    q_outer = Fq == b.outer and Fp != Fq
    # passing straight through the bigon
    conn = {opp(ap): opp(bq), opp(bq): opp(ap), opp(bp): opp(aq), opp(aq): opp(bp)}
    ends = {}  # surviving half-edge -> surviving partner
    loops = []
    for s in sorted(b.rot, key=natural_key):
        if s in dead or b.twin[s] not in dead or s in ends:
            continue
        z = conn[b.twin[s]]
        while b.twin[z] in dead:
            z = conn[b.twin[z]]
        ends[s] = b.twin[z]
        ends[b.twin[z]] = s
    # strands that close up without leaving the two crossings
    loops = []  # (half-edges on the closed strand, left label, right label)
    seen: set[str] = set()
    for g in sorted(conn, key=natural_key):
        if g in seen:
            continue
        chain = set()
        z = g
        closed = True
        while z not in chain:
            chain.add(z)
            w = b.twin[z]
            if w not in dead:
                closed = False
                break
            chain.add(w)
            z = conn[w]
        seen |= chain
        if closed:
            f = min((c for c in chain if c in b.forward and b.twin[c] in chain), key=natural_key)
            loops.append((chain, b.region[f], b.region[b.twin[f]]))
    xs_end = b.twin[opp(bp)]
    ys_end = b.twin[opp(bq)]
    # an end at the other crossing lies on a strand that survives further on
    chased = {}
    for end in (xs_end, ys_end):
        z = end
        while z in dead and z in conn and b.twin[conn[z]] != end:
            z = b.twin[conn[z]]
        if z not in dead:
            chased[end] = z
    for g in dead:
        b.drop(g)
    for s2, t in ends.items():
        b.twin[s2] = t
    made = []
    for j, (chain, left, right) in enumerate(loops):
        o, i = b.fresh(f"o{j}"), b.fresh(f"i{j}")
        bead = BEAD_PREFIX + b.fresh(f"{j}")
        b.add(o, bead, i, i, True, left)
        b.add(i, bead, o, o, False, right)
        made.append((chain, o, i))
    b.relabel(Fq, Fp)
    merged = Fp
    b.simplify_beads()
    out = b.build(d.name)

    def site(end: str) -> str:
        if end not in dead:
            return b.resolve(end)
        if end in chased:
            c = b.resolve(chased[end])
            return c if b.region[c] == merged else b.twin[c]
        # that strand closed up: use the new circle's side facing the merged region
        for chain, o, i in made:
            if end in chain:
                return o if b.region[o] == merged else i
        raise MovieError("could not locate the inverse site")  # pragma: no cover

    wit = tuple(b.resolve(w) for w in q_others) + (("outer",) if q_outer else ())
    inv = SliceEvent("rii-create", (site(xs_end), site(ys_end)), wit)
    return EventOutcome(out, inv, {"vertices": (p, q)})


def _riii(d: CurveDiagram, ev: SliceEvent, tag: str) -> EventOutcome:
    (h,) = ev.args
    _need(d, h)
    a = [h, d.face_next(h)]
    a.append(d.face_next(a[1]))
    verts = [d[x].vertex for x in a]
    if d.face_next(a[2]) != h or len(set(verts)) != 3 or any(d.is_bead(v) for v in verts):
        raise MovieError(f"the face left of {h!r} is not a triangle of three crossings")
    T = d.region(h)
    if T == d.outer:
        raise MovieError(f"the face left of {h!r} is the unbounded region")
    if len(d.region_faces(T)) != 1:
        raise MovieError(f"the triangle left of {h!r} encloses other curves")
    c = [d[d[x].rot].rot for x in a]
    dd = [d[x].rot for x in c]
    hexagon = [c[0], dd[0], c[1], dd[1], c[2], dd[2]]
    b = _MapBuilder(d, tag)
    outside = [b.region[x] for x in hexagon]
    for x in a + [d[x].twin for x in a]:
        b.drop(x)
    owner = {1: verts[2], 3: verts[0], 5: verts[1]}
    na = [b.fresh(f"a{j}") for j in range(3)]
    nb = [b.fresh(f"b{j}") for j in range(3)]
    for j, pos in enumerate((1, 3, 5)):
        cj, dj = hexagon[pos], hexagon[(pos + 1) % 6]
        v = owner[pos]
        b.add(na[j], v, nb[j], nb[(j + 1) % 3], cj not in b.forward, T)
        b.add(nb[j], v, cj, na[(j - 1) % 3], dj not in b.forward, outside[pos - 1])
        b.vertex[cj] = b.vertex[dj] = v
        b.rot[cj], b.rot[dj] = dj, na[j]
    out = b.build(d.name)
    return EventOutcome(
        out,
        SliceEvent("riii", (na[0],)),
        {"triangle_before": T, "sectors": tuple(outside), "triangle_after": na[0]},
    )


_MOVES = {
    "birth": _birth,
    "death": _death,
    "saddle": _saddle,
    "rii-create": _rii_create,
    "rii-annihilate": _rii_annihilate,
    "riii": _riii,
}


def apply_event(d: CurveDiagram, ev: SliceEvent, tag: str = "m") -> EventOutcome:
    """Apply ``ev`` to ``d``; new ids are prefixed with ``tag``.

    The result is validated from scratch, and the returned inverse event
    undoes the move up to isomorphism.
    """
    try:
        return _MOVES[ev.kind](d, ev, tag)
    except KeyError as exc:
        raise MovieError(f"{ev}: unknown half-edge {exc.args[0]!r}") from None


# ----------------------------------------------------------------------
# movies


@dataclass(frozen=True)
class Movie:
    name: str
    frames: tuple[CurveDiagram, ...]
    events: tuple[SliceEvent, ...]
    shift: Fraction = SURFACE_SHIFT
    closed: bool = True

    def __post_init__(self):
        if len(self.frames) != len(self.events) + 1:
            raise MovieError("a movie needs exactly one more frame than events")
        if self.closed and (len(self.frames[0]) or len(self.frames[-1])):
            raise MovieError("a movie of a closed surface starts and ends with the empty frame")


def _tag(d: CurveDiagram, k: int) -> str:
    """Prefix for the ids created by event ``k``, clear of ids already in ``d``."""
    used = set(d.half_edges) | {e.vertex.lstrip(BEAD_PREFIX) for e in d.half_edges.values()}
    tag = f"m{k}"
    while any(u.startswith(tag) for u in used):
        tag += "x"
    return tag


def run_movie(
    events: Iterable[SliceEvent],
    name: str = "movie",
    *,
    shift: Fraction = SURFACE_SHIFT,
    given: Mapping[int, CurveDiagram] | None = None,
    closed: bool = True,
) -> Movie:
    """Evolve the first frame (empty unless given) through ``events``.

    ``given[i]`` is a frame supplied for position ``i``; it must be
    isomorphic to the computed one and then replaces it, so later
    sites may use its half-edge ids.  Open movies (``closed=False``)
    describe a piece of surface and may start or end anywhere.
    """
    given = given or {}
    cur = given.get(0, empty_diagram(name))
    if closed and len(cur):
        raise MovieError("a movie of a closed surface starts with the empty frame")
    frames = [cur]
    for k, ev in enumerate(events):
        try:
            res = apply_event(cur, ev, _tag(cur, k))
        except DiagramError as exc:
            raise MovieError(f"event {k} ({ev}): {exc}") from None
        nxt = res.diagram
        if k + 1 in given:
            g = given[k + 1]
            if not is_isomorphic(nxt, g):
                raise MovieError(f"frame {k + 1} does not match the result of event {k} ({ev})")
            nxt = g
        compute_alexander(nxt)
        frames.append(nxt)
        cur = nxt
    return Movie(name, tuple(frames), tuple(events), shift, closed)


# text format


def parse_movie(text: str) -> Movie:
    """``movie NAME shift -3/2`` then ``frame { ... }`` and ``event ...``
    records.  Frames are optional after the first one; any frame that is
    given is checked against the computed one."""
    lines = text.splitlines()
    name, shift = "movie", SURFACE_SHIFT
    events: list[SliceEvent] = []
    given: dict[int, CurveDiagram] = {}
    k = 0
    header = False
    closed = True
    while k < len(lines):
        line = lines[k].split("#", 1)[0].strip()
        k += 1
        if not line:
            continue
        tok = line.split()
        if tok[0] == "movie":
            if tok[-1] == "open":
                closed = False
                tok = tok[:-1]
            if header or len(tok) not in (2, 4) or (len(tok) == 4 and tok[2] != "shift"):
                raise DiagramSyntaxError(f"line {k}: expected 'movie NAME [shift Q] [open]'")
            name = tok[1]
            if len(tok) == 4:
                try:
                    shift = Fraction(tok[3])
                except ValueError:
                    raise DiagramSyntaxError(f"line {k}: bad shift {tok[3]!r}") from None
            header = True
        elif tok[0] == "frame":
            if line not in ("frame {", "frame { }", "frame {}"):
                raise DiagramSyntaxError(f"line {k}: expected 'frame {{'")
            body = []
            if line == "frame {":
                while True:
                    if k >= len(lines):
                        raise DiagramSyntaxError("unterminated frame")
                    inner = lines[k].split("#", 1)[0].strip()
                    k += 1
                    if inner == "}":
                        break
                    body.append(inner)
            pos = len(events)
            if pos in given:
                raise DiagramSyntaxError(f"line {k}: two frames in a row")
            given[pos] = parse_diagram("\n".join(body)) if any(body) else empty_diagram(name)
        elif tok[0] == "event":
            if len(tok) < 2:
                raise DiagramSyntaxError(f"line {k}: event needs a kind")
            rest = tok[2:]
            wit: list[str] = []
            if "with" in rest:
                j = rest.index("with")
                rest, wit = rest[:j], rest[j + 1:]
            try:
                events.append(SliceEvent(tok[1], tuple(rest), tuple(wit)))
            except MovieError as exc:
                raise DiagramSyntaxError(f"line {k}: {exc}") from None
        else:
            raise DiagramSyntaxError(f"line {k}: unknown movie record {tok[0]!r}")
    if not header:
        raise DiagramSyntaxError("missing 'movie' header")
    return run_movie(events, name, shift=shift, given=given, closed=closed)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_movie(m: Movie, *, frames: bool = True) -> str:
    out = [f"movie {m.name} shift {_frac(m.shift)}" + ("" if m.closed else " open")]
    for k, f in enumerate(m.frames):
        if frames or k == 0:
            body = serialize_diagram(f).splitlines()[1:] if len(f) else []
            out.append("frame {" if body else "frame { }")
            if body:
                out.extend("  " + b for b in body)
                out.append("}")
        if k < len(m.events):
            out.append(f"event {m.events[k]}")
    return "\n".join(out) + "\n"


# invariants


@dataclass(frozen=True)
class TriplePointRecord:
    event: int
    triangle_before: Fraction
    triangle_after: Fraction
    sectors: tuple[Fraction, ...]
    ind: Fraction
    shift: Fraction

    @property
    def values(self) -> tuple[Fraction, ...]:
        """The eight adjacent values in the surface convention."""
        raw = (self.triangle_before, self.triangle_after) + self.sectors
        return tuple(v + self.shift for v in raw)

    @property
    def contribution(self) -> Fraction:
        return self.ind

    @property
    def recovered_x(self) -> Fraction:
        return sum(self.values, Fraction(0)) / 8

    @property
    def matches_ball(self) -> bool:
        return Counter(self.values) == build_ball(self.recovered_x).values() and \
            self.recovered_x == self.ind


def st2_of_movie(m: Movie) -> tuple[Fraction, list[TriplePointRecord]]:
    """Sum over triangle flips of the average of the eight surrounding
    values (six sectors, triangle before and after) plus the shift."""
    records = []
    for k, ev in enumerate(m.events):
        if ev.kind != "riii":
            continue
        pre = m.frames[k]
        res = apply_event(pre, ev, _tag(pre, k))
        info, post = res.info, res.diagram
        phi0, phi1 = compute_alexander(pre), compute_alexander(post)
        sectors = tuple(phi0[r] for r in info["sectors"])
        before = phi0[info["triangle_before"]]
        after = phi1[post.region(info["triangle_after"])]
        avg = (before + after + sum(sectors, Fraction(0))) / 8
        rec = TriplePointRecord(k, before, after, sectors, avg + m.shift, m.shift)
        if Counter(rec.values) != build_ball(rec.ind).values():
            raise MovieError(
                f"event {k}: the eight values around the triangle flip do not form a cube pattern"
            )
        records.append(rec)
    return sum((r.ind for r in records), Fraction(0)), records


def st1_trace(m: Movie) -> tuple[list[Fraction], list[Fraction]]:
    """St_(1) of every frame and its jump across every event."""
    vals = [st1(f).point for f in m.frames]
    return vals, [b - a for a, b in zip(vals, vals[1:])]


def reverse_movie(m: Movie) -> Movie:
    """Time reversal: frames in reverse order joined by the inverse events.

    Each inverse is checked on the way: replaying it must land on a
    frame isomorphic to the original one.
    """
    n = len(m.events)
    outcomes = [apply_event(m.frames[k], m.events[k], _tag(m.frames[k], k)) for k in range(n)]
    events = [outcomes[k].inverse for k in range(n - 1, -1, -1)]
    # the inverse of event k names half-edges of the frame that event produced
    given = {j: outcomes[n - 1 - j].diagram for j in range(n)}
    given[n] = m.frames[0]
    return run_movie(events, m.name + "-rev", shift=m.shift, given=given, closed=m.closed)


@dataclass(frozen=True)
class SliceCheck:
    label: str
    st2_before: Fraction
    st2_after: Fraction
    dst1: Fraction
    sigma: int

    @property
    def dst2(self) -> Fraction:
        return self.st2_after - self.st2_before

    @property
    def passed(self) -> bool:
        return self.dst2 == self.dst1 + self.sigma


def slice_formula_check(
    before: Movie,
    after: Movie,
    label: str | int,
    sigma: int,
    dst1: Fraction | None = None,
) -> SliceCheck:
    """Compare dSt_(2) with dSt_(1) + sigma.

    ``sigma`` is supplied by the caller.  The slice jump is the St_(1)
    jump at event ``label`` of ``after`` when ``label`` is an event
    index, or ``dst1`` when given explicitly.
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    if dst1 is None:
        if isinstance(label, int) or (isinstance(label, str) and label.isdigit()):
            _, jumps = st1_trace(after)
            k = int(label)
            if not 0 <= k < len(jumps):
                raise MovieError(f"event {k} is not an event of {after.name!r}")
            dst1 = jumps[k]
        else:
            dst1 = Fraction(0)
    s0, _ = st2_of_movie(before)
    s1, _ = st2_of_movie(after)
    return SliceCheck(str(label), s0, s1, Fraction(dst1), sigma)
