"""Generic immersed plane curves as oriented 4-valent planar maps.

A diagram is stored as a set of half-edges.  Every half-edge sits at a
vertex, knows its counterclockwise successor there (``rot``), its
``twin`` across the arc, whether it points along the curve orientation
(``forward``) and the label of the complementary region on its left.

Crossing-free loops carry one internal 2-valent vertex (a *bead*, id
starting with ``~``) so that face tracing and the moves in
:mod:`dualstokes.movie` need no special cases.  Beads never show up in
the public cell lists or in the text format.

Disconnected diagrams are allowed: the region labels say which face
cycles of different connected pieces bound the same region, and the
piece/region incidence graph has to be a tree for the arrangement to
embed in the plane.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

__all__ = [
    "BEAD_PREFIX",
    "CurveDiagram",
    "DiagramError",
    "DiagramSyntaxError",
    "HalfEdge",
    "MapCell",
    "NonRealizableError",
    "OuterFaceError",
    "cells",
    "canonical_code",
    "is_isomorphic",
    "mirror",
    "natural_key",
    "parse_diagram",
    "reverse",
    "serialize_diagram",
    "trace_faces",
]

BEAD_PREFIX = "~"
OUTER_EMPTY = "outer"


class DiagramError(ValueError):
    """Base class for every problem with diagram input."""


class DiagramSyntaxError(DiagramError):
    """Malformed record in the text format."""


class NonRealizableError(DiagramError):
    """The rotation system does not describe a planar arrangement."""


class OuterFaceError(DiagramError):
    """Missing or invalid outer face, or a base edge off the outer face."""


_NUM = re.compile(r"(\d+)")


def natural_key(s: str) -> tuple:
    """Sort key treating digit runs numerically: ``h2 < h10``."""
    return tuple(int(t) if t.isdigit() else t for t in _NUM.split(s))


@dataclass(frozen=True)
class HalfEdge:
    id: str
    vertex: str
    rot: str
    twin: str
    forward: bool
    region: str


@dataclass(frozen=True)
class MapCell:
    dimension: int
    id: str
    adjacency: Mapping[int, tuple[str, ...]] = field(default_factory=dict)


def _cycles(perm: Mapping[str, str]) -> list[tuple[str, ...]]:
    seen: set[str] = set()
    out = []
    for start in sorted(perm, key=natural_key):
        if start in seen:
            continue
        cyc = []
        h = start
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            h = perm[h]
        out.append(tuple(cyc))
    return out


class CurveDiagram:
    """Validated, immutable diagram.  Construct through :func:`parse_diagram`
    or :meth:`from_parts`; the constructor checks every invariant."""

    def __init__(
        self,
        half_edges: Mapping[str, HalfEdge],
        outer: str,
        name: str = "curve",
        base: str | None = None,
    ):
        self.name = name
        self._h = dict(half_edges)
        self._validate_local()
        self._rot_prev = {e.rot: e.id for e in self._h.values()}
        self._face_of: dict[str, int] = {}
        self.faces: tuple[tuple[str, ...], ...] = tuple(trace_faces(self))
        for i, f in enumerate(self.faces):
            for h in f:
                self._face_of[h] = i
        self._canonicalise_regions(outer)
        self._validate_global()
        self.base = self._check_base(base) if base is not None else None

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def from_parts(
        cls,
        rot: Mapping[str, str],
        twin: Mapping[str, str],
        vertex: Mapping[str, str],
        forward: Iterable[str],
        region: Mapping[str, str],
        outer: str,
        name: str = "curve",
        base: str | None = None,
    ) -> "CurveDiagram":
        fwd = set(forward)
        hs = {}
        for h in rot:
            if h not in twin or h not in vertex or h not in region:
                raise DiagramSyntaxError(f"half-edge {h!r} is incompletely specified")
            hs[h] = HalfEdge(h, vertex[h], rot[h], twin[h], h in fwd, region[h])
        return cls(hs, outer, name=name, base=base)

    def _validate_local(self) -> None:
        hs = self._h
        for e in hs.values():
            if e.twin not in hs or e.rot not in hs:
                raise DiagramSyntaxError(f"half-edge {e.id!r} refers to unknown half-edges")
            if e.twin == e.id or hs[e.twin].twin != e.id:
                raise DiagramSyntaxError(f"twin is not a fixed-point-free involution at {e.id!r}")
            if hs[e.rot].vertex != e.vertex:
                raise DiagramSyntaxError(f"rotation at {e.id!r} leaves vertex {e.vertex!r}")
            if e.forward == hs[e.twin].forward:
                raise DiagramSyntaxError(
                    f"arc {e.id}/{e.twin} must have exactly one forward half-edge"
                )
        if len({e.rot for e in hs.values()}) != len(hs):
            raise DiagramSyntaxError("rotation is not a permutation")
        by_vertex: dict[str, list[str]] = defaultdict(list)
        for e in hs.values():
            by_vertex[e.vertex].append(e.id)
        self.rotations: dict[str, tuple[str, ...]] = {}
        for v, members in by_vertex.items():
            start = min(members, key=natural_key)
            cyc = [start]
            while hs[cyc[-1]].rot != start:
                cyc.append(hs[cyc[-1]].rot)
            if len(cyc) != len(members):
                raise DiagramSyntaxError(f"vertex {v!r} carries more than one rotation cycle")
            want = 2 if v.startswith(BEAD_PREFIX) else 4
            if len(cyc) != want:
                raise DiagramSyntaxError(f"vertex {v!r} has valence {len(cyc)}, expected {want}")
            k = want // 2
            for j in range(k):
                if hs[cyc[j]].forward == hs[cyc[j + k]].forward:
                    raise DiagramSyntaxError(
                        f"strands at vertex {v!r} are not transverse: opposite germs "
                        f"{cyc[j]!r}, {cyc[j + k]!r} are both "
                        + ("outgoing" if hs[cyc[j]].forward else "incoming")
                    )
            self.rotations[v] = tuple(cyc)
        self.crossings: tuple[str, ...] = tuple(
            sorted((v for v in self.rotations if not v.startswith(BEAD_PREFIX)), key=natural_key)
        )

    def _canonicalise_regions(self, outer: str) -> None:
        hs = self._h
        groups: dict[str, list[str]] = defaultdict(list)
        for f in self.faces:
            labels = {hs[h].region for h in f}
            if len(labels) != 1:
                raise NonRealizableError(f"face cycle through {f[0]!r} carries several region labels")
            groups[labels.pop()].append(f[0])
        if hs and outer not in groups:
            raise OuterFaceError(f"outer region {outer!r} is not a region of the diagram")
        rename: dict[str, str] = {}
        for h in sorted(hs, key=natural_key):
            rename.setdefault(hs[h].region, h)
        self._h = {
            h: HalfEdge(e.id, e.vertex, e.rot, e.twin, e.forward, rename[e.region])
            for h, e in hs.items()
        }
        self.outer: str = rename[outer] if hs else OUTER_EMPTY
        regions: dict[str, list[int]] = defaultdict(list)
        for i, f in enumerate(self.faces):
            regions[self._h[f[0]].region].append(i)
        self.regions: tuple[str, ...] = tuple(sorted(regions, key=natural_key)) if hs else (OUTER_EMPTY,)
        self._region_faces = {r: tuple(v) for r, v in regions.items()}

    def _validate_global(self) -> None:
        hs = self._h
        parent = {h: h for h in hs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in hs.values():
            for o in (e.rot, e.twin):
                a, b = find(e.id), find(o)
                if a != b:
                    parent[a] = b
        pieces: dict[str, list[str]] = defaultdict(list)
        for h in hs:
            pieces[find(h)].append(h)
        self.pieces: tuple[tuple[str, ...], ...] = tuple(
            sorted((tuple(sorted(p, key=natural_key)) for p in pieces.values()),
                   key=lambda p: natural_key(p[0]))
        )
        self._piece_of = {}
        for i, p in enumerate(self.pieces):
            for h in p:
                self._piece_of[h] = i
        # Euler characteristic of every connected piece
        for i, p in enumerate(self.pieces):
            V = len({hs[h].vertex for h in p})
            E = len(p) // 2
            F = len({self._face_of[h] for h in p})
            if V - E + F != 2:
                raise NonRealizableError(
                    f"piece through {p[0]!r} has V - E + F = {V} - {E} + {F} = {V - E + F}, "
                    "so the rotation system does not embed in the plane"
                )
        # piece/region incidence must be a tree
        incid: dict[tuple[int, str], int] = {}
        for fi, f in enumerate(self.faces):
            key = (self._piece_of[f[0]], hs[f[0]].region)
            if key in incid:
                raise NonRealizableError(
                    f"region {key[1]!r} meets one piece along two face cycles"
                )
            incid[key] = fi
        if hs:
            nodes = len(self.pieces) + len(self._region_faces)
            adj: dict[object, list[object]] = defaultdict(list)
            for (pi, r) in incid:
                adj[("p", pi)].append(("r", r))
                adj[("r", r)].append(("p", pi))
            seen = {("r", self.outer)}
            stack = [("r", self.outer)]
            while stack:
                n = stack.pop()
                for m in adj[n]:
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
            if len(incid) != nodes - 1 or len(seen) != nodes:
                raise NonRealizableError("pieces and regions do not nest like a planar arrangement")
        self._incidence = incid
        # outer cycle of each piece = the one facing the unbounded region
        self.piece_outer: dict[int, int] = {}
        self.region_parent: dict[str, int | None] = {self.outer: None}
        if hs:
            frontier = [self.outer]
            done_p: set[int] = set()
            while frontier:
                r = frontier.pop()
                for (pi, rr), fi in incid.items():
                    if rr != r or pi in done_p:
                        continue
                    done_p.add(pi)
                    self.piece_outer[pi] = fi
                    for (pj, r2), fj in incid.items():
                        if pj == pi and r2 != r:
                            self.region_parent[r2] = fj
                            frontier.append(r2)

    def _check_base(self, base: str) -> str:
        if base not in self._h:
            raise OuterFaceError(f"base edge {base!r} is not an edge of the diagram")
        e = self._h[base]
        fwd = e.id if e.forward else e.twin
        if self.outer not in (e.region, self._h[e.twin].region):
            raise OuterFaceError(f"base edge {fwd!r} is not adjacent to the unbounded region")
        return fwd

    # ------------------------------------------------------------------
    # navigation

    def __getitem__(self, h: str) -> HalfEdge:
        return self._h[h]

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._h, key=natural_key))

    def __len__(self) -> int:
        return len(self._h)

    @property
    def half_edges(self) -> Mapping[str, HalfEdge]:
        return self._h

    def rot_prev(self, h: str) -> str:
        return self._rot_prev[h]

    def face_next(self, h: str) -> str:
        return self._rot_prev[self._h[h].twin]

    def face_of(self, h: str) -> tuple[str, ...]:
        return self.faces[self._face_of[h]]

    def region(self, h: str) -> str:
        """Region on the left of ``h``."""
        return self._h[h].region

    def right_region(self, h: str) -> str:
        return self._h[self._h[h].twin].region

    def region_faces(self, r: str) -> tuple[tuple[str, ...], ...]:
        return tuple(self.faces[i] for i in self._region_faces.get(r, ()))

    def piece_of(self, h: str) -> int:
        return self._piece_of[h]

    def opposite(self, h: str) -> str:
        """The germ across the vertex, i.e. where the strand through ``h`` continues."""
        cyc = self.rotations[self._h[h].vertex]
        k = cyc.index(h)
        return cyc[(k + len(cyc) // 2) % len(cyc)]

    def strand_next(self, h: str) -> str:
        """Next forward half-edge along the curve after the forward half-edge ``h``."""
        return self.opposite(self._h[h].twin)

    def is_bead(self, v: str) -> bool:
        return v.startswith(BEAD_PREFIX)

    @property
    def edges(self) -> tuple[str, ...]:
        """Arcs, each named by its forward half-edge."""
        return tuple(h for h in self if self._h[h].forward)

    @property
    def loops(self) -> tuple[str, ...]:
        """Forward half-edges of crossing-free closed components."""
        return tuple(h for h in self.edges if self.is_bead(self._h[h].vertex))

    def edge_of(self, h: str) -> str:
        e = self._h[h]
        return e.id if e.forward else e.twin

    def edge_ends(self, edge: str) -> tuple[str | None, str | None]:
        """(tail, head) crossings of an arc; ``None`` at a bead."""
        t = self._h[edge].vertex
        hd = self._h[self._h[edge].twin].vertex
        return (None if self.is_bead(t) else t, None if self.is_bead(hd) else hd)

    def strands(self) -> list[tuple[str, ...]]:
        nxt = {h: self.strand_next(h) for h in self.edges}
        return _cycles(nxt)

    def require_single_curve(self) -> None:
        n = len(self.strands())
        if n != 1:
            raise DiagramError(f"expected a single closed curve, found {n} components")

    @property
    def V(self) -> int:
        return len(self.crossings)

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def F(self) -> int:
        return len(self.regions)

    def sectors(self, v: str) -> tuple[str, ...]:
        """Germs at ``v`` in counterclockwise order; the sector following germ
        ``h`` is ``region(h)``."""
        return self.rotations[v]

    def with_base(self, base: str | None) -> "CurveDiagram":
        return CurveDiagram(self._h, self.outer, name=self.name, base=base)

    def renamed(self, name: str) -> "CurveDiagram":
        return CurveDiagram(self._h, self.outer, name=name, base=self.base)

    def __repr__(self) -> str:
        return f"<CurveDiagram {self.name!r} V={self.V} E={self.E} F={self.F}>"


# ----------------------------------------------------------------------
# operations


def trace_faces(d: CurveDiagram) -> list[tuple[str, ...]]:
    """Face cycles of the map; the face traced from ``h`` lies on its left."""
    hs = d.half_edges
    prev = {e.rot: e.id for e in hs.values()}
    return _cycles({h: prev[hs[h].twin] for h in hs})


def cells(d: CurveDiagram) -> dict[int, list[MapCell]]:
    """Double points, arcs and regions with their incidences.

    Vertex adjacency lists keep multiplicity: a region occupying two
    sectors at a crossing is listed twice.
    """
    hs = d.half_edges
    out: dict[int, list[MapCell]] = {0: [], 1: [], 2: []}
    for v in d.crossings:
        germs = d.sectors(v)
        out[0].append(MapCell(0, v, {1: tuple(d.edge_of(h) for h in germs),
                                     2: tuple(hs[h].region for h in germs)}))
    region_edges: dict[str, list[str]] = defaultdict(list)
    region_vertices: dict[str, list[str]] = defaultdict(list)
    for e in d.edges:
        tail, head = d.edge_ends(e)
        ends = tuple(x for x in (tail, head) if x is not None)
        out[1].append(MapCell(1, e, {0: ends, 2: (d.right_region(e), d.region(e))}))
    for h in d:
        region_edges[hs[h].region].append(d.edge_of(h))
        v = hs[h].vertex
        if not d.is_bead(v):
            region_vertices[hs[h].region].append(v)
    for r in d.regions:
        out[2].append(MapCell(2, r, {1: tuple(sorted(region_edges[r], key=natural_key)),
                                     0: tuple(sorted(region_vertices[r], key=natural_key))}))
    return out


# ----------------------------------------------------------------------
# text format

def parse_diagram(text: str, *, single_curve: bool = False) -> CurveDiagram:
    """Parse the line-oriented diagram format.

    Records: ``curve NAME``, ``vertex V h0 h1 h2 h3`` (counterclockwise),
    ``twin h h'``, ``strand h h'`` (``h'`` follows ``h``), ``outer h``,
    optional ``base e`` and ``region h h' ...``.  Half-edges named in
    no vertex record form crossing-free loops: ``twin a b`` plus
    ``strand a a``.
    """
    name = "curve"
    rot: dict[str, str] = {}
    vertex: dict[str, str] = {}
    twin: dict[str, str] = {}
    strand: dict[str, str] = {}
    outer = None
    base = None
    groups: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kw, args = tok[0], tok[1:]

        def need(n, kw=kw, args=args, lineno=lineno):
            if len(args) != n:
                raise DiagramSyntaxError(f"line {lineno}: {kw!r} takes {n} arguments, got {len(args)}")

        if kw == "curve":
            need(1)
            name = args[0]
        elif kw == "vertex":
            need(5)
            v, germs = args[0], args[1:]
            if v.startswith(BEAD_PREFIX):
                raise DiagramSyntaxError(f"line {lineno}: vertex ids may not start with {BEAD_PREFIX!r}")
            if v in vertex.values():
                raise DiagramSyntaxError(f"line {lineno}: vertex {v!r} declared twice")
            for k, h in enumerate(germs):
                if h in rot:
                    raise DiagramSyntaxError(f"line {lineno}: half-edge {h!r} already placed")
                rot[h] = germs[(k + 1) % 4]
                vertex[h] = v
            if len(set(germs)) != 4:
                raise DiagramSyntaxError(f"line {lineno}: repeated half-edge at vertex {v!r}")
        elif kw == "twin":
            need(2)
            a, b = args
            for x, y in ((a, b), (b, a)):
                if x in twin and twin[x] != y:
                    raise DiagramSyntaxError(f"line {lineno}: {x!r} already has twin {twin[x]!r}")
                twin[x] = y
        elif kw == "strand":
            need(2)
            if args[0] in strand:
                raise DiagramSyntaxError(f"line {lineno}: {args[0]!r} already has a successor")
            strand[args[0]] = args[1]
        elif kw == "outer":
            need(1)
            outer = args[0]
        elif kw == "base":
            need(1)
            base = args[0]
        elif kw == "region":
            if not args:
                raise DiagramSyntaxError(f"line {lineno}: 'region' needs at least one half-edge")
            groups.append(args)
        else:
            raise DiagramSyntaxError(f"line {lineno}: unknown record {kw!r}")

    known = set(rot) | set(twin) | set(strand) | set(strand.values())
    for h in known:
        if h not in twin:
            raise DiagramSyntaxError(f"half-edge {h!r} has no twin")
    forward = set(strand)
    placed = set(rot)
    for h in twin:
        if h in placed:
            continue
        # vertexless half-edge: must belong to a loop
        t = twin[h]
        if t in placed:
            raise DiagramSyntaxError(f"half-edge {h!r} is at no vertex but its twin {t!r} is")
        f = h if h in forward else t
        if strand.get(f) != f:
            raise DiagramSyntaxError(f"loop {f!r} must be declared with 'strand {f} {f}'")
        bead = BEAD_PREFIX + f
        vertex[h] = bead
        rot[h] = t
    for a, b in strand.items():
        if b not in forward:
            raise DiagramSyntaxError(f"strand successor {b!r} of {a!r} has no successor itself")
    for h in twin:
        if (h in forward) == (twin[h] in forward):
            raise DiagramSyntaxError(f"arc {h}/{twin[h]} needs exactly one strand record")

    if twin and outer is None:
        raise OuterFaceError("missing 'outer' record")
    if outer is not None and outer not in twin:
        raise OuterFaceError(f"outer witness {outer!r} is not a half-edge")
    for g in groups:
        for h in g:
            if h not in twin:
                raise DiagramSyntaxError(f"region witness {h!r} is not a half-edge")

    # provisional labels: one per face cycle, merged along region records
    prov = {h: h for h in twin}
    prev = {}
    for h, r in rot.items():
        prev[r] = h
    if len(prev) != len(rot):
        raise DiagramSyntaxError("rotation is not a permutation")
    fn = {h: prev[twin[h]] for h in twin}
    label: dict[str, str] = {}
    for start in sorted(fn, key=natural_key):
        if start in label:
            continue
        h = start
        while h not in label:
            label[h] = start
            h = fn[h]
    parent = {lab: lab for lab in set(label.values())}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for g in groups:
        roots = [find(label[h]) for h in g]
        for r in roots[1:]:
            parent[r] = roots[0]
    region = {h: find(label[h]) for h in twin}
    d = CurveDiagram.from_parts(
        rot, twin, vertex, forward, region,
        outer=region[outer] if outer is not None else OUTER_EMPTY,
        name=name,
        base=None,
    )
    # strand records must agree with the transverse continuation
    for a, b in strand.items():
        if d.strand_next(a) != b:
            raise DiagramSyntaxError(
                f"strand {a} -> {b} is not transverse: the curve continues to {d.strand_next(a)!r}"
            )
    if base is not None:
        d = d.with_base(base)
    if single_curve:
        d.require_single_curve()
    return d


def serialize_diagram(d: CurveDiagram) -> str:
    """Deterministic text form; ``parse_diagram`` inverts it."""
    hs = d.half_edges
    lines = [f"curve {d.name}"]
    for v in d.crossings:
        lines.append("vertex " + v + " " + " ".join(d.sectors(v)))
    for e in d.edges:
        lines.append(f"twin {e} {hs[e].twin}")
    for e in d.edges:
        lines.append(f"strand {e} {d.strand_next(e)}")
    if len(d):
        lines.append(f"outer {d.outer}")
    for r in d.regions:
        fs = d.region_faces(r)
        if len(fs) > 1:
            wit = sorted((min(f, key=natural_key) for f in fs), key=natural_key)
            lines.append("region " + " ".join(wit))
    if d.base is not None:
        lines.append(f"base {d.base}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# symmetry transforms and isomorphism

def reverse(d: CurveDiagram) -> CurveDiagram:
    """Same map with the curve orientation reversed."""
    hs = {h: HalfEdge(e.id, e.vertex, e.rot, e.twin, not e.forward, e.region)
          for h, e in d.half_edges.items()}
    base = None if d.base is None else d.half_edges[d.base].twin
    return CurveDiagram(hs, d.outer, name=d.name + "-rev", base=base)


def mirror(d: CurveDiagram) -> CurveDiagram:
    """Reflection of the plane: every rotation is inverted, which moves
    each half-edge's left region to the region on its right."""
    src = d.half_edges
    hs = {}
    for h, e in src.items():
        hs[h] = HalfEdge(e.id, e.vertex, d.rot_prev(h), e.twin, e.forward, src[e.twin].region)
    return CurveDiagram(hs, d.outer, name=d.name + "-mir", base=d.base)


def _piece_code(d: CurveDiagram, pi: int, child_code) -> tuple:
    hs = d.half_edges
    outer_face = d.faces[d.piece_outer[pi]]
    best = None
    for s in outer_face:
        lab = {s: 0}
        order = [s]
        k = 0
        while k < len(order):
            h = order[k]
            k += 1
            for n in (hs[h].rot, hs[h].twin):
                if n not in lab:
                    lab[n] = len(order)
                    order.append(n)
        code = []
        for h in order:
            r = hs[h].region
            rc = (0,) if d.faces[d.piece_outer[pi]] == d.face_of(h) else (1, child_code(r))
            code.append((lab[hs[h].rot], lab[hs[h].twin], hs[h].forward, rc))
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best


def canonical_code(d: CurveDiagram) -> tuple:
    """Complete isomorphism invariant (orientation-preserving maps of the
    plane that also preserve the curve orientation)."""
    hosted: dict[str, list[int]] = defaultdict(list)
    for pi, fi in d.piece_outer.items():
        hosted[d.half_edges[d.faces[fi][0]].region].append(pi)
    memo: dict[str, tuple] = {}

    def region_code(r: str) -> tuple:
        if r not in memo:
            memo[r] = tuple(sorted(_piece_code(d, pi, region_code) for pi in hosted.get(r, ())))
        return memo[r]

    return region_code(d.outer)


def is_isomorphic(a: CurveDiagram, b: CurveDiagram, *, up_to_symmetry: bool = False) -> bool:
    """Orientation-respecting isomorphism; with ``up_to_symmetry`` also allow
    reversing the curve and reflecting the plane."""
    ca = canonical_code(a)
    if not up_to_symmetry:
        return ca == canonical_code(b)
    return any(ca == canonical_code(x) for x in (b, reverse(b), mirror(b), reverse(mirror(b))))
