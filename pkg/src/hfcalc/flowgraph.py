"""Ribbon flow graphs, Cerf decompositions from explicit Morse data, and the
six moves connecting decompositions.

Heights are exact rationals supplied in the input; the tool validates
genericity (all singular heights distinct) instead of perturbing.  A
decomposition is a set of slice levels over the graph's Morse data; moves
edit the Morse data or the levels and re-slice, so every result revalidates
and automatically subdivides the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


class FlowGraphError(ValueError):
    pass


class InapplicableMove(FlowGraphError):
    pass


@dataclass(frozen=True)
class FlowVertex:
    id: str
    height: Fraction
    role: str  # "in" | "out" | "interior"


@dataclass(frozen=True)
class FlowEdge:
    id: str
    v1: str
    v2: str
    crit: tuple = ()    # (("max"|"min", Fraction), ...) in traversal order v1 -> v2
    route: tuple = ()   # hop stops, route[0] == v1 and route[-1] == v2


class FlowGraph:
    def __init__(self, vertices: Sequence[FlowVertex], edges: Sequence[FlowEdge],
                 ribbon: Optional[dict] = None, strong_order: Optional[dict] = None,
                 coloring: Optional[dict] = None, w0: Sequence[str] = ()):
        self.vertices = {v.id: v for v in vertices}
        self.edges = {e.id: e for e in edges}
        if len(self.vertices) != len(vertices) or len(self.edges) != len(edges):
            raise FlowGraphError("duplicate ids")
        self.w0 = tuple(w0)
        incident: dict = {v.id: [] for v in vertices}
        for e in edges:
            for v in (e.v1, e.v2):
                if v not in self.vertices:
                    raise FlowGraphError(f"edge {e.id}: unknown vertex {v}")
            incident[e.v1].append(e.id)
            incident[e.v2].append(e.id)
        self.incident = {v: tuple(sorted(lst)) for v, lst in incident.items()}
        self.ribbon = {v: tuple(r) for v, r in (ribbon or {}).items()}
        for v in self.vertices:
            if v not in self.ribbon:
                self.ribbon[v] = self.incident[v]
        self.strong_order = {v: tuple(r) for v, r in (strong_order or {}).items()}
        self.coloring = dict(coloring or {})

    def replace(self, vertices=None, edges=None) -> "FlowGraph":
        return FlowGraph(list((vertices or self.vertices).values()),
                         list((edges or self.edges).values()),
                         self.ribbon, self.strong_order, self.coloring, self.w0)

    # -- structure ---------------------------------------------------------

    def v0(self) -> list:
        return sorted(v.id for v in self.vertices.values() if v.role == "in")

    def v1(self) -> list:
        return sorted(v.id for v in self.vertices.values() if v.role == "out")

    def components(self) -> dict:
        """Vertex id -> component name (the smallest vertex id in it)."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges.values():
            ra, rb = find(e.v1), find(e.v2)
            if ra != rb:
                parent[ra] = rb
        members: dict = {}
        for v in self.vertices:
            members.setdefault(find(v), []).append(v)
        return {v: min(members[find(v)]) for v in self.vertices}

    def component_color(self, vertex: str) -> str:
        comp = self.components()[vertex]
        return self.coloring.get(comp, comp)

    def edge_nodes(self, e: FlowEdge) -> list:
        """Traversal heights: v1, interior critical points, v2."""
        return ([self.vertices[e.v1].height] + [h for _, h in e.crit]
                + [self.vertices[e.v2].height])

    def singular_heights(self) -> list:
        hs = [v.height for v in self.vertices.values() if v.role == "interior"]
        for e in self.edges.values():
            hs.extend(h for _, h in e.crit)
        return sorted(hs)

    # -- validation ----------------------------------------------------------

    def validate(self) -> list:
        problems = []
        for v in self.vertices.values():
            if v.role == "in" and v.height != 0:
                problems.append(f"incoming vertex {v.id} not at height 0")
            if v.role == "out" and v.height != 1:
                problems.append(f"outgoing vertex {v.id} not at height 1")
            if v.role == "interior" and not (0 < v.height < 1):
                problems.append(f"interior vertex {v.id} height not in (0,1)")
            if v.role in ("in", "out") and len(self.incident[v.id]) != 1:
                problems.append(f"boundary vertex {v.id} must have valence 1")
            if not self.incident[v.id]:
                problems.append(f"isolated vertex {v.id}")
        for e in self.edges.values():
            if e.v1 == e.v2:
                problems.append(f"self-edge {e.id}; subdivide first")
                continue
            nodes = self.edge_nodes(e)
            for i in range(len(nodes) - 1):
                if nodes[i] == nodes[i + 1]:
                    problems.append(f"edge {e.id}: coincident node heights")
            for i, (kind, h) in enumerate(e.crit):
                if kind == "max" and not (nodes[i] < h and nodes[i + 2] < h):
                    problems.append(f"edge {e.id}: crit {i} is not a max")
                if kind == "min" and not (nodes[i] > h and nodes[i + 2] > h):
                    problems.append(f"edge {e.id}: crit {i} is not a min")
                if not (0 < h < 1):
                    problems.append(f"edge {e.id}: crit {i} height not in (0,1)")
            if e.route:
                if e.route[0] != e.v1 or e.route[-1] != e.v2:
                    problems.append(f"edge {e.id}: route endpoints mismatch")
        hs = self.singular_heights()
        if len(set(hs)) != len(hs):
            problems.append("singular heights are not pairwise distinct")
        for v, r in self.ribbon.items():
            if sorted(r) != sorted(self.incident[v]):
                problems.append(f"ribbon order at {v} does not list the incident edges")
        for v, r in self.strong_order.items():
            if sorted(r) != sorted(self.incident[v]):
                problems.append(f"strong order at {v} does not list the incident edges")
        if not self.w0:
            prev = Fraction(0)
            for h in sorted(set(hs)) + [Fraction(1)]:
                t = (prev + h) / 2
                if prev != h and self._strand_count(t) == 0:
                    problems.append(f"empty level slice at height {t} "
                                    "with no extra basepoints")
                    break
                prev = h
        return problems

    def _strand_count(self, t: Fraction) -> int:
        count = 0
        for e in self.edges.values():
            nodes = self.edge_nodes(e)
            for i in range(len(nodes) - 1):
                if min(nodes[i], nodes[i + 1]) < t < max(nodes[i], nodes[i + 1]):
                    count += 1
        return count


@dataclass(frozen=True)
class PieceEdge:
    """One strand of an elementary piece: a stretch of an original edge.

    ends are in traversal order of the parent edge; route stops include both
    end ids.  A cap/cup stretch carries its critical point inside."""
    id: str
    ends: tuple               # (left id, right id)
    lower: tuple              # ids on the piece's lower boundary
    upper: tuple
    at_vertex: Optional[str]  # middle vertex when one end is there
    edge: str
    route: tuple
    shape: str                # "strand" | "cap" | "cup" | "germ"


@dataclass(frozen=True)
class ElementaryPiece:
    index: int
    lo: Fraction
    hi: Fraction
    feature: Optional[tuple]  # None | ("vertex", v) | ("crit", edge, i, kind)
    incoming: tuple           # point ids at lo
    outgoing: tuple           # point ids at hi
    strands: tuple            # PieceEdge entries

    @property
    def kind(self) -> str:
        if self.feature is None:
            return "Type1"
        if self.feature[0] == "vertex":
            return "Type2"
        return "Type3i" if self.feature[3] == "max" else "Type3ii"


class CerfDecomposition:
    """Morse data plus slice levels; pieces and routing are derived."""

    def __init__(self, graph: FlowGraph, levels: Optional[Sequence[Fraction]] = None,
                 cuttable=None):
        problems = graph.validate()
        if problems:
            raise FlowGraphError("; ".join(problems))
        self.graph = graph
        self.cuttable = cuttable if cuttable is not None else (lambda stop: True)
        if levels is None:
            sing = graph.singular_heights()
            levels = [Fraction(sing[i] + sing[i + 1], 2) for i in range(len(sing) - 1)]
        self.levels = tuple(sorted(set(levels)))
        sing = set(graph.singular_heights())
        for t in self.levels:
            if not (0 < t < 1):
                raise FlowGraphError(f"slice level {t} out of range")
            if t in sing:
                raise FlowGraphError(f"slice level {t} hits a singular height")
        self.partners: dict = {}
        self.pieces = self._slice()
        self._check_pieces()

    # -- slicing -------------------------------------------------------------

    def _slice(self) -> tuple:
        g = self.graph
        bounds = [Fraction(0)] + list(self.levels) + [Fraction(1)]
        nslabs = len(bounds) - 1

        def slab_of(h: Fraction) -> int:
            for i in range(nslabs):
                if bounds[i] < h < bounds[i + 1]:
                    return i
            raise FlowGraphError(f"height {h} sits on a slice level")

        strands_by_slab: dict = {i: [] for i in range(nslabs)}
        for eid in sorted(g.edges):
            e = g.edges[eid]
            nodes = g.edge_nodes(e)
            # traversal events: ("cut", level index, seg) and ("crit", i)
            events: list = []
            for seg in range(len(nodes) - 1):
                a, b = nodes[seg], nodes[seg + 1]
                idxs = [i for i in range(1, len(bounds) - 1)
                        if min(a, b) < bounds[i] < max(a, b)]
                if a > b:
                    idxs.reverse()
                events.extend(("cut", i, seg) for i in idxs)
                if seg < len(e.crit):
                    events.append(("crit", seg))
            # stretches between cuts / endpoints, crits ride inside
            stretches: list = []
            left: tuple = ("vertex", e.v1)
            crits: list = []
            for ev in events:
                if ev[0] == "crit":
                    crits.append(ev[1])
                else:
                    stretches.append((left, tuple(crits), ev))
                    left, crits = ev, []
            stretches.append((left, tuple(crits), ("vertex", e.v2)))
            cutpos = self._allocate_route(e, len(stretches) - 1)
            for sidx, (p1, cs, p2) in enumerate(stretches):
                if len(cs) > 1:
                    raise FlowGraphError(f"edge {eid}: two critical points in one slab")
                ids = tuple(self._point_id(e, p) for p in (p1, p2))
                h1, h2 = self._end_height(p1), self._end_height(p2)
                if cs:
                    ci = cs[0]
                    kind, ch = e.crit[ci]
                    slab = slab_of(ch)
                    shape = "cap" if kind == "max" else "cup"
                else:
                    interior = [p for p in (p1, p2) if p[0] == "vertex"
                                and g.vertices[p[1]].role == "interior"]
                    if interior:
                        slab = slab_of(g.vertices[interior[0][1]].height)
                        shape = "germ"
                    else:
                        slab = slab_of((h1 + h2) / 2)
                        shape = "strand"
                lower, upper, at_vertex = [], [], None
                lo_b = bounds[slab]
                for p, pid, h in zip((p1, p2), ids, (h1, h2)):
                    if (p[0] == "vertex"
                            and g.vertices[p[1]].role == "interior"):
                        at_vertex = p[1]
                    elif h <= lo_b:
                        lower.append(pid)
                    else:
                        upper.append(pid)
                route = self._stretch_route(e, sidx, cutpos, ids, len(stretches))
                strands_by_slab[slab].append(PieceEdge(
                    id=f"{eid}.{sidx}", ends=ids,
                    lower=tuple(sorted(lower)), upper=tuple(sorted(upper)),
                    at_vertex=at_vertex, edge=eid, route=route, shape=shape))
        features = self._features(bounds, nslabs)
        pieces = []
        for i in range(nslabs):
            strands = tuple(sorted(strands_by_slab[i], key=lambda s: s.id))
            incoming = tuple(sorted({p for s in strands for p in s.lower}))
            outgoing = tuple(sorted({p for s in strands for p in s.upper}))
            pieces.append(ElementaryPiece(i, bounds[i], bounds[i + 1],
                                          features.get(i), incoming, outgoing,
                                          strands))
        return tuple(pieces)

    def _point_id(self, e: FlowEdge, p) -> str:
        if p[0] == "vertex":
            return p[1]
        _, level_idx, seg = p
        return f"{e.id}#s{seg}@L{level_idx}"

    def _end_height(self, p) -> Fraction:
        if p[0] == "vertex":
            return self.graph.vertices[p[1]].height
        return ([Fraction(0)] + list(self.levels) + [Fraction(1)])[p[1]]

    def _features(self, bounds, nslabs) -> dict:
        g = self.graph
        out: dict = {}

        def put(i, feat):
            if i in out:
                raise FlowGraphError("two singular points in one slab")
            out[i] = feat

        for vid in sorted(g.vertices):
            v = g.vertices[vid]
            if v.role == "interior":
                put(CerfDecomposition._slab_index(v.height, bounds), ("vertex", vid))
        for eid in sorted(g.edges):
            for ci, (kind, h) in enumerate(g.edges[eid].crit):
                put(CerfDecomposition._slab_index(h, bounds), ("crit", eid, ci, kind))
        return out

    @staticmethod
    def _slab_index(h, bounds) -> int:
        for i in range(len(bounds) - 1):
            if bounds[i] < h < bounds[i + 1]:
                return i
        raise FlowGraphError(f"height {h} on a slice level")

    # -- routing ---------------------------------------------------------------

    def _allocate_route(self, e: FlowEdge, ncuts: int) -> list:
        """Hop-index cut positions subdividing the edge's route into
        ncuts+1 stretch routes; cuts land on cuttable stops, spread evenly
        and nondecreasing along the traversal."""
        route = e.route if e.route else (e.v1, e.v2)
        k = len(route) - 1
        legal = [i for i in range(0, k + 1) if self.cuttable(route[i])]
        if not legal:
            legal = [min(1, k)]
        cuts = []
        prev = legal[0]
        for j in range(1, ncuts + 1):
            target = Fraction(j * k, ncuts + 1)
            best = min(legal, key=lambda p: (abs(Fraction(p) - target), p))
            best = max(best, prev)
            cuts.append(best)
            prev = best
        return cuts

    def _stretch_route(self, e: FlowEdge, sidx: int, cuts: list, ids: tuple,
                       nstretch: int) -> tuple:
        route = list(e.route if e.route else (e.v1, e.v2))
        k = len(route) - 1
        start = 0 if sidx == 0 else cuts[sidx - 1]
        end = k if sidx == nstretch - 1 else cuts[sidx]
        stops = route[start:end + 1]
        if sidx > 0:
            self.partners.setdefault(ids[0], route[start])
            stops = [ids[0]] + stops
        else:
            stops[0] = ids[0]
        if sidx < nstretch - 1:
            self.partners.setdefault(ids[1], route[end])
            stops = stops + [ids[1]]
        else:
            stops[-1] = ids[1]
        return tuple(stops)

    # -- validation of derived pieces -----------------------------------------

    def _check_pieces(self):
        if not self.graph.w0:
            for p in self.pieces:
                if not p.strands:
                    raise FlowGraphError(f"piece {p.index} is an empty slice "
                                         "with no extra basepoints")
        for a, b in zip(self.pieces, self.pieces[1:]):
            if a.outgoing != b.incoming:
                raise FlowGraphError("consecutive piece boundaries do not match")
        if self.pieces:
            if self.pieces[0].incoming != tuple(sorted(self.graph.v0())):
                raise FlowGraphError("first piece does not start at the incoming vertices")
            if self.pieces[-1].outgoing != tuple(sorted(self.graph.v1())):
                raise FlowGraphError("last piece does not end at the outgoing vertices")
        for p in self.pieces:
            self._check_elementary(p)

    def _check_elementary(self, p: ElementaryPiece):
        if p.feature is None:
            if any(s.shape != "strand" for s in p.strands):
                raise FlowGraphError(f"piece {p.index}: non-trivial strand without a feature")
        elif p.feature[0] == "vertex":
            v = p.feature[1]
            for s in p.strands:
                if s.shape == "germ" and s.at_vertex != v:
                    raise FlowGraphError(f"piece {p.index}: germ at a foreign vertex")
                if s.shape in ("cap", "cup"):
                    raise FlowGraphError(f"piece {p.index}: cap/cup in a vertex slab")
        else:
            special = [s for s in p.strands if s.shape in ("cap", "cup")]
            if len(special) != 1:
                raise FlowGraphError(f"piece {p.index}: expected exactly one cap/cup")

    def middle_vertex_edges(self, piece: ElementaryPiece) -> list:
        """The piece's strands at its middle vertex, in action order: the
        strong order when declared, else the ribbon order rotated to start at
        the smallest edge id."""
        if piece.feature is None or piece.feature[0] != "vertex":
            raise FlowGraphError("piece has no middle vertex")
        v = piece.feature[1]
        germs = {s.edge: s for s in piece.strands if s.at_vertex == v}
        order = self.graph.strong_order.get(v)
        if order is None:
            rib = list(self.graph.ribbon[v])
            k = rib.index(min(rib))
            order = rib[k:] + rib[:k]
        return [germs[eid] for eid in order if eid in germs]

    def vertex_partner(self, v: str) -> str:
        """Stabilization partner of a graph vertex: the adjacent stop on its
        smallest incident edge's route."""
        if v in self.partners:
            return self.partners[v]
        eid = min(self.graph.incident[v])
        e = self.graph.edges[eid]
        route = e.route if e.route else (e.v1, e.v2)
        return route[1] if e.v1 == v else route[-2]


def cerf_decompose(graph: FlowGraph) -> CerfDecomposition:
    """Canonical decomposition: one slice level between each pair of
    consecutive singular heights."""
    return CerfDecomposition(graph)


# -- moves ----------------------------------------------------------------------

def _fresh_height(lo: Fraction, hi: Fraction, taken) -> Fraction:
    """A rational strictly between lo and hi avoiding the taken set."""
    t = (lo + hi) / 2
    while t in taken:
        t = (lo + t) / 2
    return t


def apply_move(dec: CerfDecomposition, move: int, site: tuple) -> CerfDecomposition:
    """Apply one of the six decomposition moves at the given site.

    Sites: move 1 ("split", piece index, height) or ("merge", level index);
    move 2 ("cancel", edge, crit index) or ("birth", edge, seg, kind);
    move 3 ("absorb", edge, "v1"|"v2") or ("extrude", edge, "v1"|"v2");
    move 4 (edge1, crit1, edge2, crit2); move 5 (vertex, edge, crit);
    move 6 (vertex, vertex).  Raises InapplicableMove when preconditions
    fail.
    """
    g = dec.graph
    if move == 1:
        return _move_split_merge(dec, site)
    if move == 2:
        return _move_birth_death(dec, site)
    if move == 3:
        return _move_crit_vertex(dec, site)
    if move == 4:
        return _move_swap_crits(dec, site)
    if move == 5:
        return _move_swap_vertex_crit(dec, site)
    if move == 6:
        return _move_swap_vertices(dec, site)
    raise InapplicableMove(f"unknown move {move}")


def _remake(dec: CerfDecomposition, graph=None, levels=None) -> CerfDecomposition:
    try:
        return CerfDecomposition(graph if graph is not None else dec.graph,
                                 levels if levels is not None else list(dec.levels),
                                 dec.cuttable)
    except FlowGraphError as err:
        raise InapplicableMove(str(err))


def _move_split_merge(dec, site):
    if site[0] == "split":
        _, idx, h = site
        piece = dec.pieces[idx]
        h = Fraction(h)
        if not (piece.lo < h < piece.hi) or h in set(dec.graph.singular_heights()):
            raise InapplicableMove("split level must be interior and generic")
        return _remake(dec, levels=list(dec.levels) + [h])
    if site[0] == "merge":
        _, li = site
        if not (0 <= li < len(dec.levels)):
            raise InapplicableMove("no such level")
        levels = [t for i, t in enumerate(dec.levels) if i != li]
        return _remake(dec, levels=levels)
    raise InapplicableMove(f"bad site {site!r}")


def _move_birth_death(dec, site):
    g = dec.graph
    if site[0] == "cancel":
        _, eid, ci = site
        e = g.edges.get(eid)
        if e is None or ci + 1 >= len(e.crit):
            raise InapplicableMove("no adjacent critical pair")
        (k1, h1), (k2, h2) = e.crit[ci], e.crit[ci + 1]
        if {k1, k2} != {"max", "min"}:
            raise InapplicableMove("pair is not a max/min pair")
        lo, hi = min(h1, h2), max(h1, h2)
        between = [h for h in g.singular_heights() if lo < h < hi]
        if between:
            raise InapplicableMove("another singular point lies between the pair")
        crit = e.crit[:ci] + e.crit[ci + 2:]
        edges = dict(g.edges)
        edges[eid] = FlowEdge(eid, e.v1, e.v2, crit, e.route)
        levels = [t for t in dec.levels if not (lo < t < hi)]
        return _remake(dec, graph=g.replace(edges=edges), levels=levels)
    if site[0] == "birth":
        _, eid, seg, kind = site
        e = g.edges.get(eid)
        if e is None:
            raise InapplicableMove("no such edge")
        nodes = g.edge_nodes(e)
        if not (0 <= seg < len(nodes) - 1):
            raise InapplicableMove("no such segment")
        a, b = nodes[seg], nodes[seg + 1]
        lo, hi = min(a, b), max(a, b)
        vals = [h for h in g.singular_heights() + list(dec.levels) if lo < h < hi]
        lo2 = max([lo] + vals)  # insert the pair above everything in the segment span
        taken = set(g.singular_heights()) | set(dec.levels)
        hm = _fresh_height(lo2, hi, taken)
        hmid = _fresh_height(hm, hi, taken | {hm})
        hM = _fresh_height(hmid, hi, taken | {hm, hmid})
        going_up = a < b
        if kind not in ("wiggle",):
            raise InapplicableMove("birth site kind must be 'wiggle'")
        if going_up:
            pair = (("max", hM), ("min", hm))
            new_levels = [hmid]
        else:
            pair = (("min", hm), ("max", hM))
            new_levels = [hmid]
        crit = e.crit[:seg] + pair + e.crit[seg:]
        edges = dict(g.edges)
        edges[eid] = FlowEdge(eid, e.v1, e.v2, crit, e.route)
        return _remake(dec, graph=g.replace(edges=edges),
                       levels=list(dec.levels) + new_levels)
    raise InapplicableMove(f"bad site {site!r}")


def _move_crit_vertex(dec, site):
    g = dec.graph
    op, eid, end = site[0], site[1], site[2]
    e = g.edges.get(eid)
    if e is None:
        raise InapplicableMove("no such edge")
    vid = e.v1 if end == "v1" else e.v2
    v = g.vertices[vid]
    if v.role != "interior":
        raise InapplicableMove("move 3 needs an interior vertex")
    if op == "absorb":
        if not e.crit:
            raise InapplicableMove("no critical point to absorb")
        idx = 0 if end == "v1" else len(e.crit) - 1
        _, h = e.crit[idx]
        lo, hi = min(h, v.height), max(h, v.height)
        between = [x for x in g.singular_heights() if lo < x < hi]
        if between:
            raise InapplicableMove("another singular point sits between")
        crit = e.crit[1:] if end == "v1" else e.crit[:-1]
        edges = dict(g.edges)
        edges[eid] = FlowEdge(eid, e.v1, e.v2, crit, e.route)
        levels = [t for t in dec.levels if not (lo < t < hi)]
        return _remake(dec, graph=g.replace(edges=edges), levels=levels)
    if op == "extrude":
        # insert a critical point next to the vertex, flipping its germ
        nodes = g.edge_nodes(e)
        nxt = nodes[1] if end == "v1" else nodes[-2]
        taken = set(g.singular_heights()) | set(dec.levels)
        if nxt < v.height:
            # germ goes down: add a max just above the vertex
            ceiling = min([x for x in taken if x > v.height] + [Fraction(1)])
            hc = _fresh_height(v.height, ceiling, taken)
            level = _fresh_height(v.height, hc, taken | {hc})
            newcrit = ("max", hc)
        else:
            floor = max([x for x in taken if x < v.height] + [Fraction(0)])
            hc = _fresh_height(floor, v.height, taken)
            level = _fresh_height(hc, v.height, taken | {hc})
            newcrit = ("min", hc)
        crit = ((newcrit,) + e.crit) if end == "v1" else (e.crit + (newcrit,))
        edges = dict(g.edges)
        edges[eid] = FlowEdge(eid, e.v1, e.v2, crit, e.route)
        return _remake(dec, graph=g.replace(edges=edges),
                       levels=list(dec.levels) + [level])
    raise InapplicableMove(f"bad site {site!r}")


def _adjacent_singular(dec, h1, h2) -> bool:
    hs = sorted(dec.graph.singular_heights())
    i1, i2 = hs.index(h1), hs.index(h2)
    return abs(i1 - i2) == 1


def _piece_points(dec, feature_height) -> set:
    bounds = [Fraction(0)] + list(dec.levels) + [Fraction(1)]
    idx = CerfDecomposition._slab_index(feature_height, bounds)
    p = dec.pieces[idx]
    return {pt for s in p.strands for pt in s.ends}


def _move_swap_crits(dec, site):
    e1, c1, e2, c2 = site
    g = dec.graph
    try:
        k1, h1 = g.edges[e1].crit[c1]
        k2, h2 = g.edges[e2].crit[c2]
    except (KeyError, IndexError):
        raise InapplicableMove("no such critical point")
    if e1 == e2 and c1 == c2:
        raise InapplicableMove("need two distinct critical points")
    if not _adjacent_singular(dec, h1, h2):
        raise InapplicableMove("critical points are not at adjacent heights")
    s1 = {pt for s in dec.pieces[_slab_for(dec, h1)].strands if s.edge == e1
          for pt in s.ends}
    s2 = {pt for s in dec.pieces[_slab_for(dec, h2)].strands if s.edge == e2
          for pt in s.ends}
    if s1 & s2:
        raise InapplicableMove("the two critical edges share a vertex")
    edges = dict(g.edges)
    edges[e1] = _with_crit_height(edges[e1], c1, h2)
    edges[e2] = _with_crit_height(edges[e2], c2, h1)
    return _remake(dec, graph=g.replace(edges=edges))


def _slab_for(dec, h) -> int:
    bounds = [Fraction(0)] + list(dec.levels) + [Fraction(1)]
    return CerfDecomposition._slab_index(h, bounds)


def _with_crit_height(e: FlowEdge, idx: int, h: Fraction) -> FlowEdge:
    crit = list(e.crit)
    crit[idx] = (crit[idx][0], h)
    return FlowEdge(e.id, e.v1, e.v2, tuple(crit), e.route)


def _move_swap_vertex_crit(dec, site):
    vid, eid, ci = site
    g = dec.graph
    v = g.vertices.get(vid)
    if v is None or v.role != "interior":
        raise InapplicableMove("need an interior vertex")
    try:
        kind, h = g.edges[eid].crit[ci]
    except (KeyError, IndexError):
        raise InapplicableMove("no such critical point")
    if not _adjacent_singular(dec, v.height, h):
        raise InapplicableMove("not at adjacent heights")
    vpts = {pt for s in dec.pieces[_slab_for(dec, v.height)].strands
            if s.at_vertex == vid for pt in s.ends}
    cpts = {pt for s in dec.pieces[_slab_for(dec, h)].strands if s.edge == eid
            for pt in s.ends}
    if vpts & cpts or eid in g.incident[vid]:
        raise InapplicableMove("vertex and critical edge interact")
    vertices = dict(g.vertices)
    vertices[vid] = FlowVertex(vid, h, v.role)
    edges = dict(g.edges)
    edges[eid] = _with_crit_height(edges[eid], ci, v.height)
    return _remake(dec, graph=g.replace(vertices=vertices, edges=edges))


def _move_swap_vertices(dec, site):
    va, vb = site
    g = dec.graph
    a, b = g.vertices.get(va), g.vertices.get(vb)
    if a is None or b is None or a.role != "interior" or b.role != "interior":
        raise InapplicableMove("need two interior vertices")
    if not _adjacent_singular(dec, a.height, b.height):
        raise InapplicableMove("not at adjacent heights")
    apts = {pt for s in dec.pieces[_slab_for(dec, a.height)].strands
            if s.at_vertex == va for pt in s.ends}
    bpts = {pt for s in dec.pieces[_slab_for(dec, b.height)].strands
            if s.at_vertex == vb for pt in s.ends}
    if apts & bpts or set(g.incident[va]) & set(g.incident[vb]):
        raise InapplicableMove("the vertices interact")
    vertices = dict(g.vertices)
    vertices[va] = FlowVertex(va, b.height, a.role)
    vertices[vb] = FlowVertex(vb, a.height, b.role)
    return _remake(dec, graph=g.replace(vertices=vertices))


def random_decompositions(graph: FlowGraph, seed: int, k: int,
                          cuttable=None, moves_per: int = 4) -> list:
    """k decompositions reachable from the canonical one by random move
    words; reproducible from the seed.  Each entry is (decomposition,
    move word)."""
    import random as _random
    rng = _random.Random(seed)
    base = CerfDecomposition(graph, cuttable=cuttable)
    out = [(base, ())]
    while len(out) < k:
        dec = base
        word = []
        for _ in range(moves_per):
            options = candidate_moves(dec)
            if not options:
                break
            rng.shuffle(options)
            for move, site in options:
                try:
                    dec = apply_move(dec, move, site)
                    word.append((move, site))
                    break
                except InapplicableMove:
                    continue
        out.append((dec, tuple(word)))
    return out[:k]


def candidate_moves(dec: CerfDecomposition) -> list:
    """Plausible (move, site) pairs at the current decomposition; some may
    still be inapplicable."""
    g = dec.graph
    opts: list = []
    for p in dec.pieces:
        h = (p.lo + p.hi) / 2
        if h not in set(g.singular_heights()):
            opts.append((1, ("split", p.index, h)))
        h2 = p.lo + (p.hi - p.lo) / 3
        if h2 not in set(g.singular_heights()):
            opts.append((1, ("split", p.index, h2)))
    for li in range(len(dec.levels)):
        opts.append((1, ("merge", li)))
    for eid, e in sorted(g.edges.items()):
        for ci in range(len(e.crit) - 1):
            opts.append((2, ("cancel", eid, ci)))
        nodes = g.edge_nodes(e)
        for seg in range(len(nodes) - 1):
            opts.append((2, ("birth", eid, seg, "wiggle")))
    for eid, e in sorted(g.edges.items()):
        for end in ("v1", "v2"):
            opts.append((3, ("absorb", eid, end)))
            opts.append((3, ("extrude", eid, end)))
    crits = [(eid, ci) for eid, e in sorted(g.edges.items())
             for ci in range(len(e.crit))]
    for i in range(len(crits)):
        for j in range(i + 1, len(crits)):
            opts.append((4, (crits[i][0], crits[i][1], crits[j][0], crits[j][1])))
    interior = [v.id for v in g.vertices.values() if v.role == "interior"]
    for v in sorted(interior):
        for eid, ci in crits:
            opts.append((5, (v, eid, ci)))
    for i in range(len(interior)):
        for j in range(i + 1, len(interior)):
            opts.append((6, (interior[i], interior[j])))
    return opts
