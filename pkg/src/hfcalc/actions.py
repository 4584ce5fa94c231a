"""The graph action map and its verification harness.

A context holds a base complex (diagram-computed or hand-built), the
registered operators for hops between base basepoints, and hands out
stabilization towers: base tensor one two-state factor per active vertex.
Tower generators are (base generator, sorted tuple of (vertex, state)), so
stabilizing at two vertices in either order builds the identical complex.

Every edge operator is a sum of hop operators along the edge's declared
route; piece actions follow the product formula (destabilize everything not
outgoing, act by the edges, stabilize everything new), with the declared
order at a middle vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import ColoredComplex, ModuleMap, anticommutator, formal_phi
from .flowgraph import CerfDecomposition, ElementaryPiece, FlowGraph
from .poly import Poly
from .solver import find_homotopy


class UnroutableEdge(ValueError):
    pass


@dataclass
class ActionContext:
    base: ColoredComplex
    base_ops: dict = field(default_factory=dict)   # frozenset({a,b}) -> ModuleMap
    partners: dict = field(default_factory=dict)   # vertex -> partner override
    _towers: dict = field(default_factory=dict, repr=False)

    @property
    def base_points(self) -> frozenset:
        return frozenset(self.base.colors)

    def register_op(self, a: str, b: str, op: ModuleMap):
        self.base_ops[frozenset((a, b))] = op

    def tower(self, records: frozenset) -> ColoredComplex:
        """Base complex stabilized at every (vertex, partner) record; the
        empty tower is the base itself."""
        if not records:
            return self.base
        key = tuple(sorted(records))
        if key in self._towers:
            return self._towers[key]
        recs = sorted(records)
        base = self.base
        from itertools import product
        states_list = [tuple(zip((v for v, _ in recs), signs))
                       for signs in product("+-", repeat=len(recs))]
        gens = [(g, st) for g in base.generators for st in states_list]
        diff: dict = {}
        for g in base.generators:
            for st in states_list:
                row: dict = {}
                for y, p in base.diff.get(g, {}).items():
                    row[(y, st)] = p
                for i, (v, partner) in enumerate(recs):
                    if st[i][1] == "-":
                        flip = tuple((vv, "+" if j == i else ss)
                                     for j, (vv, ss) in enumerate(st))
                        u = Poly.var(v) + Poly.var(partner)
                        row[(g, flip)] = row.get((g, flip), Poly.zero()) + u
                if row:
                    diff[(g, st)] = row
        colors = base.colors | {v for v, _ in recs}
        tags = None
        if base.spinc_tag is not None:
            tags = {(g, st): base.spinc_tag.get(g) for g in base.generators
                    for st in states_list}
        cx = ColoredComplex(gens, diff, colors, base.truncation, tags)
        self._towers[key] = cx
        return cx


def _with_state(st: tuple, v: str, sign: str) -> tuple:
    out = [p for p in st if p[0] != v] + [(v, sign)]
    return tuple(sorted(out))


def _drop_state(st: tuple, v: str) -> tuple:
    return tuple(p for p in st if p[0] != v)


def _split(gen, has_records: bool):
    return gen if has_records else (gen, ())


def s_plus(ctx: ActionContext, records: frozenset, v: str, partner: str) -> ModuleMap:
    """Stabilization at a fresh vertex: x -> x tensor theta-plus."""
    src = ctx.tower(records)
    tgt = ctx.tower(records | {(v, partner)})
    entries: dict = {}
    for gen in src.generators:
        g, st = _split(gen, bool(records))
        entries[gen] = {(g, _with_state(st, v, "+")): Poly.one()}
    return ModuleMap(src, tgt, entries)


def s_minus(ctx: ActionContext, records: frozenset, v: str, partner: str) -> ModuleMap:
    """Destabilization: theta-minus component survives, theta-plus dies."""
    src = ctx.tower(records)
    remaining = records - {(v, partner)}
    tgt = ctx.tower(remaining)
    entries: dict = {}
    for (g, st) in src.generators:
        if (v, "-") in st:
            out = _drop_state(st, v)
            entries[(g, st)] = {((g, out) if remaining else g): Poly.one()}
    return ModuleMap(src, tgt, entries)


def hop_op(ctx: ActionContext, records: frozenset, v: str, partner: str) -> ModuleMap:
    """Model edge action at a stabilization record: theta-plus -> theta-minus,
    theta-minus -> U_partner theta-plus; identity on all other factors."""
    cx = ctx.tower(records)
    up = Poly.var(partner)
    entries: dict = {}
    for (g, st) in cx.generators:
        if (v, "+") in st:
            entries[(g, st)] = {(g, _with_state(st, v, "-")): Poly.one()}
        elif (v, "-") in st:
            entries[(g, st)] = {(g, _with_state(st, v, "+")): up}
    return ModuleMap(cx, cx, entries)


def lift_op(ctx: ActionContext, records: frozenset, op: ModuleMap) -> ModuleMap:
    """A base operator acting through the tower, identity on the factors."""
    if not records:
        return op
    cx = ctx.tower(records)
    entries: dict = {}
    for (g, st) in cx.generators:
        row = {(y, st): p for y, p in op.entries.get(g, {}).items()}
        if row:
            entries[(g, st)] = row
    return ModuleMap(cx, cx, entries)


def edge_operator(ctx: ActionContext, records: frozenset, route: tuple) -> ModuleMap:
    """Sum of hop operators along a route; each consecutive pair must be a
    stabilization hop or a registered base operator."""
    cx = ctx.tower(records)
    recs = dict(records)
    total = cx.zero_map()
    if len(route) < 2:
        raise UnroutableEdge(f"route {route} is too short")
    for a, b in zip(route, route[1:]):
        if a in recs and recs[a] == b:
            total = total + hop_op(ctx, records, a, recs[a])
        elif b in recs and recs[b] == a:
            total = total + hop_op(ctx, records, b, recs[b])
        elif frozenset((a, b)) in ctx.base_ops:
            total = total + lift_op(ctx, records, ctx.base_ops[frozenset((a, b))])
        else:
            raise UnroutableEdge(f"no hop between {a!r} and {b!r}")
    return total


def elementary_action(dec: CerfDecomposition, piece: ElementaryPiece,
                      ctx: ActionContext, active: dict):
    """The action of one elementary piece given the active records;
    returns (map, new active records)."""
    piece_vertices = set(piece.incoming) | set(piece.outgoing)
    if piece.feature and piece.feature[0] == "vertex":
        piece_vertices.add(piece.feature[1])
    partner_of = dict(active)
    for v in sorted(piece_vertices - set(active)):
        partner_of[v] = ctx.partners.get(v) or dec.partners.get(v) or dec.vertex_partner(v)

    rec_now = frozenset(active.items())
    m = ctx.tower(rec_now).identity()
    # stabilize everything of the piece that is not yet active
    for v in sorted(piece_vertices - set(active)):
        m = s_plus(ctx, rec_now, v, partner_of[v]).compose(m)
        rec_now = rec_now | {(v, partner_of[v])}
    # edge operators: the middle-vertex germs in declared order first,
    # remaining strands in id order
    if piece.feature and piece.feature[0] == "vertex":
        germs = dec.middle_vertex_edges(piece)
        rest = [s for s in piece.strands if s not in germs]
    else:
        germs = []
        rest = list(piece.strands)
    for s in germs:
        m = edge_operator(ctx, rec_now, s.route).compose(m)
    for s in sorted(rest, key=lambda s: s.id):
        m = edge_operator(ctx, rec_now, s.route).compose(m)
    # destabilize everything not outgoing
    for v in sorted(piece_vertices - set(piece.outgoing)):
        m = s_minus(ctx, rec_now, v, partner_of[v]).compose(m)
        rec_now = rec_now - {(v, partner_of[v])}
    new_active = {v: p for v, p in sorted(rec_now)}
    return m, new_active


def graph_action(dec: CerfDecomposition, ctx: ActionContext,
                 initial: Optional[dict] = None) -> ModuleMap:
    """Ordered product of the elementary actions over the decomposition.

    initial maps each initially-stabilized vertex (the incoming set, plus any
    extra pre-stabilized vertices) to its partner; defaults to the graph's
    incoming vertices with derived partners.
    """
    if initial is None:
        initial = {v: ctx.partners.get(v) or dec.vertex_partner(v)
                   for v in dec.graph.v0()}
    active = dict(initial)
    m = ctx.tower(frozenset(active.items())).identity()
    for piece in dec.pieces:
        step, active = elementary_action(dec, piece, ctx, active)
        m = step.compose(m)
    return m


@dataclass(frozen=True)
class ComparisonReport:
    name: str
    status: str       # "exact" | "homotopy" | "fail"
    truncation: Optional[int]

    @property
    def ok(self) -> bool:
        return self.status in ("exact", "homotopy")


def compare_maps(name: str, f: ModuleMap, g: ModuleMap,
                 truncation: Optional[int] = 4) -> ComparisonReport:
    """Exact equality first; chain-homotopy fallback at the truncation."""
    if f == g:
        return ComparisonReport(name, "exact", None)
    if truncation is None:
        return ComparisonReport(name, "fail", None)
    ft = f.truncated(truncation)
    gt = g.truncated(truncation)
    h = find_homotopy(ft, gt, "equivariant")
    if h is not None:
        return ComparisonReport(name, "homotopy", truncation)
    return ComparisonReport(name, "fail", truncation)


def monochrome(ctx: ActionContext, graph: FlowGraph, m: ModuleMap) -> ModuleMap:
    """Apply the component coloring: every graph vertex's variable maps to
    its component color."""
    sigma = {v: graph.component_color(v) for v in graph.vertices}
    return m.substitute(sigma)


def cyclic_invariance_check(ctx: ActionContext, v: str, partner: str,
                            routes: list, truncation: int = 4) -> bool:
    """S- A_en ... A_e1 S+ at a single vertex agrees under cyclic rotation
    of the edges (exact, with homotopy fallback at the truncation).

    Route stops that are neither v nor base basepoints must have partners
    registered in the context; they stay stabilized throughout.
    """
    ambient: dict = {}
    for route in routes:
        for stop in route:
            if stop != v and stop not in ctx.base_points and stop not in ambient:
                if stop not in ctx.partners:
                    raise UnroutableEdge(f"unknown stop {stop!r}; register its partner")
                ambient[stop] = ctx.partners[stop]
    outer = frozenset(ambient.items())
    records = outer | {(v, partner)}

    def composite(rts):
        m = s_plus(ctx, outer, v, partner)
        for route in rts:
            m = edge_operator(ctx, records, route).compose(m)
        return s_minus(ctx, records, v, partner).compose(m)

    reference = composite(routes)
    for k in range(1, len(routes)):
        rotated = routes[k:] + routes[:k]
        rep = compare_maps(f"cyclic rotation {k}", composite(rotated), reference,
                           truncation)
        if not rep.ok:
            return False
    return True


def basepoint_moving(ctx: ActionContext, v_from: str, partner_from: str,
                     v_to: str, partner_to: str, route: tuple) -> ModuleMap:
    """S-_from . A_route . S+_to between two stabilization records."""
    recs = frozenset({(v_from, partner_from), (v_to, partner_to)})
    m = s_plus(ctx, frozenset({(v_from, partner_from)}), v_to, partner_to)
    m = edge_operator(ctx, recs, route).compose(m)
    return s_minus(ctx, recs, v_from, partner_from).compose(m)


def pi1_action(ctx: ActionContext, w: str, loop_op: ModuleMap) -> ModuleMap:
    """Id + Phi_w . A_gamma on the base complex; the loop operator comes from
    the diagram layer."""
    phi = formal_phi(ctx.base, w)
    return ctx.base.identity() + phi.compose(loop_op)


def bm_composite(ctx: ActionContext, w: str, v: str, loop1: ModuleMap,
                 loop2: ModuleMap) -> ModuleMap:
    """The round trip of moving the basepoint w out to a fresh vertex v
    (stabilized with partner w) and back, along two registered loops at w.

    The inner destabilize-restabilize pair at w is realized by the formal
    derivative map of the stabilized complex, which equals it on stabilized
    shapes and is chain homotopic to it in general.
    """
    recs = frozenset({(v, w)})
    stab = ctx.tower(recs)
    a1 = lift_op(ctx, recs, loop1) + hop_op(ctx, recs, v, w)
    a2 = lift_op(ctx, recs, loop2) + hop_op(ctx, recs, v, w)
    phi_mid = formal_phi(stab, w)
    m = s_plus(ctx, frozenset(), v, w)
    m = a1.compose(m)
    m = phi_mid.compose(m)
    m = a2.compose(m)
    m = s_minus(ctx, recs, v, w).compose(m)
    sigma = {v: w}
    return m.substitute(sigma, source=ctx.base, target=ctx.base)
