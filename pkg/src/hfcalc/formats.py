"""Text formats: `.hfd` for diagrams with paths, `.flow` for flow graphs.

Both are newline-delimited UTF-8 with `#` comments; all rationals are exact
p/q strings and no floating point appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, TextIO

from .diagram import BasepointRec, Crossing, DiagramError, HeegaardDiagram, Region
from .disks import PathCrossing, PathSpec
from .flowgraph import FlowEdge, FlowGraph, FlowGraphError, FlowVertex


class FormatError(ValueError):
    pass


def _sections(text: str):
    current = None
    header = ""
    items: list = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if current is not None:
                yield current, header, items
            end = line.index("]")
            current = line[1:end]
            header = line[end + 1:].strip()
            items = []
        else:
            if current is None:
                raise FormatError(f"content before any section: {raw!r}")
            items.append(line)
    if current is not None:
        yield current, header, items


def _kv(tokens, line):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise FormatError(f"expected key=value, got {tok!r} in {line!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


# -- .hfd -------------------------------------------------------------------------

def parse_hfd(text: str) -> tuple:
    """Parse a diagram file; returns (HeegaardDiagram, {path id: PathSpec})."""
    d = None
    regions: list = []
    crossings: list = []
    basepoints: list = []
    paths: dict = {}
    for name, header, items in _sections(text):
        if name == "diagram":
            kv = _kv(header.split(), header)
            d = int(kv["alpha"])
            if int(kv["beta"]) != d:
                raise FormatError("alpha and beta counts must agree")
        elif name == "regions":
            for line in items:
                toks = line.split()
                kv = _kv(toks[1:], line)
                regions.append(Region(toks[0], int(kv["chi"])))
        elif name == "crossings":
            for line in items:
                toks = line.split()
                kv = _kv(toks[1:], line)
                quads = tuple(kv["q"].split(","))
                if len(quads) != 4:
                    raise FormatError(f"crossing {toks[0]}: need 4 quadrants")
                crossings.append(Crossing(toks[0], int(kv["a"]), int(kv["b"]), quads))
        elif name == "basepoints":
            for line in items:
                toks = line.split()
                kv = _kv(toks[1:], line)
                basepoints.append(BasepointRec(toks[0], kv["region"], kv["color"]))
        elif name == "paths":
            for line in items:
                toks = line.split(None, 1)
                kv = _kv(toks[1].split(), line) if len(toks) > 1 else {}
                start = None if kv.get("from", "-") == "-" else kv["from"]
                end = None if kv.get("to", "-") == "-" else kv["to"]
                crs = []
                spec = kv.get("x", "")
                for part in filter(None, spec.split(";")):
                    if not (part.startswith("(") and part.endswith(")")):
                        raise FormatError(f"bad crossing {part!r}")
                    a, before, after, sign = part[1:-1].split(",")
                    crs.append(PathCrossing(int(a), before, after, int(sign)))
                paths[toks[0]] = PathSpec(toks[0], start, end, tuple(crs))
        else:
            raise FormatError(f"unknown section [{name}]")
    if d is None:
        raise FormatError("missing [diagram] section")
    try:
        h = HeegaardDiagram(d, regions, crossings, basepoints)
    except DiagramError as err:
        raise FormatError(str(err))
    for p in paths.values():
        p.validate(h)
    return h, paths


def write_hfd(h: HeegaardDiagram, paths: Optional[dict] = None) -> str:
    lines = [f"[diagram] alpha={h.d} beta={h.d}"]
    lines.append("[regions]")
    for r in h.regions:
        lines.append(f"{r.id} chi={r.chi}")
    lines.append("[crossings]")
    for c in h.crossings:
        lines.append(f"{c.id} a={c.alpha} b={c.beta} q={','.join(c.quadrants)}")
    lines.append("[basepoints]")
    for b in h.basepoints:
        lines.append(f"{b.id} region={b.region} color={b.color}")
    if paths:
        lines.append("[paths]")
        for pid in sorted(paths):
            p = paths[pid]
            xs = ";".join(f"({c.alpha},{c.before},{c.after},{c.sign:+d})"
                          for c in p.crossings)
            frm = p.start if p.start is not None else "-"
            to = p.end if p.end is not None else "-"
            lines.append(f"{pid} from={frm} to={to} x={xs}")
    return "\n".join(lines) + "\n"


# -- .flow ------------------------------------------------------------------------

def _rat(s: str) -> Fraction:
    return Fraction(s)


def parse_flow(text: str) -> FlowGraph:
    vertices: list = []
    edges: list = []
    ribbon: dict = {}
    coloring: dict = {}
    w0: list = []
    for name, header, items in _sections(text):
        if name == "vertices":
            for line in items:
                toks = line.split()
                role = "interior"
                if toks[-1] in ("in", "out"):
                    role = toks.pop()
                kv = _kv(toks[1:], line)
                vertices.append(FlowVertex(toks[0], _rat(kv["h"]), role))
        elif name == "edges":
            for line in items:
                toks = line.split()
                if "-" not in toks[1]:
                    raise FormatError(f"edge {toks[0]}: expected v1-v2")
                v1, v2 = toks[1].split("-", 1)
                kv = _kv(toks[2:], line)
                crit = []
                spec = kv.get("crit", "()")
                if not (spec.startswith("(") and spec.endswith(")")):
                    raise FormatError(f"bad crit {spec!r}")
                for part in filter(None, spec[1:-1].split(",")):
                    kind, at = part.split("@")
                    if kind not in ("max", "min"):
                        raise FormatError(f"bad critical kind {kind!r}")
                    crit.append((kind, _rat(at)))
                route = tuple(filter(None, kv.get("route", "").split(",")))
                edges.append(FlowEdge(toks[0], v1, v2, tuple(crit), route))
        elif name == "ribbon":
            for line in items:
                v, rest = line.split(":", 1)
                ribbon[v.strip()] = tuple(rest.split())
        elif name == "colors":
            for line in items:
                for tok in line.split():
                    comp, col = tok.split("=", 1)
                    coloring[comp] = col
        elif name == "extra":
            for line in items:
                w0.extend(line.split())
        else:
            raise FormatError(f"unknown section [{name}]")
    try:
        return FlowGraph(vertices, edges, ribbon or None, None, coloring, w0)
    except FlowGraphError as err:
        raise FormatError(str(err))


def write_flow(g: FlowGraph) -> str:
    lines = ["[vertices]"]
    rolemap = {"in": " in", "out": " out", "interior": ""}
    for vid in sorted(g.vertices):
        v = g.vertices[vid]
        lines.append(f"{v.id} h={v.height}{rolemap[v.role]}")
    lines.append("[edges]")
    for eid in sorted(g.edges):
        e = g.edges[eid]
        crit = ",".join(f"{k}@{h}" for k, h in e.crit)
        route = ",".join(e.route)
        lines.append(f"{e.id} {e.v1}-{e.v2} crit=({crit}) route={route}")
    lines.append("[ribbon]")
    for v in sorted(g.ribbon):
        lines.append(f"{v}: {' '.join(g.ribbon[v])}")
    if g.coloring:
        lines.append("[colors]")
        for comp in sorted(g.coloring):
            lines.append(f"{comp}={g.coloring[comp]}")
    if g.w0:
        lines.append("[extra]")
        lines.append(" ".join(g.w0))
    return "\n".join(lines) + "\n"
