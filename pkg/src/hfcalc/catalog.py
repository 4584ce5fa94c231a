"""Canned diagrams, paths, and flow graphs used by the verification suite
and the command-line model-suite runner."""

from __future__ import annotations

from fractions import Fraction

from .complexes import ColoredComplex
from .diagram import (BasepointRec, Crossing, HeegaardDiagram, Region,
                      from_grid, stabilize_diagram)
from .disks import PathCrossing, PathSpec, loop_spec
from .flowgraph import FlowEdge, FlowGraph, FlowVertex


def sphere_model() -> HeegaardDiagram:
    """The two-crossing diagram with one alpha/beta pair on a sphere and
    basepoints w (inside the lens) and wp (outside)."""
    empty = HeegaardDiagram(0, [Region("R", 2)], [],
                            [BasepointRec("wp", "R", "wp")])
    return stabilize_diagram(empty, "R", "w")


def s1s2_diagram(basepoint_region: str = "C") -> HeegaardDiagram:
    """Genus-1 two-curve diagram with |alpha cap beta| = 2: two square
    regions A, B meeting both crossings and an annular region C.

    With the basepoint in C the diagram is admissible; placing it in A or B
    instead produces the standard non-admissible example.
    """
    regions = [Region("A", 1), Region("B", 1), Region("C", 0)]
    crossings = [
        Crossing("p1", 0, 0, ("A", "C", "B", "C")),
        Crossing("p2", 0, 0, ("C", "A", "C", "B")),
    ]
    basepoints = [BasepointRec("w", basepoint_region, "w")]
    return HeegaardDiagram(1, regions, crossings, basepoints)


def nonadmissible_diagram() -> HeegaardDiagram:
    return s1s2_diagram("A")


def one_generator_complex() -> ColoredComplex:
    """The complex of the standard genus-1 diagram for the three-sphere:
    one generator, vanishing differential, one basepoint."""
    return ColoredComplex(["x"], {}, ["w"])


# -- grid paths -----------------------------------------------------------------

def grid_cell(n: int, i: int, j: int) -> str:
    return f"r{i % n}_{j % n}"


def grid_vertical_path(n: int, col: int, row_from: int, row_to: int,
                       pid: str, start: str, end: str) -> PathSpec:
    """Walk upward in one column from row_from to row_to (wrapping), then
    horizontally to the endpoint; only the alpha crossings are recorded."""
    crossings = []
    i = row_from % n
    while i != row_to % n:
        crossings.append(PathCrossing((i + 1) % n, grid_cell(n, i, col),
                                      grid_cell(n, i + 1, col), 1))
        i = (i + 1) % n
    return PathSpec(pid, start, end, tuple(crossings))


def grid_diagonal_path(n: int, o_cells, j_from: int, j_to: int, pid: str) -> PathSpec:
    """Path between the basepoints of two columns: up the starting column to
    the target row, then across the target row."""
    return grid_vertical_path(n, j_from, o_cells[j_from], o_cells[j_to],
                              pid, f"O{j_from}", f"O{j_to}")


def grid_column_loop(n: int, col: int, start_row: int, pid: str,
                     basepoint: str, reverse: bool = False) -> PathSpec:
    """Loop once around the torus in one column, crossing every alpha."""
    crossings = []
    for k in range(n):
        i = (start_row + k) % n
        crossings.append(PathCrossing((i + 1) % n, grid_cell(n, i, col),
                                      grid_cell(n, i + 1, col), 1))
    if reverse:
        crossings = [PathCrossing(c.alpha, c.after, c.before, -c.sign)
                     for c in reversed(crossings)]
    return loop_spec(pid, crossings, basepoint)


def grid_row_loop(pid: str, basepoint: str) -> PathSpec:
    """Loop around a row: crosses beta curves only, so the recorded crossing
    list is empty and the action vanishes."""
    return loop_spec(pid, [], basepoint)


def path_with_alpha_recross(spec: PathSpec, alpha: int, near: str, other: str,
                            pid: str) -> PathSpec:
    """The same path with an extra back-and-forth across one alpha arc; the
    two new crossings cancel for every domain."""
    extra = (PathCrossing(alpha, near, other, 1), PathCrossing(alpha, other, near, 1))
    return PathSpec(pid, spec.start, spec.end, spec.crossings + extra)


def grid_path_pushed_across(n: int, pid: str) -> tuple:
    """A pair of paths from O0 to O1 differing by pushing the alpha_1
    crossing across the intersection point c1_1: (original, pushed, id).

    The original goes up column 0 then right; the pushed one goes right
    then up column 1, crossing alpha_1 on the other side of beta_1.
    """
    orig = PathSpec(pid, "O0", "O1",
                    (PathCrossing(1, grid_cell(n, 0, 0), grid_cell(n, 1, 0), 1),))
    pushed = PathSpec(pid + "'", "O0", "O1",
                      (PathCrossing(1, grid_cell(n, 0, 1), grid_cell(n, 1, 1), 1),))
    return orig, pushed, "c1_1"


# -- flow graph fleet -------------------------------------------------------------

def _f(x) -> Fraction:
    return Fraction(x)


def fg_single_edge() -> FlowGraph:
    return FlowGraph(
        [FlowVertex("a", _f(0), "in"), FlowVertex("b", _f(1), "out")],
        [FlowEdge("e", "a", "b", route=("a", "p", "b"))])


def fg_y() -> FlowGraph:
    return FlowGraph(
        [FlowVertex("a", _f(0), "in"), FlowVertex("m", Fraction(1, 2), "interior"),
         FlowVertex("b", _f(1), "out"), FlowVertex("c", _f(1), "out")],
        [FlowEdge("e1", "a", "m", route=("a", "p", "m")),
         FlowEdge("e2", "m", "b", route=("m", "p", "b")),
         FlowEdge("e3", "m", "c", route=("m", "p", "c"))])


def fg_cap_cup() -> FlowGraph:
    return FlowGraph(
        [FlowVertex("a", _f(0), "in"), FlowVertex("b", _f(1), "out")],
        [FlowEdge("e", "a", "b", crit=(("max", Fraction(3, 5)), ("min", Fraction(2, 5))),
                  route=("a", "p", "b"))])


def fg_h() -> FlowGraph:
    return FlowGraph(
        [FlowVertex("a1", _f(0), "in"), FlowVertex("a2", _f(0), "in"),
         FlowVertex("m1", Fraction(2, 5), "interior"),
         FlowVertex("m2", Fraction(3, 5), "interior"),
         FlowVertex("b1", _f(1), "out"), FlowVertex("b2", _f(1), "out")],
        [FlowEdge("e1", "a1", "m1", route=("a1", "p", "m1")),
         FlowEdge("e2", "a2", "m2", route=("a2", "p", "m2")),
         FlowEdge("e3", "m1", "b1", route=("m1", "p", "b1")),
         FlowEdge("e4", "m2", "b2", route=("m2", "p", "b2")),
         FlowEdge("e5", "m1", "m2", route=("m1", "p", "m2"))])


def fg_wheel4() -> FlowGraph:
    return FlowGraph(
        [FlowVertex("a1", _f(0), "in"), FlowVertex("a2", _f(0), "in"),
         FlowVertex("m", Fraction(1, 2), "interior"),
         FlowVertex("b1", _f(1), "out"), FlowVertex("b2", _f(1), "out")],
        [FlowEdge("e1", "a1", "m", route=("a1", "p", "m")),
         FlowEdge("e2", "a2", "m", route=("a2", "p", "m")),
         FlowEdge("e3", "m", "b1", route=("m", "p", "b1")),
         FlowEdge("e4", "m", "b2", route=("m", "p", "b2"))],
        ribbon={"m": ("e1", "e3", "e2", "e4")})


def flow_graph_fleet() -> dict:
    return {
        "single-edge": fg_single_edge(),
        "y-graph": fg_y(),
        "cap-cup": fg_cap_cup(),
        "h-graph": fg_h(),
        "wheel-4": fg_wheel4(),
    }


def model_cuttable(stop: str) -> bool:
    return stop == "p"
