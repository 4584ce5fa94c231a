"""Combinatorial multi-pointed Heegaard diagrams.

A diagram is pure incidence data: regions with Euler characteristics,
crossings with their four quadrant regions listed counterclockwise (slots 1
and 3 are the two quadrants swept from an alpha curve to a beta curve), and
basepoints.  Everything downstream (Maslov indices, admissibility, disk
counts) factors through this data; no geometry is stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .lattice import (fourier_motzkin, integral_point, kernel_basis,
                      solve_integer, smith_normal_form)

Domain = dict  # region id -> int multiplicity; absent means 0


class DiagramError(ValueError):
    pass


class NonGenericError(DiagramError):
    """A region occupies all four quadrants at some crossing."""


class VertexRelationError(DiagramError):
    pass


class NonIntegralError(DiagramError):
    """The Maslov formula returned a non-integer (inconsistent input)."""


@dataclass(frozen=True)
class Region:
    id: str
    chi: int


@dataclass(frozen=True)
class Crossing:
    id: str
    alpha: int
    beta: int
    quadrants: tuple  # (q1, q2, q3, q4) region ids, counterclockwise


@dataclass(frozen=True)
class BasepointRec:
    id: str
    region: str
    color: str


class HeegaardDiagram:
    def __init__(self, d: int, regions: Sequence[Region], crossings: Sequence[Crossing],
                 basepoints: Sequence[BasepointRec]):
        self.d = d
        self.regions = tuple(regions)
        self.crossings = tuple(crossings)
        self.basepoints = tuple(basepoints)
        self.region_index = {r.id: i for i, r in enumerate(self.regions)}
        self.crossing_index = {c.id: i for i, c in enumerate(self.crossings)}
        if len(self.region_index) != len(self.regions):
            raise DiagramError("duplicate region ids")
        if len(self.crossing_index) != len(self.crossings):
            raise DiagramError("duplicate crossing ids")
        if len({b.id for b in self.basepoints}) != len(self.basepoints):
            raise DiagramError("duplicate basepoint ids")
        for c in self.crossings:
            if len(c.quadrants) != 4:
                raise DiagramError(f"crossing {c.id}: need 4 quadrants")
            for q in c.quadrants:
                if q not in self.region_index:
                    raise DiagramError(f"crossing {c.id}: unknown region {q!r}")
            if not (0 <= c.alpha < d and 0 <= c.beta < d):
                raise DiagramError(f"crossing {c.id}: curve index out of range")
        for b in self.basepoints:
            if b.region not in self.region_index:
                raise DiagramError(f"basepoint {b.id}: unknown region {b.region!r}")
        for i in range(d):
            if not any(c.alpha == i for c in self.crossings):
                raise DiagramError(f"alpha curve {i} has no crossings")
            if not any(c.beta == i for c in self.crossings):
                raise DiagramError(f"beta curve {i} has no crossings")
        self.generic = all(len(set(c.quadrants)) > 1 for c in self.crossings)
        self._validate_components()
        if self.generic:
            self._validate_euler()
        self._mu1_cache: dict = {}

    # -- validation ---------------------------------------------------------

    def _components(self):
        """Connected components of the diagram as sets of region ids."""
        parent = {r.id: r.id for r in self.regions}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for c in self.crossings:
            for q in c.quadrants[1:]:
                union(c.quadrants[0], q)
        comps: dict = {}
        for r in self.regions:
            comps.setdefault(find(r.id), set()).add(r.id)
        return list(comps.values())

    def _validate_components(self):
        comps = self._components()
        bp_regions = {b.region for b in self.basepoints}
        for comp in comps:
            if not (comp & bp_regions):
                raise DiagramError("a connected component has no basepoint")
        self._comps = comps

    def _validate_euler(self):
        for comp in comps_sorted(self._comps):
            e = sum(self.region_euler(r) for r in comp)
            if e.denominator != 1 or int(e) % 2 != 0 or int(e) > 2:
                raise DiagramError(f"component Euler measure {e} is not 2-2g")
            g = (2 - int(e)) // 2
            alphas = {c.alpha for c in self.crossings if c.quadrants[0] in comp}
            betas = {c.beta for c in self.crossings if c.quadrants[0] in comp}
            if len(alphas) != len(betas):
                raise DiagramError("component has unequal alpha/beta counts")
            ell = sum(1 for b in self.basepoints if b.region in comp)
            if len(alphas) != g + ell - 1:
                raise DiagramError(
                    f"component violates d = g + l - 1: d={len(alphas)} g={g} l={ell}")

    # -- measures -----------------------------------------------------------

    def corner_runs(self, crossing: Crossing, region_id: str) -> list[int]:
        """Lengths of maximal cyclic runs of quadrants occupied by the region."""
        occ = [q == region_id for q in crossing.quadrants]
        if all(occ):
            raise NonGenericError(
                f"region {region_id} occupies all quadrants at {crossing.id}")
        if not any(occ):
            return []
        runs = []
        # rotate so position 0 is unoccupied, then scan
        start = occ.index(False)
        rot = occ[start:] + occ[:start]
        k = 0
        for v in rot:
            if v:
                k += 1
            elif k:
                runs.append(k)
                k = 0
        if k:
            runs.append(k)
        return runs

    def region_euler(self, region_id: str) -> Fraction:
        e = Fraction(self.regions[self.region_index[region_id]].chi)
        for c in self.crossings:
            for k in self.corner_runs(c, region_id):
                e += Fraction(k - 2, 4)
        return e

    def euler_measure(self, dom: Domain) -> Fraction:
        if not hasattr(self, "_region_euler"):
            self._region_euler = {r.id: self.region_euler(r.id) for r in self.regions}
        return sum((self._region_euler[r] * m for r, m in dom.items() if m),
                   start=Fraction(0))

    def point_measure(self, dom: Domain, crossing_id: str) -> Fraction:
        c = self.crossings[self.crossing_index[crossing_id]]
        return Fraction(sum(dom.get(q, 0) for q in c.quadrants), 4)

    def vertex_defect(self, dom: Domain, crossing_id: str) -> int:
        c = self.crossings[self.crossing_index[crossing_id]]
        q1, q2, q3, q4 = c.quadrants
        return (dom.get(q1, 0) + dom.get(q3, 0)) - (dom.get(q2, 0) + dom.get(q4, 0))

    def basepoint_multiplicities(self, dom: Domain) -> dict:
        return {b.id: dom.get(b.region, 0) for b in self.basepoints}

    # -- generators ---------------------------------------------------------

    def enumerate_generators(self) -> list[tuple]:
        """All sets of d crossings using each alpha and each beta index once.

        A generator is the tuple of crossing ids indexed by alpha curve.
        """
        by_alpha: list[list[Crossing]] = [[] for _ in range(self.d)]
        for c in self.crossings:
            by_alpha[c.alpha].append(c)
        for lst in by_alpha:
            lst.sort(key=lambda c: (c.beta, c.id))
        out: list[tuple] = []
        choice: list[str] = []
        used_beta = [False] * self.d

        def rec(i: int):
            if i == self.d:
                out.append(tuple(choice))
                return
            for c in by_alpha[i]:
                if not used_beta[c.beta]:
                    used_beta[c.beta] = True
                    choice.append(c.id)
                    rec(i + 1)
                    choice.pop()
                    used_beta[c.beta] = False

        rec(0)
        return out

    def generator_points(self, gen: tuple) -> frozenset:
        return frozenset(gen)

    # -- domain spaces -------------------------------------------------------

    def _defect_matrix(self) -> list[list[int]]:
        rows = []
        for c in self.crossings:
            row = [0] * len(self.regions)
            for sign, q in zip((1, -1, 1, -1), c.quadrants):
                row[self.region_index[q]] += sign
            rows.append(row)
        return rows

    def _defect_rhs(self, x: tuple, y: tuple) -> list[int]:
        xs, ys = set(x), set(y)
        return [(1 if c.id in xs else 0) - (1 if c.id in ys else 0)
                for c in self.crossings]

    def domain_space(self, x: tuple, y: tuple):
        """Integer solutions of the vertex relations for (x, y).

        Returns (particular Domain, kernel basis of Domains) or None when no
        integer solution exists (empty pi_2).
        """
        mat = self._defect_matrix()
        part = solve_integer(mat, self._defect_rhs(x, y))
        if part is None:
            return None
        kb = kernel_basis(mat)
        ids = [r.id for r in self.regions]
        particular = {ids[i]: v for i, v in enumerate(part) if v}
        basis = [{ids[i]: v for i, v in enumerate(k) if v} for k in kb]
        return particular, basis

    def check_vertex_relations(self, dom: Domain, x: tuple, y: tuple) -> bool:
        xs, ys = set(x), set(y)
        for c in self.crossings:
            want = (1 if c.id in xs else 0) - (1 if c.id in ys else 0)
            if self.vertex_defect(dom, c.id) != want:
                return False
        return True

    def maslov_index(self, dom: Domain, x: tuple, y: tuple) -> int:
        """Combinatorial Maslov index e(D) + n_x(D) + n_y(D)."""
        if not self.check_vertex_relations(dom, x, y):
            raise VertexRelationError("domain does not connect the generators")
        mu = self.euler_measure(dom)
        for p in x:
            mu += self.point_measure(dom, p)
        for p in y:
            mu += self.point_measure(dom, p)
        if mu.denominator != 1:
            raise NonIntegralError(f"Maslov formula gave {mu}")
        return int(mu)

    # -- complement components ------------------------------------------------

    def _glued_components(self, merge_beta: bool) -> list[Domain]:
        """Indicator domains of the components of the complement of the alpha
        curves (merge across beta arcs) or of the beta curves."""
        parent = {r.id: r.id for r in self.regions}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for c in self.crossings:
            q1, q2, q3, q4 = c.quadrants
            if merge_beta:  # components of the alpha complement
                union(q1, q2)
                union(q3, q4)
            else:           # components of the beta complement
                union(q2, q3)
                union(q4, q1)
        comps: dict = {}
        for r in self.regions:
            comps.setdefault(find(r.id), set()).add(r.id)
        out = [{rid: 1 for rid in sorted(comp)} for comp in comps.values()]
        out.sort(key=lambda d: sorted(d))
        return out

    def alpha_complement_components(self) -> list[Domain]:
        return self._glued_components(merge_beta=True)

    def beta_complement_components(self) -> list[Domain]:
        return self._glued_components(merge_beta=False)

    # -- periodic domains and admissibility -----------------------------------

    def periodic_lattice(self) -> list[Domain]:
        """Basis of {vertex-relation kernel} intersected with {n_w = 0}."""
        mat = self._defect_matrix()
        for b in self.basepoints:
            row = [0] * len(self.regions)
            row[self.region_index[b.region]] = 1
            mat.append(row)
        kb = kernel_basis(mat)
        ids = [r.id for r in self.regions]
        return [{ids[i]: v for i, v in enumerate(k) if v} for k in kb]

    def spinc_partition(self) -> dict:
        """Stable class label per generator; x ~ y iff pi_2(x,y) is nonempty."""
        gens = self.enumerate_generators()
        mat = self._defect_matrix()
        reps: list[tuple] = []
        labels: dict = {}
        for g in gens:
            placed = False
            for i, r in enumerate(reps):
                if solve_integer(mat, self._defect_rhs(g, r)) is not None:
                    labels[g] = f"s{i}"
                    placed = True
                    break
            if not placed:
                labels[g] = f"s{len(reps)}"
                reps.append(g)
        return labels

    def spinc_representative(self, label: str) -> tuple:
        for g, lab in sorted(self.spinc_partition().items()):
            if lab == label:
                return g
        raise DiagramError(f"no occupied class {label!r}")

    def c1_pairing(self, periodic: Domain, spinc: str) -> int:
        """<c1(s), H(P)> computed as the Maslov index of P at any
        representative; P must be periodic."""
        for c in self.crossings:
            if self.vertex_defect(periodic, c.id) != 0:
                raise DiagramError("domain is not periodic (vertex defect)")
        for b in self.basepoints:
            if periodic.get(b.region, 0) != 0:
                raise DiagramError("domain is not periodic (basepoint multiplicity)")
        x = self.spinc_representative(spinc)
        return self.maslov_index(periodic, x, x)

    def check_weak_admissibility(self):
        """Exact: no nonzero nonnegative element of the periodic lattice.

        Returns (True, None) or (False, witness Domain), by Fourier-Motzkin
        elimination over the lattice's rational span.
        """
        basis = self.periodic_lattice()
        if not basis:
            return True, None
        ids = [r.id for r in self.regions]
        k = len(basis)
        ineqs = []
        for rid in ids:
            ineqs.append([Fraction(b.get(rid, 0)) for b in basis] + [Fraction(0)])
        total = [Fraction(sum(b.get(rid, 0) for rid in ids)) for b in basis]
        ineqs.append(total + [Fraction(-1)])
        point = fourier_motzkin(ineqs)
        if point is None:
            return True, None
        coeffs = integral_point(point)
        witness: Domain = {}
        for i, b in enumerate(basis):
            for rid, v in b.items():
                witness[rid] = witness.get(rid, 0) + coeffs[i] * v
        witness = {r: v for r, v in witness.items() if v}
        assert witness and all(v >= 0 for v in witness.values())
        return False, witness

    def check_strong_admissibility(self, spinc: str, bound: int = 8,
                                   budget: int = 2_000_000):
        """Bounded verification of strong admissibility for one class.

        For every nonzero P in the coefficient box [-bound, bound]^rank with
        <c1(s), H(P)> = 2N >= 0, some multiplicity must exceed N.  Returns an
        object with status "verified", "failed" (with witness), or
        "inconclusive" when the box exceeds the enumeration budget.
        """
        basis = self.periodic_lattice()
        x = self.spinc_representative(spinc)
        rank = len(basis)
        if rank == 0:
            return StrongAdmissibilityResult("verified", None, bound)
        if (2 * bound + 1) ** rank > budget:
            return StrongAdmissibilityResult("inconclusive", None, bound)
        from itertools import product
        for coeffs in product(range(-bound, bound + 1), repeat=rank):
            if all(c == 0 for c in coeffs):
                continue
            dom: Domain = {}
            for c, b in zip(coeffs, basis):
                if c:
                    for rid, v in b.items():
                        dom[rid] = dom.get(rid, 0) + c * v
            dom = {r: v for r, v in dom.items() if v}
            if not dom:
                continue
            pairing = self.maslov_index(dom, x, x)
            if pairing >= 0:
                n = pairing // 2
                if max(dom.values()) <= n:
                    return StrongAdmissibilityResult("failed", dom, bound)
        return StrongAdmissibilityResult("verified", None, bound)


@dataclass(frozen=True)
class StrongAdmissibilityResult:
    status: str  # verified | failed | inconclusive
    witness: Optional[Domain]
    bound: int


def comps_sorted(comps: Iterable[set]) -> list[set]:
    return sorted(comps, key=lambda c: sorted(c))


# -- constructors -------------------------------------------------------------

def from_grid(n: int, o_cells: Sequence[int]) -> HeegaardDiagram:
    """Torus grid diagram for S^3 with n basepoints.

    n alpha rows and n beta columns on a torus identification; cell (i, j)
    sits above alpha_i and right of beta_j; o_cells[j] is the row of the
    basepoint in column j and must be a permutation.
    """
    if n < 2:
        raise DiagramError("grid size must be at least 2")
    if sorted(o_cells) != list(range(n)):
        raise DiagramError("o_cells must be a permutation of 0..n-1")
    regions = [Region(f"r{i}_{j}", 1) for i in range(n) for j in range(n)]

    def cell(i, j):
        return f"r{i % n}_{j % n}"

    crossings = []
    for i in range(n):
        for j in range(n):
            quadrants = (cell(i, j), cell(i, j - 1), cell(i - 1, j - 1), cell(i - 1, j))
            crossings.append(Crossing(f"c{i}_{j}", i, j, quadrants))
    basepoints = [BasepointRec(f"O{j}", cell(o_cells[j], j), f"O{j}")
                  for j in range(n)]
    return HeegaardDiagram(n, regions, crossings, basepoints)


def stabilize_diagram(h: HeegaardDiagram, region_id: str, w: str,
                      color: Optional[str] = None) -> HeegaardDiagram:
    """Insert a small alpha/beta pair around a new basepoint w inside the
    given region.

    Adds a lens region (containing w), two side bigons, and two crossings
    theta_plus/theta_minus on fresh curve indices.  The quadrant assignment
    makes the two side bigons index-one domains from theta_plus to
    theta_minus with zero basepoint multiplicity, and the lens an index-one
    domain from theta_minus to theta_plus crossing w once.
    """
    if region_id not in h.region_index:
        raise DiagramError(f"unknown region {region_id!r}")
    lens, ba, bb = f"{w}_L", f"{w}_Ba", f"{w}_Bb"
    tp, tm = f"{w}_tp", f"{w}_tm"
    for rid in (lens, ba, bb):
        if rid in h.region_index:
            raise DiagramError(f"region id {rid} already taken")
    regions = []
    for r in h.regions:
        if r.id == region_id:
            regions.append(Region(r.id, r.chi - 1))
        else:
            regions.append(r)
    regions += [Region(lens, 1), Region(ba, 1), Region(bb, 1)]
    d = h.d
    crossings = list(h.crossings) + [
        Crossing(tp, d, d, (ba, lens, bb, region_id)),
        Crossing(tm, d, d, (lens, ba, region_id, bb)),
    ]
    basepoints = list(h.basepoints) + [BasepointRec(w, lens, color if color else w)]
    return HeegaardDiagram(d + 1, regions, crossings, basepoints)
