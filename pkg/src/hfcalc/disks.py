"""Forced combinatorial disk counts: empty bigons and rectangles count one,
anything else is flagged rather than guessed.

The enumerator is exhaustive for nonnegative domains within a per-region
multiplicity cap; its output feeds the differential, the relative homology
actions A for paths and loops, and the explicit homotopies with their
integer-valued crossing weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .complexes import ColoredComplex, ModuleMap
from .diagram import Domain, HeegaardDiagram
from .poly import Poly


class NonCombinatorialError(ValueError):
    """Some index-one positive domain is not an empty bigon or rectangle."""

    def __init__(self, witnesses):
        self.witnesses = witnesses
        super().__init__(f"{len(witnesses)} positive index-one domain(s) "
                         "are not forced counts")


@dataclass(frozen=True)
class PathCrossing:
    alpha: int
    before: str   # region id just before the alpha crossing, in path order
    after: str
    sign: int = 1


@dataclass(frozen=True)
class PathSpec:
    """A path between basepoints recorded by its alpha-curve crossings.

    Beta crossings change the ambient region but never enter the weight sum,
    so only the alpha crossings are stored.  For a closed loop set start and
    end to the same basepoint, or to None for an unanchored loop.
    """
    id: str
    start: Optional[str]
    end: Optional[str]
    crossings: tuple

    @property
    def is_loop(self) -> bool:
        return self.start == self.end

    def reversed(self) -> "PathSpec":
        rev = tuple(PathCrossing(c.alpha, c.after, c.before, -c.sign)
                    for c in reversed(self.crossings))
        return PathSpec(f"{self.id}~", self.end, self.start, rev)

    def validate(self, h: HeegaardDiagram):
        bps = {b.id for b in h.basepoints}
        for end in (self.start, self.end):
            if end is not None and end not in bps:
                raise ValueError(f"path {self.id}: unknown basepoint {end!r}")
        for c in self.crossings:
            if not (0 <= c.alpha < h.d):
                raise ValueError(f"path {self.id}: alpha index out of range")
            if c.sign not in (1, -1):
                raise ValueError(f"path {self.id}: sign must be +1 or -1")
            for rid in (c.before, c.after):
                if rid not in h.region_index:
                    raise ValueError(f"path {self.id}: unknown region {rid!r}")
            adjacent = {q for cr in h.crossings if cr.alpha == c.alpha
                        for q in cr.quadrants}
            if c.before not in adjacent or c.after not in adjacent:
                raise ValueError(
                    f"path {self.id}: regions not adjacent to alpha {c.alpha}")


def loop_spec(id: str, crossings: Sequence[PathCrossing],
              basepoint: Optional[str] = None) -> PathSpec:
    return PathSpec(id, basepoint, basepoint, tuple(crossings))


def a_weight(dom: Domain, spec: PathSpec) -> int:
    """Signed sum of multiplicity differences across the path's alpha
    crossings, computed over Z."""
    return sum(c.sign * (dom.get(c.after, 0) - dom.get(c.before, 0))
               for c in spec.crossings)


# -- enumeration ---------------------------------------------------------------

def _enumerate(h: HeegaardDiagram, x: tuple, y: Optional[tuple], mu: int, cap: int):
    """All nonnegative domains with multiplicities <= cap satisfying the
    vertex relations from x (to y when given, to any generator otherwise)
    and Maslov index mu.

    Returns (list of (y, domain), capped) where capped reports that some
    domain touched the cap, so larger domains may exist beyond it.
    """
    from .diagram import NonGenericError
    if not h.generic:
        raise NonGenericError("disk enumeration needs a generic diagram")
    regions = [r.id for r in h.regions]
    nreg = len(regions)
    ncross = len(h.crossings)
    xset = set(x)
    yset = set(y) if y is not None else None

    # region -> list of (crossing index, defect coefficient, slot count)
    incid: list[list[tuple]] = [[] for _ in range(nreg)]
    for ci, c in enumerate(h.crossings):
        per: dict[str, list[int]] = {}
        for sign, q in zip((1, -1, 1, -1), c.quadrants):
            d = per.setdefault(q, [0, 0])
            d[0] += sign
            d[1] += 1
        for q, (coeff, slots) in per.items():
            incid[h.region_index[q]].append((ci, coeff, slots))

    # defect targets
    lo = [0] * ncross
    hi = [0] * ncross
    for ci, c in enumerate(h.crossings):
        dx = 1 if c.id in xset else 0
        if yset is not None:
            t = dx - (1 if c.id in yset else 0)
            lo[ci] = hi[ci] = t
        else:
            lo[ci], hi[ci] = dx - 1, dx

    # remaining +/- defect capacity per crossing
    rempos = [0] * ncross
    remneg = [0] * ncross
    for ri in range(nreg):
        for ci, coeff, _ in incid[ri]:
            if coeff > 0:
                rempos[ci] += coeff * cap
            elif coeff < 0:
                remneg[ci] += -coeff * cap

    # Maslov prune: e(D) + n_x(D) part is monotone when its coefficients are
    # nonnegative; keep a suffix bound for the general case.
    coefs = []
    for ri, rid in enumerate(regions):
        c = h.region_euler(rid)
        for ci, _, slots in incid[ri]:
            if h.crossings[ci].id in xset:
                c += Fraction(slots, 4)
        coefs.append(c)
    sufneg = [Fraction(0)] * (nreg + 1)
    for ri in range(nreg - 1, -1, -1):
        sufneg[ri] = sufneg[ri + 1] + min(Fraction(0), coefs[ri] * cap)

    partial = [0] * ncross
    dom = [0] * nreg
    found: list[tuple] = []
    capped = [False]

    mu_f = Fraction(mu)

    def feasible(ci) -> bool:
        return partial[ci] - remneg[ci] <= hi[ci] and partial[ci] + rempos[ci] >= lo[ci]

    def rec(ri: int, msum: Fraction):
        if msum + sufneg[ri] > mu_f:
            return
        if ri == nreg:
            finish(msum)
            return
        for v in range(0, cap + 1):
            ok = True
            for ci, coeff, _ in incid[ri]:
                partial[ci] += coeff * v
                if coeff > 0:
                    rempos[ci] -= coeff * cap
                else:
                    remneg[ci] -= -coeff * cap
                if not feasible(ci):
                    ok = False
            dom[ri] = v
            if ok:
                rec(ri + 1, msum + coefs[ri] * v)
            for ci, coeff, _ in incid[ri]:
                partial[ci] -= coeff * v
                if coeff > 0:
                    rempos[ci] += coeff * cap
                else:
                    remneg[ci] += -coeff * cap
        dom[ri] = 0

    def finish(msum: Fraction):
        if yset is None:
            ymem = []
            for ci, c in enumerate(h.crossings):
                dy = (1 if c.id in xset else 0) - partial[ci]
                if dy not in (0, 1):
                    return
                if dy:
                    ymem.append(c)
            if len(ymem) != h.d:
                return
            ytup: list = [None] * h.d
            seen_beta = set()
            for c in ymem:
                if ytup[c.alpha] is not None or c.beta in seen_beta:
                    return
                ytup[c.alpha] = c.id
                seen_beta.add(c.beta)
            yy = tuple(ytup)
        else:
            yy = y
        d = {regions[ri]: dom[ri] for ri in range(nreg) if dom[ri]}
        if h.maslov_index(d, x, yy) != mu:
            return
        if d and max(d.values()) == cap:
            capped[0] = True
        found.append((yy, d))

    rec(0, Fraction(0))
    found.sort(key=lambda t: (t[0], sorted(t[1].items())))
    return found, capped[0]


def positive_domains(h: HeegaardDiagram, x: tuple, y: tuple, mu: int, cap: int = 4):
    """All nonnegative domains from x to y with the given Maslov index and
    per-region multiplicity at most cap; (domains, capped flag)."""
    pairs, capped = _enumerate(h, x, y, mu, cap)
    return [d for _, d in pairs], capped


def index_one_domains(h: HeegaardDiagram, cap: int = 4):
    """Cached map (x, y) -> list of positive index-one domains, over all
    generator pairs; second component reports the cap flag."""
    key = cap
    if key in h._mu1_cache:
        return h._mu1_cache[key]
    table: dict = {}
    capped = False
    for x in h.enumerate_generators():
        pairs, cflag = _enumerate(h, x, None, 1, cap)
        capped = capped or cflag
        for yy, d in pairs:
            table.setdefault((x, yy), []).append(d)
    h._mu1_cache[key] = (table, capped)
    return table, capped


# -- classification ------------------------------------------------------------

def classify(h: HeegaardDiagram, dom: Domain, x: tuple, y: tuple) -> str:
    """EmptyBigon | EmptyRectangle | Other, for a positive index-one domain."""
    if h.maslov_index(dom, x, y) != 1:
        raise ValueError("classification requires Maslov index one")
    vals = set(dom.values()) | {0}
    shared = set(x) & set(y)
    if vals <= {0, 1} and all(h.point_measure(dom, p) == 0 for p in shared):
        if len(set(x) - set(y)) == 1 and h.euler_measure(dom) == Fraction(1, 2):
            return "EmptyBigon"
        if len(set(x) - set(y)) == 2 and h.euler_measure(dom) == 0:
            return "EmptyRectangle"
    return "Other"


# -- differential and actions ---------------------------------------------------

@dataclass
class DiskCountResult:
    complex: ColoredComplex
    witnesses: list      # (x, y, domain) triples that classified Other
    capped: bool
    flavor: str
    cap: int

    @property
    def sound(self) -> bool:
        return not self.witnesses


def _basepoint_monomial(h: HeegaardDiagram, dom: Domain) -> Poly:
    p = Poly.one()
    for b in h.basepoints:
        m = dom.get(b.region, 0)
        if m:
            p = p * Poly.var(b.color, m)
    return p


def differential(h: HeegaardDiagram, flavor: str = "minus", cap: int = 4,
                 assume_zero: bool = False) -> DiskCountResult:
    """The combinatorial differential; every counted domain is an empty bigon
    or empty rectangle (count one), anything else raises NonCombinatorialError
    unless assume_zero is set, which records the witnesses and marks the
    output unsound."""
    if flavor not in ("hat", "minus"):
        raise ValueError(f"unknown flavor {flavor!r}")
    table, capped = index_one_domains(h, cap)
    gens = h.enumerate_generators()
    labels = h.spinc_partition()
    diff: dict = {}
    witnesses = []
    for (x, yy), doms in sorted(table.items()):
        coeff = Poly.zero()
        for d in doms:
            kind = classify(h, d, x, yy)
            if kind == "Other":
                witnesses.append((x, yy, d))
                continue
            if flavor == "hat" and any(h.basepoint_multiplicities(d).values()):
                continue
            coeff = coeff + _basepoint_monomial(h, d)
        if coeff:
            diff.setdefault(x, {})[yy] = coeff
    if witnesses and not assume_zero:
        raise NonCombinatorialError(witnesses)
    colors = {b.color for b in h.basepoints}
    cx = ColoredComplex(gens, diff, colors, None, labels)
    return DiskCountResult(cx, witnesses, capped, flavor, cap)


def _weighted_action(h: HeegaardDiagram, weight, flavor: str, cap: int,
                     assume_zero: bool, base: Optional[ColoredComplex]) -> ModuleMap:
    table, _ = index_one_domains(h, cap)
    cx = base if base is not None else differential(h, flavor, cap, assume_zero).complex
    entries: dict = {}
    witnesses = []
    for (x, yy), doms in sorted(table.items()):
        coeff = Poly.zero()
        for d in doms:
            kind = classify(h, d, x, yy)
            if kind == "Other":
                witnesses.append((x, yy, d))
                continue
            if flavor == "hat" and any(h.basepoint_multiplicities(d).values()):
                continue
            if weight(d) % 2:
                coeff = coeff + _basepoint_monomial(h, d)
        if coeff:
            entries.setdefault(x, {})[yy] = coeff
    if witnesses and not assume_zero:
        raise NonCombinatorialError(witnesses)
    return ModuleMap(cx, cx, entries)


def rel_homology(h: HeegaardDiagram, spec: PathSpec, flavor: str = "minus",
                 cap: int = 4, assume_zero: bool = False,
                 base: Optional[ColoredComplex] = None) -> ModuleMap:
    """The action A for a path between basepoints or a loop: index-one counts
    weighted by the crossing sum a(spec, domain) mod 2."""
    spec.validate(h)
    return _weighted_action(h, lambda d: a_weight(d, spec), flavor, cap,
                            assume_zero, base)


def commutator_homotopy(h: HeegaardDiagram, spec1: PathSpec, spec2: PathSpec,
                        flavor: str = "minus", cap: int = 4,
                        base: Optional[ColoredComplex] = None) -> ModuleMap:
    """The homotopy with weights a(spec1, d) * a(spec2, d) appearing in the
    anticommutator of two path actions."""
    return _weighted_action(h, lambda d: a_weight(d, spec1) * a_weight(d, spec2),
                            flavor, cap, False, base)


def square_homotopy(h: HeegaardDiagram, spec: PathSpec, flavor: str = "minus",
                    cap: int = 4, base: Optional[ColoredComplex] = None) -> ModuleMap:
    """The binomial-weighted homotopy a(a+1)/2, computed over Z from the
    path's signed crossings, then reduced mod 2."""
    def weight(d):
        a = a_weight(d, spec)
        return (a * (a + 1)) // 2
    return _weighted_action(h, weight, flavor, cap, False, base)


def corner_homotopy(cx: ColoredComplex, crossing_id: str) -> ModuleMap:
    """H_p(z) = z when the generator z uses the crossing p, else 0."""
    entries = {g: {g: Poly.one()} for g in cx.generators if crossing_id in g}
    return ModuleMap(cx, cx, entries)


def square_endpoint(h: HeegaardDiagram, spec: PathSpec) -> Optional[str]:
    """The basepoint selected by the path's orientation in the square
    identity: the endpoint whose alpha-complement component has crossing
    weight +1."""
    for comp in h.alpha_complement_components():
        if a_weight(comp, spec) == 1:
            for b in h.basepoints:
                if comp.get(b.region, 0) and b.id in (spec.start, spec.end):
                    return b.id
    return None
