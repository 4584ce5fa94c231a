"""Finitely generated chain complexes over F2[U_colors] and maps between them.

Matrix convention: diff[x][y] is the coefficient of y in d(x), so composition
of maps reads (f.compose(g))(x) = f(g(x)).  All values are immutable after
construction; operations return new objects.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Optional

from .poly import Color, Poly

Gen = Hashable


def _normalize_entries(entries, truncation):
    out: dict[Gen, dict[Gen, Poly]] = {}
    for x, row in entries.items():
        nrow = {}
        for y, p in row.items():
            p = p.truncate(truncation)
            if p:
                nrow[y] = p
        if nrow:
            out[x] = nrow
    return out


class ColoredComplex:
    """Chain complex over F2[U_P], optionally truncated mod monomials of
    total degree >= truncation.

    spinc_tag optionally labels each generator with a class; the differential
    must preserve the partition.
    """

    def __init__(self, generators: Iterable[Gen], diff: Mapping[Gen, Mapping[Gen, Poly]],
                 colors: Iterable[Color], truncation: Optional[int] = None,
                 spinc_tag: Optional[Mapping[Gen, Hashable]] = None):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator ids")
        self.colors = frozenset(colors)
        if truncation is not None and truncation < 1:
            raise ValueError("truncation must be >= 1")
        self.truncation = truncation
        gen_set = set(self.generators)
        for x, row in diff.items():
            if x not in gen_set:
                raise ValueError(f"diff source {x!r} is not a generator")
            for y, p in row.items():
                if y not in gen_set:
                    raise ValueError(f"diff target {y!r} is not a generator")
                bad = p.variables() - self.colors
                if bad:
                    raise ValueError(f"diff entry uses colors outside the color set: {sorted(bad)}")
        self.diff = _normalize_entries(diff, truncation)
        self.spinc_tag = dict(spinc_tag) if spinc_tag is not None else None
        if self.spinc_tag is not None:
            for x, row in self.diff.items():
                for y in row:
                    if self.spinc_tag.get(x) != self.spinc_tag.get(y):
                        raise ValueError("differential does not respect spinc tags")

    def diff_entry(self, x: Gen, y: Gen) -> Poly:
        return self.diff.get(x, {}).get(y, Poly.zero())

    def apply_diff(self, chain: Mapping[Gen, Poly]) -> dict[Gen, Poly]:
        out: dict[Gen, Poly] = {}
        for x, c in chain.items():
            if not c:
                continue
            for y, p in self.diff.get(x, {}).items():
                out[y] = out.get(y, Poly.zero()) + c * p
        return {y: p.truncate(self.truncation) for y, p in out.items() if p.truncate(self.truncation)}

    def truncated(self, n: Optional[int]) -> "ColoredComplex":
        return ColoredComplex(self.generators, self.diff, self.colors, n, self.spinc_tag)

    def colored(self, sigma: Mapping[Color, Color]) -> "ColoredComplex":
        """Apply a coloring by variable substitution."""
        new_colors = {sigma.get(c, c) for c in self.colors}
        diff = {x: {y: p.substitute(sigma) for y, p in row.items()}
                for x, row in self.diff.items()}
        return ColoredComplex(self.generators, diff, new_colors, self.truncation, self.spinc_tag)

    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, {x: {x: Poly.one()} for x in self.generators})

    def scalar(self, p: Poly) -> "ModuleMap":
        return ModuleMap(self, self, {x: {x: p} for x in self.generators})

    def zero_map(self, target: Optional["ColoredComplex"] = None) -> "ModuleMap":
        return ModuleMap(self, target if target is not None else self, {})

    def diff_map(self) -> "ModuleMap":
        return ModuleMap(self, self, self.diff)

    def __repr__(self) -> str:
        return f"ColoredComplex({len(self.generators)} generators, colors={sorted(self.colors)}, N={self.truncation})"


class ModuleMap:
    """Generator-indexed matrix of Poly entries between two complexes."""

    def __init__(self, source: ColoredComplex, target: ColoredComplex,
                 entries: Mapping[Gen, Mapping[Gen, Poly]]):
        self.source = source
        self.target = target
        src = set(source.generators)
        tgt = set(target.generators)
        for x, row in entries.items():
            if x not in src:
                raise ValueError(f"entry source {x!r} not in source complex")
            for y in row:
                if y not in tgt:
                    raise ValueError(f"entry target {y!r} not in target complex")
        self.entries = _normalize_entries(entries, target.truncation)

    def entry(self, x: Gen, y: Gen) -> Poly:
        return self.entries.get(x, {}).get(y, Poly.zero())

    def apply(self, chain: Mapping[Gen, Poly]) -> dict[Gen, Poly]:
        out: dict[Gen, Poly] = {}
        for x, c in chain.items():
            if not c:
                continue
            for y, p in self.entries.get(x, {}).items():
                out[y] = out.get(y, Poly.zero()) + c * p
        n = self.target.truncation
        return {y: p.truncate(n) for y, p in out.items() if p.truncate(n)}

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if self.source is not other.source and self.source.generators != other.source.generators:
            raise ValueError("map addition needs matching sources")
        acc: dict[Gen, dict[Gen, Poly]] = {}
        for m in (self, other):
            for x, row in m.entries.items():
                arow = acc.setdefault(x, {})
                for y, p in row.items():
                    arow[y] = arow.get(y, Poly.zero()) + p
        return ModuleMap(self.source, self.target, acc)

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self after inner: (self.compose(inner))(x) = self(inner(x))."""
        if inner.target.generators != self.source.generators:
            raise ValueError("composition mismatch")
        acc: dict[Gen, dict[Gen, Poly]] = {}
        for x, row in inner.entries.items():
            arow = acc.setdefault(x, {})
            for m, p in row.items():
                for y, q in self.entries.get(m, {}).items():
                    arow[y] = arow.get(y, Poly.zero()) + p * q
        return ModuleMap(inner.source, self.target, acc)

    def scale(self, p: Poly) -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         {x: {y: p * q for y, q in row.items()} for x, row in self.entries.items()})

    def substitute(self, sigma: Mapping[Color, Color],
                   source: Optional[ColoredComplex] = None,
                   target: Optional[ColoredComplex] = None) -> "ModuleMap":
        src = source if source is not None else self.source.colored(sigma)
        tgt = target if target is not None else self.target.colored(sigma)
        return ModuleMap(src, tgt, {x: {y: p.substitute(sigma) for y, p in row.items()}
                                    for x, row in self.entries.items()})

    def derivative(self, color: Color) -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         {x: {y: p.derivative(color) for y, p in row.items()}
                          for x, row in self.entries.items()})

    def truncated(self, n: Optional[int], source=None, target=None) -> "ModuleMap":
        src = source if source is not None else self.source.truncated(n)
        tgt = target if target is not None else self.target.truncated(n)
        return ModuleMap(src, tgt, self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleMap)
                and self.source.generators == other.source.generators
                and self.target.generators == other.target.generators
                and self.entries == other.entries)

    def __hash__(self):
        raise TypeError("ModuleMap is unhashable")

    def __repr__(self) -> str:
        n = sum(len(r) for r in self.entries.values())
        return f"ModuleMap({n} nonzero entries)"


def d_squared_check(c: ColoredComplex) -> bool:
    """True iff the differential squares to zero exactly (in the truncated
    ring when a truncation is set)."""
    d = c.diff_map()
    return d.compose(d).is_zero()


def is_chain_map(f: ModuleMap) -> bool:
    """True iff f.d = d.f exactly."""
    left = f.compose(f.source.diff_map())
    right = f.target.diff_map().compose(f)
    return left == right


def anticommutator(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    return f.compose(g) + g.compose(f)


def formal_phi(c: ColoredComplex, w: Color) -> ModuleMap:
    """Entrywise formal U_w-derivative of the differential.

    w must be a color of the complex that is still its own variable (take the
    derivative before any coloring identifies w with another basepoint).
    """
    if w not in c.colors:
        raise ValueError(f"{w!r} is not a color of the complex")
    return c.diff_map().derivative(w)


def derivative_on_chain(chain: Mapping[Gen, Poly], w: Color) -> dict[Gen, Poly]:
    """The non-equivariant operator D_w on chains in the monomial basis."""
    out = {x: p.derivative(w) for x, p in chain.items()}
    return {x: p for x, p in out.items() if p}


def phi_squared_witness(c: ColoredComplex, w: Color) -> ModuleMap:
    """The equivariant null-homotopy of formal_phi(c,w)^2:
    H = sum_{n>=2} C(n,2) d^n U_w^(n-2), binomials reduced mod 2.

    Here d^n are the U_w-coefficient maps of the differential.
    """
    acc: dict[Gen, dict[Gen, Poly]] = {}
    for x, row in c.diff.items():
        for y, p in row.items():
            q = Poly.zero()
            for n, part in p.coefficients_in(w).items():
                if n >= 2 and (n * (n - 1) // 2) % 2 == 1:
                    q = q + part * Poly.var(w, n - 2)
            if q:
                acc.setdefault(x, {})[y] = q
    return ModuleMap(c, c, acc)
