"""Exact arithmetic in F2[U_c : c in colors].

A polynomial is a finite set of monomials, each with coefficient 1 (we work
over the field with two elements, so addition is symmetric difference).  A
monomial is stored as a sorted tuple of (color, exponent) pairs with all
exponents positive; the empty tuple is the monomial 1.  Canonical form is
unique: no zero exponents, no duplicate monomials, sorted variables.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

Color = str
Monomial = tuple  # tuple[tuple[Color, int], ...]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[Color, int] = dict(m1)
    for c, e in m2:
        exps[c] = exps.get(c, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Immutable multivariate polynomial over F2."""

    __slots__ = ("monomials", "_hash")

    def __init__(self, monomials: Iterable[Monomial] = ()):
        self.monomials = frozenset(monomials)
        self._hash = hash(self.monomials)

    @classmethod
    def zero(cls) -> "Poly":
        return _ZERO

    @classmethod
    def one(cls) -> "Poly":
        return _ONE

    @classmethod
    def var(cls, color: Color, exp: int = 1) -> "Poly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return _ONE
        return cls([((color, exp),)])

    @classmethod
    def from_int(cls, n: int) -> "Poly":
        return _ONE if n % 2 else _ZERO

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.monomials ^ other.monomials)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.monomials or not other.monomials:
            return _ZERO
        acc: set[Monomial] = set()
        for m1 in self.monomials:
            for m2 in other.monomials:
                acc ^= {_mono_mul(m1, m2)}
        return Poly(acc)

    def variables(self) -> frozenset[Color]:
        return frozenset(c for m in self.monomials for c, _ in m)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.monomials:
            return -1
        return max(_mono_degree(m) for m in self.monomials)

    def substitute(self, sigma: Mapping[Color, Color]) -> "Poly":
        """Rename variables by sigma (colors not in sigma are kept).

        Realizes a coloring quotient: identified variables merge their
        exponents and equal monomials cancel mod 2.
        """
        acc: set[Monomial] = set()
        for m in self.monomials:
            exps: dict[Color, int] = {}
            for c, e in m:
                c2 = sigma.get(c, c)
                exps[c2] = exps.get(c2, 0) + e
            acc ^= {tuple(sorted(exps.items()))}
        return Poly(acc)

    def derivative(self, color: Color) -> "Poly":
        """Formal d/dU_color: U^n -> n*U^(n-1), computed in Z then reduced mod 2."""
        acc: set[Monomial] = set()
        for m in self.monomials:
            for i, (c, e) in enumerate(m):
                if c == color:
                    if e % 2 == 1:
                        if e == 1:
                            acc ^= {m[:i] + m[i + 1:]}
                        else:
                            acc ^= {m[:i] + ((c, e - 1),) + m[i + 1:]}
                    break
        return Poly(acc)

    def truncate(self, n: Optional[int]) -> "Poly":
        """Drop monomials of total degree >= n (no-op for n=None)."""
        if n is None:
            return self
        return Poly(m for m in self.monomials if _mono_degree(m) < n)

    def coefficients_in(self, color: Color) -> dict[int, "Poly"]:
        """Decompose as sum_k U_color^k * p_k with p_k free of color."""
        parts: dict[int, set[Monomial]] = {}
        for m in self.monomials:
            k = 0
            rest = m
            for i, (c, e) in enumerate(m):
                if c == color:
                    k = e
                    rest = m[:i] + m[i + 1:]
                    break
            parts.setdefault(k, set()).add(rest)
        return {k: Poly(ms) for k, ms in sorted(parts.items())}

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.monomials, key=lambda m: (_mono_degree(m), m))

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        terms = []
        for m in self.sorted_monomials():
            if not m:
                terms.append("1")
            else:
                terms.append("*".join(
                    f"U_{c}" if e == 1 else f"U_{c}^{e}" for c, e in m))
        return " + ".join(terms)

    __repr__ = __str__


_ZERO = Poly()
_ONE = Poly([()])


def monomial_basis(colors: Iterable[Color], truncation: int) -> list[Monomial]:
    """All monomials of total degree < truncation, in a stable order."""
    colors = sorted(set(colors))
    basis: list[Monomial] = [()]
    frontier: list[Monomial] = [()]
    for _ in range(truncation - 1):
        nxt = []
        for m in frontier:
            last = m[-1][0] if m else None
            for c in colors:
                if last is not None and c < last:
                    continue
                nxt.append(_mono_mul(m, ((c, 1),)))
        frontier = sorted(set(nxt))
        basis.extend(frontier)
    return sorted(set(basis), key=lambda m: (_mono_degree(m), m))
