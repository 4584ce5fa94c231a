"""Algebra-level realizations of the proved matrix forms: free stabilization,
the maps S+ and S-, the model edge action, and the one-basepoint-splitting
model complexes with their transition matrix.

Stabilized generators are labeled (x, "+") and (x, "-"); the basis
convention puts the U-term on the minus generator:
d(x-) = (dx)- + (U_w + U_partner) x+, d(x+) = (dx)+.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Hashable, Optional

from .complexes import ColoredComplex, ModuleMap
from .poly import Poly

Gen = Hashable


@dataclass(frozen=True)
class StabRecord:
    vertex: str    # the fresh basepoint (also its color before any coloring)
    partner: str   # an existing basepoint's color
    factor: int    # position in the stabilization tower


def _plus(x: Gen) -> Gen:
    return (x, "+")


def _minus(x: Gen) -> Gen:
    return (x, "-")


def free_stabilize(c: ColoredComplex, w: str, partner: str) -> ColoredComplex:
    """Double the complex by a two-state factor for the new basepoint w.

    The differential takes the triangular form with corner term
    (U_w + U_partner) from the minus state to the plus state.
    """
    if w in c.colors:
        raise ValueError(f"basepoint {w!r} is already present")
    if partner not in c.colors:
        raise ValueError(f"partner {partner!r} is not a basepoint of the complex")
    gens = [g for x in c.generators for g in (_plus(x), _minus(x))]
    u = Poly.var(w) + Poly.var(partner)
    diff: dict = {}
    for x in c.generators:
        rowp: dict = {}
        rowm: dict = {_plus(x): u}
        for y, p in c.diff.get(x, {}).items():
            rowp[_plus(y)] = p
            rowm[_minus(y)] = p
        if rowp:
            diff[_plus(x)] = rowp
        diff[_minus(x)] = rowm
    tags = None
    if c.spinc_tag is not None:
        tags = {}
        for x in c.generators:
            tags[_plus(x)] = c.spinc_tag.get(x)
            tags[_minus(x)] = c.spinc_tag.get(x)
    return ColoredComplex(gens, diff, c.colors | {w}, c.truncation, tags)


def s_plus(c: ColoredComplex, stabilized: ColoredComplex) -> ModuleMap:
    """x -> x tensor theta-plus."""
    return ModuleMap(c, stabilized, {x: {_plus(x): Poly.one()} for x in c.generators})


def s_minus(stabilized: ColoredComplex, c: ColoredComplex) -> ModuleMap:
    """x tensor theta-minus -> x, x tensor theta-plus -> 0."""
    return ModuleMap(stabilized, c, {_minus(x): {x: Poly.one()} for x in c.generators})


def model_edge(stabilized: ColoredComplex, partner: str) -> ModuleMap:
    """The proved matrix for the action of a short edge into the new
    basepoint: theta-plus -> theta-minus, theta-minus -> U_partner theta-plus.

    Satisfies A d + d A = (U_w + U_partner) Id, S- A S+ = Id and
    A^2 = U_partner Id as exact matrix identities.
    """
    up = Poly.var(partner)
    entries: dict = {}
    for g in stabilized.generators:
        x, state = g
        if state == "+":
            entries[g] = {_minus(x): Poly.one()}
        else:
            entries[g] = {_plus(x): up}
    return ModuleMap(stabilized, stabilized, entries)


@dataclass
class SplitModel:
    """The three model complexes for splitting a basepoint z into {w, w'}
    and the transition matrix between the two outer ones."""
    d_h1: ColoredComplex
    d_h1_5: ColoredComplex
    d_h2: ColoredComplex
    phi: ModuleMap  # from d_h1 to d_h2


def model_transition(c0: ColoredComplex, z: str, w: str, wp: str) -> SplitModel:
    """Split the basepoint z of c0 into w and w'.

    Both stabilized-shape differentials use the corner term U_w + U_w'; the
    bases substitute z by w' (first diagrams) or by w (last).  The transition
    matrix is lower triangular with the stated series in the corner, where
    d^k are the U_z-coefficient maps of the base differential.
    """
    from .complexes import d_squared_check
    if z not in c0.colors:
        raise ValueError(f"{z!r} is not a basepoint of the base complex")
    if not d_squared_check(c0):
        raise ValueError("base differential does not square to zero")
    n = c0.truncation

    def stab_form(base_sub: ColoredComplex) -> ColoredComplex:
        gens = [g for x in c0.generators for g in (_plus(x), _minus(x))]
        u = Poly.var(w) + Poly.var(wp)
        diff: dict = {}
        for x in c0.generators:
            rowp: dict = {}
            rowm: dict = {_plus(x): u}
            for y, p in base_sub.diff.get(x, {}).items():
                rowp[_plus(y)] = p
                rowm[_minus(y)] = p
            if rowp:
                diff[_plus(x)] = rowp
            diff[_minus(x)] = rowm
        colors = (c0.colors - {z}) | {w, wp}
        return ColoredComplex(gens, diff, colors, n)

    base_wp = c0.colored({z: wp})
    base_w = c0.colored({z: w})
    d_h1 = stab_form(base_wp)
    d_h1_5 = stab_form(base_wp)
    d_h2 = stab_form(base_w)

    # corner entry: sum over i,j >= 0 of U_w^i U_w'^j d^(i+j+1)
    corner: dict = {}
    for x, row in c0.diff.items():
        for y, p in row.items():
            acc = Poly.zero()
            for k, part in p.coefficients_in(z).items():
                if k < 1:
                    continue
                # all (i, j) with i + j = k - 1
                for i in range(k):
                    j = k - 1 - i
                    term = part * Poly.var(w, i) * Poly.var(wp, j)
                    acc = acc + term
            acc = acc.truncate(n)
            if acc:
                corner.setdefault(x, {})[y] = acc
    entries: dict = {}
    for x in c0.generators:
        entries[_plus(x)] = {_plus(x): Poly.one()}
        entries[_minus(x)] = {_minus(x): Poly.one()}
        for y, p in corner.get(x, {}).items():
            entries[_plus(x)][_minus(y)] = p
    phi = ModuleMap(d_h1, d_h2, entries)
    return SplitModel(d_h1, d_h1_5, d_h2, phi)


def random_base_complex(seed: int, ngens: int = 4, colors=("z", "a"),
                        truncation: int = 6, density: float = 0.6) -> ColoredComplex:
    """Seeded base complex whose differential squares to zero exactly over
    the full polynomial ring (not merely modulo the truncation): a sum of
    two-step pieces conjugated by a random unipotent change of basis.

    Degrees are rejected-and-retried until every entry fits under the
    truncation, so truncating loses nothing.
    """
    for attempt in range(64):
        rng = random.Random((seed, attempt))
        gens = [f"g{i}" for i in range(ngens)]

        def rand_poly(max_deg):
            p = Poly.zero()
            for _ in range(rng.randint(1, 2)):
                m = Poly.one()
                for _ in range(rng.randint(0, max_deg)):
                    m = m * Poly.var(rng.choice(colors))
                p = p + m
            return p

        diff: dict = {}
        for i in range(0, ngens - 1, 2):
            if rng.random() < 0.9:
                diff[gens[i + 1]] = {gens[i]: rand_poly(2)}
        c = ColoredComplex(gens, diff, colors, None)
        noise: dict = {}
        for i in range(ngens):
            for j in range(i):
                if rng.random() < density:
                    noise.setdefault(gens[i], {})[gens[j]] = rand_poly(1)
        nmap = ModuleMap(c, c, noise)
        p = c.identity() + nmap
        # inverse of 1 + n is 1 + n + n^2 + ... (n is nilpotent)
        pinv = c.identity()
        power = nmap
        while not power.is_zero():
            pinv = pinv + power
            power = power.compose(nmap)
        d = p.compose(c.diff_map()).compose(pinv)
        maxdeg = max((q.degree() for row in d.entries.values() for q in row.values()),
                     default=0)
        if maxdeg < truncation:
            return ColoredComplex(gens, d.entries, c.colors, truncation)
    raise RuntimeError("could not fit a random base under the truncation")
