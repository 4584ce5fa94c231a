"""Exact integer and rational linear algebra for small systems.

Smith normal form with recorded transforms gives integer particular
solutions and kernel lattice bases.  Fourier-Motzkin elimination decides
rational feasibility of inequality systems and extracts witnesses; both are
all we need for domain spaces and admissibility at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional


def smith_normal_form(a: list[list[int]]):
    """Return (d, s, t) with s*a*t = d, d diagonal, s and t unimodular.

    Divisibility of the diagonal is not normalized; we only need the
    diagonal shape.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [row[:] for row in a]
    s = [[int(i == j) for j in range(m)] for i in range(m)]
    t = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i1, i2, q):  # row i2 -= q * row i1
        for j in range(n):
            d[i2][j] -= q * d[i1][j]
        for j in range(m):
            s[i2][j] -= q * s[i1][j]

    def col_op(j1, j2, q):  # col j2 -= q * col j1
        for i in range(m):
            d[i][j2] -= q * d[i][j1]
        for i in range(n):
            t[i][j2] -= q * t[i][j1]

    def row_swap(i1, i2):
        d[i1], d[i2] = d[i2], d[i1]
        s[i1], s[i2] = s[i2], s[i1]

    def col_swap(j1, j2):
        for i in range(m):
            d[i][j1], d[i][j2] = d[i][j2], d[i][j1]
        for i in range(n):
            t[i][j1], t[i][j2] = t[i][j2], t[i][j1]

    k = 0
    while k < min(m, n):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if d[i][j] != 0 and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        row_swap(k, piv[0])
        col_swap(k, piv[1])
        done = False
        while not done:
            done = True
            for i in range(k + 1, m):
                if d[i][k] % d[k][k] != 0:
                    q = d[i][k] // d[k][k]
                    row_op(k, i, q)
                    row_swap(k, i)
                    done = False
                elif d[i][k] != 0:
                    row_op(k, i, d[i][k] // d[k][k])
            for j in range(k + 1, n):
                if d[k][j] % d[k][k] != 0:
                    q = d[k][j] // d[k][k]
                    col_op(k, j, q)
                    col_swap(k, j)
                    done = False
                elif d[k][j] != 0:
                    col_op(k, j, d[k][j] // d[k][k])
        k += 1
    return d, s, t


def solve_integer(a: list[list[int]], b: list[int]) -> Optional[list[int]]:
    """One integer solution of a*x = b, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    d, s, t = smith_normal_form(a)
    sb = [sum(s[i][j] * b[j] for j in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if sb[i] != 0:
                return None
        else:
            if sb[i] % di != 0:
                return None
            y[i] = sb[i] // di
    return [sum(t[i][j] * y[j] for j in range(n)) for i in range(n)]


def kernel_basis(a: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel lattice of a (a saturated sublattice)."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    d, s, t = smith_normal_form(a)
    basis = []
    for j in range(n):
        if j >= m or d[j][j] == 0:
            basis.append([t[i][j] for i in range(n)])
    return basis


def fourier_motzkin(ineqs: list[list[Fraction]]) -> Optional[list[Fraction]]:
    """Feasibility of {x : sum_j c[j] x_j + c[-1] >= 0 for every row c}.

    Each row has n variable coefficients followed by a constant term.
    Returns a satisfying rational point, or None if infeasible.
    """
    n = len(ineqs[0]) - 1 if ineqs else 0
    system = [row[:] for row in ineqs]
    stack = []  # (var index, rows mentioning it) for back-substitution
    for var in range(n - 1, -1, -1):
        pos, neg, zero = [], [], []
        for row in system:
            c = row[var]
            if c > 0:
                pos.append(row)
            elif c < 0:
                neg.append(row)
            else:
                zero.append(row)
        stack.append((var, pos + neg))
        new_rows = zero
        for rp in pos:
            for rn in neg:
                # eliminate: rp/cp - rn/cn >= ... combine to drop var
                cp, cn = rp[var], rn[var]
                row = [rp[j] * (-cn) + rn[j] * cp for j in range(n + 1)]
                row[var] = Fraction(0)
                new_rows.append(row)
        system = []
        seen = set()
        for row in new_rows:
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                system.append(row)
    for row in system:
        if row[-1] < 0:
            return None
    point = [Fraction(0)] * n
    for var, rows in reversed(stack):
        lo, hi = None, None
        for row in rows:
            c = row[var]
            rest = row[-1] + sum(row[j] * point[j] for j in range(n) if j != var)
            bound = -rest / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = min(Fraction(0), hi)
        elif hi is None:
            val = max(Fraction(0), lo)
        else:
            if lo > hi:
                raise AssertionError("back-substitution hit an empty interval")
            val = lo if lo > 0 else (hi if hi < 0 else Fraction(0))
        point[var] = val
    return point


def integral_point(point: list[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector."""
    from math import gcd, lcm
    denom = lcm(*[f.denominator for f in point]) if point else 1
    ints = [int(f * denom) for f in point]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints
