"""GF(2) linear algebra, the chain-homotopy solver, and homology ranks.

Rows of F2 matrices are Python ints used as bitmasks, columns indexed from
bit 0.  The homotopy solver turns every "chain homotopic" statement into a
finite linear system at a fixed truncation: equivariant mode searches
matrices with entries in the truncated polynomial ring, linear mode searches
arbitrary F2-linear endomorphisms of the truncated underlying space.
"""

from __future__ import annotations

from typing import Hashable, Optional, Sequence

from .complexes import ColoredComplex, ModuleMap
from .poly import Monomial, Poly, monomial_basis, _mono_mul, _mono_degree

Gen = Hashable


def gf2_solve(rows: list[int], rhs: list[int]) -> Optional[int]:
    """Solve A x = b over GF(2); returns one solution bitmask or None.

    rows[i] is the bitmask of equation i, rhs[i] its right-hand bit.
    Free variables are set to zero.
    """
    pivots: dict[int, int] = {}
    for i, row in enumerate(rows):
        r = (row << 1) | rhs[i]
        while r > 1:
            col = r.bit_length() - 2
            if col in pivots:
                r ^= pivots[col]
            else:
                pivots[col] = r
                r = 0
                break
        if r == 1:
            return None  # reduced to 0 = 1
    x = 0
    for col in sorted(pivots):
        r = pivots[col]
        val = (r & 1) ^ (bin((r >> 1) & x).count("1") & 1)
        if val:
            x |= 1 << col
    return x


def gf2_rank(rows: Sequence[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def _monomial_index(colors, truncation: int) -> tuple[list[Monomial], dict[Monomial, int]]:
    basis = monomial_basis(colors, truncation)
    return basis, {m: i for i, m in enumerate(basis)}


def find_homotopy(f: ModuleMap, g: ModuleMap, mode: str = "equivariant") -> Optional[ModuleMap]:
    """Search H with d.H + H.d = f + g in the truncated ring.

    Both maps must share source and target and a truncation must be set
    (otherwise the search space is infinite).  Returns a verified H or None;
    None is conclusive because the solve is exhaustive at the truncation.
    """
    if f.source.generators != g.source.generators or f.target.generators != g.target.generators:
        raise ValueError("find_homotopy needs maps with identical source and target")
    src, tgt = f.source, f.target
    n = src.truncation
    if n is None or tgt.truncation is None:
        raise ValueError("find_homotopy requires a truncation on both complexes")
    rhs_map = f + g
    colors = src.colors | tgt.colors
    if mode == "equivariant":
        h_entries = _solve_equivariant(src, tgt, rhs_map, colors, n)
    elif mode == "linear":
        h_entries = _solve_linear(src, tgt, rhs_map, colors, n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if h_entries is None:
        return None
    if mode == "equivariant":
        h = ModuleMap(src, tgt, h_entries)
        check = tgt.diff_map().compose(h) + h.compose(src.diff_map())
        if check != rhs_map:
            raise AssertionError("homotopy solver produced an unsound witness")
        return h
    return h_entries  # linear mode: returns an F2LinearMap


def _solve_equivariant(src, tgt, rhs_map, colors, n):
    basis, mindex = _monomial_index(colors, n)
    nb = len(basis)
    gens_s = list(src.generators)
    gens_t = list(tgt.generators)
    si = {x: i for i, x in enumerate(gens_s)}
    ti = {y: i for i, y in enumerate(gens_t)}

    def unknown(y, z, m):  # H[y][z] coefficient of monomial m
        return (si[y] * len(gens_t) + ti[z]) * nb + mindex[m]

    def equation(x, z, m):
        return (si[x] * len(gens_t) + ti[z]) * nb + mindex[m]

    nunk = len(gens_s) * len(gens_t) * nb
    neq = nunk
    rows = [0] * neq
    rhs = [0] * neq
    # (H d_src)[x][z] = sum_y d_src[x][y] H[y][z]
    for x, row in src.diff.items():
        for y, p in row.items():
            for mu in p.monomials:
                for z in gens_t:
                    for m in basis:
                        prod = _mono_mul(m, mu)
                        if _mono_degree(prod) < n:
                            rows[equation(x, z, prod)] ^= 1 << unknown(y, z, m)
    # (d_tgt H)[x][z] = sum_y H[x][y] d_tgt[y][z]
    for y, row in tgt.diff.items():
        for z, p in row.items():
            for mu in p.monomials:
                for x in gens_s:
                    for m in basis:
                        prod = _mono_mul(m, mu)
                        if _mono_degree(prod) < n:
                            rows[equation(x, z, prod)] ^= 1 << unknown(x, y, m)
    for x, row in rhs_map.entries.items():
        for z, p in row.items():
            for mu in p.monomials:
                if _mono_degree(mu) < n:
                    rhs[equation(x, z, mu)] = 1
    sol = gf2_solve(rows, rhs)
    if sol is None:
        return None
    entries: dict[Gen, dict[Gen, Poly]] = {}
    for y in gens_s:
        for z in gens_t:
            ms = [basis[k] for k in range(nb) if (sol >> unknown(y, z, basis[k])) & 1]
            if ms:
                entries.setdefault(y, {})[z] = Poly(ms)
    return entries


class F2LinearMap:
    """A plain F2-linear endomorphism of the truncated underlying space,
    recorded on the (generator, monomial) basis."""

    def __init__(self, source: ColoredComplex, target: ColoredComplex,
                 images: dict[tuple[Gen, Monomial], frozenset]):
        self.source = source
        self.target = target
        self.images = images

    def apply_basis(self, x: Gen, m: Monomial) -> frozenset:
        return self.images.get((x, m), frozenset())


def diff_on_basis(c: ColoredComplex, colors, n: int):
    """The differential as an F2 matrix on the (gen, monomial) basis."""
    basis, _ = _monomial_index(colors, n)
    out: dict[tuple[Gen, Monomial], set] = {}
    for x, row in c.diff.items():
        for y, p in row.items():
            for mu in p.monomials:
                for m in basis:
                    prod = _mono_mul(m, mu)
                    if _mono_degree(prod) < n:
                        out.setdefault((x, m), set()).symmetric_difference_update({(y, prod)})
    return {k: frozenset(v) for k, v in out.items() if v}


def map_on_basis(f: ModuleMap, colors, n: int):
    out: dict[tuple[Gen, Monomial], set] = {}
    basis, _ = _monomial_index(colors, n)
    for x, row in f.entries.items():
        for y, p in row.items():
            for mu in p.monomials:
                for m in basis:
                    prod = _mono_mul(m, mu)
                    if _mono_degree(prod) < n:
                        out.setdefault((x, m), set()).symmetric_difference_update({(y, prod)})
    return {k: frozenset(v) for k, v in out.items() if v}


def _solve_linear(src, tgt, rhs_map, colors, n):
    basis, _ = _monomial_index(colors, n)
    bs = [(x, m) for x in src.generators for m in basis]
    bt = [(y, m) for y in tgt.generators for m in basis]
    is_ = {b: i for i, b in enumerate(bs)}
    it = {b: i for i, b in enumerate(bt)}
    ds = diff_on_basis(src, colors, n)
    dt = diff_on_basis(tgt, colors, n)
    fmat = map_on_basis(rhs_map, colors, n)
    nunk = len(bs) * len(bt)

    def unknown(b_in, b_out):
        return is_[b_in] * len(bt) + it[b_out]

    rows = [0] * nunk
    rhs = [0] * nunk

    def equation(b_in, b_out):
        return is_[b_in] * len(bt) + it[b_out]

    # (H d)(b_in) : d(b_in) = sum b_mid, H contributes unknown (b_mid, b_out)
    for b_in in bs:
        for b_mid in ds.get(b_in, ()):  # b_mid is a source basis element
            if b_mid in is_:
                for b_out in bt:
                    rows[equation(b_in, b_out)] ^= 1 << unknown(b_mid, b_out)
    # (d H)(b_in): unknown (b_in, b_mid), then d_tgt(b_mid) hits b_out
    for b_mid in bt:
        for b_out in dt.get(b_mid, ()):
            if b_out in it:
                for b_in in bs:
                    rows[equation(b_in, b_out)] ^= 1 << unknown(b_in, b_mid)
    for b_in, outs in fmat.items():
        if b_in in is_:
            for b_out in outs:
                if b_out in it:
                    rhs[equation(b_in, b_out)] = 1
    sol = gf2_solve(rows, rhs)
    if sol is None:
        return None
    images: dict[tuple[Gen, Monomial], frozenset] = {}
    for b_in in bs:
        outs = {b_out for b_out in bt if (sol >> unknown(b_in, b_out)) & 1}
        if outs:
            images[b_in] = frozenset(outs)
    return F2LinearMap(src, tgt, images)


def truncated_homology(c: ColoredComplex, flavor: str = "hat") -> dict:
    """F2 homology dimensions, reported per Spin^c tag.

    flavor "hat" sets every U variable to zero; "minus_truncated" works over
    the truncated ring as an F2 vector space (the complex must carry a
    truncation).
    """
    tags = c.spinc_tag or {x: None for x in c.generators}
    out: dict = {}
    for tag in sorted({tags.get(x) for x in c.generators}, key=repr):
        gens = [x for x in c.generators if tags.get(x) == tag]
        if flavor == "hat":
            gi = {x: i for i, x in enumerate(gens)}
            rows = []
            for x in gens:
                r = 0
                for y, p in c.diff.get(x, {}).items():
                    if () in p.monomials and y in gi:
                        r |= 1 << gi[y]
                rows.append(r)
            rank = gf2_rank(rows)
            out[tag] = len(gens) - 2 * rank
        elif flavor == "minus_truncated":
            n = c.truncation
            if n is None:
                raise ValueError("minus_truncated needs a truncation")
            sub = ColoredComplex(gens, {x: c.diff.get(x, {}) for x in gens},
                                 c.colors, n)
            mat = diff_on_basis(sub, c.colors, n)
            basis, mind = _monomial_index(c.colors, n)
            bi = {(x, m): i for i, (x, m) in
                  enumerate((x, m) for x in gens for m in basis)}
            rows = []
            for b in bi:
                r = 0
                for b2 in mat.get(b, ()):
                    r |= 1 << bi[b2]
                rows.append(r)
            rank = gf2_rank(rows)
            out[tag] = len(bi) - 2 * rank
        else:
            raise ValueError(f"unknown flavor {flavor!r}")
    return out
