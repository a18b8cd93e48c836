"""Independent desk oracles used to freeze expected values.

Nothing here imports ``matlis``: every routine works with dense sympy
matrices over QQ, degree by degree, on polynomial dicts ``{exponent: Fraction}``.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

import sympy


def mons(n, d):
    if d < 0:
        return []
    out = []
    for c in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def poly(text, names):
    syms = sympy.symbols(names)
    P = sympy.Poly(sympy.sympify(text.replace("^", "**")), *syms, domain="QQ")
    return {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in P.terms()}


def pmul(f, g):
    out = {}
    for a, x in f.items():
        for b, y in g.items():
            e = tuple(i + j for i, j in zip(a, b))
            out[e] = out.get(e, 0) + x * y
    return {e: c for e, c in out.items() if c}


def deg(f):
    return sum(next(iter(f)))


def ideal_piece(gens, n, d):
    """Spanning rows (over S_d coordinates) of the degree-d part of the ideal."""
    B = mons(n, d)
    pos = {m: i for i, m in enumerate(B)}
    rows = []
    for g in gens:
        for m in mons(n, d - deg(g)):
            v = [0] * len(B)
            for e, c in pmul(g, {m: 1}).items():
                v[pos[e]] = c
            rows.append(v)
    return rows


def rank(rows, width):
    if not rows:
        return 0
    return sympy.Matrix(rows).rank() if width else 0


def ring_hilbert(gens, n, d):
    return len(mons(n, d)) - rank(ideal_piece(gens, n, d), len(mons(n, d)))


class FreeDeg:
    """Degree-e piece of a free S-module with generator shifts ``shifts``."""

    def __init__(self, n, shifts):
        self.n, self.shifts = n, list(shifts)

    def basis(self, e):
        return [(j, m) for j, a in enumerate(self.shifts) for m in mons(self.n, e - a)]

    def vec(self, v, e):
        """Coordinates of a vector ``[poly per component]`` of degree e."""
        B = self.basis(e)
        pos = {b: i for i, b in enumerate(B)}
        out = [0] * len(B)
        for j, f in enumerate(v):
            for m, c in f.items():
                out[pos[(j, m)]] += c
        return out

    def unvec(self, x, e):
        v = [dict() for _ in self.shifts]
        for (j, m), c in zip(self.basis(e), x):
            if c:
                v[j][m] = Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
        return v

    def ideal_rows(self, gens, e):
        rows = []
        for j, a in enumerate(self.shifts):
            for r in ideal_piece(gens, self.n, e - a):
                rows.append(self.vec([dict() for _ in range(j)]
                                     + [dict(zip(mons(self.n, e - a), r))]
                                     + [dict() for _ in range(len(self.shifts) - j - 1)], e))
        return [r for r in rows if any(r)]


def apply(cols, v):
    """Image of the source vector ``v`` under the map with columns ``cols``."""
    r = len(cols[0]) if cols else 0
    out = [dict() for _ in range(r)]
    for a, col in zip(v, cols):
        if not a:
            continue
        for k in range(r):
            for e, c in pmul(a, col[k]).items():
                out[k][e] = out[k].get(e, 0) + c
    return [{e: c for e, c in f.items() if c} for f in out]


def _span(rows):
    if not rows:
        return []
    M = sympy.Matrix(rows)
    R, piv = M.T.rref()
    return [list(M.row(i)) for i in piv]


def kernel_rows(cols, src, tgt, gens, e):
    """Basis of ``{v in src_e : cols(v) in I*tgt}`` (contains ``I*src``)."""
    B = src.basis(e)
    if not B:
        return []
    img = []
    for b in range(len(B)):
        x = [0] * len(B)
        x[b] = 1
        img.append(tgt.vec(apply(cols, src.unvec(x, e)), e) if tgt.basis(e) else [])
    W = len(tgt.basis(e))
    Irows = tgt.ideal_rows(gens, e)
    if W == 0:
        return [[1 if i == j else 0 for i in range(len(B))] for j in range(len(B))]
    # solve [img | I] coefficients giving zero: kernel of the stacked transpose
    A = sympy.Matrix([list(r) for r in img] + [list(r) for r in Irows]).T
    ker = A.nullspace()
    vecs = [list(k[: len(B)]) for k in ker]
    return _span([v for v in vecs if any(v)])


def multiply_up(rows, src, e):
    """Span of ``S_1 * rows`` (rows in degree e-1) inside degree e."""
    out = []
    n = src.n
    for r in rows:
        v = src.unvec(r, e - 1)
        for i in range(n):
            x = tuple(1 if k == i else 0 for k in range(n))
            out.append(src.vec([pmul(f, {x: 1}) if f else {} for f in v], e))
    return out


def min_resolution_ranks(gens, n, shifts0, rel_cols, steps, max_deg):
    """Betti numbers ``beta_0..beta_steps`` of coker(rel_cols) over S/(gens), degrees <= max_deg.

    ``rel_cols`` are relation columns ``[poly per generator]``.  Minimality is
    enforced degreewise: new generators complete the span of ``S_1``-multiples
    of lower-degree kernel elements plus ``I`` times the source.
    """
    ranks = [len(shifts0)]
    tgt = FreeDeg(n, shifts0)
    # first syzygy module: the relations themselves, minimalised
    cols = _minimal_columns(rel_cols, tgt, gens, max_deg)
    shifts = [_vdeg(c, shifts0) for c in cols]
    for _ in range(steps):
        ranks.append(len(cols))
        if not cols:
            ranks += [0] * (steps + 1 - len(ranks))
            break
        src = FreeDeg(n, shifts)
        new_cols, new_shifts = [], []
        prev = []
        for e in range(min(shifts), max_deg + 1):
            K = kernel_rows(cols, src, tgt, gens, e)
            lower = multiply_up(prev, src, e) + src.ideal_rows(gens, e)
            have = _span(lower)
            r0 = len(have)
            for k in K:
                if len(_span(have + [k])) > r0:
                    have = _span(have + [k])
                    r0 = len(have)
                    new_cols.append(src.unvec(k, e))
                    new_shifts.append(e)
            prev = K
        cols, shifts, tgt = new_cols, new_shifts, src
        if len(ranks) > steps:
            break
    return ranks[: steps + 1]


def _vdeg(col, shifts):
    for j, f in enumerate(col):
        if f:
            return deg(f) + shifts[j]
    raise ValueError("zero column")


def _minimal_columns(cols, tgt, gens, max_deg):
    cols = [c for c in cols if any(c)]
    out, have_by = [], {}
    for e in range(-5, max_deg + 1):
        here = [c for c in cols if _vdeg(c, tgt.shifts) == e]
        span = _span(tgt.ideal_rows(gens, e) + [tgt.vec(c, e) for c in out_at(out, tgt, e)])
        for c in here:
            v = tgt.vec(c, e)
            s2 = _span(span + [v])
            if len(s2) > len(span):
                span = s2
                out.append(c)
        have_by[e] = span
    return out


def out_at(cols, tgt, e):
    """All ``S``-multiples of ``cols`` landing in degree e."""
    res = []
    for c in cols:
        d = _vdeg(c, tgt.shifts)
        for m in mons(tgt.n, e - d):
            res.append([pmul(f, {m: 1}) if f else {} for f in c])
    return res


def socle_dim_ring(gens, n, max_deg):
    """dim (0 :_R m) for R = S/(gens), summed over degrees <= max_deg."""
    total = 0
    for d in range(max_deg + 1):
        B = mons(n, d)
        Id = ideal_piece(gens, n, d)
        Id1 = ideal_piece(gens, n, d + 1)
        B1 = mons(n, d + 1)
        pos1 = {m: i for i, m in enumerate(B1)}
        # x_i * b for every basis monomial b, stacked for all i
        rows = []
        for b in B:
            row = []
            for i in range(n):
                v = [0] * len(B1)
                v[pos1[tuple(a + (1 if k == i else 0) for k, a in enumerate(b))]] = 1
                row.append(v)
            rows.append(row)
        # kernel of R_d -> R_{d+1}^n, computed in S coordinates
        W = len(B1)
        A = []
        for b_idx in range(len(B)):
            A.append(sum(rows[b_idx], []))
        I1 = [sum([r if k == i else [0] * W for k in range(n)], []) for i in range(n) for r in Id1]
        M = sympy.Matrix(A + I1).T if (A or I1) else sympy.zeros(0, 0)
        ker = M.nullspace() if A else []
        K = _span([list(k[: len(B)]) for k in ker if any(k[: len(B)])])
        total += len(_span(K + Id)) - len(_span(Id))
    return total


def tor_koszul_dim(n_vars, f_text, g_text, names, i):
    """dim Tor_i(S/(f), S/(g)) over a polynomial ring via the resolution 0->S->S of S/(f)."""
    f, g = poly(f_text, names), poly(g_text, names)
    # Tor_1 = (0 :_{S/g} f); Tor_0 = S/(f, g): summed over degrees <= 6
    total = 0
    for d in range(7):
        if i == 0:
            total += ring_hilbert([f, g], n_vars, d)
        else:
            Id = ideal_piece([g], n_vars, d)
            B = mons(n_vars, d)
            B1 = mons(n_vars, d + deg(f))
            pos = {m: k for k, m in enumerate(B1)}
            A = []
            for b in B:
                v = [0] * len(B1)
                for e, c in pmul(f, {b: 1}).items():
                    v[pos[e]] += c
                A.append(v)
            Ig = ideal_piece([g], n_vars, d + deg(f))
            M = sympy.Matrix(A + Ig).T
            K = _span([list(k[: len(B)]) for k in M.nullspace() if any(k[: len(B)])])
            total += len(_span(K + Id)) - len(_span(Id))
    return total


def colon_member_brute(I_gens, J_gens, f, n):
    """``f * g in I`` for every generator g of J, by degreewise span membership."""
    for g in J_gens:
        h = pmul(f, g)
        if not h:
            continue
        d = deg(h)
        B = mons(n, d)
        pos = {m: k for k, m in enumerate(B)}
        v = [0] * len(B)
        for e, c in h.items():
            v[pos[e]] = c
        rows = ideal_piece(I_gens, n, d)
        if rank(rows + [v], len(B)) > rank(rows, len(B)):
            return False
    return True


def inverse_brute(a, p):
    for b in range(1, p):
        if (a * b) % p == 1:
            return b
    raise ZeroDivisionError


def monomial_ass(gens, n, box_extra=1):
    """Variable subsets p with (J : f) = p for a monomial f, J monomial.

    ``(J : f)`` is generated by ``g / gcd(g, f)``; the search box goes one
    past the largest exponent of each variable.
    """
    from itertools import product
    top = [max((g[i] for g in gens), default=0) + box_extra for i in range(n)]
    found = set()
    for f in product(*(range(t + 1) for t in top)):
        if any(all(a <= b for a, b in zip(g, f)) for g in gens):
            continue
        col = {tuple(max(a - b, 0) for a, b in zip(g, f)) for g in gens}
        col = {m for m in col if not any(o != m and all(x <= y for x, y in zip(o, m)) for o in col)}
        if all(sum(m) == 1 for m in col):
            found.add(frozenset(m.index(1) for m in col))
    return found
