"""Finitely generated graded modules given by presentations.

A module over ``R = S/I`` is ``coker(relations)``: generators sit in the
given degrees, relations are homogeneous vectors (dicts keyed by
``(component, exponent)``).  Computations over ``R`` happen over ``S``
with ``I * e_c`` appended to every relation set.
"""

from __future__ import annotations

from functools import cached_property

from . import linalg as la
from .groebner import GroebnerBasis, ModuleOrder, kernel_mod, spread_ideal
from .poly import divides, mono_mul, monomials_of_degree, v_mul_poly
from .rings import QuotientRing, RingMismatchError

INFINITE = "infinite"


class ScopeError(ValueError):
    """An operation was asked for outside the class of inputs it supports."""


def vec_nf_ideal(R: QuotientRing, v: dict) -> dict:
    """Reduce every entry of a vector modulo the defining ideal."""
    if not R.gb:
        return {k: c for k, c in v.items() if c}
    comps = {}
    for (c, e), a in v.items():
        comps.setdefault(c, {})[e] = a
    out = {}
    for c, f in comps.items():
        for e, a in R.nf(f).items():
            out[(c, e)] = a
    return out


def vec_add(F, v, w, c=None):
    out = dict(v)
    for k, a in w.items():
        if c is not None:
            a = F.mul(c, a)
        b = F.add(out.get(k, F.zero), a)
        if b:
            out[k] = b
        else:
            out.pop(k, None)
    return out


def vec_scale(F, c, v):
    return {k: F.mul(c, a) for k, a in v.items()} if c else {}


def vec_apply(F, v: dict, images) -> dict:
    """Image of ``v = sum f_c e_c`` under ``e_c -> images[c]``."""
    out = {}
    for (c, e), a in v.items():
        for (c2, e2), b in images[c].items():
            k = (c2, mono_mul(e, e2))
            w = F.add(out.get(k, F.zero), F.mul(a, b))
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def vec_component(v: dict, c: int) -> dict:
    return {e: a for (cc, e), a in v.items() if cc == c}


class GradedModule:
    """``coker(F_1 -> F_0)`` over a :class:`QuotientRing`."""

    def __init__(self, ring: QuotientRing, degrees, relations=(), _gb=None, check=True):
        self.ring = ring
        self.degrees = [int(d) for d in degrees]
        rels = []
        S = ring.S
        for r in relations:
            if not isinstance(r, dict):
                col = list(r)
                if len(col) != len(self.degrees):
                    raise ValueError("relation column has the wrong length")
                r = {}
                for c, f in enumerate(col):
                    for e, a in S(f).coeffs.items():
                        r[(c, e)] = a
            else:
                r = {k: S.field(a) for k, a in r.items()}
            r = vec_nf_ideal(ring, r)
            if r:
                rels.append(r)
        if check:
            order = ModuleOrder(self.degrees)
            for r in rels:
                if any(c >= len(self.degrees) for c, _ in r):
                    raise ValueError("relation refers to a missing generator")
                order.degree(r)
        self.relations = rels
        if _gb is not None:
            self.__dict__["gb"] = _gb

    # -- constructors -----------------------------------------------------
    @classmethod
    def free(cls, ring, degrees):
        if isinstance(degrees, int):
            degrees = [0] * degrees
        return cls(ring, degrees, [])

    @classmethod
    def cyclic(cls, ring, *polys, degree=0):
        """``R/(f_1, ..., f_k)`` generated in ``degree``."""
        rels = []
        for f in polys:
            f = ring.S(f)
            rels.append({(0, e): a for e, a in f.coeffs.items()})
        return cls(ring, [degree], rels)

    @classmethod
    def residue_field(cls, ring, degree=0):
        return cls.cyclic(ring, *ring.S.gens(), degree=degree)

    # -- basics -------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def field(self):
        return self.ring.field

    def shifted(self, k: int) -> "GradedModule":
        """``M(-k)``: every generator degree raised by ``k``."""
        return GradedModule(self.ring, [d + k for d in self.degrees], self.relations, check=False)

    def _ideal_block(self, comps=None):
        return spread_ideal(self.ring.gb, range(self.rank) if comps is None else comps)

    @cached_property
    def gb(self) -> GroebnerBasis:
        order = ModuleOrder(self.degrees)
        G = GroebnerBasis(self.field, order)
        extra, tags = self._ideal_block()
        G.run(free=extra + self.relations, free_tags=tags + [None] * len(self.relations))
        return G

    def nf(self, v: dict) -> dict:
        return self.gb.reduce(v)

    def is_zero_element(self, v: dict) -> bool:
        return not self.gb.top_reduce(v)

    def _leads_by_comp(self):
        out = [[] for _ in range(self.rank)]
        for c, e in self.gb.leads():
            out[c].append(e)
        return out

    @cached_property
    def _leads(self):
        return self._leads_by_comp()

    def std_basis(self, d: int):
        """Standard ``(component, exponent)`` pairs of degree ``d``."""
        out = []
        for c, dc in enumerate(self.degrees):
            L = self._leads[c]
            for e in monomials_of_degree(self.ring.n, d - dc):
                if not any(divides(l, e) for l in L):
                    out.append((c, e))
        return out

    def hilbert(self, d: int) -> int:
        return len(self.std_basis(d))

    # -- finiteness -------------------------------------------------------
    @cached_property
    def _top_exponent(self):
        """Per component, the largest degree of a standard monomial (``None`` if unbounded)."""
        n = self.ring.n
        tops = []
        for c in range(self.rank):
            L = self._leads[c]
            if n == 0:
                tops.append(0 if not L else -1)
                continue
            pure = {}
            for e in L:
                nz = [i for i, k in enumerate(e) if k]
                if len(nz) == 0:
                    pure = None
                    break
                if len(nz) == 1:
                    i = nz[0]
                    pure[i] = min(pure.get(i, e[i]), e[i])
            if pure is None:
                tops.append(-1)
                continue
            if len(pure) < n:
                return None
            bound = sum(pure[i] - 1 for i in range(n))
            top = -1
            for k in range(bound + 1):
                for e in monomials_of_degree(n, k):
                    if not any(divides(l, e) for l in L):
                        top = k
                        break
            tops.append(top)
        return tops

    def is_finite_length(self) -> bool:
        return self._top_exponent is not None

    def finiteness_certificate(self):
        """Exponent ``s`` with ``m^s M = 0`` (pure-power lead terms), or ``None``."""
        tops = self._top_exponent
        if tops is None:
            return None
        live = [(c, t) for c, t in enumerate(tops) if t >= 0]
        if not live:
            return 0
        lo = min(self.degrees[c] for c, _ in live)
        hi = max(self.degrees[c] + t for c, t in live)
        return hi - lo + 1

    def degree_range(self):
        """``(lo, hi)`` of the nonzero degrees for finite length (``None`` if zero)."""
        tops = self._top_exponent
        if tops is None:
            raise ScopeError("module does not have finite length")
        live = [(c, t) for c, t in enumerate(tops) if t >= 0]
        if not live:
            return None
        lo = min(self.degrees[c] for c, _ in live)
        hi = max(self.degrees[c] + t for c, t in live)
        return lo, hi

    def length(self):
        if not self.is_finite_length():
            return INFINITE
        rng = self.degree_range()
        if rng is None:
            return 0
        return sum(self.hilbert(d) for d in range(rng[0], rng[1] + 1))

    def hilbert_table(self, hi=None, lo=None) -> dict:
        """Degree -> dimension.  Finite length: the whole support; else ``lo..hi``."""
        if self.is_finite_length():
            rng = self.degree_range()
            if rng is None:
                return {}
            lo, hi = rng
        else:
            lo = min(self.degrees) if lo is None and self.degrees else (lo or 0)
            hi = lo + 10 if hi is None else hi
        return {d: self.hilbert(d) for d in range(lo, hi + 1) if self.hilbert(d)}

    def is_zero(self) -> bool:
        return self.length() == 0

    # -- degreewise linear algebra -----------------------------------------
    def basis_index(self, d: int):
        B = self.std_basis(d)
        return B, {t: i for i, t in enumerate(B)}

    def coords(self, v: dict, d: int):
        """Coordinates of a degree-``d`` vector in the standard basis of ``M_d``."""
        B, idx = self.basis_index(d)
        x = la.zeros(self.field, len(B), 1)
        for t, a in self.nf(v).items():
            x[idx[t], 0] = a
        return x[:, 0]

    def element(self, x, d: int) -> dict:
        B = self.std_basis(d)
        return {t: a for t, a in zip(B, x) if a}

    def mult_matrix(self, f: dict, d: int):
        """Multiplication by the homogeneous polynomial ``f`` from ``M_d``."""
        F = self.field
        df = sum(next(iter(f))) if f else 0
        src = self.std_basis(d)
        tgt, idx = self.basis_index(d + df)
        M = la.zeros(F, len(tgt), len(src))
        for j, (c, e) in enumerate(src):
            v = {(c, mono_mul(e, m)): a for m, a in f.items()}
            for t, a in self.nf(v).items():
                M[idx[t], j] = a
        return M

    # -- structure ----------------------------------------------------------
    def prune(self) -> "Pruned":
        return prune(self)

    def minimal_presentation(self) -> "GradedModule":
        return prune(self).module

    def to_flm(self):
        from .flm import FiniteLengthModule
        return FiniteLengthModule.from_graded(self)

    def generator_vector(self, j: int) -> dict:
        return {(j, (0,) * self.ring.n): self.field.one}

    def __repr__(self):
        return f"GradedModule(rank={self.rank}, degrees={self.degrees}, relations={len(self.relations)})"

    def columns_text(self):
        S = self.ring.S
        out = []
        for r in self.relations:
            col = [dict() for _ in range(self.rank)]
            for (c, e), a in r.items():
                col[c][e] = a
            out.append([S.format(f) for f in col])
        return out

    def to_json(self):
        return {"ring": self.ring.to_json(), "generator_degrees": list(self.degrees),
                "relations": self.columns_text()}

    @classmethod
    def from_json(cls, obj, ring=None):
        R = ring or QuotientRing.from_json(obj["ring"])
        return cls(R, obj["generator_degrees"], obj["relations"])

    def same_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError("modules live over different rings")


class Pruned:
    """A minimal presentation plus the maps linking it to the original.

    ``module`` is minimal; ``kept[k]`` is the old generator behind new
    generator ``k``; ``images[j]`` expresses old generator ``j`` in the new
    generators.
    """

    def __init__(self, module, kept, images):
        self.module, self.kept, self.images = module, kept, images


def prune(M: GradedModule) -> Pruned:
    """Minimal presentation by unit-pivot elimination and relation minimisation."""
    R, F = M.ring, M.field
    n = R.n
    z = (0,) * n
    rels = [dict(r) for r in M.relations]
    images = [{(j, z): F.one} for j in range(M.rank)]
    alive = list(range(M.rank))
    while True:
        pick = None
        for ri, r in enumerate(rels):
            units = [c for (c, e), a in r.items() if e == z]
            if units:
                pick = (ri, max(units))
                break
        if pick is None:
            break
        ri, c = pick
        r = rels.pop(ri)
        a = r[(c, z)]
        inv_neg = F.neg(F.inv(a))

        def eliminate(v):
            p = vec_component(v, c)
            if not p:
                return v
            w = vec_add(F, v, v_mul_poly(F, r, p), inv_neg)
            return vec_nf_ideal(R, w)

        rels = [w for w in (eliminate(v) for v in rels) if w]
        images = [eliminate(v) for v in images]
        alive.remove(c)
    renum = {c: k for k, c in enumerate(alive)}

    def ren(v):
        return {(renum[c], e): a for (c, e), a in v.items()}

    degs = [M.degrees[c] for c in alive]
    rels = [ren(r) for r in rels]
    images = [ren(v) for v in images]
    order = ModuleOrder(degs)
    G = GroebnerBasis(F, order)
    extra, tags = spread_ideal(R.gb, range(len(degs)))
    keep = G.run(free=extra, counted=rels, free_tags=tags)
    kept_rels = [rels[i] for i in keep]
    out = GradedModule(R, degs, kept_rels, _gb=G, check=False)
    return Pruned(out, alive, images)


def subquotient(R: QuotientRing, shifts, Z, B=()) -> Pruned:
    """Present ``(<Z> + <B>) / <B>`` inside ``R^shifts``.

    The returned ``Pruned`` has ``images`` relative to the generators ``Z``
    and ``kept`` indexing into ``Z``.
    """
    F = R.field
    Z = [dict(z) for z in Z]
    order = ModuleOrder(shifts)
    degs = [order.degree(z) if z else None for z in Z]
    live = [i for i, z in enumerate(Z) if z]
    if not live:
        return Pruned(GradedModule(R, [], []), [], [{} for _ in Z])
    zl = [Z[i] for i in live]
    dl = [degs[i] for i in live]
    K = kernel_mod(F, R.n, zl, dl, list(shifts), list(B), R.gb)
    pre = GradedModule(R, dl, K, check=False)
    P = prune(pre)
    kept = [live[k] for k in P.kept]
    images = [{} for _ in Z]
    for pos, i in enumerate(live):
        images[i] = P.images[pos]
    return Pruned(P.module, kept, images)


def submodule_generators_in(M: GradedModule, gens) -> Pruned:
    """Present the submodule of ``M`` generated by the vectors ``gens``."""
    return subquotient(M.ring, M.degrees, gens, M.relations)


def syzygy_basis(R: QuotientRing, columns, target_degrees=None):
    """Minimal generators of the syzygies of ``columns`` over ``R``.

    ``columns`` is a list of homogeneous columns (one polynomial per target
    component); ``target_degrees`` defaults to zeros.  Returns columns of
    length ``len(columns)``, as polynomials, with the relations of ``R`` not
    listed.
    """
    S = R.S
    cols = [[S(f) for f in c] for c in columns]
    if not cols:
        return []
    r = len(cols[0])
    tgt = [0] * r if target_degrees is None else [int(d) for d in target_degrees]
    order = ModuleOrder(tgt)
    vecs, src = [], []
    for c in cols:
        if len(c) != r:
            raise ValueError("columns have different lengths")
        v = {(k, e): a for k, f in enumerate(c) for e, a in f.coeffs.items()}
        v = vec_nf_ideal(R, v)
        vecs.append(v)
        src.append(order.degree(v) if v else 0)
    K = kernel_mod(R.field, R.n, vecs, src, tgt, (), R.gb)
    out = []
    for v in K:
        v = vec_nf_ideal(R, v)
        if not v:
            continue
        col = [dict() for _ in cols]
        for (k, e), a in v.items():
            col[k][e] = a
        out.append([S(f) for f in col])
    return out
