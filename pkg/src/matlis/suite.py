"""Seeded random instances and the registry of executable theorem checks.

Every check maps an :class:`Instance` to a verdict ``"pass"``, ``"fail"`` or
``"scope"`` plus a witness dictionary.  Checks never raise: an unexpected
exception is recorded as a failure with its message as the witness.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .duality import (ArtinianModule, ext_artinian_pair, hard_direction_stages,
                      hom_artinian_to_fg, mixed_ext_tor, stabilization_exponent,
                      tensor_with_artinian, top_quotient)
from .field import GF, QQ, DEFAULT_TEST_PRIME
from .flm import FiniteLengthModule
from .homology import (DegreewiseTarget, betti_bass_numbers, colon, ext_dims, gamma_m,
                       hom_tensor_fg, min_resolution, tor_dims)
from .invariants import (PrimeIdeal, annihilator, ass_brute_force, ass_fg, ass_monomial_cyclic,
                         att_artinian, depth, depth_formulas, in_monomial_scope, in_support,
                         monomial_components, nonzerodivisor_in, positive, vanishing_predicates,
                         width, _colon_monomial, _minimalize)
from .modules import GradedModule, ScopeError
from .poly import monomials_of_degree
from .rings import Ideal, QuotientRing

PASS, FAIL, SCOPE = "pass", "fail", "scope"
I_WINDOW = 3
S_WINDOW = 5

NAMES = ("x", "y", "z")


# ----------------------------------------------------------------- profiles

@dataclass(frozen=True)
class InstanceSpec:
    """Seed plus generation profile; generation is a pure function of these."""

    seed: int
    n_max: int = 3
    ideal_kind: str = "mixed"  # monomial | binomial | mixed | zero
    ideal_deg_max: int = 3
    gens_max: int = 3
    rel_deg_max: int = 4
    monomial_modules: bool = False
    field_char: int = DEFAULT_TEST_PRIME
    n_fixed: int | None = None

    def ring_profile(self):
        return {"n_max": self.n_max, "ideal_kind": self.ideal_kind,
                "ideal_deg_max": self.ideal_deg_max, "n_fixed": self.n_fixed}

    def module_profile(self):
        return {"gens_max": self.gens_max, "rel_deg_max": self.rel_deg_max,
                "monomial": self.monomial_modules,
                "classes": ["fg", "finite-length", "artinian-dual"]}


MONOMIAL = dict(ideal_kind="monomial", monomial_modules=True)
SMALL = dict(n_max=2, gens_max=2, rel_deg_max=3)


def _mono(rng, n, d):
    cuts = np.sort(rng.integers(0, d + 1, size=n - 1))
    parts = np.diff(np.concatenate([[0], cuts, [d]]))
    return tuple(int(a) for a in parts)


def _random_ring(rng, spec: InstanceSpec) -> QuotientRing:
    F = GF(spec.field_char) if spec.field_char else QQ
    n = spec.n_fixed or int(rng.integers(1, spec.n_max + 1))
    names = list(NAMES[:n])
    kind = spec.ideal_kind
    k = 0 if kind == "zero" else int(rng.integers(0, 3 if n > 1 else 2))
    gens = []
    for _ in range(k):
        d = int(rng.integers(2, spec.ideal_deg_max + 1))
        m1 = _mono(rng, n, d)
        binom = kind == "binomial" or (kind == "mixed" and rng.random() < 0.5)
        if binom and n > 1:
            m2 = _mono(rng, n, d)
            if m2 != m1:
                gens.append({m1: F.one, m2: F.neg(F.one)})
                continue
        if {m1: 1} not in gens:
            gens.append({m1: 1})
    return QuotientRing(F, names, gens)


def _random_entry(rng, R, d, monomial):
    mons = R.std_monomials(d) if d >= 0 else []
    if not mons:
        return {}
    if monomial:
        return {mons[int(rng.integers(0, len(mons)))]: 1}
    t = int(rng.integers(1, min(3, len(mons)) + 1))
    pick = rng.choice(len(mons), size=t, replace=False)
    return {mons[int(j)]: int(rng.integers(1, 6)) for j in pick}


def _random_fg(rng, R, spec: InstanceSpec, finite=False, monomial=None) -> GradedModule:
    monomial = spec.monomial_modules if monomial is None else monomial
    g = int(rng.integers(1, spec.gens_max + 1))
    degs = sorted(int(a) for a in rng.integers(0, 2, size=g))
    rels = []
    for _ in range(int(rng.integers(0, g + 1))):
        D = max(degs) + int(rng.integers(1, 3))
        D = min(D, spec.rel_deg_max)
        comps = [int(rng.integers(0, g))] if monomial else \
            sorted(set(int(c) for c in rng.integers(0, g, size=int(rng.integers(1, g + 1)))))
        v = {}
        for c in comps:
            for e, a in _random_entry(rng, R, D - degs[c], monomial).items():
                v[(c, e)] = a
        if v:
            rels.append(v)
    if finite:
        p = int(rng.integers(1, 4))
        for c in range(g):
            for e in monomials_of_degree(R.n, p):
                rels.append({(c, e): 1})
    return GradedModule(R, degs, rels)


def gen_instance(spec: InstanceSpec):
    """``(ring, [N, N2, V, V2, A, A2])`` determined by ``spec``.

    ``N, N2`` are finitely generated (``N`` of infinite length whenever the
    ring allows), ``V, V2`` finite-length, ``A, A2`` formal duals.
    """
    rng = np.random.default_rng(spec.seed)
    R = _random_ring(rng, spec)
    infinite_ok = not GradedModule.free(R, [0]).is_finite_length()
    N = _random_fg(rng, R, spec)
    for _ in range(5):
        if not infinite_ok or not N.is_finite_length():
            break
        N = _random_fg(rng, R, spec)
    N2 = _random_fg(rng, R, spec)
    V = _random_fg(rng, R, spec, finite=True)
    V2 = _random_fg(rng, R, spec, finite=True)
    A = ArtinianModule(_random_fg(rng, R, spec))
    A2 = ArtinianModule(_random_fg(rng, R, spec))
    return R, [N, N2, V, V2, A, A2]


class Instance:
    """Generated data with lazily computed finite-length forms."""

    def __init__(self, spec: InstanceSpec):
        self.spec = spec
        self.R, mods = gen_instance(spec)
        self.N, self.N2, self.Vg, self.V2g, self.A, self.A2 = mods

    @cached_property
    def V(self) -> FiniteLengthModule:
        return self.Vg.to_flm()

    @cached_property
    def V2(self) -> FiniteLengthModule:
        return self.V2g.to_flm()

    @cached_property
    def a(self) -> Ideal:
        """A monomial ideal drawn from the seed (for depth/width checks)."""
        rng = np.random.default_rng(self.spec.seed + 7)
        n = self.R.n
        k = int(rng.integers(1, n + 1))
        gens = [{_mono(rng, n, int(rng.integers(1, 3))): 1} for _ in range(k)]
        return Ideal(self.R.S, [self.R.S(g) for g in gens])

    def to_json(self):
        return {
            "seed": self.spec.seed,
            "ring_profile": self.spec.ring_profile(),
            "module_profile": self.spec.module_profile(),
            "ring": self.R.to_json(),
            "modules": [
                {"name": "N", "class": "fg", "module": self.N.to_json()},
                {"name": "N2", "class": "fg", "module": self.N2.to_json()},
                {"name": "V", "class": "finite-length", "module": self.Vg.to_json()},
                {"name": "V2", "class": "finite-length", "module": self.V2g.to_json()},
                {"name": "A", "class": "artinian-dual", "module": self.A.to_json()},
                {"name": "A2", "class": "artinian-dual", "module": self.A2.to_json()},
            ],
        }


# ------------------------------------------------------------------ helpers

def _ext_total(M: GradedModule, T, i: int) -> int:
    return sum(ext_dims(min_resolution(M, i + 1), i, DegreewiseTarget(T)).values())


def _tor_total(M: GradedModule, T, i: int) -> int:
    return sum(tor_dims(min_resolution(M, i + 1), i, DegreewiseTarget(T)).values())


def _socle_dim(N: GradedModule) -> int:
    return colon(N, None, 1).module.to_flm().dim


def _beta0_artinian(A: ArtinianModule) -> int:
    """``dim A/mA``."""
    return top_quotient(A, 1).dim


def _ok(cond, **witness):
    return (PASS if cond else FAIL), witness


def _w(v):
    if isinstance(v, (set, frozenset)):
        return sorted(str(p) for p in v)
    return v


# ----------------------------------------------------------------- checks

def chk_finite_lengths(I: Instance):
    H = hom_artinian_to_fg(I.A, I.N)
    T = tensor_with_artinian(I.A, I.A2)
    H.validate()
    T.validate()
    return _ok(isinstance(H.dim, int) and isinstance(T.dim, int),
               len_hom=H.dim, len_tensor=T.dim)


def _gamma_dual(N: GradedModule) -> GradedModule:
    G = gamma_m(N)[0]
    return G.to_flm().dual().to_graded()


def chk_hom_finite(I: Instance):
    H = hom_artinian_to_fg(I.A, I.N)
    other = hom_tensor_fg(_gamma_dual(I.N), I.A.dual_of, "hom").length()
    return _ok(H.dim == other, via_truncation=H.dim, via_dual_route=other)


def chk_hom_truncation(I: Instance):
    H = hom_artinian_to_fg(I.A, I.N)
    s = H.exponents["s"]
    src = top_quotient(I.A, s + 1)
    from .homology import torsion_chain
    tgt = torsion_chain(I.N).submodule(s + 1).module.to_flm()
    H2 = src.hom(tgt)
    return _ok(H.dim == H2.dim, s=s, len_at_s=H.dim, len_at_s_plus_1=H2.dim)


def length_bound(I: Instance):
    """``(lhs, rhs)`` of the Hom length bound."""
    H = hom_artinian_to_fg(I.A, I.N)
    s = H.exponents["s"]
    from .homology import torsion_chain
    socle_s = torsion_chain(I.N).submodule(s).module.length()
    return H.dim, _beta0_artinian(I.A) * socle_s, s


def chk_length_bound(I: Instance):
    lhs, rhs, s = length_bound(I)
    return _ok(lhs <= rhs, len_hom=lhs, bound=rhs, s=s, tight=lhs == rhs)


def chk_tensor_truncation(I: Instance):
    T = tensor_with_artinian(I.A, I.V)
    adj = hom_tensor_fg(I.Vg, I.A.dual_of, "hom").length()
    t = T.exponent + 1
    T2 = top_quotient(I.A, t).tensor(I.V.mod_power(t))
    return _ok(T.dim == adj == T2.dim, len_tensor=T.dim, len_hom_adjoint=adj,
               len_at_t_plus_1=T2.dim)


def tensor_bounds(I: Instance, L):
    A = I.A
    t = stabilization_exponent(A)
    T = tensor_with_artinian(A, L)
    lenA_t = top_quotient(A, t).dim
    b0A = _beta0_artinian(A)
    if isinstance(L, ArtinianModule):
        b0L = _beta0_artinian(L)
        lenL_t = top_quotient(L, t).dim
    else:
        b0L = L.num_generators()
        lenL_t = L.mod_power(t).dim
    return T.dim, lenA_t * b0L, b0A * lenL_t


def chk_tensor_bounds(I: Instance):
    out = {}
    ok = True
    for name, L in (("V", I.V), ("A2", I.A2)):
        lhs, r1, r2 = tensor_bounds(I, L)
        out[name] = {"len": lhs, "bound_a": r1, "bound_b": r2}
        ok = ok and lhs <= r1 and lhs <= r2
    return _ok(ok, **out)


def chk_tensor_artinian(I: Instance):
    T = tensor_with_artinian(I.A, I.A2)
    H = hom_artinian_to_fg(I.A2, I.A.dual_of)
    return _ok(T.dim == H.dim, len_tensor=T.dim, len_hom_adjoint=H.dim)


def chk_depth_width_duality(I: Instance):
    a, V = I.a, I.V
    DV = V.dual()
    b = I.R.n + 2
    w, dd = width(a, V, b), depth(a, DV, b)
    d, wd = depth(a, V, b), width(a, DV, b)
    return _ok(w == dd and d == wd, ideal=str(a), width_V=w, depth_DV=dd, depth_V=d,
               width_DV=wd)


def chk_betti_bass(I: Instance, i_max: int = I_WINDOW):
    V = I.V
    bV, mV = betti_bass_numbers(V, i_max)
    bD, mD = betti_bass_numbers(V.dual(), i_max)
    return _ok(bV == mD and mV == bD, betti_V=bV, bass_DV=mD, bass_V=mV, betti_DV=bD)


def _nzd_brute(a: Ideal, N: GradedModule, max_deg: int = 3):
    """An element of ``a`` regular on ``N``: monomials up to ``max_deg``, then a power sum.

    Monomials alone miss cases such as ``x + y`` on ``k[x,y]/(xy)``.  For a
    monomial ideal ``a`` the power sum of its generators lies in a monomial
    prime only when all of ``a`` does, so the search is complete in the
    monomial scope.
    """
    S, R = a.ring, N.ring
    for d in range(1, max_deg + 1):
        for e in monomials_of_degree(R.n, d):
            f = S({e: R.field.one})
            if a.contains(f) and colon(N, Ideal(S, [f]), 1).module.is_zero():
                return f
    return nonzerodivisor_in(a, N)


def chk_depth_nzd(I: Instance):
    a = I.a
    out = {}
    verdict = PASS
    for name, M in (("N", I.N), ("V", I.Vg)):
        pos = positive(depth(a, M, 1))
        f = _nzd_brute(a, M)
        out[name] = {"depth_positive": pos, "nzd": str(f) if f is not None else None}
        if (f is not None) and not pos:
            verdict = FAIL
        elif (f is None) and pos:
            # the monomial search is complete only for monomial modules
            if in_monomial_scope(M):
                verdict = FAIL
            elif verdict == PASS:
                verdict = SCOPE
    return verdict, out


def chk_depth_definition(I: Instance):
    R = I.R
    w = {}
    ok = True
    dN = depth(None, I.N, 1)
    w["depth_N_zero"] = dN == 0
    ok &= (dN == 0) == (_socle_dim(I.N) > 0)
    wN = width(None, I.N, 1)
    ok &= (wN == 0) == (not I.N.is_zero())
    dV = depth(None, I.V, 1)
    ok &= (dV == 0) == (I.V.dim > 0)
    dA = depth(None, I.A, 1)
    ok &= (dA == 0) == (not I.A.dual_of.is_zero())
    w.update(width_N_zero=wN == 0, depth_V=dV, depth_A=dA, n=R.n)
    return _ok(ok, **w)


def chk_dual_correspondence(I: Instance):
    V = I.V
    DDV = V.dual().dual()
    same = DDV.degrees == V.degrees and all(
        np.array_equal(a, b) for a, b in zip(DDV.ops, V.ops))
    N = I.A.dual_of
    from .duality import socle_stage
    dims = [socle_stage(I.A, s).dim for s in range(1, 4)]
    mono = all(x <= y for x, y in zip(dims, dims[1:]))
    return _ok(same and mono, double_dual_identity=same, socle_stage_lengths=dims,
               witness_finite=N.is_finite_length())


def chk_hom_finite_length(I: Instance):
    from .flm import hom_flm
    H = hom_flm(I.V, I.V2)
    e0 = _ext_total(I.Vg, I.V2, 0)
    return _ok(H.dim == e0, hom_operator_route=H.dim, ext0_resolution_route=e0)


def chk_ext_pair_noetherian(I: Instance, i_max: int = 2):
    out = {}
    ok = True
    for i in range(i_max + 1):
        M = ext_artinian_pair(i, I.A, I.A2)
        res = min_resolution(M, 2)
        ok = ok and isinstance(M, GradedModule) and res.check()
        out[str(i)] = {"generators": M.rank, "betti": res.ranks}
    return _ok(ok, **out)


def chk_mixed_tor_artinian(I: Instance, i_max: int = 2):
    out = {}
    ok = True
    for i in range(i_max + 1):
        T = mixed_ext_tor(i, I.N, I.A, "tor_fg_with_artinian")
        W = T.dual_of
        ok = ok and isinstance(T, ArtinianModule) and isinstance(W, GradedModule)
        ok = ok and W.gb is not None
        out[str(i)] = {"witness_generators": W.rank, "witness_length": W.length()}
    return _ok(ok, **out)


def chk_theta_noetherian(I: Instance, i_max: int = I_WINDOW):
    DV2 = I.V2.dual()
    res = min_resolution(I.N, i_max + 1)
    rows = []
    for i in range(i_max + 1):
        e = sum(ext_dims(res, i, DegreewiseTarget(I.V2)).values())
        t = sum(tor_dims(res, i, DegreewiseTarget(DV2)).values())
        rows.append([e, t])
    return _ok(all(e == t for e, t in rows), ext_vs_tor=rows)


def duality_dims(V: FiniteLengthModule, V2: FiniteLengthModule, i_max: int = I_WINDOW):
    """``[(Ext^i(V,V2), Ext^i(D V2, D V), Tor_i(V, D V2))]`` by separate resolutions."""
    DV, DV2 = V.dual(), V2.dual()
    out = []
    for i in range(i_max + 1):
        e1 = _ext_total(V.to_graded(), V2, i)
        e2 = _ext_total(DV2.to_graded(), DV, i)
        t = _tor_total(DV2.to_graded(), V, i)
        out.append((e1, e2, t))
    return out


def chk_ext_duality(I: Instance, i_max: int = I_WINDOW):
    rows = duality_dims(I.V, I.V2, i_max)
    return _ok(all(a == b for a, b, _ in rows), ext_V_V2=[r[0] for r in rows],
               ext_DV2_DV=[r[1] for r in rows])


def chk_theta_iso(I: Instance, i_max: int = I_WINDOW):
    rows = duality_dims(I.V, I.V2, i_max)
    return _ok(all(a == c for a, _, c in rows), ext_V_V2=[r[0] for r in rows],
               tor_V_DV2=[r[2] for r in rows])


def chk_ext_tor_artinian(I: Instance, i_max: int = 2):
    DV = I.V.dual()
    rows = []
    for i in range(i_max + 1):
        e = _ext_total(DV.to_graded(), I.V2, i)
        t = _tor_total(I.V2.dual().to_graded(), DV, i)
        rows.append([e, t])
    return _ok(all(e == t for e, t in rows), ext_DV_V2_vs_tor_DV_DV2=rows)


def _predicate_verdict(rows):
    if any(r["verdict"] == FAIL for r in rows):
        return FAIL
    return PASS


def chk_vanishing_split(I: Instance):
    rows = [r for L in (I.V, I.A2) for r in vanishing_predicates(I.A, L)
            if r["tag"] == "prop100419a"]
    return _predicate_verdict(rows), {"clauses": rows}


def chk_vanishing_hom(I: Instance):
    rows = [r for L in (I.N, I.A2) for r in vanishing_predicates(I.A, L)
            if r["tag"] == "prop100320a"]
    v = _predicate_verdict(rows)
    return v, {"clauses": rows}


def chk_ext_below_depth(I: Instance):
    d = depth(None, I.N, I_WINDOW + 1)
    top = d if isinstance(d, int) else I_WINDOW + 1
    out = {"depth_N": d}
    ok = True
    for i in range(min(top, I_WINDOW)):
        seq = hard_direction_stages(i, I.A, I.N, "ext_artinian_to_fg", 3)
        ok = ok and not any(seq.lengths)
        out[f"stages_{i}"] = seq.lengths
    d2 = depth(None, I.A2, I_WINDOW + 1)
    top2 = d2 if isinstance(d2, int) else I_WINDOW + 1
    for i in range(min(top2, I_WINDOW)):
        ok = ok and ext_artinian_pair(i, I.A, I.A2).is_zero()
    out["depth_A2"] = d2
    return _ok(ok, **out)


def chk_tor_below_depth(I: Instance):
    d = depth(None, ArtinianModule(I.N), I_WINDOW + 1)
    top = d if isinstance(d, int) else I_WINDOW + 1
    ok = True
    for i in range(min(top, I_WINDOW)):
        ok = ok and mixed_ext_tor(i, I.N, I.A, "tor_fg_with_artinian").dual_of.is_zero()
    return _ok(ok, depth_DN=d)


def _formula_rows(I: Instance, tag):
    rows = [r for r in depth_formulas(I.A, I.A2, I.N, I.N2) if r["tag"] == tag]
    return _predicate_verdict(rows), {"clauses": rows}


def chk_depth_formulas_ext(I: Instance):
    return _formula_rows(I, "prop100616a")


def chk_depth_formulas_tor(I: Instance):
    return _formula_rows(I, "prop100616b")


def _require_scope(*mods):
    for M in mods:
        if not in_monomial_scope(M):
            raise ScopeError("instance outside monomial scope")


def supp_meet(att, ann: Ideal):
    return {p for p in att if in_support(p, ann)}


def chk_ass_hom(I: Instance):
    _require_scope(I.A.dual_of)
    H = hom_artinian_to_fg(I.A, I.N)
    lhs = ass_fg(H)
    rhs = supp_meet(att_artinian(I.A), annihilator(_gamma_dual(I.N)))
    return _ok(lhs == rhs, ass_hom=_w(lhs), att_meet_supp=_w(rhs))


def _monomial_colon_ideal(K, J):
    """Monomial generators of ``(K : J)``: intersect ``(K : g)`` over generators of ``J``."""
    cur = None
    for g in J:
        c = _colon_monomial(K, g) if K else []
        if cur is None:
            cur = c
        else:
            cur = _minimalize(tuple(max(a, b) for a, b in zip(u, v)) for u in cur for v in c)
    return cur if cur is not None else [tuple([0] * 0)]


def ass_hom_monomial(N: GradedModule, M: GradedModule) -> set:
    """``Ass Hom(N, M)`` for monomially presented ``N`` and ``M``.

    ``Hom(S/J, S/K) = (K : J)/K`` is a multigraded submodule of ``S/K``,
    whose associated primes are witnessed by monomials of ``(K : J)``.
    """
    R = N.ring
    n = R.n
    out = set()
    for _, J in monomial_components(N):
        for _, K in monomial_components(M):
            K = _minimalize(K)
            if any(sum(k) == 0 for k in K):
                continue
            if not J:
                W = [(0,) * n]
            else:
                W = _monomial_colon_ideal(K, J)
            out |= ass_monomial_cyclic(K, n, witnesses=W)
    return {PrimeIdeal(tuple(R.names), v) for v in out}


def chk_att_tensor(I: Instance):
    _require_scope(I.A.dual_of, I.N)
    lhs = ass_hom_monomial(I.N, I.A.dual_of)
    rhs = supp_meet(att_artinian(I.A), annihilator(I.N))
    return _ok(lhs == rhs, att_tensor=_w(lhs), att_meet_supp=_w(rhs))


def chk_att_ass(I: Instance):
    N = I.A.dual_of
    _require_scope(N)
    att = att_artinian(I.A)
    brute = set()
    for _, J in monomial_components(N):
        brute |= ass_brute_force(I.R, _minimalize(J))
    return _ok(att == brute, att=_w(att), brute_force_ass=_w(brute))


# --------------------------------------------------------------- registry

@dataclass
class Check:
    id: str
    tag: str
    fn: object
    doc: str = ""


REGISTRY = [
    Check("finite-lengths", "intthm100928a", chk_finite_lengths, "Hom(A,N) and A(x)A' finite"),
    Check("hom-finite-length", "cor100319d", chk_hom_finite, "Hom(A,N) via two routes"),
    Check("hom-truncation", "lem100312b", chk_hom_truncation, "Hom independent of s"),
    Check("hom-length-bound", "thm100312b", chk_length_bound, "len Hom(A,N) bound"),
    Check("tensor-truncation", "lemma1", chk_tensor_truncation, "A(x)V truncations"),
    Check("tensor-length-bounds", "cor28", chk_tensor_bounds, "two tensor length bounds"),
    Check("tensor-artinian-finite", "cor100416b", chk_tensor_artinian, "A(x)A' finite"),
    Check("depth-width-duality", "lem100213c", chk_depth_width_duality, "width = depth of dual"),
    Check("betti-bass-duality", "lem100213c", chk_betti_bass, "beta_i(V) = mu^i(DV)"),
    Check("depth-nonzerodivisor", "lem100213c", chk_depth_nzd, "depth > 0 iff regular element"),
    Check("depth-definition", "defn100616a", chk_depth_definition, "depth/width at i = 0"),
    Check("dual-correspondence", "lem100423f", chk_dual_correspondence, "D D V = V"),
    Check("hom-two-routes", "lem100206c1", chk_hom_finite_length, "Hom of finite length"),
    Check("ext-pair-noetherian", "thm100308a", chk_ext_pair_noetherian, "Ext(A,A') f.g."),
    Check("mixed-tor-artinian", "thm100320b", chk_mixed_tor_artinian, "Tor(A,N) = D(f.g.)"),
    Check("theta-noetherian", "defn100602b", chk_theta_noetherian, "Theta iso for f.g. source"),
    Check("ext-duality", "prop100317a", chk_ext_duality, "Ext(V,V') = Ext(DV',DV)"),
    Check("ext-tor-artinian", "prop100601b", chk_ext_tor_artinian, "Ext(A,L) vs Tor(A,DL)"),
    Check("theta-isomorphism", "prop100601a", chk_theta_iso, "Ext(V,V') = Tor(V,DV')"),
    Check("ass-of-hom", "cor100319a", chk_ass_hom, "Ass Hom(A,N)"),
    Check("att-of-tensor", "prop100416d", chk_att_tensor, "Att(A(x)N)"),
    Check("vanishing-tensor", "prop100419a", chk_vanishing_split, "A(x)L = 0 criteria"),
    Check("vanishing-hom", "prop100320a", chk_vanishing_hom, "Hom(A,L) = 0 criteria"),
    Check("ext-below-depth", "prop100308a", chk_ext_below_depth, "Ext vanishing below depth"),
    Check("tor-below-depth", "prop100419b", chk_tor_below_depth, "Tor vanishing below depth"),
    Check("depth-formulas-ext", "prop100616a", chk_depth_formulas_ext, "three Ext formulas"),
    Check("depth-formulas-tor", "prop100616b", chk_depth_formulas_tor, "three Tor formulas"),
    Check("att-equals-ass", "lem100215a", chk_att_ass, "Att(DN) = Ass(N)"),
]

EXAMPLE_CHECKS = [
    ("example-6-2", "ex100419a"),
    ("example-6-3", "ex14"),
    ("example-6-4", "ex100420a"),
    ("example-6-5", "ex100420b"),
    ("example-6-5-general(2,1,3)", "ex100420b"),
]

BY_ID = {c.id: c for c in REGISTRY}


def registered_tags() -> set:
    return {c.tag for c in REGISTRY} | {t for _, t in EXAMPLE_CHECKS}


# ------------------------------------------------------------------ reports

@dataclass
class SuiteReport:
    seed: int
    cases: int
    records: list = dc_field(default_factory=list)

    def summary(self) -> dict:
        out = {PASS: 0, FAIL: 0, SCOPE: 0}
        for r in self.records:
            out[r["verdict"]] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary()[FAIL] == 0

    def sort(self):
        self.records.sort(key=lambda r: (-1 if r["seed"] is None else r["seed"], r["check"]))

    def to_json(self) -> dict:
        return {"seed": self.seed, "cases": self.cases, "summary": self.summary(),
                "records": self.records}

    @classmethod
    def from_json(cls, obj) -> "SuiteReport":
        return cls(obj["seed"], obj["cases"], list(obj["records"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def table(self) -> str:
        rows = [("check", "tag", "seed", "verdict")]
        for r in self.records:
            rows.append((r["check"], r["tag"], "-" if r["seed"] is None else str(r["seed"]),
                         r["verdict"]))
        widths = [max(len(r[k]) for r in rows) for k in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        s = self.summary()
        lines.append(f"pass {s[PASS]}  fail {s[FAIL]}  scope {s[SCOPE]}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    return str(v)


def run_check(check: Check, inst: Instance) -> dict:
    try:
        verdict, witness = check.fn(inst)
    except ScopeError as exc:
        verdict, witness = SCOPE, {"reason": str(exc)}
    except Exception as exc:  # failures are data
        verdict, witness = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
    rec = {"check": check.id, "tag": check.tag, "seed": inst.spec.seed, "verdict": verdict,
           "witness": _jsonable(witness)}
    if verdict == FAIL:
        rec["instance"] = inst.to_json()
    return rec


def case_seeds(seed: int, cases: int):
    return [int(s) for s in
            np.random.SeedSequence(seed).generate_state(cases, dtype=np.uint32)]


def _run_case(s: int, check_ids, profile) -> list:
    inst = Instance(InstanceSpec(seed=s, **profile))
    return [run_check(BY_ID[c], inst) for c in check_ids]


def run_checks(check_ids, seed: int, cases: int, workers: int = 1, **profile) -> SuiteReport:
    """Run the named checks on ``cases`` instances derived from ``seed``.

    Cases are independent; with ``workers > 1`` they run in a process pool.
    Records are sorted afterwards, so the report does not depend on scheduling.
    """
    if cases < 1:
        raise ValueError("cases must be at least 1")
    rep = SuiteReport(seed, cases)
    check_ids = list(check_ids)
    seeds = case_seeds(seed, cases)
    if workers > 1 and cases > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for recs in pool.map(_run_case, seeds, [check_ids] * cases, [profile] * cases):
                rep.records.extend(recs)
    else:
        for s in seeds:
            rep.records.extend(_run_case(s, check_ids, profile))
    rep.sort()
    return rep


def run_examples(rep: SuiteReport, field=None):
    from .presets import run_preset
    for name, tag in EXAMPLE_CHECKS:
        try:
            lines = run_preset(name) if field is None else run_preset(name, field)
            verdict = PASS if all(ln["pass"] for ln in lines) else FAIL
            wit = {"lines": [{"line": ln["line"], "pass": ln["pass"]} for ln in lines]}
        except Exception as exc:
            verdict, wit = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        rep.records.append({"check": name, "tag": tag, "seed": None, "verdict": verdict,
                            "witness": _jsonable(wit)})


def run_suite(seed: int, cases: int, examples: bool = True, workers: int = 1,
              **profile) -> SuiteReport:
    """All registered checks on ``cases`` seeded instances, plus the example batteries.

    Instances are drawn from the small profile; the monomial-scope checks
    run on a parallel monomial instance for every case.
    """
    prof = dict(SMALL)
    prof.update(profile)
    rep = run_checks([c.id for c in REGISTRY], seed, cases, workers, **prof)
    mono = dict(prof)
    mono.update(MONOMIAL)
    scoped = ["ass-of-hom", "att-of-tensor", "att-equals-ass"]
    extra = run_checks(scoped, seed + 1, cases, workers, **mono)
    rep.records.extend(extra.records)
    if examples:
        run_examples(rep)
    rep.sort()
    return rep


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t
