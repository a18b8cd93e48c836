"""Artinian modules as formal duals ``D(N)`` and the mixed functors.

An artinian module is never materialised: ``A = D(N)`` is stored through
its finitely generated witness ``N``.  Finite pieces of ``A`` are explicit:
``(0 :_A m^s) = D(N / m^s N)`` and ``A / m^s A = D((0 :_N m^s))``.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .flm import FiniteLengthModule, conjugate_certificate
from .homology import (DegreewiseTarget, _block_matrix, ext_tor_fg, hom_cochain, min_resolution,
                       quotient_by_scale, torsion_chain)
from .modules import GradedModule, ScopeError, vec_apply, vec_nf_ideal


class ArtinianModule:
    """``A = D(N)``; ``shift`` only records a display re-indexing."""

    def __init__(self, dual_of: GradedModule, shift: int = 0):
        self.dual_of = dual_of
        self.shift = int(shift)

    @property
    def ring(self):
        return self.dual_of.ring

    @property
    def field(self):
        return self.dual_of.field

    def witness(self) -> GradedModule:
        return self.dual_of

    def is_finite_length(self) -> bool:
        return self.dual_of.is_finite_length()

    def to_flm(self) -> FiniteLengthModule:
        """Explicit form when the witness has finite length."""
        return dualize_finite_length(self.dual_of.to_flm())

    def length(self):
        return self.dual_of.length()

    def to_json(self):
        return {"dual_of": self.dual_of.to_json(), "shift": self.shift}

    @classmethod
    def from_json(cls, obj, ring=None):
        return cls(GradedModule.from_json(obj["dual_of"], ring), obj.get("shift", 0))

    def __repr__(self):
        return f"ArtinianModule(D of {self.dual_of!r})"


def artinian_dual(N: GradedModule) -> ArtinianModule:
    return ArtinianModule(N)


def dual_witness(A: ArtinianModule) -> GradedModule:
    return A.dual_of


def dualize_finite_length(V: FiniteLengthModule) -> FiniteLengthModule:
    """Transpose operators, negate degrees; ``shift`` moves the result to degrees >= 0."""
    D = V.dual()
    D.shift = -min(D.degrees) if D.degrees else 0
    return D


def injective_hull(R) -> ArtinianModule:
    """``E = D(R)``."""
    return ArtinianModule(GradedModule.free(R, [0]))


# ------------------------------------------------------------- finite pieces

def socle_stage(A: ArtinianModule, s: int) -> FiniteLengthModule:
    """``(0 :_A m^s) = D(N / m^s N)``."""
    if s < 0:
        raise ValueError("s must be non-negative")
    return dualize_finite_length(quotient_by_scale(A.dual_of, None, s).to_flm())


def top_quotient(A: ArtinianModule, s: int) -> FiniteLengthModule:
    """``A / m^s A = D((0 :_N m^s))``."""
    sub = torsion_chain(A.dual_of).submodule(s).module
    return dualize_finite_length(sub.to_flm())


def stabilization_exponent(A) -> int:
    """Least ``t`` with ``m^t A = m^{t+1} A``.

    For ``A = D(N)`` this is read off the chain ``(0 :_N m^t)``; for a
    finite-length module it is the least ``t`` with ``m^t V = 0``.
    """
    if isinstance(A, ArtinianModule):
        return torsion_chain(A.dual_of).stabilization()
    if isinstance(A, GradedModule):
        if not A.is_finite_length():
            raise ScopeError("stabilization exponent needs an artinian or finite-length module")
        A = A.to_flm()
    t = 0
    while A.power_image(t).shape[1] and la.rank(A.field, A.power_image(t)):
        t += 1
    return t


def torsion_exponent(N: GradedModule) -> int:
    """Least ``n`` with ``m^n Gamma_m(N) = 0``."""
    return torsion_chain(N).stabilization()


def hom_artinian_to_fg(A: ArtinianModule, N2: GradedModule) -> FiniteLengthModule:
    """``Hom(A, N2) = Hom(A / m^s A, (0 :_{N2} m^s))`` with ``s = min(n, t)``."""
    A.dual_of.same_ring(N2)
    n = torsion_exponent(N2)
    t = stabilization_exponent(A)
    s = min(n, t)
    src = top_quotient(A, s)
    tgt = torsion_chain(N2).submodule(s).module.to_flm()
    H = src.hom(tgt)
    H.exponents = {"n": n, "t": t, "s": s}
    return H


def _as_flm(L) -> FiniteLengthModule:
    if isinstance(L, FiniteLengthModule):
        return L
    if isinstance(L, ArtinianModule):
        return L.to_flm()
    if not L.is_finite_length():
        raise ScopeError("tensor with non-torsion noetherian module: use "
                         "tor_fg_with_artinian at i = 0 via duality")
    return L.to_flm()


def tensor_with_artinian(A: ArtinianModule, L) -> FiniteLengthModule:
    """``A (x) L = (A / m^t A) (x) (L / m^t L)`` for artinian or finite-length ``L``."""
    tA = stabilization_exponent(A)
    if isinstance(L, ArtinianModule):
        A.dual_of.same_ring(L.dual_of)
        t = max(tA, stabilization_exponent(L))
        X, Y = top_quotient(A, t), top_quotient(L, t)
    else:
        V = _as_flm(L)
        t = max(tA, stabilization_exponent(V))
        X, Y = top_quotient(A, t), V.mod_power(t)
    T = X.tensor(Y)
    T.exponent = t
    return T


def ext_artinian_pair(i: int, A: ArtinianModule, A2: ArtinianModule) -> GradedModule:
    """``Ext^i(A, A2) = Ext^i(N_{A2}, N_A)``: a finitely generated module."""
    return ext_tor_fg(i, A2.dual_of, A.dual_of, "ext")


def mixed_ext_tor(i: int, N: GradedModule, A2: ArtinianModule, op: str) -> ArtinianModule:
    """``Ext^i(N, D N2) = D Tor_i(N, N2)`` and ``Tor_i(N, D N2) = D Ext^i(N, N2)``."""
    N2 = A2.dual_of
    if op == "ext_fg_to_artinian":
        return ArtinianModule(ext_tor_fg(i, N, N2, "tor"))
    if op == "tor_fg_with_artinian":
        return ArtinianModule(ext_tor_fg(i, N, N2, "ext"))
    raise ValueError(f"unknown op {op!r}")


def iso_up_to_shift(V: FiniteLengthModule, W: FiniteLengthModule) -> bool:
    """Isomorphism certificate after aligning the lowest degrees."""
    if V.dim != W.dim:
        return False
    if V.dim == 0:
        return True
    return conjugate_certificate(V.shifted(min(W.degrees) - min(V.degrees)), W)


# --------------------------------------------------------------- stages

class StageSequence:
    """Finite piece of a direct (``"direct"``) or inverse (``"inverse"``) system."""

    def __init__(self, stages, transitions, direction, dims, detected_limit=None,
                 certificate=None, op=None, i=None):
        self.stages = stages
        self.transitions = transitions
        self.direction = direction
        self.dims = dims
        self.detected_limit = detected_limit
        self.certificate = certificate
        self.op, self.i = op, i

    @property
    def lengths(self):
        return [sum(d.values()) for d in self.dims]

    def transition_ranks(self):
        return [sum(la.rank(self.stages[0].field, M) for M in T.values() if M.size)
                for T in self.transitions]

    def zero_transitions(self) -> bool:
        """Every transition in the window is the zero map, so the limit vanishes."""
        return all(r == 0 for r in self.transition_ranks())

    def composite_rank(self, a: int, b: int) -> int:
        """Rank of the composite transition between stages ``a < b`` (1-based).

        Direct systems map stage ``a`` into stage ``b``; inverse systems map
        ``b`` onto ``a``.  Summed over degrees.
        """
        if not 1 <= a < b <= len(self.stages):
            raise ValueError("need 1 <= a < b <= number of stages")
        F = self.stages[0].field
        ks = list(range(a - 1, b - 1))
        if self.direction == "inverse":
            ks.reverse()
        total = 0
        for d in set(self.dims[a - 1]) | set(self.dims[b - 1]):
            M = None
            for k in ks:
                T = self.transitions[k].get(d)
                if T is None or not T.size:
                    M = None
                    break
                M = T if M is None else la.matmul(F, T, M)
            if M is not None:
                total += la.rank(F, M)
        return total

    def injective(self):
        """Per transition (direct systems: source stage -> target stage)."""
        out = []
        for k, T in enumerate(self.transitions):
            src = self.lengths[k] if self.direction == "direct" else self.lengths[k + 1]
            out.append(self.transition_ranks()[k] == src)
        return out

    def to_json(self):
        F = self.stages[0].field if self.stages else None

        def mat(M):
            return [[F.format(a) for a in row] for row in M.tolist()]

        return {
            "op": self.op, "i": self.i, "direction": self.direction,
            "stages": [{"s": s + 1, "hilbert": {str(k): v for k, v in sorted(d.items())},
                        "length": sum(d.values())} for s, d in enumerate(self.dims)],
            "transitions": [{str(k): mat(M) for k, M in sorted(T.items())} for T in self.transitions],
            "detected_limit": None if self.detected_limit is None else {
                "hilbert": {str(k): v for k, v in self.detected_limit.hilbert_table().items()},
                "certificate": self.certificate},
        }


class _FreeDeg:
    """Degree pieces of a graded free ``R``-module (standard-monomial bases)."""

    def __init__(self, R, shifts):
        self.R, self.shifts = R, list(shifts)
        self._b = {}

    def basis(self, d):
        if d not in self._b:
            B = [(k, m) for k, a in enumerate(self.shifts) for m in self.R.std_monomials(d - a)]
            self._b[d] = (B, {t: i for i, t in enumerate(B)})
        return self._b[d]

    def coords(self, v, d):
        B, pos = self.basis(d)
        x = la.zeros(self.R.field, len(B), 1)[:, 0]
        for t, a in vec_nf_ideal(self.R, v).items():
            x[pos[t]] = a
        return x

    def vector(self, x, d):
        B, _ = self.basis(d)
        return {t: a for t, a in zip(B, x) if a}


def _map_matrix(R, cols, src: _FreeDeg, tgt: _FreeDeg, d):
    """Matrix of ``e_k -> cols[k]`` from ``src_d`` to ``tgt_d``."""
    F = R.field
    B, _ = src.basis(d)
    Bt, _ = tgt.basis(d)
    M = la.zeros(F, len(Bt), len(B))
    for j, (k, m) in enumerate(B):
        v = {(c, tuple(a + b for a, b in zip(e, m))): x for (c, e), x in cols[k].items()}
        M[:, j] = tgt.coords(v, d)
    return M


def lift_chain_map(V: FiniteLengthModule, W: FiniteLengthModule, phi, depth: int):
    """Lift ``phi: V -> W`` (matrix ``dim W x dim V``) to minimal resolutions.

    Returns ``(resV, resW, maps)`` with ``maps[j]`` the images of the
    generators of ``F_j(V)`` as vectors over ``F_j(W)``.
    """
    R, F = V.ring, V.field
    PV, gV = V.presentation()
    PW, gW = W.presentation()
    resV, resW = min_resolution(PV, depth), min_resolution(PW, depth)
    G0 = _FreeDeg(R, resW.degrees[0])
    maps = []
    # degree zero: solve pi_W(u) = phi(b_l)
    cols0 = []
    for l, j in enumerate(gV):
        a = V.degrees[j]
        B, _ = G0.basis(a)
        A = la.zeros(F, W.hilbert(a), len(B))
        tgt_idx = W.idx(a)
        for col, (k, m) in enumerate(B):
            A[:, col] = W.mono_op(m)[tgt_idx, gW[k]]
        rhs = phi[tgt_idx, j]
        u = la.solve(F, A, rhs)
        if u is None:
            raise ArithmeticError("map does not lift in degree zero")
        cols0.append(G0.vector(u, a))
    maps.append(cols0)
    for jdeg in range(1, depth + 1):
        if jdeg >= len(resV.degrees) or not resV.degrees[jdeg]:
            maps.append([])
            continue
        Gj = _FreeDeg(R, resW.degrees[jdeg])
        Gj1 = _FreeDeg(R, resW.degrees[jdeg - 1])
        dW = resW.d(jdeg) if jdeg < len(resW.degrees) else []
        cols = []
        for l, col in enumerate(resV.d(jdeg)):
            a = resV.degrees[jdeg][l]
            y = vec_nf_ideal(R, vec_apply(F, col, maps[jdeg - 1]))
            if not y:
                cols.append({})
                continue
            D = _map_matrix(R, dW, Gj, Gj1, a) if dW else la.zeros(F, len(Gj1.basis(a)[0]), 0)
            u = la.solve(F, D, Gj1.coords(y, a))
            if u is None:
                raise ArithmeticError("chain map does not lift")
            cols.append(Gj.vector(u, a))
        maps.append(cols)
    return resV, resW, maps


def _homology_data(res, i, T, delta):
    """Cycle space, boundary projection and a homology basis in degree ``delta``."""
    F = T.field
    A, cd, _ = hom_cochain(res, i, T, delta)
    n = sum(cd)
    Z = la.nullspace(F, A) if A.shape[0] else la.identity(F, n)
    if i >= 1:
        Bm, _, _ = hom_cochain(res, i - 1, T, delta)
    else:
        Bm = la.zeros(F, n, 0)
    Q, _ = la.quotient_projection(F, Bm, n)
    H = la.column_basis(F, la.matmul(F, Q, Z)) if Z.shape[1] else la.zeros(F, Q.shape[0], 0)
    return Z, Q, H


def ext_map(resV, resW, maps, i, T, delta):
    """Matrix of ``Ext^i(W, T)_delta -> Ext^i(V, T)_delta`` induced by the chain map."""
    F = T.field
    ZW, QW, HW = _homology_data(resW, i, T, delta)
    ZV, QV, HV = _homology_data(resV, i, T, delta)
    if HW.shape[1] == 0 or HV.shape[1] == 0:
        return la.zeros(F, HV.shape[1], HW.shape[1])
    src = resW.degrees[i]
    tgt = resV.degrees[i]
    cdims = [T.dim(a + delta) for a in src]
    rdims = [T.dim(a + delta) for a in tgt]
    entries = {}
    for l, col in enumerate(maps[i]):
        comps = {}
        for (k, e), a in col.items():
            comps.setdefault(k, {})[e] = a
        for k, f in comps.items():
            entries[(l, k)] = T.act(f, src[k] + delta)
    P = _block_matrix(F, rdims, cdims, entries)
    # lift homology basis of W to cycles: HW columns live in QW coordinates
    lifts = []
    for c in range(HW.shape[1]):
        z = la.solve(F, la.matmul(F, QW, ZW), HW[:, c])
        lifts.append(la.matmul(F, ZW, z.reshape(-1, 1))[:, 0])
    L = np.stack(lifts, axis=1)
    img = la.matmul(F, QV, la.matmul(F, P, L))
    return la.solve(F, HV, img)


def _ext_stage_module(V: FiniteLengthModule, N: GradedModule, i: int) -> GradedModule:
    return ext_tor_fg(i, V.to_graded(), N, "ext")


def _stage_maps(A: ArtinianModule, s_max: int):
    """``V_s = (0 :_A m^s)`` for ``s = 1..s_max+1`` with inclusions ``V_s -> V_{s+1}``."""
    N = A.dual_of
    P = [quotient_by_scale(N, None, s).to_flm() for s in range(1, s_max + 2)]
    Vs = [dualize_finite_length(p) for p in P]
    incl = []
    for s in range(len(P) - 1):
        big, small = P[s + 1], P[s]
        proj = la.zeros(N.field, small.dim, big.dim)
        for j, t in enumerate(big.source_basis):
            proj[:, j] = small.coords_of({t: N.field.one})
        incl.append(proj.T.copy())
    return Vs, incl


def hard_direction_stages(i: int, A: ArtinianModule, target, op: str, s_max: int) -> StageSequence:
    """Finite stages of ``Ext^i(A, N')`` (inverse) or ``Tor_i(A, A')`` (direct)."""
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    if op == "ext_artinian_to_fg":
        N, src = target, A
    elif op == "tor_artinian_pair":
        if not isinstance(target, ArtinianModule):
            raise ScopeError("tor_artinian_pair needs an artinian second argument")
        N, src = A.dual_of, target
    else:
        raise ValueError(f"unknown op {op!r}")
    Vs, incl = _stage_maps(src, s_max)
    T = DegreewiseTarget(N)
    ext_mods = [_ext_stage_module(Vs[s], N, i) for s in range(s_max)]
    windows = []
    for M in ext_mods:
        rng = M.degree_range() if M.is_finite_length() else None
        if not M.is_finite_length():
            raise ArithmeticError("stage Ext module unexpectedly of infinite length")
        windows.append(rng)
    dims = [{d: M.hilbert(d) for d in range(w[0], w[1] + 1) if M.hilbert(d)} if w else {}
            for M, w in zip(ext_mods, windows)]
    trans = []
    for s in range(s_max - 1):
        resV, resW, maps = lift_chain_map(Vs[s], Vs[s + 1], incl[s], i + 1)
        ds = sorted(set(dims[s]) | set(dims[s + 1]))
        Tm = {}
        for delta in ds:
            Tm[delta] = ext_map(resV, resW, maps, i, T, delta)
        trans.append(Tm)
    if op == "ext_artinian_to_fg":
        stages = ext_mods
        direction = "inverse"
        sdims = dims
        trans_out = trans
    else:
        stages = [dualize_finite_length(M.to_flm()) for M in ext_mods]
        direction = "direct"
        sdims = [{-d: v for d, v in dm.items()} for dm in dims]
        trans_out = [{-d: M.T.copy() for d, M in Tm.items()} for Tm in trans]
    seq = StageSequence(stages, trans_out, direction, sdims, op=op, i=i)
    _detect_limit(seq)
    return seq


def _detect_limit(seq: StageSequence):
    F = seq.stages[0].field if seq.stages else None
    isos = []
    for k, T in enumerate(seq.transitions):
        ok = seq.dims[k] == seq.dims[k + 1]
        if ok:
            for d, M in T.items():
                if M.shape[0] != M.shape[1] or (M.size and la.rank(F, M) != M.shape[0]):
                    ok = False
                    break
        isos.append(ok)
    s0 = None
    for k in range(len(isos) - 1, -1, -1):
        if isos[k]:
            s0 = k
        else:
            break
    if s0 is not None:
        lim = seq.stages[s0]
        if isinstance(lim, GradedModule):
            lim = lim.to_flm()
        seq.detected_limit = lim
        seq.certificate = {"from_stage": s0 + 1, "through_stage": len(seq.stages),
                           "transitions": "bijective in every degree"}
