"""Resolutions, Hom/tensor/Ext/Tor of finitely generated modules, and
torsion-type submodule operations.

Two routes coexist.  Module-valued results (``ext_tor_fg``, ``hom_tensor_fg``)
are computed as subquotients with Groebner bases.  When only dimensions
are needed and the second argument has finite length (or a bounded degree
window is given) the complexes are assembled degree by degree and ranks
are taken over the field.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .flm import FiniteLengthModule
from .groebner import ModuleOrder, kernel_mod
from .modules import (INFINITE, GradedModule, Pruned, ScopeError, prune, subquotient,
                      vec_component)
from .poly import monomials_of_degree
from .rings import Ideal


# ------------------------------------------------------------- resolutions

class Resolution:
    """Graded free resolution ``... -> F_2 -> F_1 -> F_0``.

    ``degrees[i]`` are the shifts of ``F_i``; ``maps[i]`` lists the columns of
    ``d_{i+1}: F_{i+1} -> F_i`` as vectors over ``F_i``.
    """

    def __init__(self, ring, degrees, maps, minimal=True):
        self.ring = ring
        self.degrees = degrees
        self.maps = maps
        self.minimal = minimal

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    @property
    def ranks(self):
        return [len(d) for d in self.degrees]

    def d(self, i: int):
        """Columns of ``d_i: F_i -> F_{i-1}`` (``i >= 1``)."""
        return self.maps[i - 1]

    def check(self) -> bool:
        """``d_i d_{i+1} = 0`` modulo ``I`` and, if minimal, no unit entries."""
        R, F = self.ring, self.ring.field
        z = (0,) * R.n
        from .modules import vec_apply, vec_nf_ideal
        for i in range(1, len(self.maps)):
            lower = self.maps[i - 1]
            for col in self.maps[i]:
                if vec_nf_ideal(R, vec_apply(F, col, lower)):
                    return False
        if self.minimal:
            for cols in self.maps:
                for col in cols:
                    if any(e == z for (_, e) in col):
                        return False
        return True

    def betti_table(self) -> dict:
        """``(i, degree) -> count``."""
        out = {}
        for i, ds in enumerate(self.degrees):
            for d in ds:
                out[(i, d)] = out.get((i, d), 0) + 1
        return out

    def to_json(self):
        S = self.ring.S
        maps = []
        for i, cols in enumerate(self.maps):
            rows = len(self.degrees[i])
            text = []
            for v in cols:
                entries = [dict() for _ in range(rows)]
                for (c, e), a in v.items():
                    entries[c][e] = a
                text.append([S.format(f) for f in entries])
            maps.append(text)
        return {"ranks": self.ranks, "degrees": self.degrees, "differentials": maps,
                "minimal": self.minimal}


def min_resolution(M: GradedModule, n_steps: int) -> Resolution:
    """Minimal graded free resolution through homological degree ``n_steps``."""
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative")
    cache = M.__dict__.setdefault("_resolution", None)
    if cache is not None and cache.length >= n_steps:
        return Resolution(M.ring, cache.degrees[: n_steps + 1], cache.maps[:n_steps], True)
    R, F = M.ring, M.field
    if cache is None:
        P = prune(M).module
        degrees = [list(P.degrees)]
        maps = []
        if n_steps >= 1:
            degrees.append([ModuleOrder(P.degrees).degree(r) for r in P.relations])
            maps.append([dict(r) for r in P.relations])
    else:
        degrees, maps = [list(d) for d in cache.degrees], [list(m) for m in cache.maps]
    while len(degrees) - 1 < n_steps:
        i = len(degrees) - 1
        cols = maps[i - 1]
        if not cols:
            degrees.append([])
            maps.append([])
            continue
        K = kernel_mod(F, R.n, cols, degrees[i], degrees[i - 1], (), R.gb)
        order = ModuleOrder(degrees[i])
        degrees.append([order.degree(v) for v in K])
        maps.append(K)
    res = Resolution(R, degrees, maps, True)
    M.__dict__["_resolution"] = res
    return res


# ------------------------------------------------- free modules tensored with M

def _blocks(shifts, M: GradedModule, sign: int):
    """Generators ``(l, j)`` of ``F (x) M`` (sign=+1) or ``Hom(F, M)`` (sign=-1)."""
    g = M.rank
    degs = [M.degrees[j] + sign * a for a in shifts for j in range(g)]
    rels = []
    for l in range(len(shifts)):
        for r in M.relations:
            rels.append({(l * g + c, e): a for (c, e), a in r.items()})
    return GradedModule(M.ring, degs, rels, check=False)


def tensor_free(shifts, M):
    return _blocks(shifts, M, +1)


def hom_free(shifts, M):
    return _blocks(shifts, M, -1)


def _poly_entry(col: dict, l: int) -> dict:
    return vec_component(col, l)


def tensor_map_images(cols, g: int):
    """Images of generators of ``F_src (x) M`` in ``F_tgt (x) M`` under ``d (x) 1``."""
    out = []
    for col in cols:
        for j in range(g):
            out.append({(l * g + j, e): a for (l, e), a in col.items()})
    return out


def hom_map_images(cols, n_tgt: int, g: int):
    """Images of generators of ``Hom(F_tgt, M)`` in ``Hom(F_src, M)`` under ``d^*``."""
    out = [dict() for _ in range(n_tgt * g)]
    for k, col in enumerate(cols):
        for (l, e), a in col.items():
            for j in range(g):
                out[l * g + j][(k * g + j, e)] = a
    return out


def homology(B: GradedModule, f_images=(), g_images=None, C: GradedModule | None = None) -> Pruned:
    """``ker(g) / (im(f) + relations)`` at ``B``; ``g_images=None`` means ``g = 0``."""
    R = B.ring
    if g_images is None or C is None or C.rank == 0:
        Z = [B.generator_vector(j) for j in range(B.rank)]
    else:
        Z = kernel_mod(R.field, R.n, g_images, B.degrees, C.degrees, C.relations, R.gb)
    return subquotient(R, B.degrees, Z, list(f_images) + list(B.relations))


def ext_tor_fg(i: int, M: GradedModule, M2: GradedModule, op: str = "ext") -> GradedModule:
    """``Ext^i(M, M2)`` or ``Tor_i(M, M2)`` as a (minimal) presentation."""
    if i < 0:
        raise ValueError("i must be non-negative")
    M.same_ring(M2)
    res = min_resolution(M, i + 1)
    g = M2.rank
    if op == "ext":
        B = hom_free(res.degrees[i], M2)
        f = hom_map_images(res.d(i), len(res.degrees[i - 1]), g) if i >= 1 else []
        gi = hom_map_images(res.d(i + 1), len(res.degrees[i]), g)
        C = hom_free(res.degrees[i + 1], M2)
        return homology(B, f, gi, C).module
    if op == "tor":
        B = tensor_free(res.degrees[i], M2)
        f = tensor_map_images(res.d(i + 1), g)
        if i >= 1:
            C = tensor_free(res.degrees[i - 1], M2)
            gi = tensor_map_images(res.d(i), g)
        else:
            C, gi = None, None
        return homology(B, f, gi, C).module
    raise ValueError(f"unknown op {op!r}")


def hom_tensor_fg(M: GradedModule, M2: GradedModule, op: str = "hom") -> GradedModule:
    M.same_ring(M2)
    if op == "tensor":
        P, Q = prune(M).module, prune(M2).module
        g2 = Q.rank
        degs = [a + b for a in P.degrees for b in Q.degrees]
        rels = []
        for r in P.relations:
            for j in range(g2):
                rels.append({(c * g2 + j, e): a for (c, e), a in r.items()})
        for c in range(P.rank):
            for r in Q.relations:
                rels.append({(c * g2 + j, e): a for (j, e), a in r.items()})
        return prune(GradedModule(M.ring, degs, rels, check=False)).module
    if op == "hom":
        return ext_tor_fg(0, M, M2, "ext")
    raise ValueError(f"unknown op {op!r}")


# ----------------------------------------------------- degreewise machinery

class DegreewiseTarget:
    """Uniform view of ``W_d`` and the action of polynomials, for either a
    :class:`FiniteLengthModule` or a :class:`GradedModule`."""

    def __init__(self, W):
        self.W = W
        self.fl = isinstance(W, FiniteLengthModule)
        self._act = {}

    @property
    def field(self):
        return self.W.field

    def dim(self, d: int) -> int:
        return self.W.hilbert(d)

    def degrees(self):
        """Support for finite-length targets, else ``None``."""
        if self.fl:
            return sorted(self.W.by_degree)
        if self.W.is_finite_length():
            return sorted(self.W.hilbert_table())
        return None

    def act(self, f: dict, d: int):
        """Matrix ``W_d -> W_{d + deg f}`` of multiplication by ``f``."""
        key = (tuple(sorted(f.items())), d)
        if key not in self._act:
            F = self.field
            if not f:
                self._act[key] = None
            elif self.fl:
                df = sum(next(iter(f)))
                P = self.W.poly_op(f)
                self._act[key] = P[np.ix_(self.W.idx(d + df), self.W.idx(d))]
            else:
                self._act[key] = self.W.mult_matrix(f, d)
            if self._act[key] is not None and self._act[key].size == 0:
                self._act[key] = la.zeros(F, *self._act[key].shape)
        return self._act[key]


def _block_matrix(F, row_dims, col_dims, entries):
    """Assemble from ``{(r, c): matrix}`` blocks."""
    ro = np.concatenate([[0], np.cumsum(row_dims)]).astype(int)
    co = np.concatenate([[0], np.cumsum(col_dims)]).astype(int)
    M = la.zeros(F, int(ro[-1]), int(co[-1]))
    for (r, c), B in entries.items():
        if B is None or B.size == 0:
            continue
        blk = M[ro[r]:ro[r + 1], co[c]:co[c + 1]]
        M[ro[r]:ro[r + 1], co[c]:co[c + 1]] = la.add(F, blk, B)
    return M


def hom_cochain(res: Resolution, i: int, T: DegreewiseTarget, delta: int):
    """``delta^i : Hom(F_i, W)_delta -> Hom(F_{i+1}, W)_delta`` and the block dims."""
    F = T.field
    src = res.degrees[i] if i < len(res.degrees) else []
    tgt = res.degrees[i + 1] if i + 1 < len(res.degrees) else []
    cdims = [T.dim(a + delta) for a in src]
    rdims = [T.dim(b + delta) for b in tgt]
    entries = {}
    if tgt:
        for k, col in enumerate(res.d(i + 1)):
            for l in range(len(src)):
                f = _poly_entry(col, l)
                if f:
                    entries[(k, l)] = T.act(f, src[l] + delta)
    return _block_matrix(F, rdims, cdims, entries), cdims, rdims


def tensor_chain(res: Resolution, i: int, T: DegreewiseTarget, delta: int):
    """``d_i (x) 1 : (F_i (x) W)_delta -> (F_{i-1} (x) W)_delta``."""
    F = T.field
    src = res.degrees[i] if i < len(res.degrees) else []
    tgt = res.degrees[i - 1] if i >= 1 else []
    cdims = [T.dim(delta - a) for a in src]
    rdims = [T.dim(delta - b) for b in tgt]
    entries = {}
    if i >= 1 and src:
        for k, col in enumerate(res.d(i)):
            for l in range(len(tgt)):
                f = _poly_entry(col, l)
                if f:
                    entries[(l, k)] = T.act(f, delta - src[k])
    return _block_matrix(F, rdims, cdims, entries), cdims, rdims


def _deltas_hom(res, i, T, window):
    degs = T.degrees()
    if degs is None:
        if window is None:
            raise ScopeError("a degree window is needed for an infinite-length target")
        return range(window[0], window[1] + 1)
    return sorted({w - a for w in degs for a in res.degrees[i]}) if i < len(res.degrees) else []


def _deltas_tensor(res, i, T, window):
    degs = T.degrees()
    if degs is None:
        if window is None:
            raise ScopeError("a degree window is needed for an infinite-length target")
        return range(window[0], window[1] + 1)
    return sorted({w + a for w in degs for a in res.degrees[i]}) if i < len(res.degrees) else []


def ext_dims(res: Resolution, i: int, W, window=None) -> dict:
    """``delta -> dim Ext^i(M, W)_delta`` from a resolution of ``M`` (needs ``F_{i+1}``)."""
    T = W if isinstance(W, DegreewiseTarget) else DegreewiseTarget(W)
    F = T.field
    out = {}
    for delta in _deltas_hom(res, i, T, window):
        A, cd, _ = hom_cochain(res, i, T, delta)
        n = sum(cd)
        if n == 0:
            continue
        rk_out = la.rank(F, A)
        if i >= 1:
            B, _, _ = hom_cochain(res, i - 1, T, delta)
            rk_in = la.rank(F, B)
        else:
            rk_in = 0
        dim = n - rk_out - rk_in
        if dim:
            out[delta] = dim
    return out


def tor_dims(res: Resolution, i: int, W, window=None) -> dict:
    """``delta -> dim Tor_i(M, W)_delta`` (needs ``F_{i+1}``)."""
    T = W if isinstance(W, DegreewiseTarget) else DegreewiseTarget(W)
    F = T.field
    out = {}
    for delta in _deltas_tensor(res, i, T, window):
        A, cd, _ = tensor_chain(res, i, T, delta)
        n = sum(cd)
        if n == 0:
            continue
        rk_out = la.rank(F, A) if i >= 1 else 0
        B, _, _ = tensor_chain(res, i + 1, T, delta)
        rk_in = la.rank(F, B)
        dim = n - rk_out - rk_in
        if dim:
            out[delta] = dim
    return out


def ext_dim(M: GradedModule, W, i: int, window=None) -> int:
    return sum(ext_dims(min_resolution(M, i + 1), i, W, window).values())


def tor_dim(M: GradedModule, W, i: int, window=None) -> int:
    return sum(tor_dims(min_resolution(M, i + 1), i, W, window).values())


# ------------------------------------------------------- Betti and Bass numbers

def betti_bass_numbers(M, i_max: int):
    """``(betti, bass)`` for ``i <= i_max`` using a resolution of ``k``.

    Betti numbers are cross-checked against the ranks of a minimal
    resolution of ``M`` itself when ``M`` is given by a presentation.
    """
    if isinstance(M, FiniteLengthModule):
        R = M.ring
        k = GradedModule.residue_field(R)
        resk = min_resolution(k, i_max + 1)
        T = DegreewiseTarget(M)
        betti = [sum(tor_dims(resk, i, T).values()) for i in range(i_max + 1)]
        bass = [sum(ext_dims(resk, i, T).values()) for i in range(i_max + 1)]
        own = min_resolution(M.to_graded(), i_max).ranks
    else:
        R = M.ring
        k = GradedModule.residue_field(R)
        betti, bass = [], []
        for i in range(i_max + 1):
            betti.append(_len(ext_tor_fg(i, k, M, "tor")))
            bass.append(_len(ext_tor_fg(i, k, M, "ext")))
        own = min_resolution(M, i_max).ranks
    own = own + [0] * (i_max + 1 - len(own))
    if own[: i_max + 1] != betti:
        raise AssertionError(f"Betti cross-check failed: {own} vs {betti}")
    return betti, bass


def _len(M: GradedModule) -> int:
    L = M.length()
    if L == INFINITE:
        raise ScopeError("expected a finite-length module")
    return L


def length_hilbert(M):
    """``(length or "infinite", hilbert table)``."""
    if isinstance(M, FiniteLengthModule):
        return M.dim, M.hilbert_table()
    L = M.length()
    return L, M.hilbert_table()


# --------------------------------------------------------- torsion operations

def _power_gens(R, a: Ideal | None, s: int):
    if a is None:
        return [{e: R.field.one} for e in monomials_of_degree(R.n, s)]
    return [g.coeffs for g in a.power(s).generators]


def colon_vectors(M: GradedModule, sub, polys) -> list:
    """Generators of ``{v in F : f v in <sub> + I F  for all f in polys}``."""
    R, F = M.ring, M.field
    g = M.rank
    polys = [f for f in polys if f]
    if not polys:
        return [M.generator_vector(j) for j in range(g)]
    D = max(sum(next(iter(f))) for f in polys)
    src = [d + D for d in M.degrees]
    tgt = []
    for f in polys:
        df = sum(next(iter(f)))
        tgt += [d + D - df for d in M.degrees]
    images = []
    for j in range(g):
        v = {}
        for k, f in enumerate(polys):
            for e, a in f.items():
                v[(k * g + j, e)] = a
        images.append(v)
    tsub = []
    for k in range(len(polys)):
        for r in sub:
            tsub.append({(k * g + c, e): a for (c, e), a in r.items()})
    return kernel_mod(F, R.n, images, src, tgt, tsub, R.gb)


def colon(M: GradedModule, a: Ideal | None = None, s: int = 1) -> Pruned:
    """``(0 :_M a^s)`` presented with its own generators (``a=None`` means ``m``)."""
    Z = colon_vectors(M, M.relations, _power_gens(M.ring, a, s))
    return subquotient(M.ring, M.degrees, Z, M.relations)


def scale(M: GradedModule, a: Ideal | None = None, s: int = 1) -> Pruned:
    """``a^s M`` as a submodule."""
    Z = [{(j, e): c for e, c in f.items()} for j in range(M.rank)
         for f in _power_gens(M.ring, a, s)]
    return subquotient(M.ring, M.degrees, Z, M.relations)


def quotient_by_scale(M: GradedModule, a: Ideal | None = None, s: int = 1) -> GradedModule:
    """``M / a^s M``."""
    extra = [{(j, e): c for e, c in f.items()} for j in range(M.rank)
             for f in _power_gens(M.ring, a, s)]
    return GradedModule(M.ring, M.degrees, list(M.relations) + extra, check=False)


class TorsionChain:
    """The chain ``U_t = (0 :_M m^t)`` (as submodules of the free cover)."""

    def __init__(self, M: GradedModule):
        self.M = M
        self.stages = [list(M.relations)]
        self.stable_at = None

    def _contained(self, A, B):
        from .groebner import GroebnerBasis, spread_ideal
        G = GroebnerBasis(self.M.field, ModuleOrder(self.M.degrees))
        extra, tags = spread_ideal(self.M.ring.gb, range(self.M.rank))
        G.run(free=extra + list(B), free_tags=tags + [None] * len(B))
        return all(G.contains(v) for v in A)

    def stage(self, t: int):
        R = self.M.ring
        mgens = _power_gens(R, None, 1)
        while len(self.stages) <= t:
            if self.stable_at is not None:
                self.stages.append(self.stages[-1])
                continue
            nxt = colon_vectors(self.M, self.stages[-1], mgens)
            nxt = list(self.M.relations) + nxt
            if self._contained(nxt, self.stages[-1]):
                self.stable_at = len(self.stages) - 1
                self.stages.append(self.stages[-1])
            else:
                self.stages.append(nxt)
        return self.stages[t]

    def stabilization(self) -> int:
        t = 0
        while self.stable_at is None:
            t += 1
            self.stage(t)
        return self.stable_at

    def submodule(self, t: int) -> Pruned:
        return subquotient(self.M.ring, self.M.degrees, self.stage(t), self.M.relations)


def torsion_chain(M: GradedModule) -> TorsionChain:
    ch = M.__dict__.get("_torsion_chain")
    if ch is None:
        ch = TorsionChain(M)
        M.__dict__["_torsion_chain"] = ch
    return ch


def gamma_m(M: GradedModule):
    """``(Gamma_m(M), n)`` with ``n`` the least exponent with ``m^n Gamma_m(M) = 0``."""
    ch = torsion_chain(M)
    t = ch.stabilization()
    return ch.submodule(t).module, t


def submodule_ops(M: GradedModule, a: Ideal | None, op: str, s: int = 1):
    if op == "colon":
        return colon(M, a, s).module
    if op == "scale":
        return scale(M, a, s).module
    if op == "quotient_by_scale":
        return quotient_by_scale(M, a, s)
    if op == "gamma_m":
        return gamma_m(M)
    raise ValueError(f"unknown submodule op {op!r}")


def socle(M) -> FiniteLengthModule:
    """``(0 :_M m)`` as a finite-length module."""
    if isinstance(M, FiniteLengthModule):
        return M.annihilated_by_power(1)
    return colon(M, None, 1).module.to_flm()


__all__ = [
    "Resolution", "min_resolution", "ext_tor_fg", "hom_tensor_fg", "ext_dims", "tor_dims",
    "ext_dim", "tor_dim", "betti_bass_numbers", "length_hilbert", "colon", "scale",
    "quotient_by_scale", "gamma_m", "submodule_ops", "socle", "TorsionChain", "torsion_chain",
    "DegreewiseTarget", "homology",
]
