"""Finite-length graded modules as explicit vector spaces with operators.

``V`` has a homogeneous basis ``b_0..b_{N-1}`` (``degrees[j] = deg b_j``)
and one matrix per variable, ``ops[i][:, j] = coordinates of x_i * b_j``.
Degrees may be negative (graded duals live in negative degrees).
"""

from __future__ import annotations

from collections import Counter
from functools import cached_property

import numpy as np

from . import linalg as la
from .modules import GradedModule, ScopeError
from .poly import monomials_of_degree, unit


class FiniteLengthModule:
    def __init__(self, ring, degrees, ops, check=False):
        self.ring = ring
        self.degrees = [int(d) for d in degrees]
        F = ring.field
        N = len(self.degrees)
        self.ops = [np.array(X, dtype=la.dtype_for(F)).reshape(N, N) if N else la.zeros(F, 0, 0)
                    for X in ops]
        if len(self.ops) != ring.n:
            raise ValueError("need one operator per variable")
        self._mono = {}
        if check:
            self.validate()

    # -- basics -------------------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def length(self) -> int:
        return self.dim

    @cached_property
    def by_degree(self) -> dict:
        out = {}
        for j, d in enumerate(self.degrees):
            out.setdefault(d, []).append(j)
        return out

    def idx(self, d: int):
        return self.by_degree.get(d, [])

    def hilbert_table(self) -> dict:
        return dict(sorted(Counter(self.degrees).items()))

    def hilbert(self, d: int) -> int:
        return len(self.idx(d))

    def validate(self):
        F = self.field
        X = self.ops
        for i in range(len(X)):
            for j in range(i + 1, len(X)):
                if not la.is_zero(la.sub(F, la.matmul(F, X[i], X[j]), la.matmul(F, X[j], X[i]))):
                    raise ValueError("operators do not commute")
        deg = np.array(self.degrees)
        for Xi in X:
            rows, cols = np.nonzero(Xi != 0)
            if np.any(deg[rows] != deg[cols] + 1):
                raise ValueError("operator is not of degree one")
        return True

    def mono_op(self, e):
        """Matrix of ``x^e``."""
        e = tuple(e)
        if e not in self._mono:
            F = self.field
            if sum(e) == 0:
                M = la.identity(F, self.dim)
            else:
                i = next(k for k, v in enumerate(e) if v)
                M = la.matmul(F, self.ops[i], self.mono_op(tuple(v - (k == i) for k, v in enumerate(e))))
            self._mono[e] = M
        return self._mono[e]

    def poly_op(self, f: dict):
        F = self.field
        M = la.zeros(F, self.dim, self.dim)
        for e, c in f.items():
            M = la.add(F, M, la.scale(F, c, self.mono_op(e)))
        return M

    def block(self, M, d_out: int, d_in: int):
        return M[np.ix_(self.idx(d_out), self.idx(d_in))]

    @cached_property
    def m_image(self):
        """Columns spanning ``m V``."""
        F = self.field
        if not self.ops or self.dim == 0:
            return la.zeros(F, self.dim, 0)
        return np.concatenate(self.ops, axis=1)

    def generator_indices(self):
        """Basis vectors completing ``m V`` (lowest degree first)."""
        cand = sorted(range(self.dim), key=lambda j: (self.degrees[j], j))
        return la.complement_indices(self.field, self.m_image, cand)

    def num_generators(self) -> int:
        return self.dim - la.rank(self.field, self.m_image)

    def socle_dim(self) -> int:
        F = self.field
        if self.dim == 0:
            return 0
        stacked = np.concatenate(self.ops, axis=0) if self.ops else la.zeros(F, 0, self.dim)
        return self.dim - la.rank(F, stacked)

    def shifted(self, k: int) -> "FiniteLengthModule":
        return FiniteLengthModule(self.ring, [d + k for d in self.degrees], self.ops)

    # -- constructions ------------------------------------------------------
    @classmethod
    def from_graded(cls, M: GradedModule) -> "FiniteLengthModule":
        if not M.is_finite_length():
            raise ScopeError("module does not have finite length")
        rng = M.degree_range()
        F = M.field
        n = M.ring.n
        if rng is None:
            return cls(M.ring, [], [la.zeros(F, 0, 0) for _ in range(n)])
        basis, degs = [], []
        for d in range(rng[0], rng[1] + 1):
            for t in M.std_basis(d):
                basis.append(t)
                degs.append(d)
        pos = {t: k for k, t in enumerate(basis)}
        ops = []
        for i in range(n):
            X = la.zeros(F, len(basis), len(basis))
            u = unit(n, i)
            for j, (c, e) in enumerate(basis):
                for t, a in M.nf({(c, tuple(a_ + b for a_, b in zip(e, u))): F.one}).items():
                    X[pos[t], j] = a
            ops.append(X)
        V = cls(M.ring, degs, ops)
        V.source_basis = basis
        V.source = M
        return V

    def coords_of(self, v: dict):
        """Coordinates of a vector of ``source`` (only for modules built by ``from_graded``)."""
        F = self.field
        x = la.zeros(F, self.dim, 1)[:, 0]
        pos = {t: k for k, t in enumerate(self.source_basis)}
        for t, a in self.source.nf(v).items():
            x[pos[t]] = a
        return x

    def dual(self) -> "FiniteLengthModule":
        """Graded dual: transposed operators on the dual basis, degrees negated."""
        return FiniteLengthModule(self.ring, [-d for d in self.degrees], [X.T.copy() for X in self.ops])

    def subspace_module(self, B) -> "FiniteLengthModule":
        """The submodule with homogeneous basis given by the columns of ``B``.

        The columns must span an ``x_i``-stable subspace and each be homogeneous.
        """
        F = self.field
        k = B.shape[1]
        degs = []
        for j in range(k):
            nz = np.nonzero(B[:, j] != 0)[0]
            ds = {self.degrees[i] for i in nz}
            if len(ds) != 1:
                raise ValueError("basis vector is not homogeneous")
            degs.append(ds.pop())
        ops = []
        for X in self.ops:
            Y = la.solve(F, B, la.matmul(F, X, B)) if k else la.zeros(F, 0, 0)
            if Y is None:
                raise ValueError("subspace is not a submodule")
            ops.append(Y)
        return FiniteLengthModule(self.ring, degs, ops)

    def quotient_module(self, B) -> "FiniteLengthModule":
        """``V / span(B)`` for an ``x_i``-stable homogeneous subspace."""
        F = self.field
        Q, rest = la.quotient_projection(F, B, self.dim)
        ops = [la.matmul(F, Q, X[:, rest]) if rest else la.zeros(F, 0, 0) for X in self.ops]
        return FiniteLengthModule(self.ring, [self.degrees[j] for j in rest], ops)

    def power_image(self, s: int):
        """Columns spanning ``m^s V``."""
        F = self.field
        cols = [self.mono_op(e) for e in monomials_of_degree(self.ring.n, s)]
        if not cols or self.dim == 0:
            return la.zeros(F, self.dim, 0)
        return la.column_basis(F, np.concatenate(cols, axis=1))

    def mod_power(self, s: int) -> "FiniteLengthModule":
        """``V / m^s V``."""
        return self.quotient_module(self.power_image(s))

    def annihilated_by_power(self, s: int) -> "FiniteLengthModule":
        """``(0 :_V m^s)``."""
        F = self.field
        mons = monomials_of_degree(self.ring.n, s)
        if self.dim == 0:
            return self
        A = np.concatenate([self.mono_op(e) for e in mons], axis=0)
        K = la.nullspace(F, A)
        return self.subspace_module(_homogeneous_basis(F, K, self.degrees))

    def to_graded(self) -> GradedModule:
        """A minimal presentation (generators = a complement of ``m V``)."""
        return self.presentation()[0]

    def presentation(self):
        """``(GradedModule, generator basis indices)``, computed once."""
        if "_presentation" not in self.__dict__:
            self.__dict__["_presentation"] = self._present()
        return self.__dict__["_presentation"]

    def _present(self):
        R, F = self.ring, self.field
        n = R.n
        gens = self.generator_indices()
        gdeg = [self.degrees[j] for j in gens]
        if not gens:
            return GradedModule(R, [], []), []
        top = max(self.degrees)
        rels = []
        prev_kernel = None  # list of coordinate vectors over the previous degree's domain
        prev_dom = None
        for d in range(min(gdeg), top + 2):
            dom = [(j, m) for j, g in enumerate(gens) for m in R.std_monomials(d - gdeg[j])]
            if not dom:
                prev_kernel, prev_dom = None, dom
                continue
            tgt = self.idx(d)
            A = la.zeros(F, len(tgt), len(dom))
            for col, (j, m) in enumerate(dom):
                if tgt:
                    A[:, col] = self.mono_op(m)[tgt, gens[j]]
            K = la.nullspace(F, A) if tgt else la.identity(F, len(dom))
            if K.shape[1] == 0:
                prev_kernel, prev_dom = K, dom
                continue
            pos = {t: k for k, t in enumerate(dom)}
            mult = []
            if prev_kernel is not None and prev_kernel.shape[1]:
                for i in range(n):
                    u = unit(n, i)
                    for c in range(prev_kernel.shape[1]):
                        vec = la.zeros(F, len(dom), 1)[:, 0]
                        for k, (j, m) in enumerate(prev_dom):
                            a = prev_kernel[k, c]
                            if not a:
                                continue
                            for t, b in R.monomial_coords(tuple(x + y for x, y in zip(m, u))).items():
                                kk = pos[(j, t)]
                                vec[kk] = F.add(vec[kk], F.mul(a, b))
                        mult.append(vec)
            Mspan = np.stack(mult, axis=1) if mult else la.zeros(F, len(dom), 0)
            Q, _ = la.quotient_projection(F, Mspan, len(dom))
            QK = la.matmul(F, Q, K)
            _, piv = la.rref(F, QK)
            for c in piv:
                r = {}
                for k, (j, m) in enumerate(dom):
                    if K[k, c]:
                        r[(j, m)] = K[k, c]
                rels.append(r)
            prev_kernel, prev_dom = K, dom
        return GradedModule(R, gdeg, rels, check=False), gens

    def hom(self, W: "FiniteLengthModule") -> "FiniteLengthModule":
        """``Hom_R(self, W)`` with ``R`` acting through ``W``."""
        return hom_flm(self, W)

    def tensor(self, W: "FiniteLengthModule") -> "FiniteLengthModule":
        return tensor_flm(self, W)

    def __repr__(self):
        return f"FiniteLengthModule(dim={self.dim}, hilbert={self.hilbert_table()})"

    def to_json(self):
        return {"ring": self.ring.to_json(), "degrees": list(self.degrees),
                "operators": [[[self.field.format(a) for a in row] for row in X.tolist()]
                              for X in self.ops]}


def _homogeneous_basis(F, K, degrees):
    """Split the column span of ``K`` into a homogeneous basis.

    Valid when the span is a graded subspace (e.g. a kernel of a graded map).
    """
    cols = []
    deg = np.array(degrees)
    for d in sorted(set(degrees)):
        rows = np.nonzero(deg == d)[0]
        part = la.zeros(F, len(degrees), K.shape[1])
        part[rows] = K[rows]
        B = la.column_basis(F, part)
        for j in range(B.shape[1]):
            cols.append(B[:, j])
    if not cols:
        return la.zeros(F, len(degrees), 0)
    return np.stack(cols, axis=1)


def hom_flm(V: FiniteLengthModule, W: FiniteLengthModule) -> FiniteLengthModule:
    F = V.field
    P, gens = V.presentation()
    gdeg = P.degrees
    rels = P.relations
    rdeg = [max(gdeg[c] + sum(e) for (c, e) in r) for r in rels]
    rel_ops = []
    for r in rels:
        cols = {}
        for (c, e), a in r.items():
            cols.setdefault(c, {})[e] = a
        rel_ops.append({c: W.poly_op(f) for c, f in cols.items()})
    if not gens or W.dim == 0:
        return FiniteLengthModule(V.ring, [], [la.zeros(F, 0, 0) for _ in range(V.ring.n)])
    deltas = sorted({w - g for w in set(W.degrees) for g in gdeg})
    pieces = {}
    for delta in deltas:
        unk = [(j, i) for j, g in enumerate(gdeg) for i in W.idx(g + delta)]
        if not unk:
            continue
        upos = {t: k for k, t in enumerate(unk)}
        rows = [(k, i) for k, rd in enumerate(rdeg) for i in W.idx(rd + delta)]
        rpos = {t: k for k, t in enumerate(rows)}
        A = la.zeros(F, len(rows), len(unk))
        for k, ops in enumerate(rel_ops):
            for j, M in ops.items():
                for i_in in W.idx(gdeg[j] + delta):
                    for i_out in W.idx(rdeg[k] + delta):
                        a = M[i_out, i_in]
                        if a:
                            A[rpos[(k, i_out)], upos[(j, i_in)]] = F.add(A[rpos[(k, i_out)], upos[(j, i_in)]], a)
        K = la.nullspace(F, A) if rows else la.identity(F, len(unk))
        if K.shape[1]:
            pieces[delta] = (unk, upos, K)
    degs, offsets = [], {}
    for delta, (unk, upos, K) in pieces.items():
        offsets[delta] = len(degs)
        degs += [delta] * K.shape[1]
    N = len(degs)
    ops = []
    for Xi in W.ops:
        Y = la.zeros(F, N, N)
        for delta, (unk, upos, K) in pieces.items():
            if delta + 1 not in pieces:
                continue
            unk2, upos2, K2 = pieces[delta + 1]
            # apply x_i to every column of K (images of generators move up one degree)
            img = la.zeros(F, len(unk2), K.shape[1])
            for (j, i_in), k in upos.items():
                for i_out in W.idx(gdeg[j] + delta + 1):
                    a = Xi[i_out, i_in]
                    if a:
                        img[upos2[(j, i_out)]] = la.add(F, img[upos2[(j, i_out)]], la.scale(F, a, K[k]))
            sol = la.solve(F, K2, img)
            o1, o2 = offsets[delta], offsets[delta + 1]
            Y[o2:o2 + K2.shape[1], o1:o1 + K.shape[1]] = sol
        ops.append(Y)
    H = FiniteLengthModule(V.ring, degs, ops)
    H.maps = pieces
    H.gen_degrees = gdeg
    return H


def tensor_flm(V: FiniteLengthModule, W: FiniteLengthModule) -> FiniteLengthModule:
    F = V.field
    P, gens = V.presentation()
    gdeg = P.degrees
    rels = P.relations
    rdeg = [max(gdeg[c] + sum(e) for (c, e) in r) for r in rels]
    if not gens or W.dim == 0:
        return FiniteLengthModule(V.ring, [], [la.zeros(F, 0, 0) for _ in range(V.ring.n)])
    rel_ops = []
    for r in rels:
        cols = {}
        for (c, e), a in r.items():
            cols.setdefault(c, {})[e] = a
        rel_ops.append({c: W.poly_op(f) for c, f in cols.items()})
    degs_all = sorted({g + w for g in gdeg for w in set(W.degrees)})
    pieces = {}
    for delta in degs_all:
        tgt = [(j, i) for j, g in enumerate(gdeg) for i in W.idx(delta - g)]
        if not tgt:
            continue
        tpos = {t: k for k, t in enumerate(tgt)}
        src = [(k, i) for k, rd in enumerate(rdeg) for i in W.idx(delta - rd)]
        A = la.zeros(F, len(tgt), len(src))
        for col, (k, i_in) in enumerate(src):
            for j, M in rel_ops[k].items():
                for i_out in W.idx(delta - gdeg[j]):
                    a = M[i_out, i_in]
                    if a:
                        A[tpos[(j, i_out)], col] = F.add(A[tpos[(j, i_out)], col], a)
        Q, rest = la.quotient_projection(F, A, len(tgt))
        if rest:
            pieces[delta] = (tgt, tpos, Q, rest)
    degs, offsets = [], {}
    for delta, (tgt, tpos, Q, rest) in pieces.items():
        offsets[delta] = len(degs)
        degs += [delta] * len(rest)
    N = len(degs)
    ops = []
    for Xi in W.ops:
        Y = la.zeros(F, N, N)
        for delta, (tgt, tpos, Q, rest) in pieces.items():
            if delta + 1 not in pieces:
                continue
            tgt2, tpos2, Q2, rest2 = pieces[delta + 1]
            img = la.zeros(F, len(tgt2), len(rest))
            for col, k in enumerate(rest):
                j, i_in = tgt[k]
                for i_out in W.idx(delta + 1 - gdeg[j]):
                    a = Xi[i_out, i_in]
                    if a:
                        img[tpos2[(j, i_out)], col] = F.add(img[tpos2[(j, i_out)], col], a)
            o1, o2 = offsets[delta], offsets[delta + 1]
            Y[o2:o2 + len(rest2), o1:o1 + len(rest)] = la.matmul(F, Q2, img)
        ops.append(Y)
    return FiniteLengthModule(V.ring, degs, ops)


def conjugate_certificate(V: FiniteLengthModule, W: FiniteLengthModule) -> bool:
    """Isomorphism certificate.

    Cyclic modules: equal Hilbert functions and equal annihilators, which
    decides isomorphism.  Otherwise equal Hilbert functions together with
    ``dim Hom(V, W) = dim Hom(W, V) = dim End V = dim End W``.
    """
    if V.hilbert_table() != W.hilbert_table():
        return False
    if V.dim == 0:
        return True
    if V.num_generators() == 1 and W.num_generators() == 1:
        return _cyclic_iso(V, W)
    hv = V.hom(V).dim
    return V.hom(W).dim == hv == W.hom(W).dim and W.hom(V).dim == hv


def annihilator_pieces(V: FiniteLengthModule, top=None) -> dict:
    """Degree ``d`` -> row-reduced basis of ``Ann(V)_d`` inside ``S_d`` (monomial coordinates)."""
    F = V.field
    n = V.ring.n
    span = (max(V.degrees) - min(V.degrees) + 1) if V.dim else 0
    top = span if top is None else top
    out = {}
    for d in range(top + 1):
        mons = monomials_of_degree(n, d)
        if V.dim == 0:
            A = la.zeros(F, 0, len(mons))
        else:
            A = np.stack([V.mono_op(e).reshape(-1) for e in mons], axis=1)
        K = la.nullspace(F, A)
        out[d] = la.row_basis(F, K.T)
    return out


def _cyclic_iso(V, W) -> bool:
    a, b = annihilator_pieces(V), annihilator_pieces(W)
    return all(np.array_equal(a[d], b[d]) for d in a)
