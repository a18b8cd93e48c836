"""Homogeneous Buchberger algorithm for submodules of graded free modules.

Vectors are dicts ``{(component, exponent): coeff}``.  The term order is
degrevlex inside a block of components (term over position) and block
priority across blocks (position over term); priorities let one run serve
as an elimination order for kernels and preimages.

The driver works one degree at a time.  Inputs come in two flavours:

* *free* inputs are plain generators;
* *counted* inputs are also generators, but the driver records which of
  them were not already in the span of everything processed before them.
  Those survivors are a minimal generating set (graded Nakayama).

Everything here is exact and deterministic.
"""

from __future__ import annotations

from collections import defaultdict

from .field import Field
from .poly import divides, mono_div, mono_key, mono_lcm, mono_mul


class InhomogeneousError(ValueError):
    """Raised when the graded engine receives a non-homogeneous input."""


class _Elem:
    __slots__ = ("vec", "c", "e", "deg", "tag")

    def __init__(self, vec, c, e, deg, tag):
        self.vec, self.c, self.e, self.deg, self.tag = vec, c, e, deg, tag


class ModuleOrder:
    """Term order on ``(component, exponent)`` pairs."""

    def __init__(self, shifts, priority=None):
        self.shifts = list(shifts)
        self.priority = list(priority) if priority is not None else [0] * len(self.shifts)

    def key(self, t):
        c, e = t
        return (self.priority[c], mono_key(e), -c)

    def lead(self, v):
        return max(v, key=self.key)

    def degree(self, v):
        degs = {self.shifts[c] + sum(e) for c, e in v}
        if len(degs) != 1:
            raise InhomogeneousError(f"vector is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()


def _axpy(F: Field, v: dict, g: dict, mono, coef):
    """In place ``v -= coef * x^mono * g``."""
    p = F.characteristic
    for (c, e), a in g.items():
        t = (c, mono_mul(e, mono))
        if p:
            w = (v.get(t, 0) - coef * a) % p
        else:
            w = v.get(t, 0) - coef * a
        if w:
            v[t] = w
        else:
            v.pop(t, None)


class GroebnerBasis:
    """A (possibly degree-truncated) Groebner basis under construction."""

    def __init__(self, F: Field, order: ModuleOrder, single_ideal: bool = False):
        self.F = F
        self.order = order
        self.elems: list[_Elem] = []
        self.by_comp = defaultdict(list)
        self.pairs = defaultdict(list)
        self.single_ideal = single_ideal
        self.complete_to = None  # None means complete in every degree

    # -- reduction ------------------------------------------------------
    def _reducer(self, c, e):
        for g in self.by_comp.get(c, ()):
            if divides(g.e, e):
                return g
        return None

    def top_reduce(self, v: dict) -> dict:
        v = dict(v)
        F, key = self.F, self.order.key
        while v:
            t = max(v, key=key)
            g = self._reducer(*t)
            if g is None:
                break
            _axpy(F, v, g.vec, mono_div(t[1], g.e), v[t])
        return v

    def reduce(self, v: dict) -> dict:
        """Full normal form of ``v``."""
        v = dict(v)
        F, key = self.F, self.order.key
        rem = {}
        while v:
            t = max(v, key=key)
            g = self._reducer(*t)
            if g is None:
                rem[t] = v.pop(t)
            else:
                _axpy(F, v, g.vec, mono_div(t[1], g.e), v[t])
        return rem

    def contains(self, v: dict) -> bool:
        return not self.top_reduce(v)

    # -- basis management -----------------------------------------------
    def _monic(self, v):
        t = self.order.lead(v)
        a = v[t]
        if a != self.F.one:
            inv = self.F.inv(a)
            v = {k: self.F.mul(inv, x) for k, x in v.items()}
        return v, t

    def _add(self, v, tag=None):
        v, (c, e) = self._monic(v)
        h = _Elem(v, c, e, self.order.shifts[c] + sum(e), tag)
        k = len(self.elems)
        # Gebauer-Moeller update of the pending pairs
        for d in list(self.pairs):
            kept = []
            for (i, j, L) in self.pairs[d]:
                gi, gj = self.elems[i], self.elems[j]
                if gi.c == c and divides(e, L) and mono_lcm(gi.e, e) != L and mono_lcm(gj.e, e) != L:
                    continue
                kept.append((i, j, L))
            self.pairs[d] = kept
        cands = []
        for g_idx, g in enumerate(self.elems):
            if g.c != c:
                continue
            if tag is not None and g.tag == tag:
                continue
            cands.append((g_idx, mono_lcm(g.e, e)))
        # criterion M: drop a pair whose lcm is a proper multiple of another
        lcms = [L for _, L in cands]
        survivors = []
        for i, L in cands:
            if any(L2 != L and divides(L2, L) for L2 in lcms):
                continue
            survivors.append((i, L))
        # criterion F plus product criterion (ideal case only)
        seen = {}
        for i, L in survivors:
            coprime = self.single_ideal and L == mono_mul(self.elems[i].e, e)
            if L in seen:
                if coprime:
                    seen[L] = None
                continue
            seen[L] = None if coprime else i
        for L, i in seen.items():
            if i is None:
                continue
            self.pairs[self.order.shifts[c] + sum(L)].append((i, k, L))
        self.elems.append(h)
        self.by_comp[c].append(h)
        return h

    def _spoly(self, i, j, L):
        gi, gj = self.elems[i], self.elems[j]
        v = {}
        _axpy(self.F, v, gi.vec, mono_div(L, gi.e), self.F.neg(self.F.one))
        _axpy(self.F, v, gj.vec, mono_div(L, gj.e), self.F.one)
        return v

    # -- driver ---------------------------------------------------------
    def run(self, free=(), counted=(), max_degree=None, free_tags=None):
        """Process inputs degree by degree.

        Returns the list of indices of *counted* inputs that were not in the
        span of everything before them (a minimal generating set of the
        counted part modulo the free part).
        """
        order = self.order
        free_by = defaultdict(list)
        for idx, v in enumerate(free):
            if v:
                tag = free_tags[idx] if free_tags is not None else None
                free_by[order.degree(v)].append((v, tag))
        count_by = defaultdict(list)
        for idx, v in enumerate(counted):
            if v:
                count_by[order.degree(v)].append((idx, v))
        survivors = []
        while True:
            pending = [d for d, L in self.pairs.items() if L]
            pending += list(free_by) + list(count_by)
            if not pending:
                self.complete_to = None
                break
            d = min(pending)
            if max_degree is not None and d > max_degree:
                self.complete_to = max_degree
                break
            work = [self._spoly(*p) for p in self.pairs.pop(d, [])]
            for v in work:
                r = self.top_reduce(v)
                if r:
                    self._add(self.reduce(r))
            for v, tag in free_by.pop(d, []):
                r = self.top_reduce(v)
                if r:
                    # tagged inputs form a basis among themselves, so their
                    # mutual pairs are skipped; only valid if left untouched
                    if tag is not None and r == v:
                        self._add(r, tag)
                    else:
                        self._add(self.reduce(r))
            for idx, v in count_by.pop(d, []):
                r = self.top_reduce(v)
                if r:
                    self._add(self.reduce(r))
                    survivors.append(idx)
        return survivors

    def interreduce(self):
        """Turn the basis into the reduced Groebner basis (monic leads)."""
        elems = sorted(self.elems, key=lambda g: order_key_elem(self.order, g))
        self.elems = []
        self.by_comp = defaultdict(list)
        for g in elems:
            self.elems.append(g)
            self.by_comp[g.c].append(g)
        for g in self.elems:
            tail = dict(g.vec)
            lead = tail.pop((g.c, g.e))
            others = [h for h in self.by_comp[g.c] if h is not g]
            self.by_comp[g.c] = others
            tail = self.reduce(tail)
            self.by_comp[g.c] = others + [g]
            tail[(g.c, g.e)] = lead
            g.vec = tail
        for c in self.by_comp:
            self.by_comp[c].sort(key=lambda g: order_key_elem(self.order, g))
        return self

    def vectors(self):
        return [g.vec for g in self.elems]

    def leads(self):
        return [(g.c, g.e) for g in self.elems]


def order_key_elem(order, g):
    return (g.deg, order.key((g.c, g.e)))


# --------------------------------------------------------------- front ends

def groebner(F: Field, vectors, shifts, priority=None, extra=(), extra_tags=None,
             max_degree=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``vectors`` and ``extra``."""
    order = ModuleOrder(shifts, priority)
    G = GroebnerBasis(F, order, single_ideal=len(order.shifts) == 1)
    G.run(free=list(extra) + list(vectors),
          free_tags=(list(extra_tags) if extra_tags is not None else [None] * len(extra))
          + [None] * len(vectors),
          max_degree=max_degree)
    return G.interreduce()


def minimal_subset(F: Field, vectors, shifts, extra=(), extra_tags=None):
    """Indices of ``vectors`` forming a minimal generating set modulo ``extra``.

    Ties are broken by degree, then by input position.
    """
    order = ModuleOrder(shifts)
    G = GroebnerBasis(F, order, single_ideal=False)
    return G.run(free=list(extra), counted=list(vectors), free_tags=extra_tags)


def ideal_gb(F: Field, n: int, polys) -> list:
    """Reduced Groebner basis (as polynomial dicts) of a homogeneous ideal."""
    vecs = []
    for f in polys:
        if f:
            if len({sum(m) for m in f}) != 1:
                raise InhomogeneousError("graded engine: generator is not homogeneous")
            vecs.append({(0, m): c for m, c in f.items()})
    G = groebner(F, vecs, [0])
    out = [{m: c for (_, m), c in g.items()} for g in G.vectors()]
    out.sort(key=lambda f: mono_key(max(f, key=mono_key)))
    return out


def spread_ideal(gb_polys, components, tag_prefix="I"):
    """``I * e_c`` for every component ``c``, with tags marking each block."""
    vecs, tags = [], []
    for c in components:
        for f in gb_polys:
            vecs.append({(c, m): a for m, a in f.items()})
            tags.append((tag_prefix, c))
    return vecs, tags


def preimage(F: Field, n: int, images, src_shifts, tgt_shifts, tgt_sub=(), ideal=()):
    """Groebner basis of ``{a in S^g : sum a_j images_j in <tgt_sub> + I*S^r}``.

    ``images[j]`` is a vector in the target (components ``0..r-1``).  The
    answer always contains ``I * S^g``; it is returned as a list of vectors
    over the source components ``0..g-1``.
    """
    r, g = len(tgt_shifts), len(src_shifts)
    shifts = list(tgt_shifts) + list(src_shifts)
    priority = [1] * r + [0] * g
    rows = []
    for j, v in enumerate(images):
        w = dict(v)
        w[(r + j, (0,) * n)] = F.one
        rows.append(w)
    extra, tags = spread_ideal(ideal, range(r + g))
    extra += [dict(v) for v in tgt_sub if v]
    tags += [None] * (len(extra) - len(tags))
    order = ModuleOrder(shifts, priority)
    G = GroebnerBasis(F, order)
    G.run(free=extra + rows, free_tags=tags + [None] * len(rows))
    G.interreduce()
    out = []
    for el in G.elems:
        if el.c >= r:
            out.append({(c - r, e): a for (c, e), a in el.vec.items()})
    return out


def kernel_mod(F: Field, n: int, images, src_shifts, tgt_shifts, tgt_sub=(), ideal=()):
    """Minimal generators (mod ``I``) of the preimage of ``tgt_sub`` (mod ``I``)."""
    K = preimage(F, n, images, src_shifts, tgt_shifts, tgt_sub, ideal)
    extra, tags = spread_ideal(ideal, range(len(src_shifts)))
    keep = minimal_subset(F, K, src_shifts, extra, tags)
    return [K[i] for i in keep]
