"""Homogeneous ideals and graded quotient rings ``R = S/I``."""

from __future__ import annotations

from functools import cached_property

from . import linalg as la
from .field import Field, QQ
from .groebner import GroebnerBasis, InhomogeneousError, ModuleOrder, ideal_gb, kernel_mod
from .poly import (PolyRing, Polynomial, divides, mono_key, mono_mul, monomials_of_degree,
                   p_is_homogeneous)


class RingMismatchError(ValueError):
    pass


class Ideal:
    """A homogeneous ideal of a polynomial ring; its Groebner basis is cached."""

    def __init__(self, ring: PolyRing, generators=()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if not g.is_zero():
                if not p_is_homogeneous(g.coeffs):
                    raise InhomogeneousError(f"generator {g} is not homogeneous")
                gens.append(g)
        self.generators = tuple(gens)

    @cached_property
    def gb(self) -> list:
        """Reduced Groebner basis as polynomial dicts (computed once)."""
        return ideal_gb(self.ring.field, self.ring.n, [g.coeffs for g in self.generators])

    def groebner(self):
        return [Polynomial(self.ring, g) for g in self.gb]

    @cached_property
    def _engine(self):
        G = GroebnerBasis(self.ring.field, ModuleOrder([0]), single_ideal=True)
        for g in self.gb:
            G._add({(0, m): c for m, c in g.items()})
        return G

    def normal_form(self, f) -> Polynomial:
        f = self.ring(f)
        if not self.gb:
            return f
        r = self._engine.reduce({(0, m): c for m, c in f.coeffs.items()})
        return Polynomial(self.ring, {m: c for (_, m), c in r.items()})

    def contains(self, f) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return self.gb == other.gb

    def __hash__(self):
        return hash((self.ring, tuple(frozenset(g.items()) for g in self.gb)))

    def is_monomial(self) -> bool:
        return all(len(g.coeffs) == 1 for g in self.generators)

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for g in self.gb for m in g)

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")

    def __add__(self, other):
        self._check(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def power(self, s: int) -> "Ideal":
        out = Ideal(self.ring, [self.ring(1)])
        for _ in range(s):
            out = out * self
        return out

    def colon(self, other: "Ideal") -> "Ideal":
        """``(self : other)`` via the kernel of ``S -> (S/self)^k``."""
        self._check(other)
        F, n = self.ring.field, self.ring.n
        js = [g for g in other.generators]
        if not js:
            return Ideal(self.ring, [self.ring(1)])
        degs = [sum(next(iter(g.coeffs))) for g in js]
        img = {(k, m): c for k, g in enumerate(js) for m, c in g.coeffs.items()}
        # map 1 -> (g_1, ..., g_k) from S(0) to the sum of S(deg g_k)
        K = kernel_mod(F, n, [img], [0], [-d for d in degs], (), self.gb)
        gens = [Polynomial(self.ring, {m: c for (_, m), c in v.items()}) for v in K]
        return Ideal(self.ring, gens + list(self.generators))

    def op(self, other, kind: str, s: int = 1):
        if kind == "sum":
            return self + other
        if kind == "product":
            return self * other
        if kind == "power":
            return self.power(s)
        if kind == "colon":
            return self.colon(other)
        raise ValueError(f"unknown ideal op {kind!r}")

    def __str__(self):
        return "ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    __repr__ = __str__


class QuotientRing:
    """``R = k[x_1..x_n]/I`` with ``I`` homogeneous and proper.

    Caches the standard monomials of each degree and the normal-form
    coordinates used by the degreewise linear algebra.
    """

    def __init__(self, field: Field = QQ, names=("x",), ideal=()):
        self.S = PolyRing(field, names)
        gens = ideal.generators if isinstance(ideal, Ideal) else ideal
        self.ideal = Ideal(self.S, gens)
        if self.ideal.is_unit():
            raise ValueError("defining ideal must be proper")
        self._std = {}
        self._coords = {}

    # -- identity -------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.S.field

    @property
    def n(self) -> int:
        return self.S.n

    @property
    def names(self):
        return self.S.names

    @property
    def gb(self):
        return self.ideal.gb

    @cached_property
    def leads(self):
        return [max(g, key=mono_key) for g in self.gb]

    def maximal_ideal(self) -> Ideal:
        return Ideal(self.S, self.S.gens())

    def key(self):
        return (self.field, self.names, tuple(tuple(sorted(g.items())) for g in self.gb))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"QuotientRing({self.field}, {list(self.names)}, {self.ideal})"

    def to_json(self):
        return {"field": self.field.to_json(), "variables": list(self.names),
                "ideal": [self.S.format(g) for g in self.gb]}

    @classmethod
    def from_json(cls, obj):
        from .field import parse_field
        F = parse_field(obj["field"])
        S = PolyRing(F, obj["variables"])
        return cls(F, obj["variables"], [S(t) for t in obj["ideal"]])

    def poly(self, f) -> Polynomial:
        return self.S(f)

    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.gb)

    # -- graded pieces ----------------------------------------------------
    def is_standard(self, e) -> bool:
        return not any(divides(L, e) for L in self.leads)

    def std_monomials(self, d: int):
        """Monomials of degree ``d`` not in the lead ideal (descending order)."""
        if d not in self._std:
            self._std[d] = tuple(e for e in monomials_of_degree(self.n, d) if self.is_standard(e))
        return self._std[d]

    def hilbert(self, d: int) -> int:
        return len(self.std_monomials(d))

    def nf(self, f: dict) -> dict:
        """Normal form of a polynomial dict modulo ``I``."""
        if not self.gb:
            return dict(f)
        G = self.ideal._engine
        r = G.reduce({(0, m): c for m, c in f.items()})
        return {m: c for (_, m), c in r.items()}

    def monomial_coords(self, e):
        """Normal form of ``x^e`` as a dict over standard monomials."""
        key = e
        if key not in self._coords:
            self._coords[key] = self.nf({e: self.field.one})
        return self._coords[key]

    def mult_matrix(self, f: dict, d: int):
        """Matrix of multiplication by homogeneous ``f`` from ``R_d`` to ``R_{d+deg f}``."""
        F = self.field
        if not f:
            return None
        df = sum(next(iter(f)))
        src, tgt = self.std_monomials(d), self.std_monomials(d + df)
        idx = {m: i for i, m in enumerate(tgt)}
        M = la.zeros(F, len(tgt), len(src))
        for j, m in enumerate(src):
            for e, c in f.items():
                for t, a in self.monomial_coords(mono_mul(m, e)).items():
                    M[idx[t], j] = F.add(M[idx[t], j], F.mul(c, a))
        return M

    def dim_bound(self):
        """Largest degree with ``R_d != 0`` if ``R`` is artinian, else ``None``."""
        pure = set()
        for L in self.leads:
            nz = [i for i, k in enumerate(L) if k]
            if len(nz) == 1:
                pure.add(nz[0])
        if len(pure) < self.n:
            return None
        d = 0
        while self.hilbert(d):
            d += 1
        return d - 1


def polynomial_ring(field: Field = QQ, names=("x",)) -> QuotientRing:
    return QuotientRing(field, names, ())
