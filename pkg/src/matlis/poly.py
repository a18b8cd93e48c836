"""Sparse multivariate polynomials with the degrevlex order.

A polynomial is stored as ``{exponent_tuple: raw_coefficient}``; module
vectors use ``{(component, exponent_tuple): coefficient}``.  The low-level
helpers work on those dicts directly and are what the Groebner engine uses;
:class:`Polynomial` is the immutable, printable wrapper.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations_with_replacement

from .field import Field, QQ


@lru_cache(maxsize=None)
def mono_key(e):
    """Sort key realising degrevlex: larger key means larger monomial."""
    return (sum(e), tuple(-x for x in reversed(e)))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """``a / b`` when ``b`` divides ``a``, else ``None``."""
    out = tuple(x - y for x, y in zip(a, b))
    return None if min(out, default=0) < 0 else out


def divides(b, a) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int):
    """All exponent vectors in ``n`` variables of total degree ``d``, descending."""
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=mono_key, reverse=True)
    return tuple(out)


def unit(n: int, i: int):
    return tuple(1 if j == i else 0 for j in range(n))


# ----------------------------------------------------------------- dict ops

def p_add(F: Field, f: dict, g: dict, c=None) -> dict:
    """``f + c*g`` (new dict)."""
    out = dict(f)
    for m, v in g.items():
        if c is not None:
            v = F.mul(c, v)
        w = F.add(out.get(m, F.zero), v)
        if w:
            out[m] = w
        else:
            out.pop(m, None)
    return out


def p_scale(F: Field, c, f: dict) -> dict:
    if not c:
        return {}
    return {m: F.mul(c, v) for m, v in f.items()}


def p_shift(F: Field, f: dict, e, c=None) -> dict:
    """``c * x^e * f`` for a polynomial dict."""
    if c is None:
        return {mono_mul(m, e): v for m, v in f.items()}
    return {mono_mul(m, e): F.mul(c, v) for m, v in f.items()}


def p_mul(F: Field, f: dict, g: dict) -> dict:
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = mono_mul(m1, m2)
            w = F.add(out.get(m, F.zero), F.mul(c1, c2))
            if w:
                out[m] = w
            else:
                out.pop(m, None)
    return out


def p_pow(F: Field, f: dict, k: int, n: int) -> dict:
    out = {tuple([0] * n): F.one}
    for _ in range(k):
        out = p_mul(F, out, f)
    return out


def p_degree(f: dict):
    """Total degree if homogeneous, ``None`` if not (or zero)."""
    degs = {sum(m) for m in f}
    return degs.pop() if len(degs) == 1 else None


def p_is_homogeneous(f: dict) -> bool:
    return len({sum(m) for m in f}) <= 1


def p_lead(f: dict):
    return max(f, key=mono_key)


def v_mul_poly(F: Field, v: dict, f: dict) -> dict:
    """Module vector times polynomial."""
    out = {}
    for (c, m1), a in v.items():
        for m2, b in f.items():
            k = (c, mono_mul(m1, m2))
            w = F.add(out.get(k, F.zero), F.mul(a, b))
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def v_from_columns(col) -> dict:
    """``[poly_dict, ...]`` (one entry per component) to a vector dict."""
    return {(i, m): c for i, f in enumerate(col) for m, c in f.items()}


def v_to_columns(v: dict, rank: int) -> list:
    out = [dict() for _ in range(rank)]
    for (i, m), c in v.items():
        out[i][m] = c
    return out


def v_degree(v: dict, shifts) -> int | None:
    degs = {shifts[c] + sum(m) for c, m in v}
    return degs.pop() if len(degs) == 1 else None


# ---------------------------------------------------------------- printing

def format_poly(F: Field, f: dict, names) -> str:
    if not f:
        return "0"
    parts = []
    for m in sorted(f, key=mono_key, reverse=True):
        c = f[m]
        sc = F.signed(c) if F.characteristic else c
        neg = sc < 0
        mag = -sc if neg else sc
        mon = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(names, m) if k
        )
        cs = F.format(mag)
        if mon:
            body = mon if mag == 1 else f"{cs}*{mon}"
        else:
            body = cs
        parts.append(("-" if neg else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def parse_poly(F: Field, text: str, names) -> dict:
    """Parse conventional text (``3*x^2*y - 1/2*z``) into a dict.

    Delegates tokenising to sympy; coefficients are mapped into ``F``
    exactly (rational coefficients are inverted mod p for prime fields).
    """
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor, parse_expr, standard_transformations)

    names = list(names)
    for v in names:
        if not _NAME.match(v):
            raise ValueError(f"bad variable name {v!r}")
    syms = [sympy.Symbol(v) for v in names]
    local = {v: s for v, s in zip(names, syms)}
    text = str(text).strip()
    if not text:
        raise ValueError("empty polynomial")
    try:
        expr = parse_expr(
            text, local_dict=local,
            transformations=standard_transformations + (convert_xor,),
            evaluate=True)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
    extra = expr.free_symbols - set(syms)
    if extra:
        raise ValueError(f"unknown variable(s) {sorted(map(str, extra))} in {text!r}")
    if not syms:
        if not expr.is_Rational:
            raise ValueError(f"not a constant: {text!r}")
        c = F(_frac(sympy.Rational(expr)))
        return {(): c} if c else {}
    try:
        P = sympy.Poly(expr, *syms, domain="QQ")
    except Exception as exc:
        raise ValueError(f"not a polynomial: {text!r} ({exc})") from None
    out = {}
    for m, c in P.terms():
        v = F(_frac(c))
        if v:
            out[tuple(int(k) for k in m)] = v
    return out


def _frac(c):
    from fractions import Fraction
    return Fraction(int(c.p), int(c.q))


# ------------------------------------------------------------------ wrappers

class PolyRing:
    """The polynomial ring ``k[x_1..x_n]`` with degrevlex order."""

    def __init__(self, field: Field = QQ, names=("x", "y")):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.n = len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.field, self.names) == (other.field, other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)})"

    def zero_exp(self):
        return (0,) * self.n

    def gens(self):
        return [Polynomial(self, {unit(self.n, i): self.field.one}) for i in range(self.n)]

    def __call__(self, obj) -> "Polynomial":
        if isinstance(obj, Polynomial):
            if obj.ring != self:
                raise ValueError("polynomial from a different ring")
            return obj
        if isinstance(obj, dict):
            F = self.field
            return Polynomial(self, {tuple(m): F(c) for m, c in obj.items() if F(c)})
        if isinstance(obj, str):
            return Polynomial(self, parse_poly(self.field, obj, self.names))
        c = self.field(obj)
        return Polynomial(self, {self.zero_exp(): c} if c else {})

    def format(self, f: dict) -> str:
        return format_poly(self.field, f, self.names)


class Polynomial:
    """Immutable polynomial; ``terms`` lists ``(coeff, exponent)`` descending."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs: dict):
        self.ring = ring
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    @property
    def terms(self):
        return [(self.coeffs[m], m) for m in sorted(self.coeffs, key=mono_key, reverse=True)]

    @property
    def homogeneous_degree(self):
        if not self.coeffs:
            return 0
        d = p_degree(self.coeffs)
        return "inhomogeneous" if d is None else d

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return p_lead(self.coeffs)

    def _coerce(self, other):
        return self.ring(other).coeffs

    def __add__(self, other):
        return Polynomial(self.ring, p_add(self.ring.field, self.coeffs, self._coerce(other)))

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        F = self.ring.field
        return Polynomial(self.ring, p_add(F, self.coeffs, self._coerce(other), F.neg(F.one)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return Polynomial(self.ring, p_mul(self.ring.field, self.coeffs, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return Polynomial(self.ring, p_pow(self.ring.field, self.coeffs, k, self.ring.n))

    def __eq__(self, other):
        try:
            return self.coeffs == self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        return self.ring.format(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self})"
