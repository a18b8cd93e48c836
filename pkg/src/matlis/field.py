"""Exact coefficient fields: the rationals and prime fields F_p.

Internally every computation works on *raw* values (``int`` residues in
``[0, p)`` or ``fractions.Fraction``); :class:`Scalar` is the checked,
user-facing wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

DEFAULT_TEST_PRIME = 32003


class FieldMismatchError(ValueError):
    """Raised when scalars from different fields are combined."""


@dataclass(frozen=True)
class Field:
    """A prime field (``characteristic = p``) or the rationals (``0``)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p != 0 and not isprime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def __call__(self, value):
        """Canonical raw representative of ``value`` (int, Fraction or string)."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} scalar used in {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value.strip())
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return a * b % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return -a % p if p else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in " + str(self))
        p = self.characteristic
        return pow(int(a), -1, p) if p else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_canonical(self, a) -> bool:
        p = self.characteristic
        if p:
            return isinstance(a, int) and 0 <= a < p
        return isinstance(a, Fraction)

    def format(self, a) -> str:
        """Decimal string; rationals print as ``num/den``."""
        if self.characteristic:
            return str(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def signed(self, a):
        """Symmetric representative used for printing prime-field coefficients."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a

    def to_json(self):
        return "rationals" if self.characteristic == 0 else f"p:{self.characteristic}"

    @classmethod
    def from_json(cls, text) -> "Field":
        return parse_field(text)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Accepts ``rationals``, ``q``, ``QQ``, ``p:<prime>``, ``gf(<prime>)`` or a bare prime."""
    t = str(text).strip().lower().replace(" ", "")
    if t in ("q", "qq", "rationals", "rational", "0"):
        return QQ
    for prefix in ("p:", "gf(", "f_", "gf"):
        if t.startswith(prefix):
            t = t[len(prefix):].rstrip(")")
            break
    try:
        return GF(int(t))
    except ValueError as exc:
        raise ValueError(f"unknown field {text!r}") from exc


@dataclass(frozen=True)
class Scalar:
    """An element of a :class:`Field` kept in canonical form."""

    field: Field
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.div(self.value, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def normalized(self) -> "Scalar":
        return Scalar(self.field, self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


def scalar_op(a: Scalar, b: Scalar, op: str) -> Scalar:
    """``op`` in {add, sub, mul, div}; operands must share a field."""
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise TypeError("scalar_op expects Scalar operands")
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field} and {b.field}")
    try:
        fn = {"add": Scalar.__add__, "sub": Scalar.__sub__,
              "mul": Scalar.__mul__, "div": Scalar.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown scalar op {op!r}") from None
    return fn(a, b)
