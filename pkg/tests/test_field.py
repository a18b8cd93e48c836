from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matlis.field import GF, QQ, FieldMismatchError, Scalar, parse_field, scalar_op
from oracles import inverse_brute


def test_rational_add():
    assert scalar_op(Scalar(QQ, Fraction(1, 2)), Scalar(QQ, Fraction(1, 3)), "add").value == Fraction(5, 6)


def test_self_division_f5():
    F = GF(5)
    assert scalar_op(Scalar(F, 2), Scalar(F, 2), "div").value == 1


def test_division_f7_matches_brute_inverse():
    F = GF(7)
    # frozen: 3 * inverse_brute(5, 7) mod 7
    assert 3 * inverse_brute(5, 7) % 7 == 2
    assert scalar_op(Scalar(F, 3), Scalar(F, 5), "div").value == 2


def test_errors():
    with pytest.raises(ZeroDivisionError):
        scalar_op(Scalar(GF(7), 1), Scalar(GF(7), 0), "div")
    with pytest.raises(FieldMismatchError):
        scalar_op(Scalar(GF(7), 1), Scalar(GF(5), 1), "add")
    with pytest.raises(ValueError):
        GF(4)


@pytest.mark.parametrize("text,char", [("q", 0), ("rationals", 0), ("p:32003", 32003),
                                       ("GF(7)", 7), ("11", 11)])
def test_parse_field(text, char):
    assert parse_field(text).characteristic == char


def test_parse_field_rejects():
    with pytest.raises(ValueError):
        parse_field("p:9")
    with pytest.raises(ValueError):
        parse_field("reals")


FIELDS = [QQ, GF(2), GF(7), GF(32003)]


def elements(F):
    if F.characteristic:
        return st.integers(0, F.characteristic - 1).map(F)
    return st.fractions(max_denominator=50).map(F)


@st.composite
def field_and(draw, k):
    F = draw(st.sampled_from(FIELDS))
    return F, [draw(elements(F)) for _ in range(k)]


@settings(max_examples=1000)
@given(field_and(1))
def test_inverse(fx):
    F, (a,) = fx
    if a:
        assert F.mul(a, F.inv(a)) == F.one


@given(field_and(1))
def test_canonical_idempotent(fx):
    F, (a,) = fx
    assert F.is_canonical(a)
    assert F(a) == a


@given(field_and(3))
def test_axioms(fx):
    F, (a, b, c) = fx
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a


def test_negative_and_rational_into_prime_field():
    F = GF(7)
    assert F(-1) == 6
    assert F(Fraction(1, 2)) == 4
