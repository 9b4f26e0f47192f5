from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from qball._lib.errors import IrrationalValueError, PoleError
from qball._lib.scalar import ONE, Q, Q_HALF, ZERO, Scalar, evaluate_at, parse_fraction, q_integer, s_power
from tests.strategies import nonzero_scalars, scalars


def test_arithmetic_examples():
    assert Q + (-Q) == ZERO
    assert Q_HALF * Q_HALF == Q
    assert (1 - Q**2) / (1 - Q) == 1 + Q


@pytest.mark.parametrize("k,expected", [(0, ONE), (2, Q), (-4, Q**-2), (1, Q_HALF)])
def test_s_power(k, expected):
    assert s_power(k) == expected


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO**-1


@pytest.mark.parametrize(
    "x,q_value,expected",
    [
        (1 - Q**2, Fraction(1, 2), Fraction(3, 4)),
        (Q**-2 - 1, Fraction(1, 2), Fraction(3)),
        (ONE / (1 - Q), Fraction(1, 4), Fraction(4, 3)),
    ],
)
def test_evaluate_at(x, q_value, expected):
    assert evaluate_at(x, q_value) == expected


def test_evaluate_at_pole():
    with pytest.raises(PoleError):
        evaluate_at(ONE / (1 - Q), Fraction(1))


def test_evaluate_at_odd_power():
    with pytest.raises(IrrationalValueError):
        evaluate_at(Q_HALF, Fraction(1, 4))


@pytest.mark.parametrize(
    "x,text",
    [
        (ZERO, "0"),
        (ONE, "1"),
        (Q**2, "q^2"),
        (1 - Q, "1 - q"),
        (1 - Q**2, "1 - q^2"),
        (Q**-2 - 1, "q^-2 - 1"),
        (-Q_HALF - s_power(5), "-s - s^5"),
        (Scalar(Fraction(3, 4)) * Q**2, "3/4*q^2"),
        (ONE / (1 - Q), "(-1)/(-1 + q)"),
    ],
)
def test_str(x, text):
    assert str(x) == text


def test_is_atomic():
    assert Q.is_atomic()
    assert (-3 * Q_HALF).is_atomic()
    assert not (1 - Q).is_atomic()
    assert not (ONE / (1 + Q)).is_atomic()


def test_q_integer():
    assert q_integer(1) == ONE
    assert q_integer(2) == Q + Q**-1
    assert q_integer(3) == Q**2 + 1 + Q**-2


def test_parse_fraction():
    assert parse_fraction("1/2") == Fraction(1, 2)
    assert parse_fraction(" 3 ") == Fraction(3)
    with pytest.raises(ValueError):
        parse_fraction("1/0")
    with pytest.raises(ValueError):
        parse_fraction("q")


def test_equal_scalars_hash_equal():
    x = (1 - Q**2) / (1 - Q)
    assert x == 1 + Q
    assert hash(x) == hash(1 + Q)
    assert len({x, 1 + Q, Q + 1}) == 1


@pytest.mark.parametrize("number", [0, 1, -3, Fraction(1, 2), Fraction(-7, 4)])
def test_constants_hash_like_numbers(number):
    constant = Scalar(number)
    assert constant == number
    assert hash(constant) == hash(number)
    assert {number: "x"}[constant] == "x"
    assert {constant: "x"}[number] == "x"
    assert hash((Q - 1) / (Q - 1) * number) == hash(number)


@given(scalars(), scalars(), scalars())
@settings(max_examples=50, deadline=None)
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(nonzero_scalars())
@settings(max_examples=50, deadline=None)
def test_inverse(x):
    assert x * (1 / x) == ONE
    assert x - x == ZERO


@given(scalars())
@settings(max_examples=50, deadline=None)
def test_canonical_is_idempotent(x):
    once = x.canonical()
    assert once.canonical_terms() == once.canonical().canonical_terms()
    assert once == x


@given(scalars(even=True), scalars(even=True))
@settings(max_examples=50, deadline=None)
def test_evaluate_at_is_multiplicative(x, y):
    q_value = Fraction(1, 3)
    product = evaluate_at(x * y, q_value)
    assert product == evaluate_at(x, q_value) * evaluate_at(y, q_value)
    assert evaluate_at(x + y, q_value) == evaluate_at(x, q_value) + evaluate_at(y, q_value)


@given(scalars())
@settings(max_examples=30, deadline=None)
def test_str_is_deterministic(x):
    assume(x)
    assert str(x) == str(x.canonical())
