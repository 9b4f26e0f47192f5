import json

import pytest

from qball._lib.action import E, F, K, Ki, act
from qball._lib.algebra import F0, Element, Shape, normal_form, z, zs
from qball._lib.errors import ExprSyntaxError, IndexRangeError, QBallError
from qball._lib.expr import (
    Apply,
    Binary,
    LetterNode,
    Neg,
    Number,
    Pow,
    Symbol,
    format_element,
    parse,
    parse_element,
    parse_generator_word,
    to_json_dict,
    tokenize,
)
from qball._lib.scalar import Q, Q_HALF

DISC = Shape(1, 1)


def test_product_of_three_letters():
    tree = parse("z[1,1] * f0 * zs[1,1]", DISC)
    assert tree == Binary("*", Binary("*", LetterNode(z(1, 1)), LetterNode(F0)), LetterNode(zs(1, 1)))


def test_sum_with_scalar_weights():
    tree = parse("(1 - q^2) * f0 + z[2,1]*f0", Shape(1, 2))
    expected_weight = Binary("-", Number(1), Pow(Symbol("q"), 2))
    assert tree == Binary(
        "+",
        Binary("*", expected_weight, LetterNode(F0)),
        Binary("*", LetterNode(z(2, 1)), LetterNode(F0)),
    )


def test_unary_minus_and_application():
    assert parse("-E1(z[1,1])", DISC) == Neg(Apply(E(1), LetterNode(z(1, 1))))
    assert parse("s^-3", DISC) == Pow(Symbol("s"), -3)


def test_index_out_of_range():
    with pytest.raises(IndexRangeError) as info:
        parse("z[3,1]", Shape(1, 2))
    assert info.value.token == "z[3,1]"
    assert (info.value.line, info.value.column) == (1, 1)


def test_generator_index_out_of_range():
    with pytest.raises(IndexRangeError) as info:
        parse("f0 + E2(f0)", DISC)
    assert info.value.token == "E2"
    assert info.value.column == 6


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("z[1,1] +", 1, 9),
        ("z[1 1]", 1, 5),
        ("f0\n  * $", 2, 5),
        ("(f0", 1, 4),
        ("f0 f0", 1, 4),
        ("w[1,1]", 1, 1),
    ],
)
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text, DISC)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_tokenize_tracks_lines():
    tokens = tokenize("z[1,1]\n+ f0")
    assert [(t.text, t.line, t.column) for t in tokens[-3:]] == [("+", 2, 1), ("f0", 2, 3), ("", 2, 5)]


def test_evaluate_normalizes():
    expected = normal_form(DISC, [z(1, 1)]).scale(Q**2) * normal_form(DISC, [zs(1, 1)])
    f = parse_element("zs[1,1]*z[1,1]", DISC)
    assert f == expected + Element.scalar(DISC, 1 - Q**2)


def test_evaluate_scalars():
    assert parse_element("s*s - q", DISC) == Element(DISC)
    assert parse_element("(1 - q^2)/(1 - q)", DISC) == Element.scalar(DISC, 1 + Q)
    assert parse_element("q^-1 * z[1,1]", DISC) == Element.letter(DISC, z(1, 1)).scale(Q**-1)
    assert parse_element("2*s", DISC) == Element.scalar(DISC, 2 * Q_HALF)


def test_evaluate_powers():
    assert parse_element("z[1,1]^2", DISC) == normal_form(DISC, [z(1, 1), z(1, 1)])
    assert parse_element("f0^0", DISC) == Element.unit(DISC)
    with pytest.raises(QBallError):
        parse_element("z[1,1]^-1", DISC)


def test_division_needs_a_scalar():
    assert parse_element("z[1,1] / (1 + q)", DISC) == Element.letter(DISC, z(1, 1)).scale(1 / (1 + Q))
    with pytest.raises(QBallError):
        parse_element("f0 / z[1,1]", DISC)
    with pytest.raises(ZeroDivisionError):
        parse_element("f0 / (q - q)", DISC)


def test_generator_application():
    z11 = Element.letter(DISC, z(1, 1))
    assert parse_element("En(z[1,1])", DISC) == act(E(1), z11)
    assert parse_element("F1(E1(z[1,1]))", DISC) == act(F(1), act(E(1), z11))
    assert parse_element("K1(z[1,1]) - q^2*z[1,1]", DISC) == Element(DISC)


def test_generator_word():
    shape = Shape(2, 2)
    assert parse_generator_word("En F1\tKi3 K2", shape) == [E(2), F(1), Ki(3), K(2)]
    with pytest.raises(ExprSyntaxError):
        parse_generator_word("E1 z", shape)
    with pytest.raises(ExprSyntaxError):
        parse_generator_word("  ", shape)
    with pytest.raises(IndexRangeError):
        parse_generator_word("E4", shape)


@pytest.mark.parametrize(
    "text",
    [
        "zs[1,1]*z[1,1]",
        "z[1,1]*f0*zs[1,1] / (1 + q)",
        "E1(zs[1,1]) + s^3 * z[1,1]^2",
        "F1(f0) - 3/4",
    ],
)
def test_printed_elements_parse_back(text):
    f = parse_element(text, DISC)
    assert parse_element(format_element(f), DISC) == f


def test_round_trip_on_a_larger_shape():
    shape = Shape(2, 2)
    f = parse_element("zs[1,1]*z[2,2] + zs[2,1]*z[1,2]*f0 - q*z[2,2]*z[1,1]", shape)
    assert parse_element(str(f), shape) == f


def test_json_output():
    f = parse_element("q^2 * z[1,1]*f0*zs[1,1] - 1", DISC)
    payload = json.loads(format_element(f, "json"))
    assert payload == to_json_dict(f)
    assert payload["terms"] == [
        {"coeff": "q^2", "zword": [[1, 1]], "f0": True, "zsword": [[1, 1]]},
        {"coeff": "-1", "zword": [], "f0": False, "zsword": []},
    ]
