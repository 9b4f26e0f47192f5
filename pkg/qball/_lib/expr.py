"""Text syntax for elements of Fun(U)_q.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" ["-"] INT)?
    atom    := INT | "q" | "s" | "f0" | ("z" | "zs") "[" INT "," INT "]"
             | GEN "(" expr ")" | "(" expr ")"

GEN is E<k>, F<k>, K<k> or Ki<k>, where <k> is an index or the letter n.
"""
import json
import re
from dataclasses import dataclass
from typing import List, Optional, Union

from qball._lib.action import STANDARD, HopfConvention, QGen, act
from qball._lib.algebra import F0, Element, Letter, Shape, z, zs
from qball._lib.errors import ExprSyntaxError, IndexRangeError, QBallError
from qball._lib.scalar import Q_HALF, Q, Scalar
from qball._lib.static import LetterKind

_TOKEN = re.compile(r"(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],]))")
_GENERATOR = re.compile(r"^(Ki|E|F|K)(\d+|n)$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        char = text[position]
        if char == "\n":
            line, line_start, position = line + 1, position + 1, position + 1
            continue
        if char.isspace():
            position += 1
            continue
        match = _TOKEN.match(text, position)
        if not match:
            raise ExprSyntaxError(f"unexpected character {char!r}", line, position - line_start + 1)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), line, start - line_start + 1))
        position = match.end()
    tokens.append(Token("end", "", line, position - line_start + 1))
    return tokens


# Syntax tree


@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class LetterNode:
    letter: Letter


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Apply:
    generator: QGen
    operand: "Node"


Node = Union[Number, Symbol, LetterNode, Neg, Binary, Pow, Apply]


class _Parser:
    def __init__(self, text: str, shape: Shape):
        self.tokens = tokenize(text)
        self.index = 0
        self.shape = shape

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ExprSyntaxError:
        token = token or self.current
        found = repr(token.text) if token.text else "end of input"
        return ExprSyntaxError(f"{message}, found {found}", token.line, token.column)

    def expect(self, text: str) -> Token:
        if self.current.text != text:
            raise self.error(f"expected {text!r}")
        return self.advance()

    def integer(self) -> int:
        if self.current.kind != "int":
            raise self.error("expected an integer")
        return int(self.advance().text)

    def parse(self) -> "Node":
        node = self.expr()
        if self.current.kind != "end":
            raise self.error("unexpected token")
        return node

    def expr(self) -> "Node":
        node = self.term()
        while self.current.text in ("+", "-"):
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> "Node":
        node = self.unary()
        while self.current.text in ("*", "/"):
            op = self.advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self) -> "Node":
        if self.current.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> "Node":
        node = self.atom()
        if self.current.text == "^":
            self.advance()
            sign = 1
            if self.current.text == "-":
                self.advance()
                sign = -1
            node = Pow(node, sign * self.integer())
        return node

    def atom(self) -> "Node":
        token = self.current
        if token.kind == "int":
            return Number(int(self.advance().text))
        if token.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if token.kind != "name":
            raise self.error("expected an operand")
        self.advance()
        if token.text in ("q", "s"):
            return Symbol(token.text)
        if token.text == "f0":
            return LetterNode(F0)
        if token.text in (LetterKind.Z, LetterKind.ZSTAR):
            return LetterNode(self.letter(token))
        generator = _GENERATOR.match(token.text)
        if generator:
            g = self.generator(token, generator.group(1), generator.group(2))
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return Apply(g, node)
        raise self.error("unknown name", token)

    def letter(self, token: Token) -> Letter:
        self.expect("[")
        a = self.integer()
        self.expect(",")
        alpha = self.integer()
        self.expect("]")
        if not (1 <= a <= self.shape.n and 1 <= alpha <= self.shape.m):
            text = f"{token.text}[{a},{alpha}]"
            raise IndexRangeError(
                f"index out of range for shape m={self.shape.m}, n={self.shape.n}", text, token.line, token.column
            )
        return z(a, alpha) if token.text == LetterKind.Z else zs(a, alpha)

    def generator(self, token: Token, kind: str, index: str) -> QGen:
        return _generator(self.shape, kind, index, token)


def _generator(shape: Shape, kind: str, index: str, token: Token) -> QGen:
    k = shape.n if index == "n" else int(index)
    if not 1 <= k <= shape.N - 1:
        raise IndexRangeError(f"generator index outside 1..{shape.N - 1}", token.text, token.line, token.column)
    return QGen(kind, k)


def parse(text: str, shape: Shape) -> Node:
    return _Parser(text, shape).parse()


def parse_generator_word(text: str, shape: Shape) -> List[QGen]:
    """Reads a whitespace separated list such as ``En F1 Ki2``."""
    word = []
    for token in tokenize(text)[:-1]:
        match = _GENERATOR.match(token.text) if token.kind == "name" else None
        if not match:
            raise ExprSyntaxError(f"expected a generator token, found {token.text!r}", token.line, token.column)
        word.append(_generator(shape, match.group(1), match.group(2), token))
    if not word:
        raise ExprSyntaxError("expected at least one generator", 1, 1)
    return word


# Evaluation


def _as_scalar(f: Element, what: str) -> Scalar:
    value = f.scalar_value()
    if value is None:
        raise QBallError(f"{what} must be a scalar, got {f}")
    return value


def evaluate(node: Node, shape: Shape, convention: HopfConvention = STANDARD) -> Element:
    if isinstance(node, Number):
        return Element.scalar(shape, node.value)
    if isinstance(node, Symbol):
        return Element.scalar(shape, Q if node.name == "q" else Q_HALF)
    if isinstance(node, LetterNode):
        return Element.letter(shape, node.letter)
    if isinstance(node, Neg):
        return -evaluate(node.operand, shape, convention)
    if isinstance(node, Apply):
        return act(node.generator, evaluate(node.operand, shape, convention), convention)
    if isinstance(node, Pow):
        base = evaluate(node.base, shape, convention)
        if node.exponent >= 0:
            return base**node.exponent
        return Element.scalar(shape, _as_scalar(base, "a base with a negative exponent") ** node.exponent)
    left = evaluate(node.left, shape, convention)
    right = evaluate(node.right, shape, convention)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left.scale(1 / _as_scalar(right, "a divisor"))


def parse_element(text: str, shape: Shape, convention: HopfConvention = STANDARD) -> Element:
    return evaluate(parse(text, shape), shape, convention)


# Output


def to_json_dict(f: Element) -> dict:
    return {
        "terms": [
            {
                "coeff": str(coeff),
                "zword": [list(pair) for pair in mono.zword],
                "f0": mono.has_f0,
                "zsword": [list(pair) for pair in mono.zsword],
            }
            for mono, coeff in f.sorted_terms()
        ]
    }


def format_element(f: Element, output_format: str = "text") -> str:
    if output_format == "json":
        return json.dumps(to_json_dict(f))
    return str(f)
