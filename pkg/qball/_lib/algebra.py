"""Normal ordering in Pol(Mat_mn)_q extended by the delta element f0.

A normal monomial is a z-word sorted ascending in (row, column), an optional f0, and a
z*-word sorted descending, so that the star of a normal monomial is again normal. Products
are straightened with the commutation relations of the algebra and the rules
f0 z = 0, z* f0 = 0, f0 f0 = f0.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from qball._lib.errors import IndexRangeError, ShapeError
from qball._lib.scalar import ONE, Q, ZERO, Scalar, s_power
from qball._lib.static import LetterKind
from qball._lib.utils import Pair, add_term, sorted_words

_logger = logging.getLogger(__name__)

Word = Tuple[Pair, ...]
Combination = Tuple[Tuple[object, Scalar], ...]
Coefficient = Union[Scalar, int, Fraction]


@dataclass(frozen=True)
class Shape:
    """n x m matrices: rows a in 1..n, columns alpha in 1..m."""

    m: int
    n: int
    # Replaces the diagonal R' entry 1 by q. Only used to show that verification catches it.
    faulty_r_prime: bool = False

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)) or self.m < 1 or self.n < 1:
            raise ShapeError(f"m and n must be positive integers, got m={self.m!r}, n={self.n!r}")

    @property
    def N(self) -> int:
        return self.m + self.n

    def letters(self) -> List[Pair]:
        return [(a, alpha) for a in range(1, self.n + 1) for alpha in range(1, self.m + 1)]

    def check_pair(self, a: int, alpha: int) -> None:
        if not (1 <= a <= self.n and 1 <= alpha <= self.m):
            raise IndexRangeError(f"z[{a},{alpha}] is outside the {self.n}x{self.m} shape")


@dataclass(frozen=True)
class Letter:
    kind: str
    a: Optional[int] = None
    alpha: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == LetterKind.F0:
            return "f0"
        return f"{self.kind}[{self.a},{self.alpha}]"


F0 = Letter(LetterKind.F0)


def z(a: int, alpha: int) -> Letter:
    return Letter(LetterKind.Z, a, alpha)


def zs(a: int, alpha: int) -> Letter:
    return Letter(LetterKind.ZSTAR, a, alpha)


@dataclass(frozen=True)
class NormalMonomial:
    zword: Word = ()
    has_f0: bool = False
    zsword: Word = ()

    def __post_init__(self):
        assert list(self.zword) == sorted(self.zword), self.zword
        assert list(self.zsword) == sorted(self.zsword, reverse=True), self.zsword

    @property
    def degree(self) -> int:
        return len(self.zword) + len(self.zsword)

    def is_unit(self) -> bool:
        return not (self.zword or self.has_f0 or self.zsword)

    def letters(self) -> Tuple[Letter, ...]:
        head = tuple(z(a, alpha) for a, alpha in self.zword)
        middle = (F0,) if self.has_f0 else ()
        return head + middle + tuple(zs(a, alpha) for a, alpha in self.zsword)

    def sort_key(self):
        # higher degree first, then z-part, f0, z*-part
        return (-self.degree, -len(self.zword), self.zword, not self.has_f0, self.zsword)

    def __str__(self) -> str:
        if self.is_unit():
            return "1"
        return "*".join(str(letter) for letter in self.letters())


UNIT = NormalMonomial()
F0_MONOMIAL = NormalMonomial(has_f0=True)


def _letter_monomial(letter: Letter) -> NormalMonomial:
    if letter.kind == LetterKind.Z:
        return NormalMonomial(zword=((letter.a, letter.alpha),))
    if letter.kind == LetterKind.ZSTAR:
        return NormalMonomial(zsword=((letter.a, letter.alpha),))
    return F0_MONOMIAL


class Element:
    """A finite Scalar-weighted sum of normal monomials; immutable and zero-pruned."""

    __slots__ = ("shape", "_terms")

    def __init__(self, shape: Shape, terms: Optional[Mapping[NormalMonomial, Coefficient]] = None):
        self.shape = shape
        pruned: Dict[NormalMonomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            add_term(pruned, mono, Scalar(coeff))
        self._terms = pruned

    @classmethod
    def scalar(cls, shape: Shape, coeff: Coefficient) -> "Element":
        return cls(shape, {UNIT: coeff})

    @classmethod
    def unit(cls, shape: Shape) -> "Element":
        return cls(shape, {UNIT: ONE})

    @classmethod
    def monomial(cls, shape: Shape, mono: NormalMonomial, coeff: Coefficient = ONE) -> "Element":
        return cls(shape, {mono: coeff})

    @classmethod
    def letter(cls, shape: Shape, letter: Letter) -> "Element":
        if letter.kind != LetterKind.F0:
            shape.check_pair(letter.a, letter.alpha)
        return cls(shape, {_letter_monomial(letter): ONE})

    @property
    def terms(self) -> Mapping[NormalMonomial, Scalar]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[Tuple[NormalMonomial, Scalar]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> List[Tuple[NormalMonomial, Scalar]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, mono: NormalMonomial) -> Scalar:
        return self._terms.get(mono, ZERO)

    def scalar_value(self) -> Optional[Scalar]:
        """The coefficient of 1 when the element is a multiple of the unit, else None."""
        if not self._terms:
            return ZERO
        if set(self._terms) == {UNIT}:
            return self._terms[UNIT]
        return None

    def _check_shape(self, other: "Element") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"elements of different shapes: {self.shape} and {other.shape}")

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._check_shape(other)
        terms = dict(self._terms)
        for mono, coeff in other.items():
            add_term(terms, mono, coeff)
        return Element(self.shape, terms)

    def __neg__(self) -> "Element":
        return Element(self.shape, {mono: -coeff for mono, coeff in self.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Coefficient) -> "Element":
        coeff = Scalar(coeff)
        return Element(self.shape, {mono: c * coeff for mono, c in self.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "Element":
        if exponent < 0:
            raise ValueError("elements only have non-negative powers")
        result = Element.unit(self.shape)
        for _ in range(exponent):
            result = multiply(result, self)
        return result

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.shape == other.shape and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Element({self.shape.m}x{self.shape.n}: {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        result = ""
        for index, (mono, coeff) in enumerate(self.sorted_terms()):
            term = _format_term(mono, coeff)
            if index == 0:
                result = term
            elif term.startswith("-"):
                result += " - " + term[1:]
            else:
                result += " + " + term
        return result


def _format_term(mono: NormalMonomial, coeff: Scalar) -> str:
    text = str(coeff)
    if mono.is_unit():
        return text if coeff.is_atomic() else f"({text})"
    if coeff == 1:
        return str(mono)
    if coeff == -1:
        return f"-{mono}"
    if coeff.is_atomic():
        return f"{text} * {mono}"
    return f"({text}) * {mono}"


def _r_entry(b: int, a: int, b2: int, a2: int, diagonal: Scalar = ONE) -> Scalar:
    if a != b and b == b2 and a == a2:
        return s_power(-2)
    if a == b == b2 == a2:
        return diagonal
    if a == b and a2 == b2 and a2 > a:
        return -(s_power(-4) - 1)
    return ZERO


def r_prime(shape: Shape, b: int, a: int, b2: int, a2: int) -> Scalar:
    if not all(1 <= index <= shape.n for index in (b, a, b2, a2)):
        raise IndexRangeError(f"row indices {(b, a, b2, a2)} outside 1..{shape.n}")
    return _r_entry(b, a, b2, a2, Q if shape.faulty_r_prime else ONE)


def r_double_prime(shape: Shape, beta2: int, alpha2: int, beta: int, alpha: int) -> Scalar:
    if not all(1 <= index <= shape.m for index in (beta2, alpha2, beta, alpha)):
        raise IndexRangeError(f"column indices {(beta2, alpha2, beta, alpha)} outside 1..{shape.m}")
    return _r_entry(beta, alpha, beta2, alpha2)


def z_swap(x: Pair, y: Pair) -> Combination:
    """Rewrites z_x z_y with x > y as a combination of ascending two-letter z-words."""
    assert x > y
    (b, beta), (a, alpha) = x, y
    if a == b or alpha == beta:
        return (((y, x), s_power(-2)),)
    if alpha > beta:
        return (((y, x), ONE),)
    return (((y, x), ONE), (((a, beta), (b, alpha)), -(Q - s_power(-2))))


@lru_cache(maxsize=None)
def _z_sort(word: Word) -> Combination:
    for i in range(len(word) - 1):
        if word[i] > word[i + 1]:
            break
    else:
        return ((word, ONE),)
    result: Dict[Word, Scalar] = {}
    for swapped, coeff in z_swap(word[i], word[i + 1]):
        for sorted_word, sorted_coeff in _z_sort(word[:i] + swapped + word[i + 2 :]):
            add_term(result, sorted_word, coeff * sorted_coeff)
    return tuple(result.items())


@lru_cache(maxsize=None)
def _zs_sort(word: Word) -> Combination:
    # The z*-relations are the stars of the z-relations, and every coefficient is real.
    return tuple((tuple(reversed(w)), coeff) for w, coeff in _z_sort(tuple(reversed(word))))


@lru_cache(maxsize=None)
def mixed_rule(shape: Shape, starred: Pair, plain: Pair) -> Combination:
    """Rewrites z*_starred z_plain as a combination of (z-word, z*-word) pairs."""
    (b, beta), (a, alpha) = starred, plain
    result: Dict[Tuple[Word, Word], Scalar] = {}
    for b2 in range(1, shape.n + 1):
        for a2 in range(1, shape.n + 1):
            row = r_prime(shape, b, a, b2, a2)
            if not row:
                continue
            for beta2 in range(1, shape.m + 1):
                for alpha2 in range(1, shape.m + 1):
                    column = r_double_prime(shape, beta2, alpha2, beta, alpha)
                    if column:
                        add_term(result, (((a2, alpha2),), ((b2, beta2),)), Q**2 * row * column)
    if starred == plain:
        add_term(result, ((), ()), 1 - Q**2)
    return tuple(result.items())


@lru_cache(maxsize=None)
def _straighten(shape: Shape, zsword: Word, zword: Word) -> Combination:
    """Moves a z*-word past a z-word; the result pairs are (sorted z-word, sorted z*-word)."""
    result: Dict[Tuple[Word, Word], Scalar] = {}
    if not zsword or not zword:
        for w, c in _z_sort(zword):
            for ws, cs in _zs_sort(zsword):
                add_term(result, (w, ws), c * cs)
    elif len(zsword) == 1:
        first, rest = zword[0], zword[1:]
        for (head, starred), coeff in mixed_rule(shape, zsword[0], first):
            if not starred:
                for w, c in _z_sort(rest):
                    add_term(result, (w, ()), coeff * c)
                continue
            for (w, ws), c in _straighten(shape, starred, rest):
                for w2, c2 in _z_sort(head + w):
                    add_term(result, (w2, ws), coeff * c * c2)
    else:
        head, last = zsword[:-1], zsword[-1:]
        for (w, ws), coeff in _straighten(shape, last, zword):
            for (w2, ws2), c in _straighten(shape, head, w):
                for ws3, c2 in _zs_sort(ws2 + ws):
                    add_term(result, (w2, ws3), coeff * c * c2)
    return tuple(result.items())


@lru_cache(maxsize=None)
def _monomial_product(shape: Shape, left: NormalMonomial, right: NormalMonomial) -> Combination:
    result: Dict[NormalMonomial, Scalar] = {}
    for (w, ws), coeff in _straighten(shape, left.zsword, right.zword):
        if (left.has_f0 and w) or (right.has_f0 and ws):
            continue
        for zword, c in _z_sort(left.zword + w):
            for zsword, cs in _zs_sort(ws + right.zsword):
                mono = NormalMonomial(zword, left.has_f0 or right.has_f0, zsword)
                add_term(result, mono, coeff * c * cs)
    return tuple(result.items())


def multiply(f: Element, g: Element) -> Element:
    if f.shape != g.shape:
        raise ShapeError(f"elements of different shapes: {f.shape} and {g.shape}")
    result: Dict[NormalMonomial, Scalar] = {}
    for left, c in f.items():
        for right, d in g.items():
            for mono, e in _monomial_product(f.shape, left, right):
                add_term(result, mono, c * d * e)
    return Element(f.shape, result)


def normal_form(shape: Shape, word: Sequence[Letter], coeff: Coefficient = ONE) -> Element:
    result = Element.scalar(shape, coeff)
    for letter in word:
        result = multiply(result, Element.letter(shape, letter))
    return result


def star_monomial(mono: NormalMonomial) -> NormalMonomial:
    return NormalMonomial(tuple(reversed(mono.zsword)), mono.has_f0, tuple(reversed(mono.zword)))


def star(f: Element) -> Element:
    # coefficients are real rational functions, so conjugation is the identity on them
    return Element(f.shape, {star_monomial(mono): coeff for mono, coeff in f.items()})


def bidegree(mono: NormalMonomial) -> Tuple[int, int, bool]:
    return len(mono.zword), len(mono.zsword), mono.has_f0


def project_finite(f: Element) -> Element:
    return Element(f.shape, {mono: coeff for mono, coeff in f.items() if mono.has_f0})


def is_finite(f: Element) -> bool:
    return all(mono.has_f0 for mono in f.terms)


def monomials_up_to(shape: Shape, degree: int) -> List[NormalMonomial]:
    """Every normal monomial of total z/z* degree at most ``degree``, with and without f0."""
    letters = shape.letters()
    result = []
    for total in range(degree + 1):
        for left in range(total, -1, -1):
            for zword in sorted_words(letters, left):
                for zsword in sorted_words(letters, total - left):
                    for has_f0 in (False, True):
                        result.append(NormalMonomial(zword, has_f0, tuple(reversed(zsword))))
    return result


def sandwich_monomials(shape: Shape, left: int, right: int) -> List[NormalMonomial]:
    """The monomials psi f0 phi* with deg psi <= left and deg phi <= right."""
    letters = shape.letters()
    return [
        NormalMonomial(zword, True, tuple(reversed(phi)))
        for i in range(left + 1)
        for zword in sorted_words(letters, i)
        for j in range(right + 1)
        for phi in sorted_words(letters, j)
    ]


def _order_key(letter: Letter):
    if letter.kind == LetterKind.Z:
        return (0, letter.a, letter.alpha)
    if letter.kind == LetterKind.F0:
        return (1, 0, 0)
    return (2, -letter.a, -letter.alpha)


def inversion_count(word: Sequence[Letter]) -> int:
    """Pairs of letters that stand in the opposite of the normal order."""
    keys = [_order_key(letter) for letter in word]
    return sum(1 for i in range(len(keys)) for j in range(i + 1, len(keys)) if keys[i] > keys[j])


def cache_info() -> Dict[str, object]:
    return {
        "z_sort": _z_sort.cache_info(),
        "straighten": _straighten.cache_info(),
        "monomial_product": _monomial_product.cache_info(),
    }


def log_cache_info() -> None:
    for name, info in cache_info().items():
        _logger.debug("%s cache: %s", name, info)
