"""Action of the Chevalley generators of U_q sl_N on Fun(U)_q.

Generators act on single letters by explicit tables, on products by the coproduct rule of a
HopfConvention, and on starred letters through g(f*) = (S^-1(g*) f)*.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Sequence, Set, Tuple

from qball._lib.algebra import (
    Element,
    Letter,
    NormalMonomial,
    Shape,
    multiply,
    star,
    z,
)
from qball._lib.errors import ConventionError, IndexRangeError
from qball._lib.scalar import ONE, Q, ZERO, Scalar, s_power
from qball._lib.static import GenKind, LetterKind
from qball._lib.utils import add_term

_logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class QGen:
    kind: str
    k: int

    def __post_init__(self):
        if self.kind not in (GenKind.E, GenKind.F, GenKind.KPLUS, GenKind.KMINUS):
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def check(self, shape: Shape) -> None:
        if not 1 <= self.k <= shape.N - 1:
            raise IndexRangeError(f"generator {self} needs an index in 1..{shape.N - 1}")

    def is_cartan(self) -> bool:
        return self.kind in (GenKind.KPLUS, GenKind.KMINUS)

    def __str__(self) -> str:
        return f"{self.kind}{self.k}"


def E(k: int) -> QGen:
    return QGen(GenKind.E, k)


def F(k: int) -> QGen:
    return QGen(GenKind.F, k)


def K(k: int) -> QGen:
    return QGen(GenKind.KPLUS, k)


def Ki(k: int) -> QGen:
    return QGen(GenKind.KMINUS, k)


def generators(shape: Shape) -> Tuple[QGen, ...]:
    return tuple(
        QGen(kind, k)
        for k in range(1, shape.N)
        for kind in (GenKind.E, GenKind.F, GenKind.KPLUS, GenKind.KMINUS)
    )


def counit(g: QGen) -> Scalar:
    return ONE if g.is_cartan() else ZERO


# Weights


def _letter_weight(shape: Shape, k: int, a: int, alpha: int) -> int:
    n, m, N = shape.n, shape.m, shape.N
    if k == n:
        return int(a == n) + int(alpha == m)
    if k < n:
        return int(a == k) - int(a == k + 1)
    return int(alpha == N - k) - int(alpha == N - k + 1)


@lru_cache(maxsize=None)
def weights(shape: Shape, a: int, alpha: int) -> Weight:
    """H_1..H_{N-1} eigenvalues of z[a, alpha]."""
    return tuple(_letter_weight(shape, k, a, alpha) for k in range(1, shape.N))


@lru_cache(maxsize=None)
def weight_of(shape: Shape, mono: NormalMonomial) -> Weight:
    total = [0] * (shape.N - 1)
    for sign, word in ((1, mono.zword), (-1, mono.zsword)):
        for a, alpha in word:
            for index, value in enumerate(weights(shape, a, alpha)):
                total[index] += sign * value
    return tuple(total)


def _k_power(shape: Shape, k: int, exponent: int, f: Element) -> Element:
    """K_k^exponent, which multiplies a weight vector of H_k-weight w by q^(exponent * w)."""
    if exponent == 0:
        return f
    return Element(
        shape,
        {mono: coeff * s_power(2 * exponent * weight_of(shape, mono)[k - 1]) for mono, coeff in f.items()},
    )


# Generator words


class UqElement:
    """A Scalar-weighted sum of generator words; the word (g1, g2) acts as g1 after g2."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[QGen, ...], Scalar]] = None):
        pruned: Dict[Tuple[QGen, ...], Scalar] = {}
        for word, coeff in (terms or {}).items():
            add_term(pruned, tuple(word), Scalar(coeff))
        self._terms = pruned

    @classmethod
    def of(cls, *word: QGen, coeff=ONE) -> "UqElement":
        return cls({tuple(word): coeff})

    def items(self) -> Iterator[Tuple[Tuple[QGen, ...], Scalar]]:
        return iter(self._terms.items())

    def __add__(self, other: "UqElement") -> "UqElement":
        terms = dict(self._terms)
        for word, coeff in other.items():
            add_term(terms, word, coeff)
        return UqElement(terms)

    def __sub__(self, other: "UqElement") -> "UqElement":
        return self + other.scale(-1)

    def scale(self, coeff) -> "UqElement":
        coeff = Scalar(coeff)
        return UqElement({word: c * coeff for word, c in self.items()})

    def __mul__(self, other: "UqElement") -> "UqElement":
        terms: Dict[Tuple[QGen, ...], Scalar] = {}
        for left, c in self.items():
            for right, d in other.items():
                add_term(terms, left + right, c * d)
        return UqElement(terms)

    def anti_map(self, image) -> "UqElement":
        """Extends a map on generators to an anti-homomorphism on words."""
        result = UqElement()
        for word, coeff in self.items():
            term = UqElement.of(coeff=coeff)
            for g in word:
                term = image(g) * term
            result = result + term
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UqElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(
            f"({coeff}) * {' '.join(str(g) for g in word) or '1'}" for word, coeff in sorted(
                self._terms.items(), key=lambda item: [(g.k, g.kind) for g in item[0]]
            )
        )


def involution(g: QGen, shape: Shape) -> UqElement:
    """(K^{+-1})* = K^{+-1}, E_j* = sign K_j F_j, F_j* = sign E_j K_j^-1; the sign is -1 iff j = n."""
    sign = -1 if g.k == shape.n else 1
    if g.kind == GenKind.E:
        return UqElement.of(K(g.k), F(g.k), coeff=sign)
    if g.kind == GenKind.F:
        return UqElement.of(E(g.k), Ki(g.k), coeff=sign)
    return UqElement.of(g)


def antipode(g: QGen) -> UqElement:
    if g.kind == GenKind.E:
        return UqElement.of(Ki(g.k), E(g.k), coeff=-1)
    if g.kind == GenKind.F:
        return UqElement.of(F(g.k), K(g.k), coeff=-1)
    return UqElement.of(Ki(g.k) if g.kind == GenKind.KPLUS else K(g.k))


def antipode_inverse(g: QGen) -> UqElement:
    if g.kind == GenKind.E:
        return UqElement.of(E(g.k), Ki(g.k), coeff=-1)
    if g.kind == GenKind.F:
        return UqElement.of(K(g.k), F(g.k), coeff=-1)
    return antipode(g)


@lru_cache(maxsize=None)
def theta(g: QGen, shape: Shape) -> UqElement:
    """S^-1(g*), the operator whose action on f gives the star of g acting on f*."""
    return involution(g, shape).anti_map(antipode_inverse)


# Conventions


@dataclass(frozen=True)
class HopfConvention:
    """Coproduct of the form g⊗K^right + K^left⊗g, stored as (left, right) exponents per kind.

    The antipode tables above are shared by every convention.
    """

    name: str
    e_twist: Tuple[int, int]
    f_twist: Tuple[int, int]

    def twist(self, g: QGen) -> Tuple[int, int]:
        return self.e_twist if g.kind == GenKind.E else self.f_twist


# E(uv) = E(u) v + K(u) E(v), F(uv) = F(u) K^-1(v) + u F(v)
STANDARD = HopfConvention("standard", e_twist=(1, 0), f_twist=(0, -1))
# The opposite coproduct; it does not preserve the relations.
OPPOSITE = HopfConvention("opposite", e_twist=(0, 1), f_twist=(-1, 0))

CONVENTIONS = {STANDARD.name: STANDARD, OPPOSITE.name: OPPOSITE}

_validated: Set[Tuple[Shape, HopfConvention]] = set()


def register_convention(shape: Shape, convention: HopfConvention) -> None:
    _logger.debug("convention %s validated for %s", convention.name, shape)
    _validated.add((shape, convention))


def is_registered(shape: Shape, convention: HopfConvention) -> bool:
    return convention == STANDARD or (shape, convention) in _validated


# Base cases


def _product(shape: Shape, *letters: Letter) -> Element:
    result = Element.unit(shape)
    for letter in letters:
        result = multiply(result, Element.letter(shape, letter))
    return result


def act_on_z(shape: Shape, g: QGen, a: int, alpha: int) -> Element:
    g.check(shape)
    shape.check_pair(a, alpha)
    n, m, N, k = shape.n, shape.m, shape.N, g.k
    letter = Element.letter(shape, z(a, alpha))
    if g.is_cartan():
        return _k_power(shape, k, 1 if g.kind == GenKind.KPLUS else -1, letter)
    s = s_power(1)
    if k == n:
        if g.kind == GenKind.F:
            return Element.scalar(shape, s if (a == n and alpha == m) else ZERO)
        if a != n and alpha != m:
            return _product(shape, z(a, m), z(n, alpha)).scale(-s * s_power(-2))
        if a == n and alpha == m:
            return _product(shape, z(n, m), z(n, m)).scale(-s)
        return _product(shape, z(n, m), z(a, alpha)).scale(-s)
    zero = Element(shape)
    if g.kind == GenKind.F:
        if k < n and a == k:
            return Element.letter(shape, z(a + 1, alpha)).scale(s)
        if k > n and alpha == N - k:
            return Element.letter(shape, z(a, alpha + 1)).scale(s)
        return zero
    if k < n and a == k + 1:
        return Element.letter(shape, z(a - 1, alpha)).scale(s_power(-1))
    if k > n and alpha == N - k + 1:
        return Element.letter(shape, z(a, alpha - 1)).scale(s_power(-1))
    return zero


def act_on_f0(shape: Shape, g: QGen) -> Element:
    g.check(shape)
    f0 = Element.monomial(shape, NormalMonomial(has_f0=True))
    if g.is_cartan():
        return f0
    if g.k != shape.n:
        return Element(shape)
    s = s_power(1)
    if g.kind == GenKind.E:
        top = NormalMonomial(zword=((shape.n, shape.m),), has_f0=True)
        return Element.monomial(shape, top, -s / (1 - Q**2))
    bottom = NormalMonomial(has_f0=True, zsword=((shape.n, shape.m),))
    return Element.monomial(shape, bottom, -s / (s_power(-4) - 1))


@lru_cache(maxsize=None)
def act_on_zstar(shape: Shape, g: QGen, a: int, alpha: int, convention: HopfConvention = STANDARD) -> Element:
    g.check(shape)
    shape.check_pair(a, alpha)
    result = star(_apply(theta(g, shape), Element.letter(shape, z(a, alpha)), convention))
    _logger.debug("%s zs[%d,%d] = %s", g, a, alpha, result)
    return result


def _act_on_letter(shape: Shape, g: QGen, letter: Letter, convention: HopfConvention) -> Element:
    if letter.kind == LetterKind.Z:
        return act_on_z(shape, g, letter.a, letter.alpha)
    if letter.kind == LetterKind.ZSTAR:
        return act_on_zstar(shape, g, letter.a, letter.alpha, convention)
    return act_on_f0(shape, g)


def _leibniz(g: QGen, u: Element, g_u: Element, v: Element, g_v: Element, convention: HopfConvention) -> Element:
    if g.is_cartan():
        return multiply(g_u, g_v)
    left, right = convention.twist(g)
    shape = u.shape
    return multiply(g_u, _k_power(shape, g.k, right, v)) + multiply(_k_power(shape, g.k, left, u), g_v)


def _rest(mono: NormalMonomial) -> NormalMonomial:
    if mono.zword:
        return NormalMonomial(mono.zword[1:], mono.has_f0, mono.zsword)
    if mono.has_f0:
        return NormalMonomial((), False, mono.zsword)
    return NormalMonomial((), False, mono.zsword[1:])


@lru_cache(maxsize=None)
def _act_on_monomial(shape: Shape, g: QGen, mono: NormalMonomial, convention: HopfConvention) -> Element:
    letters = mono.letters()
    if not letters:
        return Element.scalar(shape, counit(g))
    if len(letters) == 1:
        return _act_on_letter(shape, g, letters[0], convention)
    rest = _rest(mono)
    return _leibniz(
        g,
        Element.letter(shape, letters[0]),
        _act_on_letter(shape, g, letters[0], convention),
        Element.monomial(shape, rest),
        _act_on_monomial(shape, g, rest, convention),
        convention,
    )


def act_on_word(shape: Shape, g: QGen, word: Sequence[Letter], convention: HopfConvention = STANDARD) -> Element:
    """g applied to the product of a free word, expanded letter by letter with the coproduct.

    No relation is used before the generator acts, so comparing both sides of a relation
    tests whether the action respects it.
    """
    g.check(shape)
    if not word:
        return Element.scalar(shape, counit(g))
    if len(word) == 1:
        return _act_on_letter(shape, g, word[0], convention)
    return _leibniz(
        g,
        Element.letter(shape, word[0]),
        _act_on_letter(shape, g, word[0], convention),
        _product(shape, *word[1:]),
        act_on_word(shape, g, word[1:], convention),
        convention,
    )


def _act_unchecked(g: QGen, f: Element, convention: HopfConvention) -> Element:
    result = Element(f.shape)
    for mono, coeff in f.items():
        result = result + _act_on_monomial(f.shape, g, mono, convention).scale(coeff)
    return result


def act(g: QGen, f: Element, convention: HopfConvention = STANDARD) -> Element:
    g.check(f.shape)
    if not is_registered(f.shape, convention):
        raise ConventionError(
            f"convention {convention.name!r} has not passed covariance validation for {f.shape}"
        )
    return _act_unchecked(g, f, convention)


def _apply(x: UqElement, f: Element, convention: HopfConvention) -> Element:
    result = Element(f.shape)
    for word, coeff in x.items():
        term = f
        for g in reversed(word):
            term = _act_unchecked(g, term, convention)
        result = result + term.scale(coeff)
    return result


def apply(x: UqElement, f: Element, convention: HopfConvention = STANDARD) -> Element:
    if not is_registered(f.shape, convention):
        raise ConventionError(
            f"convention {convention.name!r} has not passed covariance validation for {f.shape}"
        )
    for word, _ in x.items():
        for g in word:
            g.check(f.shape)
    return _apply(x, f, convention)


def act_word(word: Sequence[QGen], f: Element, convention: HopfConvention = STANDARD) -> Element:
    """Applies the generators in the order written: the first one acts first."""
    for g in word:
        f = act(g, f, convention)
    return f


def act_on_product(g: QGen, u: Element, v: Element, convention: HopfConvention = STANDARD) -> Element:
    """g(uv) expanded through the coproduct of ``convention`` from g(u) and g(v)."""
    g_u, g_v = act(g, u, convention), act(g, v, convention)
    return _leibniz(g, u, g_u, v, g_v, convention)
