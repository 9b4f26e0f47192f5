from fractions import Fraction
from typing import Dict, Tuple, Union

from sympy import QQ
from sympy.polys.fields import field

from qball._lib.errors import IrrationalValueError, PoleError


# Ground field Q(s) with s = q^(1/2).
FIELD, _S = field("s", QQ)

Number = Union[int, Fraction]


def _to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _poly_terms(poly) -> Dict[int, Fraction]:
    return {monom[0]: _to_fraction(coeff) for monom, coeff in poly.items()}


class Scalar:
    """An immutable element of Q(s), the rational functions in s = q^(1/2) over the rationals.

    Equality is decided on the reduced fraction, so Scalars can be compared and hashed
    structurally and used as coefficients of algebra elements.
    """

    __slots__ = ("_value",)

    def __init__(self, value: Union["Scalar", Number] = 0):
        if isinstance(value, Scalar):
            value = value._value
        elif isinstance(value, Fraction):
            value = FIELD.ground_new(QQ(value.numerator, value.denominator))
        elif isinstance(value, int):
            value = FIELD.ground_new(value)
        elif not FIELD.is_element(value):
            raise TypeError(f"cannot build a Scalar from {value!r}")
        self._value = value

    @classmethod
    def _coerce(cls, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self._value + other._value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self._value - other._value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(other._value - self._value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self._value * other._value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by the zero Scalar")
        return Scalar(self._value / other._value)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self) -> "Scalar":
        return Scalar(-self._value)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0 and not self:
            raise ZeroDivisionError("negative power of the zero Scalar")
        return Scalar(self._value**exponent)

    def __bool__(self) -> bool:
        return bool(self._value.numer)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return not (self._value - other._value).numer

    def __hash__(self) -> int:
        numerator, denominator = self.canonical_terms()
        # Constants must hash like the int or Fraction they compare equal to.
        if denominator == {0: 1} and set(numerator) <= {0}:
            return hash(numerator.get(0, Fraction(0)))
        return hash((tuple(sorted(numerator.items())), tuple(sorted(denominator.items()))))

    def canonical(self) -> "Scalar":
        return Scalar(FIELD.new(self._value.numer, self._value.denom))

    def canonical_terms(self) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
        """Returns ``(numerator, denominator)`` as exponent -> coefficient maps, denominator monic."""
        denom = self._value.denom
        lead = denom.LC
        return _poly_terms(self._value.numer.quo_ground(lead)), _poly_terms(denom.monic())

    def laurent_terms(self) -> Union[Dict[int, Fraction], None]:
        """Returns the s-exponent -> coefficient map when the denominator is a single term, else None."""
        numerator, denominator = self.canonical_terms()
        if len(denominator) != 1:
            return None
        (shift, lead), = denominator.items()
        return {exponent - shift: coeff / lead for exponent, coeff in numerator.items()}

    def is_atomic(self) -> bool:
        """True for a single term c*s^k, which prints without surrounding parentheses."""
        terms = self.laurent_terms()
        return terms is not None and len(terms) <= 1

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        terms = self.laurent_terms()
        if terms is not None:
            return _format_poly(terms, _variable(terms))
        numerator, denominator = self.canonical_terms()
        variable = _variable({**numerator, **denominator})
        return f"({_format_poly(numerator, variable)})/({_format_poly(denominator, variable)})"


def _variable(terms: Dict[int, Fraction]) -> str:
    return "q" if all(exponent % 2 == 0 for exponent in terms) else "s"


def _format_term(coeff: Fraction, exponent: int, variable: str) -> str:
    if exponent == 0:
        return str(coeff)
    power = variable if exponent == 1 else f"{variable}^{exponent}"
    if coeff == 1:
        return power
    if coeff == -1:
        return f"-{power}"
    return f"{coeff}*{power}"


def _format_poly(terms: Dict[int, Fraction], variable: str) -> str:
    """Ascending powers, e.g. ``1 - q^2`` or ``q^-2 - 1``."""
    if not terms:
        return "0"
    step = 2 if variable == "q" else 1
    result = ""
    for index, exponent in enumerate(sorted(terms)):
        term = _format_term(terms[exponent], exponent // step, variable)
        if index == 0:
            result = term
        elif term.startswith("-"):
            result += " - " + term[1:]
        else:
            result += " + " + term
    return result


ZERO = Scalar(0)
ONE = Scalar(1)


def s_power(k: int) -> Scalar:
    """s^k, so that s_power(2 * k) is q^k."""
    return Scalar(_S**k)


Q = s_power(2)
Q_HALF = s_power(1)


def q_integer(k: int) -> Scalar:
    """The symmetric q-number [k] = (q^k - q^-k)/(q - q^-1)."""
    return (s_power(2 * k) - s_power(-2 * k)) / (Q - s_power(-2))


def _evaluate_poly(terms: Dict[int, Fraction], q_value: Fraction) -> Fraction:
    result = Fraction(0)
    for exponent, coeff in terms.items():
        if exponent % 2:
            raise IrrationalValueError(f"s^{exponent} is irrational at rational q = {q_value}")
        result += coeff * q_value ** (exponent // 2)
    return result


def evaluate_at(x: Scalar, q_value: Fraction) -> Fraction:
    """Exact value of ``x`` at the rational point ``q = q_value``."""
    q_value = Fraction(q_value)
    numerator, denominator = x.canonical_terms()
    denominator_value = _evaluate_poly(denominator, q_value)
    if denominator_value == 0:
        raise PoleError(f"{x} has a pole at q = {q_value}")
    return _evaluate_poly(numerator, q_value) / denominator_value


def parse_fraction(text: str) -> Fraction:
    """Reads ``p/r`` or an integer, as given on the command line."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as error:
        raise ValueError(f"not a rational number: {text!r}") from error
