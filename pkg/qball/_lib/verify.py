import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from qball._lib import algebra
from qball._lib.action import STANDARD, HopfConvention, generators
from qball._lib.algebra import (
    F0,
    Element,
    NormalMonomial,
    Shape,
    multiply,
    normal_form,
    sandwich_monomials,
    star,
    z,
    zs,
)
from qball._lib.covariance import validate_covariance
from qball._lib.errors import QBallError
from qball._lib.harmonic import (
    check_faithful,
    check_invariance,
    check_positive,
    degree_bound,
    integral_positive,
    t_matrix,
)
from qball._lib.scalar import Q
from qball._lib.static import DEFAULT_DEGREE_CAP, POSITIVITY_GRID, SANDWICH_DEGREE

_logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def __str__(self) -> str:
        if self.passed:
            return f"{self.name}: ok ({self.checks} checks)"
        return f"{self.name}: FAILED: {self.counterexample}"


@dataclass
class VerifyReport:
    shape: Shape
    suites: List[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    @property
    def counterexample(self) -> Optional[str]:
        for suite in self.suites:
            if not suite.passed:
                return f"{suite.name}: {suite.counterexample}"
        return None


def _letter_elements(shape: Shape) -> List[Element]:
    letters = [z(*p) for p in shape.letters()] + [zs(*p) for p in shape.letters()] + [F0]
    return [Element.letter(shape, letter) for letter in letters]


def _relation_suite(result: SuiteResult, shape: Shape, convention: HopfConvention, degree: int) -> None:
    n, m = shape.n, shape.m
    lhs = normal_form(shape, (zs(n, m), z(n, m)))
    rhs = Element.monomial(shape, NormalMonomial(((n, m),), False, ((n, m),)), Q**2) + Element.scalar(
        shape, 1 - Q**2
    )
    result.checks += 1
    if lhs != rhs:
        result.counterexample = f"zs[{n},{m}]*z[{n},{m}] normalizes to {lhs}, expected {rhs}"


def _algebra_suite(result: SuiteResult, shape: Shape, convention: HopfConvention, degree: int) -> None:
    elements = _letter_elements(shape)
    for u in elements:
        for v in elements:
            uv = multiply(u, v)
            result.checks += 1
            if star(uv) != multiply(star(v), star(u)):
                result.counterexample = f"star({u}*{v}) != star({v})*star({u})"
                return
            for w in elements:
                result.checks += 1
                if multiply(uv, w) != multiply(u, multiply(v, w)):
                    result.counterexample = f"({u}*{v})*{w} != {u}*({v}*{w})"
                    return


def _covariance_suite(result: SuiteResult, shape: Shape, convention: HopfConvention, degree: int) -> None:
    report = validate_covariance(shape, convention, degree)
    result.checks += report.checks
    result.counterexample = report.counterexample


def positivity_samples(shape: Shape) -> List[Element]:
    """Sandwich monomials, the differences of neighbouring ones, and a signed sum of the degree-1 ones."""
    monomials = sandwich_monomials(shape, SANDWICH_DEGREE, SANDWICH_DEGREE)
    samples = [Element.monomial(shape, mono) for mono in monomials]
    for left, right in zip(monomials, monomials[1:]):
        samples.append(Element(shape, {left: 1, right: -2}))
    low = sandwich_monomials(shape, 1, 1)
    samples.append(Element(shape, {mono: (-1) ** i * (i + 1) for i, mono in enumerate(low)}))
    return samples


def _positivity_suite(result: SuiteResult, shape: Shape, convention: HopfConvention, degree: int) -> None:
    for j in range(degree + 1):
        for q_value in POSITIVITY_GRID:
            result.checks += 1
            if not check_positive(shape, j, q_value):
                result.counterexample = f"gram matrix of degree {j} is not positive definite at q = {q_value}"
                return
    for f in positivity_samples(shape):
        result.checks += 1
        if not integral_positive(f, Fraction(1, 2)):
            result.counterexample = f"integral of star(f)*f is not positive at q = 1/2 for f = {f}"
            return


def _invariance_suite(result: SuiteResult, shape: Shape, convention: HopfConvention, degree: int) -> None:
    for mono in sandwich_monomials(shape, SANDWICH_DEGREE, SANDWICH_DEGREE):
        f = Element.monomial(shape, mono)
        for g in generators(shape):
            residual = check_invariance(g, f, convention)
            result.checks += 1
            if residual:
                result.counterexample = f"integral of {g}({f}) differs from counit by {residual}"
                return


def _finite_rank_suite(result: SuiteResult, shape: Shape, convention: HopfConvention, degree: int) -> None:
    for mono in sandwich_monomials(shape, SANDWICH_DEGREE, SANDWICH_DEGREE):
        f = Element.monomial(shape, mono)
        bound = degree_bound(f)
        result.checks += 2
        if t_matrix(f, bound) or t_matrix(f, bound + 1):
            result.counterexample = f"T_f does not vanish on H_{bound} for f = {f}"
            return
        if not check_faithful(f):
            result.counterexample = f"T_f vanishes below degree {bound} for f = {f}"
            return


SUITES: List[Callable[[SuiteResult, Shape, HopfConvention, int], None]] = [
    _relation_suite,
    _algebra_suite,
    _covariance_suite,
    _positivity_suite,
    _invariance_suite,
    _finite_rank_suite,
]

SUITE_NAMES = ["relations", "algebra", "covariance", "positivity", "invariance", "finite-rank"]


def run_verify(
    shape: Shape, convention: HopfConvention = STANDARD, degree: int = DEFAULT_DEGREE_CAP
) -> VerifyReport:
    """Runs every suite in order; an error raised inside a suite counts as its counterexample."""
    report = VerifyReport(shape)
    for name, suite in zip(SUITE_NAMES, SUITES):
        result = SuiteResult(name)
        _logger.debug("running suite %s on %s", name, shape)
        try:
            suite(result, shape, convention, degree)
        except QBallError as error:
            result.counterexample = f"{type(error).__name__}: {error}"
        report.suites.append(result)
        _logger.debug("%s", result)
    algebra.log_cache_info()
    return report
