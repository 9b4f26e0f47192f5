"""Mechanical proof, for one shape at a time, that a HopfConvention gives a module algebra."""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from qball._lib.action import (
    HopfConvention,
    STANDARD,
    UqElement,
    _act_unchecked,
    _apply,
    act_on_word,
    antipode,
    antipode_inverse,
    generators,
    register_convention,
    theta,
    E,
    F,
    K,
    Ki,
)
from qball._lib.algebra import (
    F0,
    Element,
    Letter,
    Shape,
    mixed_rule,
    monomials_up_to,
    normal_form,
    star,
    z,
    z_swap,
    zs,
)
from qball._lib.scalar import ONE, Q, Scalar, q_integer, s_power
from qball._lib.static import DEFAULT_DEGREE_CAP, SERRE_DEGREE

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Relation:
    """sum(coeff * word) = 0 in the algebra."""

    name: str
    terms: Tuple[Tuple[Scalar, Tuple[Letter, ...]], ...]

    def __str__(self) -> str:
        return self.name


@dataclass
class CovarianceReport:
    shape: Shape
    convention: HopfConvention
    checks: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def fail(self, message: str) -> None:
        if self.counterexample is None:
            self.counterexample = message


def _word_text(word: Sequence[Letter]) -> str:
    return "*".join(str(letter) for letter in word) or "1"


def defining_relations(shape: Shape) -> List[Relation]:
    letters = shape.letters()
    relations = []
    for x in letters:
        for y in letters:
            if x <= y:
                continue
            swapped = z_swap(x, y)
            relations.append(
                Relation(
                    f"{_word_text((z(*x), z(*y)))} = rewrite",
                    ((ONE, (z(*x), z(*y))),) + tuple((-c, (z(*w[0]), z(*w[1]))) for w, c in swapped),
                )
            )
            relations.append(
                Relation(
                    f"{_word_text((zs(*y), zs(*x)))} = rewrite",
                    ((ONE, (zs(*y), zs(*x))),) + tuple((-c, (zs(*w[1]), zs(*w[0]))) for w, c in swapped),
                )
            )
    for starred in letters:
        for plain in letters:
            terms = [(ONE, (zs(*starred), z(*plain)))]
            for (head, tail), c in mixed_rule(shape, starred, plain):
                terms.append((-c, tuple(z(*p) for p in head) + tuple(zs(*p) for p in tail)))
            relations.append(Relation(f"{_word_text(terms[0][1])} = rewrite", tuple(terms)))
    for p in letters:
        relations.append(Relation(f"f0*z[{p[0]},{p[1]}] = 0", ((ONE, (F0, z(*p))),)))
        relations.append(Relation(f"zs[{p[0]},{p[1]}]*f0 = 0", ((ONE, (zs(*p), F0)),)))
    relations.append(Relation("f0*f0 = f0", ((ONE, (F0, F0)), (-ONE, (F0,)))))
    return relations


def _cartan(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def _operator_identities(shape: Shape) -> Iterator[Tuple[str, UqElement, UqElement]]:
    """Pairs of generator words that must act identically."""
    indices = range(1, shape.N)
    q_minus = Q - s_power(-2)
    for i in indices:
        yield f"K{i} Ki{i}", UqElement.of(K(i), Ki(i)), UqElement.of()
        for j in indices:
            shift = s_power(2 * _cartan(i, j))
            yield f"K{i} E{j} Ki{i}", UqElement.of(K(i), E(j), Ki(i)), UqElement.of(E(j), coeff=shift)
            yield f"K{i} F{j} Ki{i}", UqElement.of(K(i), F(j), Ki(i)), UqElement.of(F(j), coeff=1 / shift)
            commutator = UqElement.of(E(i), F(j)) - UqElement.of(F(j), E(i))
            if i == j:
                expected = (UqElement.of(K(i)) - UqElement.of(Ki(i))).scale(1 / q_minus)
            else:
                expected = UqElement()
            yield f"[E{i}, F{j}]", commutator, expected
    for g in generators(shape):
        yield f"S^-1 S {g}", antipode(g).anti_map(antipode_inverse), UqElement.of(g)


def _serre_identities(shape: Shape) -> Iterator[Tuple[str, UqElement]]:
    two = q_integer(2)
    for i in range(1, shape.N):
        for j in range(1, shape.N):
            if i == j:
                continue
            for gen in (E, F):
                x, y = gen(i), gen(j)
                if abs(i - j) == 1:
                    expression = (
                        UqElement.of(x, x, y) - UqElement.of(x, y, x).scale(two) + UqElement.of(y, x, x)
                    )
                else:
                    expression = UqElement.of(x, y) - UqElement.of(y, x)
                yield f"Serre {x} {y}", expression


def _check_relations(report: CovarianceReport, shape: Shape, convention: HopfConvention) -> None:
    zero = Element(shape)
    for relation in defining_relations(shape):
        consistent = zero
        for coeff, word in relation.terms:
            consistent = consistent + normal_form(shape, word, coeff)
        report.checks += 1
        if consistent:
            report.fail(f"relation {relation} does not hold in the algebra: {consistent}")
            return
        for g in generators(shape):
            residual = zero
            for coeff, word in relation.terms:
                residual = residual + act_on_word(shape, g, word, convention).scale(coeff)
            report.checks += 1
            if residual:
                report.fail(f"{g} does not preserve {relation}: residual {residual}")
                return


def _check_star(report: CovarianceReport, shape: Shape, convention: HopfConvention) -> None:
    for mono in monomials_up_to(shape, 2):
        f = Element.monomial(shape, mono)
        for g in generators(shape):
            lhs = _act_unchecked(g, star(f), convention)
            rhs = star(_apply(theta(g, shape), f, convention))
            report.checks += 1
            if lhs != rhs:
                report.fail(f"{g} on star({mono}): {lhs} != {rhs}")
                return


def _check_operators(report: CovarianceReport, shape: Shape, convention: HopfConvention, degree: int) -> None:
    identities = list(_operator_identities(shape))
    serre = list(_serre_identities(shape))
    for mono in monomials_up_to(shape, degree):
        f = Element.monomial(shape, mono)
        for name, lhs, rhs in identities:
            left = _apply(lhs, f, convention)
            right = _apply(rhs, f, convention)
            report.checks += 1
            if left != right:
                report.fail(f"{name} on {mono}: {left} != {right}")
                return
        if mono.degree > SERRE_DEGREE:
            continue
        for name, expression in serre:
            residual = _apply(expression, f, convention)
            report.checks += 1
            if residual:
                report.fail(f"{name} on {mono}: residual {residual}")
                return


def validate_covariance(
    shape: Shape, convention: HopfConvention = STANDARD, degree: int = DEFAULT_DEGREE_CAP
) -> CovarianceReport:
    """Checks that every generator preserves the defining relations and that the operator
    relations of U_q sl_N hold on monomials up to ``degree``. Stops at the first counterexample.

    A passing convention is registered for the shape, after which ``act`` accepts it.
    """
    report = CovarianceReport(shape, convention)
    for stage in (_check_relations, _check_star):
        stage(report, shape, convention)
        if not report.passed:
            break
    else:
        _check_operators(report, shape, convention, degree)
    _logger.debug(
        "covariance of %s under %s: %d checks, %s",
        shape,
        convention.name,
        report.checks,
        "passed" if report.passed else report.counterexample,
    )
    if report.passed:
        register_convention(shape, convention)
    return report
