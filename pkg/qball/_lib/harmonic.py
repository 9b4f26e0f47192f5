"""The graded space H = C[Mat_mn]_q f0, the operators T_f, and the invariant integral."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational

from qball._lib.action import (
    STANDARD,
    HopfConvention,
    QGen,
    act,
    counit,
    generators,
    weight_of,
)
from qball._lib.algebra import (
    F0_MONOMIAL,
    Element,
    NormalMonomial,
    Shape,
    is_finite,
    multiply,
    star,
)
from qball._lib.errors import NotFiniteError, NotInHError
from qball._lib.scalar import ZERO, Scalar, evaluate_at, s_power
from qball._lib.static import GenKind, POSITIVITY_GRID
from qball._lib.utils import sorted_words

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorBlock:
    """The part of an operator mapping H_source into H_target, in the monomial bases."""

    source: int
    target: int
    matrix: np.ndarray

    def is_zero(self) -> bool:
        return not any(bool(entry) for entry in self.matrix.flat)


@dataclass(frozen=True)
class GramMatrix:
    degree: int
    matrix: np.ndarray

    def evaluate(self, q_value: Fraction) -> List[List[Fraction]]:
        return [[evaluate_at(entry, q_value) for entry in row] for row in self.matrix]


def _zeros(rows: int, columns: int) -> np.ndarray:
    matrix = np.empty((rows, columns), dtype=object)
    matrix.fill(ZERO)
    return matrix


@lru_cache(maxsize=None)
def basis(shape: Shape, j: int) -> Tuple[NormalMonomial, ...]:
    if j < 0:
        raise ValueError(f"degree must be non-negative, got {j}")
    return tuple(NormalMonomial(word, True, ()) for word in sorted_words(shape.letters(), j))


@lru_cache(maxsize=None)
def _positions(shape: Shape, j: int) -> Dict[NormalMonomial, int]:
    return {mono: index for index, mono in enumerate(basis(shape, j))}


def in_h(mono: NormalMonomial) -> bool:
    return mono.has_f0 and not mono.zsword


def h0_degree(shape: Shape, mono: NormalMonomial) -> int:
    """j such that H_0 mono = 2j mono, read off from the weight of ``mono``."""
    if not in_h(mono):
        raise NotInHError(f"{mono} is not in C[Mat]_q f0")
    m, n, N = shape.m, shape.n, shape.N
    weight = weight_of(shape, mono)
    h0 = 2 * (
        m * sum(j * weight[j - 1] for j in range(1, n))
        + n * sum(j * weight[N - j - 1] for j in range(1, m))
        + m * n * weight[n - 1]
    )
    assert h0 % (2 * (m + n)) == 0, (mono, h0)
    return h0 // (2 * (m + n))


def degree_bound(f: Element) -> int:
    """M(f): T_f vanishes on H_j for every j >= M(f)."""
    if not is_finite(f):
        raise NotFiniteError(f"{f} has terms without f0")
    return 1 + max((len(mono.zsword) for mono in f.terms), default=0)


def _as_h_vector(f: Element) -> Dict[int, Dict[NormalMonomial, Scalar]]:
    graded: Dict[int, Dict[NormalMonomial, Scalar]] = {}
    for mono, coeff in f.items():
        if not in_h(mono):
            raise NotInHError(f"{mono} is not in C[Mat]_q f0")
        graded.setdefault(len(mono.zword), {})[mono] = coeff
    return graded


def t_matrix(f: Element, j: int) -> List[OperatorBlock]:
    """The nonzero blocks of T_f restricted to H_j, ordered by target degree."""
    shape = f.shape
    source = basis(shape, j)
    columns: Dict[int, np.ndarray] = {}
    for column, mono in enumerate(source):
        image = multiply(f, Element.monomial(shape, mono))
        for target, vector in _as_h_vector(image).items():
            if target not in columns:
                columns[target] = _zeros(len(basis(shape, target)), len(source))
            positions = _positions(shape, target)
            for row_mono, coeff in vector.items():
                columns[target][positions[row_mono], column] = coeff
    return [OperatorBlock(j, target, columns[target]) for target in sorted(columns)]


def inner_product(psi1: Element, psi2: Element) -> Scalar:
    """(psi1, psi2): the coefficient of f0 in psi1* psi2, with (f0, f0) = 1."""
    for psi in (psi1, psi2):
        _as_h_vector(psi)
    return multiply(star(psi1), psi2).coefficient(F0_MONOMIAL)


@lru_cache(maxsize=None)
def gram(shape: Shape, j: int) -> GramMatrix:
    vectors = [Element.monomial(shape, mono) for mono in basis(shape, j)]
    matrix = _zeros(len(vectors), len(vectors))
    for row, left in enumerate(vectors):
        for column, right in enumerate(vectors):
            matrix[row, column] = inner_product(left, right)
    _logger.debug("gram matrix of %s in degree %d: %dx%d", shape, j, len(vectors), len(vectors))
    return GramMatrix(j, matrix)


def rho_exponent(shape: Shape, mono: NormalMonomial) -> int:
    """The q-exponent of exp(h rho) = prod K_k^(-k(N-k)) on the weight vector ``mono``."""
    weight = weight_of(shape, mono)
    return -sum(k * (shape.N - k) * weight[k - 1] for k in range(1, shape.N))


@lru_cache(maxsize=None)
def gamma_rho(shape: Shape, j: int) -> OperatorBlock:
    vectors = basis(shape, j)
    matrix = _zeros(len(vectors), len(vectors))
    for index, mono in enumerate(vectors):
        matrix[index, index] = s_power(2 * rho_exponent(shape, mono))
    return OperatorBlock(j, j, matrix)


def integrate(f: Element) -> Scalar:
    """Tr(T(f) Gamma(exp(h rho))), summed over the degrees below M(f)."""
    total = ZERO
    for j in range(degree_bound(f)):
        gamma = gamma_rho(f.shape, j)
        for block in t_matrix(f, j):
            if block.target != j:
                continue
            for index in range(block.matrix.shape[0]):
                total = total + block.matrix[index, index] * gamma.matrix[index, index]
    return total


def is_positive_definite(matrix: Sequence[Sequence[Fraction]]) -> bool:
    """Symmetric with every leading principal minor positive, computed exactly."""
    rows = [[Rational(entry.numerator, entry.denominator) for entry in row] for row in matrix]
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise ValueError("matrix must be square")
    exact = Matrix(rows)
    if exact != exact.T:
        return False
    return all(exact[:k, :k].det(method="bareiss") > 0 for k in range(1, size + 1))


def check_positive(shape: Shape, j: int, q_value: Fraction) -> bool:
    q_value = Fraction(q_value)
    if not 0 < q_value < 1:
        raise ValueError(f"q must lie in (0, 1), got {q_value}")
    return is_positive_definite(gram(shape, j).evaluate(q_value))


def check_positive_grid(shape: Shape, degree: int) -> List[Tuple[int, Fraction]]:
    """The (degree, q) points of the grid where the Gram matrix is not positive definite."""
    return [(j, q) for j in range(degree + 1) for q in POSITIVITY_GRID if not check_positive(shape, j, q)]


def integral_positive(f: Element, q_value: Fraction) -> bool:
    return evaluate_at(integrate(multiply(star(f), f)), Fraction(q_value)) > 0


def check_invariance(g: QGen, f: Element, convention: HopfConvention = STANDARD) -> Scalar:
    """integral(g f) - counit(g) integral(f), which vanishes for an invariant integral."""
    return integrate(act(g, f, convention)) - counit(g) * integrate(f)


def check_faithful(f: Element) -> bool:
    """Some block of T_f below M(f) is nonzero."""
    return any(not block.is_zero() for j in range(degree_bound(f)) for block in t_matrix(f, j))


def p_plus_generators(shape: Shape) -> Tuple[QGen, ...]:
    """Generators of U_q p_+: every generator except F_n."""
    return tuple(g for g in generators(shape) if not (g.kind == GenKind.F and g.k == shape.n))


@lru_cache(maxsize=None)
def is_h_stable(shape: Shape, g: QGen, j: int) -> bool:
    """``g`` maps H_j into H."""
    for mono in basis(shape, j):
        image = act(g, Element.monomial(shape, mono))
        if not all(in_h(term) for term in image.terms):
            return False
    return True
