from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qball._lib.action import F, K, generators
from qball._lib.algebra import F0, Element, NormalMonomial, Shape, multiply, normal_form, sandwich_monomials, star, z, zs
from qball._lib.errors import NotFiniteError, NotInHError
from qball._lib.harmonic import (
    basis,
    check_faithful,
    check_invariance,
    check_positive,
    check_positive_grid,
    degree_bound,
    gamma_rho,
    gram,
    h0_degree,
    inner_product,
    integral_positive,
    integrate,
    is_h_stable,
    is_positive_definite,
    p_plus_generators,
    rho_exponent,
    t_matrix,
)
from qball._lib.scalar import ONE, Q, ZERO, evaluate_at
from tests.strategies import elements

DISC = Shape(1, 1)


def h_vector(shape, *pairs):
    return Element.monomial(shape, NormalMonomial(tuple(pairs), True, ()))


def sandwich(shape, psi, phi):
    return Element.monomial(shape, NormalMonomial(psi.zword, True, tuple(reversed(phi.zword))))


def test_basis():
    assert basis(DISC, 0) == (NormalMonomial((), True, ()),)
    assert basis(DISC, 2) == (NormalMonomial(((1, 1), (1, 1)), True, ()),)
    assert len(basis(Shape(2, 2), 1)) == 4
    assert len(basis(Shape(1, 2), 2)) == 3
    with pytest.raises(ValueError):
        basis(DISC, -1)


@pytest.mark.parametrize("shape", [DISC, Shape(1, 2), Shape(2, 2)], ids=str)
def test_h0_grades_by_degree(shape):
    for j in range(5):
        assert all(h0_degree(shape, mono) == j for mono in basis(shape, j))


def test_h0_degree_outside_h():
    with pytest.raises(NotInHError):
        h0_degree(DISC, NormalMonomial((), True, ((1, 1),)))


def test_degree_bound():
    assert degree_bound(Element.letter(DISC, F0)) == 1
    assert degree_bound(normal_form(DISC, [z(1, 1), F0, zs(1, 1)])) == 2
    with pytest.raises(NotFiniteError):
        degree_bound(Element.letter(DISC, z(1, 1)))


def test_t_matrix_of_f0():
    f0 = Element.letter(DISC, F0)
    (block,) = t_matrix(f0, 0)
    assert (block.source, block.target) == (0, 0)
    assert block.matrix[0, 0] == ONE
    assert t_matrix(f0, 1) == []


def test_t_matrix_raises_degree():
    (block,) = t_matrix(h_vector(DISC, (1, 1)), 0)
    assert (block.source, block.target) == (0, 1)
    assert block.matrix[0, 0] == ONE


@pytest.mark.parametrize(
    "j,expected",
    [(0, ONE), (1, 1 - Q**2), (2, (1 - Q**2) * (1 - Q**4))],
)
def test_gram_of_the_disc(j, expected):
    matrix = gram(DISC, j).matrix
    assert matrix.shape == (1, 1)
    assert matrix[0, 0] == expected


def test_gram_evaluates_exactly():
    assert gram(DISC, 1).evaluate(Fraction(1, 2)) == [[Fraction(3, 4)]]


def test_gamma_rho():
    assert gamma_rho(DISC, 0).matrix[0, 0] == ONE
    assert gamma_rho(DISC, 1).matrix[0, 0] == Q**-2
    assert rho_exponent(DISC, basis(DISC, 2)[0]) == -4


def test_integrate_examples():
    assert integrate(Element.letter(DISC, F0)) == ONE
    assert integrate(normal_form(DISC, [z(1, 1), F0, zs(1, 1)])) == Q**-2 - 1
    assert integrate(normal_form(DISC, [z(1, 1), F0])) == ZERO
    with pytest.raises(NotFiniteError):
        integrate(Element.unit(DISC))


@pytest.mark.parametrize("shape", [DISC, Shape(1, 2), Shape(2, 1)], ids=str)
def test_integral_of_sandwich_is_gram_times_rho(shape):
    for j in range(3):
        vectors = basis(shape, j)
        matrix = gram(shape, j).matrix
        for row, phi in enumerate(vectors):
            for column, psi in enumerate(vectors):
                expected = matrix[row, column] * Q ** rho_exponent(shape, psi)
                assert integrate(sandwich(shape, psi, phi)) == expected


def test_distinct_degrees_are_orthogonal():
    shape = Shape(1, 2)
    assert inner_product(h_vector(shape, (1, 1)), h_vector(shape)) == ZERO
    assert inner_product(h_vector(shape, (1, 1), (2, 1)), h_vector(shape, (2, 1))) == ZERO


def test_inner_product_needs_h():
    with pytest.raises(NotInHError):
        inner_product(Element.letter(DISC, z(1, 1)), h_vector(DISC))


def test_positive_definite():
    assert is_positive_definite([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]])
    assert not is_positive_definite([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])
    assert not is_positive_definite([[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]])
    with pytest.raises(ValueError):
        is_positive_definite([[Fraction(1), Fraction(0)]])


@pytest.mark.parametrize("shape,degree", [(DISC, 4), (Shape(1, 2), 4), (Shape(2, 2), 4)], ids=str)
def test_gram_is_positive_on_the_grid(shape, degree):
    assert check_positive_grid(shape, degree) == []


def test_check_positive_rejects_q_outside_range():
    with pytest.raises(ValueError):
        check_positive(DISC, 1, Fraction(1))


def test_integral_of_norm_is_positive():
    assert integral_positive(h_vector(DISC, (1, 1)), Fraction(1, 2))
    assert integral_positive(normal_form(Shape(1, 2), [z(2, 1), F0, zs(1, 1)]), Fraction(1, 4))


finite_elements = st.sampled_from([DISC, Shape(1, 2)]).flatmap(lambda shape: elements(shape, 3, finite=True).filter(bool))


@given(finite_elements)
@settings(max_examples=25, deadline=None)
def test_integral_of_norm_is_positive_on_random_elements(f):
    # a coefficient vanishing at q = 1/2 drops its term there
    assume(all(evaluate_at(coeff, Fraction(1, 2)) for _, coeff in f.items()))
    assert integral_positive(f, Fraction(1, 2))


@pytest.mark.parametrize("shape", [DISC, Shape(1, 2)], ids=str)
def test_integral_is_invariant(shape):
    for mono in sandwich_monomials(shape, 2, 2):
        f = Element.monomial(shape, mono)
        for g in generators(shape):
            assert check_invariance(g, f) == ZERO, (g, mono)


def test_finite_functions_have_finite_rank():
    for mono in sandwich_monomials(Shape(1, 2), 2, 2):
        f = Element.monomial(Shape(1, 2), mono)
        bound = degree_bound(f)
        assert t_matrix(f, bound) == []
        assert t_matrix(f, bound + 1) == []
        assert check_faithful(f)


@given(finite_elements)
@settings(max_examples=50, deadline=None)
def test_random_finite_functions_have_finite_rank(f):
    bound = degree_bound(f)
    assert bound <= 4
    assert t_matrix(f, bound) == []
    assert t_matrix(f, bound + 1) == []
    assert check_faithful(f)


@given(st.sampled_from([DISC, Shape(1, 2)]).flatmap(lambda shape: st.tuples(elements(shape, 2, finite=True), st.integers(0, 2))))
@settings(max_examples=30, deadline=None)
def test_multiplication_is_self_adjoint_up_to_star(sample):
    f, j = sample
    shape = f.shape
    for left in basis(shape, j):
        for right in basis(shape, j):
            psi1, psi2 = Element.monomial(shape, left), Element.monomial(shape, right)
            assert inner_product(multiply(f, psi1), psi2) == inner_product(psi1, multiply(star(f), psi2))


@pytest.mark.parametrize("shape", [DISC, Shape(2, 1)], ids=str)
def test_p_plus_preserves_h(shape):
    generators_of_p_plus = p_plus_generators(shape)
    assert F(shape.n) not in generators_of_p_plus
    assert K(shape.n) in generators_of_p_plus
    for g in generators_of_p_plus:
        for j in range(3):
            assert is_h_stable(shape, g, j)
    assert not is_h_stable(shape, F(shape.n), 0)
