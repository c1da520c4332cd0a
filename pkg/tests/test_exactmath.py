from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank_arrange.errors import InsufficientPoints, NoSolution, NonIntegralCoefficient
from rank_arrange.exactmath import (IntPolynomial, interpolate_integer_polynomial, nullspace, primitive_integer_vector,
                                    project_onto_column_space, rank, rising_factorial_poly, rref, solve,
                                    stirling_first_signless, transpose, dot, mat_vec)

small = st.integers(-50, 50)
polys = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=8).map(lambda c: IntPolynomial(tuple(c)))


def test_stirling_small_table():
    # rows of the signless first-kind triangle, worked out by hand
    assert [stirling_first_signless(4, k) for k in range(5)] == [0, 6, 11, 6, 1]
    assert [stirling_first_signless(5, k) for k in range(6)] == [0, 24, 50, 35, 10, 1]
    assert stirling_first_signless(0, 0) == 1
    assert stirling_first_signless(3, 5) == 0


@pytest.mark.parametrize("m", range(1, 12))
def test_stirling_row_sum_and_recurrence(m):
    row = [stirling_first_signless(m, k) for k in range(m + 1)]
    assert sum(row) == factorial(m)
    for k in range(1, m + 1):
        assert row[k] == stirling_first_signless(m - 1, k - 1) + (m - 1) * stirling_first_signless(m - 1, k)


def test_rising_factorial_coefficients_are_stirling():
    p = rising_factorial_poly(6)
    assert list(p.coeffs) == [stirling_first_signless(6, k) for k in range(7)]
    assert p(1) == factorial(6)


def test_polynomial_basics():
    p = IntPolynomial.from_roots([0, 1, 2])
    assert str(p) and p.degree == 3 and p.leading == 1
    assert [p(t) for t in range(4)] == [0, 0, 0, 6]
    assert IntPolynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert p.t_adic_valuation() == 1
    q, r = p.divmod_linear(1)
    assert r == 0 and q == IntPolynomial.from_roots([0, 2])


@given(polys, polys, small)
def test_polynomial_ring_ops_pointwise(p, q, t):
    assert (p + q)(t) == p(t) + q(t)
    assert (p - q)(t) == p(t) - q(t)
    assert (p * q)(t) == p(t) * q(t)


@settings(max_examples=60)
@given(polys, st.integers(0, 3))
def test_interpolation_round_trip(p, extra):
    xs = list(range(-3, p.degree + extra - 2))
    pts = [(x, p(x)) for x in xs]
    assert interpolate_integer_polynomial(pts, p.degree) == p


def test_interpolation_rejects_bad_data():
    with pytest.raises(NonIntegralCoefficient):
        interpolate_integer_polynomial([(0, 0), (2, 1)], 1)  # slope 1/2
    with pytest.raises(NonIntegralCoefficient):
        interpolate_integer_polynomial([(0, 0), (1, 1), (2, 5)], 1)  # extra point off the line
    with pytest.raises(InsufficientPoints):
        interpolate_integer_polynomial([(0, 1)], 2)


def test_rref_rank_solve():
    a = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    red, piv = rref(a)
    assert piv == [0, 1] and rank(a) == 2
    x = solve([[2, 1], [1, 3]], [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(NoSolution):
        solve([[1, 1], [1, 1]], [0, 1])


@settings(max_examples=40)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_nullspace_is_annihilated(a):
    for v in nullspace(a, 3):
        assert all(x == 0 for x in mat_vec(a, v))
    assert len(nullspace(a, 3)) == 3 - rank(a)


@settings(max_examples=60)
@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=4, max_size=4),
       st.lists(small, min_size=4, max_size=4))
def test_projection_idempotent_and_orthogonal(a, u):
    p = project_onto_column_space(a, u)
    assert project_onto_column_space(a, p) == p
    resid = [x - y for x, y in zip(u, p)]
    for col in transpose(a):
        assert dot(col, resid) == 0


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4), 0]) == (2, -3, 0)
    assert primitive_integer_vector([0, 0]) == (0, 0)
