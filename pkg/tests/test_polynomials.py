"""Exact polynomial arithmetic, calculus, and the wire format."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from gauss_rinv.polynomials import (
    DimensionMismatchError,
    Polynomial,
    dot,
    coordinate_vector,
    format_rational,
    parse_rational,
)

from conftest import polynomials


x = Polynomial.variable(1, 0)
one = Polynomial.constant(1, 1)


class TestArithmetic:
    def test_add(self):
        assert x * x + one == Polynomial(1, {(2,): 1, (0,): 1})

    def test_mul_difference_of_squares(self):
        assert (x + one) * (x - one) == x * x - one

    def test_scale(self):
        assert (x * x).scale(Fraction(1, 8)) == Polynomial(1, {(2,): Fraction(1, 8)})

    def test_zero_terms_dropped(self):
        p = x - x
        assert p.is_zero() and p.terms == {}

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            x + Polynomial.constant(2, 1)

    def test_pow(self):
        assert x**4 == x * x * x * x


class TestCalculus:
    def test_laplacian_radial_n3(self):
        # lap |x|^2 = 2n
        assert Polynomial.norm_squared(3).laplacian() == Polynomial.constant(3, 6)

    def test_gradient_radial(self):
        grad = Polynomial.norm_squared(2).gradient()
        expected = tuple(Polynomial.variable(2, j).scale(2) for j in range(2))
        assert grad == expected

    def test_laplacian_constant(self):
        assert Polynomial.constant(2, 7).laplacian().is_zero()

    def test_partial_out_of_range(self):
        with pytest.raises(IndexError):
            x.partial(1)


class TestEvaluate:
    def test_exact_point(self):
        assert (x * x - one).evaluate([2]) == 3

    def test_hermite2_at_zero(self):
        h2 = Polynomial(1, {(2,): 4, (0,): -2})
        assert h2.evaluate([0]) == -2

    def test_origin(self):
        assert Polynomial.norm_squared(3).evaluate([0, 0, 0]) == 0

    def test_float_point(self):
        assert (x * x).evaluate([0.5]) == pytest.approx(0.25)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            (x * x).evaluate([1, 2])

    def test_shift(self):
        shifted = (x * x).shift([Fraction(1)])
        assert shifted == Polynomial(1, {(2,): 1, (1,): 2, (0,): 1})


class TestJson:
    def test_wire_form(self):
        p = Polynomial(1, {(2,): Fraction(1, 4), (0,): Fraction(-3)})
        assert p.to_json_dict() == {
            "dim": 1,
            "terms": [{"exp": [0], "coef": "-3"}, {"exp": [2], "coef": "1/4"}],
        }

    def test_round_trip(self):
        p = Polynomial(2, {(2, 1): Fraction(5, 7), (0, 0): Fraction(-2, 3)})
        assert Polynomial.from_json_dict(p.to_json_dict()) == p

    def test_graded_lex_deterministic(self):
        p = Polynomial(2, {(0, 2): 1, (1, 0): 1, (2, 0): 1, (0, 0): 1})
        exps = [t["exp"] for t in p.to_json_dict()["terms"]]
        assert exps == [[0, 0], [1, 0], [0, 2], [2, 0]]

    def test_parse_rational_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")

    def test_format_round_trip(self):
        for s in ("3", "-5/8", "0"):
            assert format_rational(parse_rational(s)) == s


@settings(max_examples=50, deadline=None)
@given(polynomials(), polynomials())
def test_product_rule(p, q):
    """d(pq) = p dq + q dp, exactly, in every variable."""
    if p.dim != q.dim:
        q = Polynomial(p.dim, {(0,) * p.dim: Fraction(1, 3)})
    for j in range(p.dim):
        assert (p * q).partial(j) == p * q.partial(j) + q * p.partial(j)


@settings(max_examples=50, deadline=None)
@given(polynomials(), polynomials())
def test_laplacian_product_formula(alpha, beta):
    """lap(ab) = b lap(a) + a lap(b) + 2 grad(a).grad(b)."""
    if alpha.dim != beta.dim:
        beta = Polynomial(alpha.dim, {(0,) * alpha.dim: 1})
    lhs = (alpha * beta).laplacian()
    rhs = (
        beta * alpha.laplacian()
        + alpha * beta.laplacian()
        + dot(alpha.gradient(), beta.gradient()).scale(2)
    )
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(polynomials())
def test_radial_derivative_identity(phi):
    """lap(grad(phi).x) = grad(lap(phi)).x + 2 lap(phi)."""
    coords = coordinate_vector(phi.dim)
    lhs = dot(phi.gradient(), coords).laplacian()
    rhs = dot(phi.laplacian().gradient(), coords) + phi.laplacian().scale(2)
    assert lhs == rhs
