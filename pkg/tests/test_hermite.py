"""Weighted-space engine: conversions, exact integrals, quadrature, moments."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gauss_rinv.hermite import (
    GaussianScalar,
    HermiteExpansion,
    UnitMismatchError,
    WeightSpec,
    gauss_hermite_rule,
    gaussian_moment,
    hermite_polynomial_1d,
    hermite_to_monomial,
    inner_product,
    integrate_gaussian,
    monomial_to_hermite,
    norm_sq,
    weight_spec_from_polynomial,
)
from gauss_rinv.polynomials import DimensionMismatchError, Polynomial

from conftest import polynomials

SQRT_PI = math.sqrt(math.pi)

x = Polynomial.variable(1, 0)
one = Polynomial.constant(1, 1)


class TestMonomialToHermite:
    def test_x_squared(self):
        # H2 = 4t^2 - 2  =>  t^2 = (H2 + 2 H0)/4
        exp = monomial_to_hermite(x * x, WeightSpec.unit(1))
        assert exp.coeffs == {(2,): Fraction(1, 4), (0,): Fraction(1, 2)}

    def test_constant(self):
        exp = monomial_to_hermite(one, WeightSpec.unit(1))
        assert exp.coeffs == {(0,): Fraction(1)}

    def test_x_fourth(self):
        # H4 = 16t^4 - 48t^2 + 12  =>  t^4 = (H4 + 12 H2 + 12 H0)/16
        exp = monomial_to_hermite(x**4, WeightSpec.unit(1))
        assert exp.coeffs == {
            (4,): Fraction(1, 16),
            (2,): Fraction(3, 4),
            (0,): Fraction(3, 4),
        }

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            monomial_to_hermite(one, WeightSpec.unit(2))


@settings(max_examples=40, deadline=None)
@given(
    polynomials(max_degree=12, max_terms=6),
    st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 3), Fraction(5, 2)]),
    st.integers(min_value=-3, max_value=3),
)
def test_round_trip_any_weight(p, lam, c_num):
    """monomial -> scaled Hermite -> monomial is the exact identity."""
    center = tuple(Fraction(c_num, 2) for _ in range(p.dim))
    w = WeightSpec(dim=p.dim, lam=lam, center=center)
    assert hermite_to_monomial(monomial_to_hermite(p, w)) == p


class TestInnerProduct:
    def test_x_sq_against_one(self):
        val = inner_product(x * x, one, WeightSpec.unit(1))
        assert val.value == Fraction(1, 2) and val.pi_pow == Fraction(1, 2)

    def test_odd_symmetry(self):
        assert inner_product(x, one, WeightSpec.unit(1)).is_zero()

    def test_x_sq_against_x_sq(self):
        assert inner_product(x * x, x * x, WeightSpec.unit(1)).value == Fraction(3, 4)

    def test_h2_norm(self):
        # ||H_2||^2 = 2^2 * 2! = 8 in units sqrt(pi)
        assert norm_sq(hermite_polynomial_1d(2), WeightSpec.unit(1)).value == 8

    def test_zero_norm(self):
        assert norm_sq(Polynomial.zero(1), WeightSpec.unit(1)).is_zero()

    def test_total_mass_n2(self):
        val = norm_sq(Polynomial.constant(2, 1), WeightSpec.unit(2))
        assert val.value == 1 and val.pi_pow == 1

    def test_positive_definite(self):
        p = x**3 - x.scale(2) + one
        assert norm_sq(p, WeightSpec.unit(1)).value > 0


@settings(max_examples=25, deadline=None)
@given(polynomials(max_degree=8, max_terms=5))
def test_parseval(p):
    """norm_sq equals the coefficient-weighted sum of basis norms."""
    w = WeightSpec.unit(p.dim)
    exp = monomial_to_hermite(p, w)
    total = sum(
        c * c * HermiteExpansion.basis_norm_sq(alpha, w.lam)
        for alpha, c in exp.coeffs.items()
    )
    assert norm_sq(p, w).value == total


@settings(max_examples=20, deadline=None)
@given(polynomials(max_degree=4, max_terms=4), polynomials(max_degree=4, max_terms=4))
def test_inner_product_matches_quadrature(p, q):
    """Exact Hermite inner products agree with tensor Gauss-Hermite."""
    if p.dim != q.dim:
        q = Polynomial.constant(p.dim, Fraction(1, 2))
    w = WeightSpec.unit(p.dim)
    exact = inner_product(p, q, w).to_float()
    quad = integrate_gaussian(
        lambda pt: float(p.evaluate(pt)) * float(q.evaluate(pt)), w, order=12
    )
    assert quad == pytest.approx(exact, rel=1e-10, abs=1e-10)


def test_inner_product_scaled_weight_matches_quadrature():
    w = WeightSpec(dim=2, lam=Fraction(3, 2), center=(Fraction(1), Fraction(-1, 2)))
    p = Polynomial(2, {(2, 1): Fraction(1), (0, 0): Fraction(-1, 3)})
    q = Polynomial(2, {(1, 1): Fraction(2), (0, 2): Fraction(1, 5)})
    exact = inner_product(p, q, w).to_float()
    quad = integrate_gaussian(
        lambda pt: float(p.evaluate(pt)) * float(q.evaluate(pt)), w, order=16
    )
    assert quad == pytest.approx(exact, rel=1e-10)


class TestGaussianScalar:
    def test_unit_mismatch_comparison(self):
        a = GaussianScalar(1, Fraction(1, 2), 1)
        b = GaussianScalar(1, Fraction(1, 2), 2)
        with pytest.raises(UnitMismatchError):
            _ = a <= b

    def test_ratio_is_rational(self):
        a = GaussianScalar(Fraction(3, 4), Fraction(1, 2), 1)
        b = GaussianScalar(Fraction(1, 2), Fraction(1, 2), 1)
        assert a.ratio(b) == Fraction(3, 2)

    def test_product_adds_pi_powers(self):
        a = GaussianScalar(2, Fraction(1, 2), 1)
        assert (a * a).pi_pow == 1

    def test_json_form(self):
        s = GaussianScalar(Fraction(1, 2), Fraction(1, 2), Fraction(2))
        assert s.to_json_dict() == {"rational": "1/2", "pi_pow": 0.5, "lambda": "2"}

    def test_to_float(self):
        s = GaussianScalar(Fraction(1, 2), Fraction(1, 2), 1)
        assert s.to_float() == pytest.approx(SQRT_PI / 2)


class TestQuadrature:
    def test_order_one(self):
        rule = gauss_hermite_rule(1)
        assert rule.nodes == (0.0,)
        assert rule.weights[0] == pytest.approx(SQRT_PI, rel=1e-15)

    def test_order_two(self):
        rule = gauss_hermite_rule(2)
        assert sorted(rule.nodes) == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)])
        for w in rule.weights:
            assert w == pytest.approx(SQRT_PI / 2, rel=1e-14)

    def test_moment_by_order_three(self):
        rule = gauss_hermite_rule(3)
        val = sum(w * t**4 for t, w in zip(rule.nodes, rule.weights))
        assert val == pytest.approx(3 * SQRT_PI / 4, rel=1e-12)

    @pytest.mark.parametrize("order", [5, 13, 40])
    def test_degree_exactness(self, order):
        """Exact for polynomial degree <= 2m-1 against e^{-t^2}."""
        rule = gauss_hermite_rule(order)
        for degree in range(0, 2 * order, 2):
            if degree > 24:
                break
            exact = norm_sq(
                Polynomial(1, {(degree // 2,): 1}), WeightSpec.unit(1)
            ).to_float()
            quad = sum(w * t**degree for t, w in zip(rule.nodes, rule.weights))
            assert quad == pytest.approx(exact, rel=1e-12)

    def test_nodes_are_roots(self):
        rule = gauss_hermite_rule(12)
        h12 = hermite_polynomial_1d(12)
        scale = float(max(abs(c) for c in h12.terms.values()))
        for t in rule.nodes:
            assert abs(float(h12.evaluate([t]))) <= 1e-9 * scale

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            gauss_hermite_rule(0)


class TestGaussianMoment:
    def test_cos(self):
        assert gaussian_moment(one, [1.0], "cos") == pytest.approx(
            SQRT_PI * math.exp(-0.25), rel=1e-14
        )

    def test_exp(self):
        assert gaussian_moment(one, [1.0], "exp") == pytest.approx(
            SQRT_PI * math.exp(0.25), rel=1e-14
        )

    def test_sin_odd(self):
        assert gaussian_moment(one, [0.7], "sin") == 0.0

    @pytest.mark.parametrize("kind", ["cos", "sin", "exp"])
    def test_against_quadrature(self, kind):
        p = Polynomial(2, {(2, 0): Fraction(1), (1, 1): Fraction(-1, 2), (0, 0): Fraction(1, 3)})
        k = [0.8, -0.5]
        factor = {
            "cos": lambda t: math.cos(t),
            "sin": lambda t: math.sin(t),
            "exp": lambda t: math.exp(t),
        }[kind]
        closed = gaussian_moment(p, k, kind)
        quad = integrate_gaussian(
            lambda pt: float(p.evaluate(pt)) * factor(k[0] * pt[0] + k[1] * pt[1]),
            WeightSpec.unit(2),
            order=40,
        )
        assert quad == pytest.approx(closed, rel=1e-10, abs=1e-12)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            gaussian_moment(one, [1.0], "tan")


class TestWeightRecognition:
    def test_unit(self):
        w = weight_spec_from_polynomial(Polynomial.norm_squared(3))
        assert w == WeightSpec.unit(3)

    def test_scaled_shifted(self):
        spec = WeightSpec(dim=2, lam=Fraction(5, 3), center=(Fraction(1, 2), Fraction(-2)))
        assert weight_spec_from_polynomial(spec.polynomial()) == spec

    def test_rejects_non_radial(self):
        p = Polynomial(2, {(2, 0): 1, (0, 2): 2})
        assert weight_spec_from_polynomial(p) is None
