"""Gaussian-weighted L2 machinery over scaled tensor Hermite bases.

The ambient space is L2(R^n, e^{-lam*|x-x0|^2}).  Its natural orthogonal
basis is built from physicists' Hermite polynomials H_k (orthogonal under
e^{-t^2}, ||H_k||^2 = 2^k k! sqrt(pi)).  To keep every coefficient an
exact rational even when sqrt(lam) is irrational, expansions are stored
over the rescaled basis

    G_alpha(x) = prod_j lam^{-alpha_j/2} * H_{alpha_j}(sqrt(lam) (x_j - x0_j)),

which is a rational-coefficient polynomial in x for rational lam and x0,
and coincides with the plain tensor Hermite basis when lam = 1.  Squared
basis norms are rational multiples of the global unit (pi/lam)^{n/2}:

    ||G_alpha||^2 = lam^{-|alpha|} * prod_j 2^{alpha_j} alpha_j!  *  (pi/lam)^{n/2}.

Exact weighted integrals of polynomials are GaussianScalar values: a
rational part tagged with that symbolic unit.  Non-polynomial integrands
go through Gauss-Hermite quadrature (nodes by Newton refinement on the
recurrence) or through closed-form trigonometric/exponential moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .polynomials import (
    DimensionMismatchError,
    MultiIndex,
    Polynomial,
    RationalLike,
    format_rational,
)


class UnitMismatchError(ValueError):
    """Exact scalars with different symbolic units were combined."""


def _fraction(value: RationalLike) -> Fraction:
    if isinstance(value, str):
        from .polynomials import parse_rational

        return parse_rational(value)
    return Fraction(value)


# ----------------------------------------------------------------------
# weight specification
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class WeightSpec:
    """The weight lam*|x - center|^2 defining e^{-weight} on R^n."""

    dim: int
    lam: Fraction = Fraction(1)
    center: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lam", _fraction(self.lam))
        center = tuple(_fraction(c) for c in (self.center or (0,) * self.dim))
        object.__setattr__(self, "center", center)
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if len(center) != self.dim:
            raise DimensionMismatchError(
                f"center length {len(center)} != dimension {self.dim}"
            )

    @classmethod
    def unit(cls, dim: int) -> "WeightSpec":
        return cls(dim=dim)

    @property
    def is_unit(self) -> bool:
        return self.lam == 1 and all(c == 0 for c in self.center)

    def polynomial(self) -> Polynomial:
        """The weight as an exact polynomial lam*|x - center|^2."""
        x = [Polynomial.variable(self.dim, j) for j in range(self.dim)]
        out = Polynomial.zero(self.dim)
        for j in range(self.dim):
            shifted = x[j] - Polynomial.constant(self.dim, self.center[j])
            out = out + shifted * shifted
        return out.scale(self.lam)


def weight_spec_from_polynomial(weight: Polynomial) -> WeightSpec | None:
    """Recognize lam*|x - x0|^2 symbolically; None when the weight is not
    of that radial-quadratic form."""
    n = weight.dim
    lam = None
    for j in range(n):
        exps = [0] * n
        exps[j] = 2
        c = weight.coefficient(exps)
        if lam is None:
            lam = c
        elif c != lam:
            return None
    if lam is None or lam <= 0:
        return None
    center = []
    for j in range(n):
        exps = [0] * n
        exps[j] = 1
        b = weight.coefficient(exps)
        center.append(-b / (2 * lam))
    candidate = WeightSpec(dim=n, lam=lam, center=tuple(center))
    if candidate.polynomial() == weight:
        return candidate
    return None


# ----------------------------------------------------------------------
# exact weighted scalars
# ----------------------------------------------------------------------


class GaussianScalar:
    """Exact weighted-integral value: rational * (pi/lam)^{pi_pow}.

    Scalars only combine when their units agree; cross-unit arithmetic or
    comparison raises UnitMismatchError rather than coercing.  Products of
    same-lam scalars add the pi powers (|<f,g>|^2 carries (pi/lam)^n).
    """

    __slots__ = ("value", "pi_pow", "lam")

    def __init__(self, value: RationalLike, pi_pow: RationalLike, lam: RationalLike = 1):
        self.value = _fraction(value)
        self.pi_pow = _fraction(pi_pow)
        self.lam = _fraction(lam)
        if self.lam <= 0:
            raise ValueError("lambda must be positive")

    @classmethod
    def for_weight(cls, value: RationalLike, weight: WeightSpec) -> "GaussianScalar":
        return cls(value, Fraction(weight.dim, 2), weight.lam)

    def _check_unit(self, other: "GaussianScalar") -> None:
        if self.pi_pow != other.pi_pow or self.lam != other.lam:
            raise UnitMismatchError(
                f"unit (pi/{self.lam})^{self.pi_pow} vs (pi/{other.lam})^{other.pi_pow}"
            )

    def __add__(self, other: "GaussianScalar") -> "GaussianScalar":
        self._check_unit(other)
        return GaussianScalar(self.value + other.value, self.pi_pow, self.lam)

    def __sub__(self, other: "GaussianScalar") -> "GaussianScalar":
        self._check_unit(other)
        return GaussianScalar(self.value - other.value, self.pi_pow, self.lam)

    def __mul__(self, other):
        if isinstance(other, GaussianScalar):
            if self.lam != other.lam:
                raise UnitMismatchError(
                    f"cannot multiply scalars with lambda {self.lam} and {other.lam}"
                )
            return GaussianScalar(
                self.value * other.value, self.pi_pow + other.pi_pow, self.lam
            )
        return GaussianScalar(self.value * _fraction(other), self.pi_pow, self.lam)

    def __rmul__(self, other) -> "GaussianScalar":
        return self.__mul__(other)

    def scale(self, factor: RationalLike) -> "GaussianScalar":
        return GaussianScalar(self.value * _fraction(factor), self.pi_pow, self.lam)

    def ratio(self, other: "GaussianScalar") -> Fraction:
        """Exact ratio of two same-unit scalars."""
        self._check_unit(other)
        if other.value == 0:
            raise ZeroDivisionError("ratio against zero scalar")
        return self.value / other.value

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianScalar):
            return NotImplemented
        if self.value == 0 and other.value == 0:
            return True
        self._check_unit(other)
        return self.value == other.value

    def __le__(self, other: "GaussianScalar") -> bool:
        self._check_unit(other)
        return self.value <= other.value

    def __lt__(self, other: "GaussianScalar") -> bool:
        self._check_unit(other)
        return self.value < other.value

    def __ge__(self, other: "GaussianScalar") -> bool:
        return other.__le__(self)

    def __gt__(self, other: "GaussianScalar") -> bool:
        return other.__lt__(self)

    def is_zero(self) -> bool:
        return self.value == 0

    def to_float(self) -> float:
        return float(self.value) * (math.pi / float(self.lam)) ** float(self.pi_pow)

    def to_json_dict(self) -> dict:
        return {
            "rational": format_rational(self.value),
            "pi_pow": float(self.pi_pow),
            "lambda": format_rational(self.lam),
        }

    def __repr__(self) -> str:
        return (
            f"GaussianScalar({format_rational(self.value)}"
            f" * (pi/{format_rational(self.lam)})^{self.pi_pow})"
        )


# ----------------------------------------------------------------------
# per-axis Hermite conversion tables (exact, cached)
# ----------------------------------------------------------------------

_MONOMIAL_TO_H: list[list[Fraction]] = [[Fraction(1)]]  # t^m over H_0..H_m
_H_TO_MONOMIAL: list[list[Fraction]] = [[Fraction(1)], [Fraction(0), Fraction(2)]]


def _monomial_in_hermite(m: int) -> list[Fraction]:
    """Coefficients c with t^m = sum_k c[k] H_k(t), via t*H_k = H_{k+1}/2 + k*H_{k-1}."""
    while len(_MONOMIAL_TO_H) <= m:
        prev = _MONOMIAL_TO_H[-1]
        nxt = [Fraction(0)] * (len(prev) + 1)
        for k, c in enumerate(prev):
            if c == 0:
                continue
            nxt[k + 1] += c / 2
            if k >= 1:
                nxt[k - 1] += c * k
        _MONOMIAL_TO_H.append(nxt)
    return _MONOMIAL_TO_H[m]


def _hermite_monomial_coeffs(k: int) -> list[Fraction]:
    """Monomial coefficients of H_k(t), via H_{k+1} = 2t H_k - 2k H_{k-1}."""
    while len(_H_TO_MONOMIAL) <= k:
        j = len(_H_TO_MONOMIAL) - 1
        hj = _H_TO_MONOMIAL[j]
        hjm1 = _H_TO_MONOMIAL[j - 1]
        nxt = [Fraction(0)] * (j + 2)
        for i, c in enumerate(hj):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(hjm1):
            nxt[i] -= 2 * j * c
        _H_TO_MONOMIAL.append(nxt)
    return _H_TO_MONOMIAL[k]


def hermite_polynomial_1d(k: int) -> Polynomial:
    """H_k as an exact one-dimensional Polynomial (physicists' convention)."""
    coeffs = _hermite_monomial_coeffs(k)
    return Polynomial(1, {(i,): c for i, c in enumerate(coeffs) if c != 0})


# ----------------------------------------------------------------------
# expansions
# ----------------------------------------------------------------------


class HermiteExpansion:
    """Rational coefficients over the scaled tensor Hermite basis G_alpha."""

    __slots__ = ("weight", "coeffs")

    def __init__(self, weight: WeightSpec, coeffs: Mapping[MultiIndex, RationalLike]):
        clean: dict[MultiIndex, Fraction] = {}
        for key, val in coeffs.items():
            k = tuple(int(e) for e in key)
            if len(k) != weight.dim:
                raise DimensionMismatchError(
                    f"index {k} has length {len(k)}, expected {weight.dim}"
                )
            c = _fraction(val)
            if c != 0:
                clean[k] = clean.get(k, Fraction(0)) + c
        self.weight = weight
        self.coeffs = {k: v for k, v in clean.items() if v != 0}

    @staticmethod
    def basis_norm_sq(alpha: MultiIndex, lam: Fraction) -> Fraction:
        """Rational part of ||G_alpha||^2 in units (pi/lam)^{n/2}."""
        r = Fraction(1)
        for a in alpha:
            r *= Fraction(2) ** a * math.factorial(a)
        return r * lam ** (-sum(alpha))

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(a) for a in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermiteExpansion):
            return NotImplemented
        return self.weight == other.weight and self.coeffs == other.coeffs

    def __add__(self, other: "HermiteExpansion") -> "HermiteExpansion":
        if self.weight != other.weight:
            raise UnitMismatchError("expansions over different weights")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return HermiteExpansion(self.weight, out)

    def scale(self, factor: RationalLike) -> "HermiteExpansion":
        f = _fraction(factor)
        return HermiteExpansion(self.weight, {k: v * f for k, v in self.coeffs.items()})

    def inner(self, other: "HermiteExpansion") -> GaussianScalar:
        """Exact weighted inner product via basis orthogonality (Parseval)."""
        if self.weight != other.weight:
            raise UnitMismatchError("expansions over different weights")
        small, large = self.coeffs, other.coeffs
        if len(large) < len(small):
            small, large = large, small
        total = Fraction(0)
        for alpha, c in small.items():
            d = large.get(alpha)
            if d is not None:
                total += c * d * self.basis_norm_sq(alpha, self.weight.lam)
        return GaussianScalar.for_weight(total, self.weight)

    def norm_sq(self) -> GaussianScalar:
        total = Fraction(0)
        for alpha, c in self.coeffs.items():
            total += c * c * self.basis_norm_sq(alpha, self.weight.lam)
        return GaussianScalar.for_weight(total, self.weight)

    def to_polynomial(self) -> Polynomial:
        """Exact inverse of monomial_to_hermite."""
        w = self.weight
        n = w.dim
        result = Polynomial.zero(n)
        for alpha, coef in self.coeffs.items():
            term = Polynomial.constant(n, coef)
            for j, k in enumerate(alpha):
                if k == 0:
                    continue
                haxis = _hermite_monomial_coeffs(k)
                axis_terms: dict[MultiIndex, Fraction] = {}
                for i, c in enumerate(haxis):
                    if c == 0:
                        continue
                    # G_k(u) picks up lam^{(i-k)/2}; i and k share parity.
                    key = tuple(i if jj == j else 0 for jj in range(n))
                    axis_terms[key] = c * w.lam ** ((i - k) // 2)
                term = term * Polynomial(n, axis_terms)
            result = result + term
        if any(c != 0 for c in w.center):
            result = result.shift([-c for c in w.center])
        return result

    def to_json_dict(self) -> dict:
        return {
            "weight": {
                "dim": self.weight.dim,
                "lambda": format_rational(self.weight.lam),
                "center": [format_rational(c) for c in self.weight.center],
            },
            "coeffs": [
                {"index": list(k), "coef": format_rational(v)}
                for k, v in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }


def monomial_to_hermite(p: Polynomial, weight: WeightSpec) -> HermiteExpansion:
    """Exact change of basis from monomials to the scaled Hermite basis."""
    if p.dim != weight.dim:
        raise DimensionMismatchError(
            f"polynomial dimension {p.dim} != weight dimension {weight.dim}"
        )
    q = p.shift(weight.center) if any(c != 0 for c in weight.center) else p
    lam = weight.lam
    out: dict[MultiIndex, Fraction] = {}
    for exps, coef in q.terms.items():
        # per-axis: u^m = sum_k h[k] * lam^{(k-m)/2} G_k(u)
        partial: list[tuple[tuple[int, ...], Fraction]] = [((), coef)]
        for m in exps:
            h = _monomial_in_hermite(m)
            nxt: list[tuple[tuple[int, ...], Fraction]] = []
            for prefix, pc in partial:
                for k in range(m % 2, m + 1, 2):
                    c = h[k]
                    if c == 0:
                        continue
                    nxt.append((prefix + (k,), pc * c * lam ** ((k - m) // 2)))
            partial = nxt
        for alpha, c in partial:
            out[alpha] = out.get(alpha, Fraction(0)) + c
    return HermiteExpansion(weight, out)


def hermite_to_monomial(expansion: HermiteExpansion) -> Polynomial:
    return expansion.to_polynomial()


def inner_product(p: Polynomial, q: Polynomial, weight: WeightSpec) -> GaussianScalar:
    """Exact <p, q>_weight = integral of p*q*e^{-weight} over R^n."""
    if p.dim != q.dim:
        raise DimensionMismatchError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return monomial_to_hermite(p, weight).inner(monomial_to_hermite(q, weight))


def norm_sq(p: Polynomial, weight: WeightSpec) -> GaussianScalar:
    """Exact squared weighted norm ||p||^2_weight."""
    return monomial_to_hermite(p, weight).norm_sq()


# ----------------------------------------------------------------------
# Gauss-Hermite quadrature
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """One-dimensional Gauss-Hermite rule for the weight e^{-t^2}."""

    order: int
    nodes: tuple[float, ...]
    weights: tuple[float, ...]


_RULE_CACHE: dict[int, QuadratureRule] = {}


def _hermite_normalized(m: int, t: float) -> tuple[float, float]:
    """(h_m(t), h_{m-1}(t)) for orthonormal Hermite functions h_k = H_k/||H_k||.

    The normalized recurrence stays O(1) in magnitude near the nodes, so
    Newton refinement is stable for high orders.
    """
    h_prev = 0.0
    h = math.pi ** -0.25
    for k in range(m):
        h_next = t * math.sqrt(2.0 / (k + 1)) * h - math.sqrt(k / (k + 1.0)) * h_prev
        h_prev, h = h, h_next
    return h, h_prev


def gauss_hermite_rule(order: int) -> QuadratureRule:
    """Nodes/weights integrating p(t)e^{-t^2} exactly for deg p <= 2*order-1.

    Initial guesses come from the symmetric Jacobi (recurrence) matrix;
    each node is then Newton-polished on the normalized recurrence until
    the update falls below 1e-14.
    """
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    cached = _RULE_CACHE.get(order)
    if cached is not None:
        return cached
    if order == 1:
        rule = QuadratureRule(1, (0.0,), (math.sqrt(math.pi),))
        _RULE_CACHE[order] = rule
        return rule
    sub = np.sqrt(np.arange(1, order) / 2.0)
    jacobi = np.diag(sub, -1) + np.diag(sub, 1)
    guesses = np.linalg.eigvalsh(jacobi)
    nodes = []
    weights = []
    for guess in guesses:
        t = float(guess)
        for _ in range(60):
            h_m, h_m1 = _hermite_normalized(order, t)
            derivative = math.sqrt(2.0 * order) * h_m1
            step = h_m / derivative
            t -= step
            if abs(step) < 1e-14:
                break
        _, h_m1 = _hermite_normalized(order, t)
        nodes.append(t)
        weights.append(1.0 / (order * h_m1 * h_m1))
    rule = QuadratureRule(order, tuple(nodes), tuple(weights))
    _RULE_CACHE[order] = rule
    return rule


def integrate_gaussian(
    fn: Callable[[Sequence[float]], float],
    weight: WeightSpec,
    order: int,
) -> float:
    """Tensor Gauss-Hermite approximation of integral fn(x) e^{-weight} dx.

    Change of variables x = y/sqrt(lam) + center maps the scaled weight to
    the reference e^{-|y|^2} rule and contributes the lam^{-n/2} Jacobian.
    """
    rule = gauss_hermite_rule(order)
    lam = float(weight.lam)
    scale = lam**-0.5
    center = [float(c) for c in weight.center]
    n = weight.dim
    total = 0.0
    idx = [0] * n
    while True:
        w = 1.0
        x = [0.0] * n
        for j in range(n):
            w *= rule.weights[idx[j]]
            x[j] = rule.nodes[idx[j]] * scale + center[j]
        total += w * fn(x)
        j = n - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < rule.order:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            break
    return total * lam ** (-n / 2.0)


# ----------------------------------------------------------------------
# closed-form Gaussian moments against trig/exponential factors
# ----------------------------------------------------------------------


def _double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _axis_moment(e: int) -> float:
    """integral t^e e^{-t^2} dt: 0 for odd e, sqrt(pi)(e-1)!!/2^{e/2} even."""
    if e % 2 == 1:
        return 0.0
    return math.sqrt(math.pi) * _double_factorial(e - 1) / 2.0 ** (e // 2)


def _shifted_moments(p: Polynomial, offset: Sequence[complex]) -> complex:
    """integral p(y + offset) e^{-|y|^2} dy with a complex offset vector."""
    total = 0.0 + 0.0j
    for exps, coef in p.sorted_terms():
        acc = complex(coef)
        for e, c in zip(exps, offset):
            axis = 0.0 + 0.0j
            # binomial expansion of (y + c)^e, odd powers of y vanish
            binom = 1
            for i in range(e + 1):
                if (e - i) % 2 == 0:
                    axis += binom * c**i * _axis_moment(e - i)
                binom = binom * (e - i) // (i + 1)
            acc *= axis
        total += acc
    return total


def gaussian_moment(p: Polynomial, k: Sequence[float], kind: str) -> float:
    """Closed-form integral of p(x)*{cos,sin,exp}(k.x)*e^{-|x|^2} over R^n.

    Completing the square gives
        exp:      e^{|k|^2/4}  * integral p(y + k/2)  e^{-|y|^2} dy
        cos/sin:  e^{-|k|^2/4} * Re/Im integral p(y + ik/2) e^{-|y|^2} dy
    Unit weight only; the result is an ordinary float.
    """
    if len(k) != p.dim:
        raise DimensionMismatchError(f"wavevector length {len(k)} != dim {p.dim}")
    kk = [float(v) for v in k]
    k_sq = sum(v * v for v in kk)
    if kind == "exp":
        value = _shifted_moments(p, [v / 2.0 for v in kk])
        return math.exp(k_sq / 4.0) * value.real
    if kind in ("cos", "sin"):
        value = _shifted_moments(p, [complex(0.0, v / 2.0) for v in kk])
        value *= math.exp(-k_sq / 4.0)
        return value.real if kind == "cos" else value.imag
    raise ValueError(f"unknown moment kind {kind!r}")
