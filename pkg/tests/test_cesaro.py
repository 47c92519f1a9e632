import math

import numpy as np
import pytest
from scipy.integrate import quad

from cesarolab.cesaro import (
    apply_coefficient_route,
    apply_quadrature_route,
    verify_radial_identity,
)
from cesarolab.errors import DimensionMismatch
from cesarolab.series import TruncatedSeries, random_series


def interior_points(dimension, count, seed=0, spread=0.8):
    rng = np.random.Generator(np.random.Philox(seed))
    pts = rng.standard_normal((count, dimension)) + 1j * rng.standard_normal((count, dimension))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return pts * (spread * rng.random((count, 1)))


class TestCoefficientRoute:
    def test_unit_function_recovers_symbol_without_constant(self):
        g = random_series(2, 5, 10, seed=4)
        one = TruncatedSeries.constant(2, 1.0)
        result = apply_coefficient_route(one, g)
        want = {a: c for a, c in g.terms.items() if sum(a) > 0}
        assert set(result.terms) == set(want)
        for alpha, coeff in want.items():
            assert result.terms[alpha] == pytest.approx(coeff, rel=1e-15)

    def test_single_variable_squares_the_coordinate(self):
        z = TruncatedSeries.coordinate(1)
        result = apply_coefficient_route(z, z)
        assert result.terms == {(2,): pytest.approx(0.5)}

    def test_two_variables_mixed_term(self):
        f = TruncatedSeries.coordinate(2, index=0)
        g = TruncatedSeries.coordinate(2, index=1)
        result = apply_coefficient_route(f, g)
        assert result.terms == {(1, 1): pytest.approx(0.5)}

    def test_output_never_has_constant_term(self):
        f = random_series(1, 4, 6, seed=1)
        g = random_series(1, 4, 6, seed=2)
        assert (0,) not in apply_coefficient_route(f, g).terms

    def test_linear_in_the_function_argument(self):
        g = random_series(2, 4, 8, seed=3)
        f1 = random_series(2, 4, 8, seed=5)
        f2 = random_series(2, 4, 8, seed=6)
        combined = apply_coefficient_route(f1 + 2j * f2, g)
        split = apply_coefficient_route(f1, g) + 2j * apply_coefficient_route(f2, g)
        for alpha in set(combined.terms) | set(split.terms):
            a = combined.terms.get(alpha, 0j)
            b = split.terms.get(alpha, 0j)
            assert abs(a - b) <= 1e-12 * max(1.0, abs(b))

    def test_symmetrized_product_rule(self):
        # T_g f + T_f g = f g - f(0) g(0) on coefficients
        f = random_series(2, 5, 9, seed=7)
        g = random_series(2, 5, 9, seed=8)
        lhs = apply_coefficient_route(f, g) + apply_coefficient_route(g, f)
        product = f.multiply(g)
        want = {a: c for a, c in product.terms.items() if sum(a) > 0}
        scale = max(abs(c) for c in want.values())
        for alpha in set(lhs.terms) | set(want):
            a = lhs.terms.get(alpha, 0j)
            b = want.get(alpha, 0j)
            assert abs(a - b) <= 1e-12 * scale

    def test_constant_symbol_gives_zero(self):
        f = random_series(1, 3, 4, seed=9)
        g = TruncatedSeries.constant(1, 5.0 - 1j)
        assert apply_coefficient_route(f, g).is_zero

    def test_degree_adds(self):
        f = TruncatedSeries(1, {(2,): 1.0})
        g = TruncatedSeries(1, {(3,): 1.0})
        result = apply_coefficient_route(f, g)
        assert result.terms == {(5,): pytest.approx(3.0 / 5.0)}


class TestQuadratureRoute:
    @pytest.mark.parametrize("dimension", [1, 2, 3])
    def test_agrees_with_coefficient_route(self, dimension):
        f = random_series(dimension, 5, 8, seed=dimension)
        g = random_series(dimension, 5, 8, seed=10 + dimension)
        exact = apply_coefficient_route(f, g)
        for z in interior_points(dimension, 8, seed=20 + dimension):
            got = apply_quadrature_route(f, g, z)
            want = complex(exact.evaluate(z))
            assert got == pytest.approx(want, rel=1e-9, abs=1e-11)

    def test_zero_point_maps_to_zero(self):
        f = random_series(2, 4, 6, seed=31)
        g = random_series(2, 4, 6, seed=32)
        assert apply_quadrature_route(f, g, np.zeros(2, dtype=complex)) == 0.0

    def test_log_symbol_against_adaptive_quadrature(self):
        # f = z, g = log 1/(1-z): T_g f(z) = -z - log(1-z) in one variable
        from cesarolab.cli import log_kernel_function

        f = TruncatedSeries.coordinate(1)
        g = log_kernel_function(1)
        for x in (0.3, 0.5, 0.85):
            got = apply_quadrature_route(f, g, np.array([x + 0j]))
            want = -x - math.log1p(-x)
            assert got.real == pytest.approx(want, rel=1e-10)
            assert abs(got.imag) < 1e-12
            check, _ = quad(lambda t: (t * x) * (x / (1 - t * x)), 0.0, 1.0)
            assert got.real == pytest.approx(check, rel=1e-9)

    def test_dimension_mismatch_rejected(self):
        f = random_series(1, 2, 3, seed=1)
        g = random_series(2, 2, 3, seed=1)
        with pytest.raises(DimensionMismatch):
            apply_quadrature_route(f, g, np.zeros(1, dtype=complex))
        with pytest.raises(DimensionMismatch):
            apply_quadrature_route(f, f, np.zeros(2, dtype=complex))


class TestRadialIdentity:
    @pytest.mark.parametrize("dimension", [1, 2, 3])
    def test_residual_near_machine_epsilon(self, dimension):
        f = random_series(dimension, 6, 12, seed=50 + dimension)
        g = random_series(dimension, 6, 12, seed=60 + dimension)
        report = verify_radial_identity(f, g)
        assert report.max_rel <= 1e-14
        assert report.within(1e-12)
        assert report.n_terms > 0
        assert report.scale > 0.0

    def test_constant_symbol_gives_zero_residual(self):
        f = random_series(1, 3, 4, seed=71)
        g = TruncatedSeries.constant(1, 2.0)
        report = verify_radial_identity(f, g)
        assert report.max_abs == 0.0
        assert report.within(0.0)
