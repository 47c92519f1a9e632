import math

import numpy as np
import pytest

from cesarolab.ball import DEFAULT_RADIAL_GRID, SamplingScheme
from cesarolab.cli import log_kernel_function
from cesarolab.criteria import (
    TREND_BOUNDED,
    TREND_DIVERGING,
    TREND_INCONCLUSIVE,
    TREND_VANISHING,
    boundary_family,
    check_embedding_bound,
    check_growth_bound,
    classify_trend,
    compactness_probe,
    compactness_scan,
    criterion_statistic,
    empirical_operator_ratio,
    log_kernel_ratio,
    log_test_function,
    power_test_function,
    sup_decay_scan,
)
from cesarolab.errors import DomainError, InvalidParameter
from cesarolab.quadrature import BallIntegralSpec
from cesarolab.series import TruncatedSeries, random_series
from cesarolab.spaces import SpaceParams

from oracles import fd_gradient, log_kernel_series_ratio


def scheme_for(n_samples=64, seed=0, levels=1):
    return SamplingScheme(sphere_samples=n_samples, seed=seed, refinement_levels=levels)


class TestClassifyTrend:
    def test_slowly_saturating_statistic_is_bounded(self):
        radii = np.asarray(DEFAULT_RADIAL_GRID)
        trend, growth = classify_trend(radii, radii.copy())
        assert trend == TREND_BOUNDED
        assert growth == pytest.approx(0.9999 / 0.9)

    def test_decaying_statistic_is_vanishing(self):
        radii = np.asarray(DEFAULT_RADIAL_GRID)
        trend, _ = classify_trend(radii, (1 - radii**2) * radii)
        assert trend == TREND_VANISHING

    def test_blowing_up_statistic_is_diverging(self):
        radii = np.asarray(DEFAULT_RADIAL_GRID)
        values = np.log(2.0 / (1 - radii**2)) * radii / (1 - radii)
        trend, growth = classify_trend(radii, values)
        assert trend == TREND_DIVERGING
        assert growth > 10.0

    def test_identically_zero_is_vanishing(self):
        radii = np.asarray(DEFAULT_RADIAL_GRID)
        trend, _ = classify_trend(radii, np.zeros(len(radii)))
        assert trend == TREND_VANISHING

    def test_no_boundary_tail_is_inconclusive(self):
        radii = np.array([0.1, 0.3, 0.5])
        trend, _ = classify_trend(radii, radii)
        assert trend == TREND_INCONCLUSIVE

    def test_growth_measured_on_tail_not_full_grid(self):
        # values rise 100x over the interior but flatten on the tail
        radii = np.asarray(DEFAULT_RADIAL_GRID)
        values = np.minimum(100.0 * radii, 90.0)
        trend, growth = classify_trend(radii, values)
        assert trend == TREND_BOUNDED
        assert growth == pytest.approx(1.0)

    def test_policy_override(self):
        radii = np.asarray(DEFAULT_RADIAL_GRID)
        strict = dict(tail_start=0.9, diverging_growth=1.05, vanishing_fraction=0.1,
                      bounded_growth=1.02)
        trend, _ = classify_trend(radii, radii, policy=strict)
        assert trend == TREND_DIVERGING


class TestCriterionStatistic:
    def test_bounded_case_closed_form(self):
        # s = 2 weight (1-r^2)^(-1) against alpha = 1 leaves exactly r for g = z
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=1.0)
        report = criterion_statistic(TruncatedSeries.coordinate(1), params, scheme_for())
        np.testing.assert_allclose(report.values, report.radii, rtol=1e-12)
        assert report.trend == TREND_BOUNDED
        assert report.kind == "boundedness"

    def test_vanishing_case_closed_form(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=2.0)
        report = criterion_statistic(TruncatedSeries.coordinate(1), params, scheme_for())
        radii = np.asarray(report.radii)
        np.testing.assert_allclose(report.values, (1 - radii**2) * radii, rtol=1e-12)
        assert report.trend == TREND_VANISHING

    def test_diverging_case_closed_form(self):
        # borderline weight log(2/(1-r^2)) and symbol slope r/(1-r)
        params = SpaceParams(n=1, p=2.0, q=0.0, alpha=0.0)
        report = criterion_statistic(log_kernel_function(1), params, scheme_for())
        radii = np.asarray(report.radii)
        want = np.log(2.0 / (1 - radii**2)) * radii / (1 - radii)
        np.testing.assert_allclose(report.values, want, rtol=1e-12)
        assert report.trend == TREND_DIVERGING
        assert report.growth_factor > 10.0

    def test_small_exponent_case_drops_weight(self):
        # s = 1/2 < 1: no weight factor, so alpha = 1 and g = z give (1-r^2) r
        params = SpaceParams(n=1, p=4.0, q=0.0, alpha=1.0)
        report = criterion_statistic(TruncatedSeries.coordinate(1), params, scheme_for())
        radii = np.asarray(report.radii)
        np.testing.assert_allclose(report.values, (1 - radii**2) * radii, rtol=1e-12)

    def test_peak_and_rows(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=1.0)
        report = criterion_statistic(TruncatedSeries.coordinate(1), params, scheme_for())
        assert report.peak == pytest.approx(max(report.values))
        rows = report.rows()
        assert rows[0] == (report.radii[0], report.values[0])


class TestCompactnessScan:
    def test_vanishing_statistic_consistent_with_compactness(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=2.0)
        scan = compactness_scan(TruncatedSeries.coordinate(1), params, scheme_for())
        assert scan.kind == "little_oh"
        assert scan.trend == TREND_VANISHING
        assert scan.compact_consistent is True

    def test_bounded_statistic_not_compact_in_little_oh_regime(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=1.0)
        scan = compactness_scan(TruncatedSeries.coordinate(1), params, scheme_for())
        assert scan.compact_consistent is False

    def test_small_exponent_regime_reports_membership(self):
        params = SpaceParams(n=1, p=4.0, q=0.0, alpha=1.0)
        scan = compactness_scan(TruncatedSeries.coordinate(1), params, scheme_for())
        assert scan.kind == "bloch_membership"
        assert scan.compact_consistent is True


class TestPowerFamily:
    def test_value_at_own_center(self):
        params = SpaceParams(n=1, p=1.0, q=0.0)  # s = 2
        w = np.array([0.8 + 0j])
        f = power_test_function(w, params)
        want = (1.0 - 0.64) ** (1.0 - 2.0)
        assert complex(f.evaluate(w)) == pytest.approx(want, rel=1e-12)

    def test_value_at_origin(self):
        params = SpaceParams(n=2, p=1.0, q=0.0)  # s = 3
        w = np.array([0.5 + 0j, 0.3j])
        f = power_test_function(w, params)
        assert complex(f.evaluate(np.zeros(2, dtype=complex))) == pytest.approx(
            1.0 - 0.34, rel=1e-12
        )

    def test_gradient_matches_finite_differences(self):
        params = SpaceParams(n=2, p=1.0, q=0.5)
        w = np.array([0.6 + 0.1j, -0.2j])
        f = power_test_function(w, params)
        z = np.array([0.2 - 0.1j, 0.3 + 0.2j])
        got = f.gradient_at(z)
        want = fd_gradient(lambda x: complex(f.evaluate(x)), z)
        np.testing.assert_allclose(got, want, rtol=1e-6)

    def test_requires_exponent_above_one(self):
        with pytest.raises(DomainError):
            power_test_function(np.array([0.5 + 0j]), SpaceParams(n=1, p=2.0, q=0.0))

    def test_requires_interior_w(self):
        with pytest.raises(DomainError):
            power_test_function(np.array([1.0 + 0j]), SpaceParams(n=1, p=1.0, q=0.0))


class TestLogFamily:
    def test_value_at_own_center_is_the_normalizer(self):
        # exponents -2/p and 1 + 2/p collapse to a single log at z = w
        params = SpaceParams(n=1, p=2.0, q=0.0)  # s = 1
        w = np.array([math.sqrt(0.75) + 0j])
        f = log_test_function(w, params)
        assert complex(f.evaluate(w)) == pytest.approx(math.log(4.0), rel=1e-12)

    def test_gradient_matches_finite_differences(self):
        params = SpaceParams(n=2, p=3.0, q=0.0)  # s = 1
        w = np.array([0.5 + 0.2j, 0.4 - 0.1j]) * 0.9
        f = log_test_function(w, params)
        z = np.array([0.3 + 0.1j, -0.2 + 0.25j])
        got = f.gradient_at(z)
        want = fd_gradient(lambda x: complex(f.evaluate(x)), z)
        np.testing.assert_allclose(got, want, rtol=1e-6)

    def test_rejects_center_at_origin(self):
        with pytest.raises(DomainError):
            log_test_function(np.zeros(1, dtype=complex), SpaceParams(n=1, p=2.0, q=0.0))

    def test_requires_unit_exponent(self):
        with pytest.raises(DomainError):
            log_test_function(np.array([0.5 + 0j]), SpaceParams(n=1, p=1.0, q=0.0))


class TestBoundaryFamily:
    def test_picks_power_family_above_one(self):
        params = SpaceParams(n=1, p=1.0, q=0.0)
        members = boundary_family(params, (0.5, 0.9))
        assert len(members) == 2
        assert members[0][1].label.startswith("power")

    def test_picks_log_family_at_one(self):
        params = SpaceParams(n=1, p=2.0, q=0.0)
        members = boundary_family(params, (0.5,))
        assert members[0][1].label.startswith("log")

    def test_below_one_has_no_family(self):
        with pytest.raises(DomainError):
            boundary_family(SpaceParams(n=1, p=4.0, q=0.0), (0.5,))

    def test_custom_direction_is_normalized(self):
        params = SpaceParams(n=2, p=1.0, q=0.0)
        members = boundary_family(params, (0.9,), direction=np.array([3.0, 4.0j]))
        w = members[0][0]
        assert np.linalg.norm(w) == pytest.approx(0.9, rel=1e-12)

    def test_witness_identity_for_log_family(self):
        # |f_j(w_j)| equals log 1/(1-|w_j|^2) exactly
        params = SpaceParams(n=1, p=2.0, q=0.0)
        for modulus in (0.5, 0.9, 0.99, 0.999):
            w, f = boundary_family(params, (modulus,))[0]
            big_l = math.log(1.0 / (1.0 - modulus * modulus))
            assert abs(complex(f.evaluate(w))) == pytest.approx(big_l, rel=1e-12)

    def test_witness_identity_for_power_family(self):
        params = SpaceParams(n=1, p=1.0, q=0.0)  # s = 2
        for modulus in (0.5, 0.9, 0.99):
            w, f = boundary_family(params, (modulus,))[0]
            want = (1.0 - modulus * modulus) ** -1.0
            assert abs(complex(f.evaluate(w))) == pytest.approx(want, rel=1e-12)


class TestOperatorRatioProbe:
    def test_bounded_case_has_tight_ratio_spread(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=1.0)
        family = boundary_family(params, (0.5, 0.9, 0.99, 0.999))
        probe = empirical_operator_ratio(
            TruncatedSeries.coordinate(1), params, family, scheme_for()
        )
        assert probe.flags["bounded_ratios"]
        assert probe.flags["ratio_spread"] < 10.0
        # the witness point makes the capped sup exactly |w| here
        np.testing.assert_allclose(probe.operator_norms, probe.moduli, rtol=1e-12)

    def test_unbounded_case_ratios_grow(self):
        params = SpaceParams(n=1, p=2.0, q=0.0, alpha=0.0)
        family = boundary_family(params, (0.9, 0.99, 0.999))
        probe = empirical_operator_ratio(
            log_kernel_function(1), params, family, scheme_for()
        )
        assert probe.flags["ratio_growth"] > 5.0
        assert not probe.flags["bounded_ratios"]

    def test_report_rows_align(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=1.0)
        family = boundary_family(params, (0.5, 0.9))
        probe = empirical_operator_ratio(
            TruncatedSeries.coordinate(1), params, family, scheme_for()
        )
        headers, rows = probe.rows()
        assert headers == ["w_modulus", "operator_norm", "besov_norm", "ratio"]
        assert len(rows) == 2


class TestCompactnessProbe:
    def test_strong_decay_when_weight_dominates(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=2.0)
        probe = compactness_probe(
            TruncatedSeries.coordinate(1), params, (0.9, 0.99, 0.999, 0.9999), scheme_for()
        )
        assert probe.flags["decays"]
        assert probe.operator_norms[-1] < 0.1 * probe.operator_norms[0]

    def test_persistent_witness_blocks_compactness(self):
        params = SpaceParams(n=1, p=1.0, q=0.0, alpha=1.0)
        probe = compactness_probe(
            TruncatedSeries.coordinate(1), params, (0.9, 0.99, 0.999), scheme_for()
        )
        # the witness lower bound is exactly |w_j| for this symbol
        np.testing.assert_allclose(probe.lower_bounds, probe.moduli, rtol=1e-12)
        assert not probe.flags["decays"]
        assert probe.flags["tail_lower_bound"] >= 0.9

    def test_no_family_below_threshold(self):
        with pytest.raises(DomainError):
            compactness_probe(
                TruncatedSeries.coordinate(1),
                SpaceParams(n=1, p=4.0, q=0.0, alpha=1.0),
                (0.9,),
                scheme_for(),
            )


class TestEmbeddingBound:
    @pytest.mark.parametrize("n,p,q", [(1, 2.0, 0.0), (1, 1.0, 0.5), (2, 4.0, 1.0)])
    def test_random_polynomials_stay_below_bound(self, n, p, q):
        params = SpaceParams(n=n, p=p, q=q)
        f = random_series(n, 6, 10, seed=int(p * 10 + q * 2 + n))
        report = check_embedding_bound(f, params, scheme_for(n_samples=32))
        assert report.ok
        assert report.max_ratio <= 1.0
        assert report.detail["samples"] > 0

    def test_rejects_bad_r0(self):
        f = random_series(1, 2, 3, seed=0)
        with pytest.raises(InvalidParameter):
            check_embedding_bound(f, SpaceParams(n=1, p=2.0, q=0.0), scheme_for(), r0=1.0)


class TestGrowthBound:
    @pytest.mark.parametrize("p", [0.5, 1.0, 2.0])
    def test_random_polynomials_stay_below_envelope(self, p):
        f = random_series(2, 6, 10, seed=int(p * 100))
        report = check_growth_bound(f, p, scheme_for(n_samples=32))
        assert report.ok
        assert report.max_ratio <= 1.0


class TestLogKernelRatio:
    @pytest.mark.parametrize("n,t", [(1, 0.0), (1, 1.0), (2, 0.0)])
    def test_oscillatory_form_matches_series_oracle(self, n, t):
        spec = BallIntegralSpec(dimension=n, weight=t, sphere_samples=4096,
                                radial_order=128, seed=0)
        z = np.zeros(n, dtype=complex)
        z[0] = 0.9
        got = log_kernel_ratio(z, t, spec)
        want = log_kernel_series_ratio(n, t, 0.9, "oscillatory", 800)
        assert got == pytest.approx(want, rel=1e-10)

    @pytest.mark.parametrize("n,t", [(1, 0.0), (2, 0.0)])
    def test_modulus_form_matches_series_oracle(self, n, t):
        spec = BallIntegralSpec(dimension=n, weight=t, sphere_samples=4096,
                                radial_order=128, seed=0)
        z = np.zeros(n, dtype=complex)
        z[0] = 0.9
        got = log_kernel_ratio(z, t, spec, kernel_form="modulus")
        want = log_kernel_series_ratio(n, t, 0.9, "modulus", 800)
        assert got == pytest.approx(want, rel=1e-10)

    def test_growth_class_gap_between_forms(self):
        # the oscillatory form stays bounded; dropping the phase costs an
        # extra logarithm and the deep-radius ratio more than doubles
        spec = BallIntegralSpec(dimension=1, weight=1.0, sphere_samples=8192,
                                radial_order=160, seed=0)
        base_osc = log_kernel_ratio(np.array([0.9 + 0j]), 1.0, spec)
        deep_osc = log_kernel_ratio(np.array([0.999 + 0j]), 1.0, spec)
        base_mod = log_kernel_ratio(np.array([0.9 + 0j]), 1.0, spec, kernel_form="modulus")
        deep_mod = log_kernel_ratio(np.array([0.999 + 0j]), 1.0, spec, kernel_form="modulus")
        assert deep_osc <= 2.0 * base_osc
        assert deep_mod > 2.0 * base_mod

    def test_direction_invariance(self):
        spec = BallIntegralSpec(dimension=2, weight=0.0, sphere_samples=2048,
                                radial_order=96, seed=0)
        a = log_kernel_ratio(np.array([0.7 + 0j, 0.0]), 0.0, spec)
        b = log_kernel_ratio(np.array([0.7j, 0.0]), 0.0, spec)
        c = log_kernel_ratio(np.array([0.7, 0.0]) / math.sqrt(2) * (1 + 1j), 0.0, spec)
        assert a == pytest.approx(b, rel=1e-12)
        assert a == pytest.approx(c, rel=1e-12)

    def test_input_validation(self):
        spec = BallIntegralSpec(dimension=1, weight=0.0, sphere_samples=64, radial_order=16)
        with pytest.raises(InvalidParameter):
            log_kernel_ratio(np.array([0.5 + 0j]), 1.0, spec)
        with pytest.raises(DomainError):
            log_kernel_ratio(np.array([0.0j]), 0.0, spec)
        with pytest.raises(DomainError):
            log_kernel_ratio(np.array([1.0 + 0j]), 0.0, spec)
        with pytest.raises(InvalidParameter):
            log_kernel_ratio(np.array([0.5 + 0j]), 0.0, spec, kernel_form="absolute")


class TestSupDecayScan:
    def test_shrinking_powers_decay(self):
        functions = [TruncatedSeries.monomial(1, (j,)) for j in (1, 4, 16, 64)]
        scheme = SamplingScheme(radial_grid=(0.3, 0.6, 0.9), sphere_samples=16, seed=0)
        report = sup_decay_scan(functions, scheme)
        assert report.ok
        # sup over the grid of |z^j| is 0.9^j
        np.testing.assert_allclose(
            report.detail["sups"], [0.9, 0.9**4, 0.9**16, 0.9**64], rtol=1e-12
        )

    def test_constant_sequence_does_not_decay(self):
        functions = [TruncatedSeries.coordinate(1) for _ in range(3)]
        report = sup_decay_scan(functions, scheme_for(n_samples=8))
        assert not report.ok
