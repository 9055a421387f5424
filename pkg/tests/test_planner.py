"""Tests for sampling-rate planning."""

import math

import pytest

from bernoulli_audit.planner import (
    PlanParams,
    asn,
    build_plan,
    initial_rate,
    rate_for_power,
    simulate_power,
    two_candidate_split,
)


class TestAsn:
    def test_reference_values(self):
        # about 2,400 ballots at a 5% margin and about 600 at 10%
        assert 2390 <= asn(0.05, 0.05) <= 2400
        assert 597 <= asn(0.05, 0.10) <= 601

    def test_unit_margin(self):
        assert asn(0.05, 1.0) == pytest.approx(2 * math.log(20))

    def test_strictly_decreasing_in_margin(self):
        values = [asn(0.05, m) for m in (0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_increasing_as_alpha_shrinks(self):
        values = [asn(a, 0.1) for a in (0.2, 0.1, 0.05, 0.01, 0.001)]
        assert all(a < b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("alpha,margin", [(0.0, 0.1), (1.0, 0.1), (0.05, 0.0), (0.05, 1.5)])
    def test_domain(self, alpha, margin):
        with pytest.raises(ValueError):
            asn(alpha, margin)


class TestInitialRate:
    def test_definitional_case(self):
        params = PlanParams(alpha=0.05, margin=0.1, n_total=599_146)
        assert initial_rate(params) == pytest.approx(
            asn(0.05, 0.1) / 599_146, rel=1e-12
        )

    def test_invalid_votes_inflate_rate(self):
        clean = PlanParams(alpha=0.05, margin=0.1, n_total=100_000)
        half_invalid = PlanParams(
            alpha=0.05, margin=0.1, n_total=100_000, invalid_fraction=0.5
        )
        assert initial_rate(half_invalid) == pytest.approx(2 * initial_rate(clean))

    def test_tiny_population_caps_at_one(self):
        params = PlanParams(alpha=0.05, margin=0.05, n_total=100)
        assert initial_rate(params) == 1.0

    def test_multiplier_scales(self):
        base = PlanParams(alpha=0.05, margin=0.1, n_total=100_000)
        quadrupled = PlanParams(
            alpha=0.05, margin=0.1, n_total=100_000, asn_multiplier=4.0
        )
        assert initial_rate(quadrupled) == pytest.approx(4 * initial_rate(base))

    def test_param_validation(self):
        with pytest.raises(ValueError):
            PlanParams(alpha=0.05, margin=0.1, n_total=1000, invalid_fraction=1.0)
        with pytest.raises(ValueError):
            PlanParams(alpha=0.05, margin=0.1, n_total=0)


class TestSimulatePower:
    def test_census_confirms_everything(self):
        estimate = simulate_power(50_000, 0.1, 1.0, 0.05, trials=200, seed=3)
        assert estimate.power == 1.0

    def test_rate_zero_has_no_power(self):
        estimate = simulate_power(50_000, 0.1, 0.0, 0.05, trials=200, seed=3)
        assert estimate.power == 0.0

    def test_monotone_in_rate_with_common_random_numbers(self):
        rates = (0.005, 0.01, 0.015, 0.02, 0.03)
        powers = [
            simulate_power(100_000, 0.1, r, 0.05, trials=500, seed=5).power
            for r in rates
        ]
        assert all(a <= b + 1e-12 for a, b in zip(powers, powers[1:]))

    def test_standard_error(self):
        estimate = simulate_power(10_000, 0.2, 0.02, 0.05, trials=400, seed=8)
        expected = math.sqrt(estimate.power * (1 - estimate.power) / 400)
        assert estimate.std_error == pytest.approx(expected)

    def test_split_resolves_margin(self):
        assert two_candidate_split(100_000, 0.1) == (55_000, 45_000)
        with pytest.raises(ValueError):
            two_candidate_split(10, 0.01)


class TestRateForPower:
    def test_round_trip_attains_target(self):
        rate = rate_for_power(10_000, 0.2, 0.05, 0.9, trials=1000, seed=11)
        fresh = simulate_power(10_000, 0.2, rate, 0.05, trials=1000, seed=999)
        assert abs(fresh.power - 0.9) <= 0.03

    def test_consistent_with_published_table_cells(self):
        # 2-candidate, 5% risk limit. The coarse 100k-ballot table block
        # rounds rates up to whole percents, so the honest requirement for
        # (m=20%, 80% power) is at most that 1% entry.
        rate = rate_for_power(100_000, 0.2, 0.05, 0.8, trials=1000, seed=11)
        assert 0.0 < rate <= 0.01
        assert simulate_power(100_000, 0.2, 0.01, 0.05, 1000, seed=12).power >= 0.8

        rate = rate_for_power(1_000_000, 0.05, 0.05, 0.99, trials=1000, seed=11)
        assert 0.010 <= rate <= 0.016  # table: 1.3%

        rate = rate_for_power(10_000_000, 0.01, 0.05, 0.90, trials=400, seed=11)
        assert 0.014 <= rate <= 0.019  # table: 1.66%

    def test_bracket_resolution(self):
        # returned value is the upper end of a bracket no wider than 0.25pp
        rate = rate_for_power(10_000, 0.2, 0.05, 0.9, trials=500, seed=2)
        lower = simulate_power(10_000, 0.2, rate - 0.0025, 0.05, 500, seed=2).power
        upper = simulate_power(10_000, 0.2, rate, 0.05, 500, seed=2).power
        assert upper >= 0.9
        assert lower < 0.9 or rate <= 0.0025


class TestBuildPlan:
    def test_plan_document_shape(self):
        params = PlanParams(alpha=0.05, margin=0.1, n_total=100_000)
        plan = build_plan(params, method="asn", trials=200, seed=4)
        assert set(plan) == {
            "alpha",
            "margin",
            "invalid_fraction",
            "asn",
            "recommended_rate",
            "method",
            "power_estimate",
            "trials",
        }
        assert plan["method"] == "asn"
        assert plan["recommended_rate"] == pytest.approx(asn(0.05, 0.1) / 100_000)

    def test_simulated_plan_hits_target(self):
        params = PlanParams(alpha=0.05, margin=0.2, n_total=10_000, target_power=0.9)
        plan = build_plan(params, method="simulated", trials=800, seed=4)
        assert plan["power_estimate"] >= 0.85
