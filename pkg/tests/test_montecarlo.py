"""Monte Carlo estimators, exact enumeration oracles and reproducibility."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weakseq.montecarlo import (
    EstimateReport,
    TrialConfig,
    collision_count,
    collision_sum_bound,
    estimate_collision_mean,
    estimate_failure_probability,
    exact_collision_mean,
    exact_collision_report,
    exact_failure_probability,
    exact_failure_report,
    failure_bound,
)
from weakseq.search import derive_rng
from weakseq.zn import Modulus, Ordering, SubsetSpec, t_weak_violations


def subset(n, elems):
    return SubsetSpec.from_values(n, elems)


class TestDeterminism:
    def test_failure_estimate_bit_identical(self):
        cfg = TrialConfig(n=41, k=6, t=3, trials=500, seed=7)
        assert estimate_failure_probability(cfg) == estimate_failure_probability(cfg)

    def test_collision_estimate_bit_identical(self):
        s = subset(13, range(1, 13))
        a = estimate_collision_mean(s, 4, 300, seed=5)
        b = estimate_collision_mean(s, 4, 300, seed=5)
        assert a == b

    def test_single_trial_degenerate(self):
        report = estimate_failure_probability(TrialConfig(n=11, k=4, t=2, trials=1, seed=5))
        assert report.estimate in (0.0, 1.0)
        assert report.std_error == 0.0

    def test_per_trial_seed_derivation_is_stable(self):
        # the documented derivation: SHA-256 of "<seed>:<index>"
        assert derive_rng(3, 0).getrandbits(32) == derive_rng(3, 0).getrandbits(32)
        assert derive_rng(3, 0).getrandbits(32) != derive_rng(3, 1).getrandbits(32)


class TestFailureProbability:
    def test_seeded_run_stays_below_bound_plus_4se(self):
        cfg = TrialConfig(n=101, k=10, t=3, trials=20000, seed=424242)
        report = estimate_failure_probability(cfg)
        assert report.bound == pytest.approx(2 * 8 / 99)
        assert report.bound_satisfied
        assert report.estimate == pytest.approx(0.1584)  # frozen seeded value

    def test_t4_run(self):
        report = estimate_failure_probability(TrialConfig(n=101, k=10, t=4, trials=20000, seed=1))
        assert report.bound_satisfied

    def test_exact_enumeration_small(self):
        assert exact_failure_probability(7, 3, 2) == Fraction(2, 5)
        assert exact_failure_probability(13, 5, 4) == Fraction(59, 99)

    def test_stated_bound_defect_is_pinned(self):
        # the claimed (t-1)(k-2)/(n-2) cap genuinely fails for small t: the
        # window count per length is k-l+1, so only (t-1)(k-1)/(n-2) is safe
        for n, k, t in [(7, 3, 2), (9, 4, 2), (11, 4, 3)]:
            q = exact_failure_probability(n, k, t)
            assert q > failure_bound(n, k, t)
            assert q <= Fraction((t - 1) * (k - 1), n - 2)

    def test_corrected_bound_holds_on_grid(self):
        for n in (7, 9, 11, 13):
            for k in (3, 4, 5):
                for t in range(2, k):
                    q = exact_failure_probability(n, k, t)
                    assert q <= Fraction((t - 1) * (k - 1), n - 2), (n, k, t)

    def test_exact_report_flag_uses_zero_slack(self):
        report = exact_failure_report(13, 5, 4)
        assert report.std_error == 0.0
        assert report.bound_satisfied  # 59/99 <= 0.8181...


class TestCollisionMean:
    def test_seeded_run(self):
        s = subset(13, range(1, 13))
        report = estimate_collision_mean(s, 4, 20000, seed=99)
        assert report.bound == 3.0
        assert report.bound_satisfied
        assert report.estimate == pytest.approx(2.42655)  # frozen seeded value
        assert report.sharper_bound == pytest.approx(float(collision_sum_bound(12, 4)))

    def test_sum_bound_closed_form(self):
        assert collision_sum_bound(10, 3) == Fraction(8, 9) + Fraction(7, 8)
        assert collision_sum_bound(10, 2) == Fraction(8, 9)

    def test_far_sets_have_zero_mean(self):
        # small positive residues cannot build a zero window mod a large n
        s = subset(101, range(1, 11))
        report = estimate_collision_mean(s, 3, 200, seed=7)
        assert report.estimate == 0.0

    def test_exact_enumeration(self):
        assert exact_collision_mean(subset(13, [1, 2, 3, 4, 11, 12]), 3) == Fraction(13, 15)

    def test_symmetric_set_reaches_bound_exactly(self):
        # x <-> -x a perfect matching: every length-2 window is tight, so the
        # mean equals t-1 = 1 on the nose (the bound is attained, not beaten)
        mean = exact_collision_mean(subset(13, [1, 2, 3, 10, 11, 12]), 2)
        assert mean == 1
        report = exact_collision_report(subset(13, [1, 2, 3, 10, 11, 12]), 2)
        assert report.bound_satisfied  # <= comparison with zero slack

    def test_strict_below_bound_for_t_at_least_3(self):
        for elems in [(1, 2, 3, 10, 11, 12), (1, 2, 4, 8, 9, 11)]:
            mean = exact_collision_mean(subset(13, elems), 3)
            assert mean < 2

    @given(st.data())
    @settings(max_examples=80, deadline=None)
    def test_collision_count_equals_violation_count(self, data):
        n = data.draw(st.integers(min_value=4, max_value=40))
        k = data.draw(st.integers(min_value=3, max_value=min(8, n - 1)))
        seq = data.draw(st.permutations(range(1, n)))[:k]
        t = data.draw(st.integers(min_value=1, max_value=k - 1))
        x = collision_count(n, seq, t)
        v = len(t_weak_violations(Ordering(Modulus(n), tuple(seq)), t))
        assert x == v


class TestValidation:
    def test_config_bounds(self):
        with pytest.raises(ValueError):
            TrialConfig(n=10, k=10, t=2, trials=5, seed=0)
        with pytest.raises(ValueError):
            TrialConfig(n=10, k=4, t=4, trials=5, seed=0)
        with pytest.raises(ValueError):
            TrialConfig(n=10, k=4, t=2, trials=0, seed=0)

    def test_collision_t_range(self):
        with pytest.raises(ValueError):
            estimate_collision_mean(subset(11, [1, 2, 3]), 3, 10, 0)

    def test_report_json_round_trip(self):
        import json

        report = exact_collision_report(subset(13, [1, 2, 3, 10, 11, 12]), 2)
        data = json.loads(json.dumps(report.to_json_dict()))
        assert data["kind"] == "collision_mean"
        assert data["bound_satisfied"] is True
