import math

import pytest

from paleyrip.finite_field import is_prime_1mod4
from paleyrip.prng import SplitMix64
from paleyrip.theorem_engine import (
    admissible_gamma,
    case2_reduce,
    delta_bound,
    derive_parameters,
    select_case,
)

TOL = 1e-12


def sample_admissible(rng, want_case=None):
    """Rejection-sample (alpha, beta, gamma) with a nonempty open interval."""
    while True:
        alpha = 0.5 * rng.open_unit()
        beta = 2.0 * rng.open_unit()
        lo, hi = admissible_gamma(alpha, beta)
        if hi <= lo:
            continue
        gamma = lo + rng.open_unit() * (hi - lo)
        if not lo < gamma < hi:
            continue
        if want_case and select_case(alpha, min(beta, 1.0)) != want_case:
            continue
        return alpha, beta, gamma


class TestAdmissibleGamma:
    def test_hand_computed_intervals(self):
        lo, hi = admissible_gamma(0.1, 0.5)
        assert lo == 0.5 and hi == pytest.approx(2 / 3, abs=TOL)
        lo, hi = admissible_gamma(0.3, 1.0)
        assert lo == 0.5 and hi == pytest.approx(5 / 6, abs=TOL)

    def test_alpha_half_empty(self):
        lo, hi = admissible_gamma(0.5, 1.0)
        assert hi <= lo

    def test_beta_above_one_clamped(self):
        assert admissible_gamma(0.1, 1.7) == admissible_gamma(0.1, 1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            admissible_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            admissible_gamma(0.1, 0.0)
        with pytest.raises(ValueError):
            admissible_gamma(0.1, 2.5)

    def test_hi_monotonicity(self):
        rng = SplitMix64(31)
        for _ in range(500):
            alpha = 0.45 * rng.open_unit() + 0.01
            beta = rng.open_unit()
            _, hi = admissible_gamma(alpha, beta)
            _, hi_more_alpha = admissible_gamma(alpha + 0.02, beta)
            _, hi_more_beta = admissible_gamma(alpha, min(beta + 0.02, 1.0))
            assert hi_more_alpha <= hi + TOL
            assert hi_more_beta >= hi - TOL

    def test_byproduct_alpha_below_quarter(self):
        # alpha < 1/4 guarantees a nonempty interval for every beta <= 1
        rng = SplitMix64(77)
        for _ in range(500):
            alpha = 0.25 * rng.open_unit()
            beta = rng.open_unit()
            lo, hi = admissible_gamma(alpha, beta)
            assert hi > lo


class TestSelectCase:
    def test_hand_examples(self):
        assert select_case(0.1, 0.5) == "I"  # 0.1333 < 0.5
        assert select_case(0.3, 1.0) == "II"  # 0.6 >= 0.5
        assert select_case(0.125, 1.0) == "I"  # boundary 0.25 < 0.5

    def test_boundary_is_case_two(self):
        # 2a/(2-b) = 0.5 exactly: not strict, so Case II
        assert select_case(0.25, 1.0) == "II"

    def test_rejects_unclamped_beta(self):
        with pytest.raises(ValueError):
            select_case(0.1, 1.5)


class TestCase2Reduce:
    def test_hand_example(self):
        gamma_star, beta_star = case2_reduce(0.3, 1.0, 0.6)
        assert gamma_star == pytest.approx((0.6 + 5 / 6) / 2, abs=TOL)
        assert gamma_star == pytest.approx(0.7166666666666667, abs=TOL)
        assert beta_star == pytest.approx(2 - 1 / gamma_star, abs=TOL)
        assert beta_star == pytest.approx(0.6046511627906976, abs=1e-10)
        # postcondition: back in Case I
        assert 2 * 0.3 / (2 - beta_star) == pytest.approx(0.43, abs=1e-10)
        assert 2 * 0.3 / (2 - beta_star) < 0.5

    def test_rejects_case_one_inputs(self):
        with pytest.raises(ValueError):
            case2_reduce(0.1, 0.5, 0.6)

    def test_rejects_gamma_at_edge(self):
        with pytest.raises(ValueError):
            case2_reduce(0.3, 1.0, 0.5)  # gamma = lo
        with pytest.raises(ValueError):
            case2_reduce(0.3, 1.0, 5 / 6)  # gamma = hi

    def test_idempotence_over_sampled_triples(self):
        # acceptance-scale sampling lives in test_acceptance; spot pass here
        rng = SplitMix64(123)
        for _ in range(1000):
            alpha, beta, gamma = sample_admissible(rng, want_case="II")
            gamma_star, beta_star = case2_reduce(alpha, beta, gamma)
            assert select_case(alpha, beta_star) == "I"
            assert beta_star < min(beta, 1.0)
            assert gamma < gamma_star


class TestDeriveParameters:
    def test_hand_instance_one(self):
        p = derive_parameters(0.1, 0.5, 0.6, 0.01)
        assert p.case == "I"
        assert p.tau == pytest.approx(0.45, abs=TOL)
        assert p.k_exponent == pytest.approx(0.6, abs=TOL)
        assert p.theta_exponent == pytest.approx(-0.05, abs=TOL)
        assert p.eta == pytest.approx(-0.05 + 0.01, abs=TOL)

    def test_hand_instance_two(self):
        p = derive_parameters(0.1, 0.5, 0.51, 0.01)
        assert p.tau == pytest.approx(0.3825, abs=TOL)
        assert p.k_exponent == pytest.approx(0.51, abs=TOL)

    def test_case_two_path(self):
        p = derive_parameters(0.3, 1.0, 0.6, 0.01)
        assert p.case == "II"
        assert p.beta_star == pytest.approx(0.6046511627906976, abs=1e-10)
        assert p.beta_effective == p.beta_star
        assert p.gamma == 0.6  # gamma itself is never replaced
        assert p.tau == pytest.approx(0.43, abs=1e-10)

    def test_invariants_on_sampled_inputs(self):
        rng = SplitMix64(55)
        for _ in range(2000):
            alpha, beta, gamma = sample_admissible(rng)
            p = derive_parameters(alpha, beta, gamma, 0.01)
            assert p.tau < 0.5
            assert p.k_exponent >= gamma - TOL

    def test_k_exponent_identity_when_gamma_branch_wins(self):
        # when tau = (2-b)/2 * gamma, K-exponent collapses to gamma exactly
        rng = SplitMix64(66)
        seen = 0
        while seen < 500:
            alpha, beta, gamma = sample_admissible(rng, want_case="I")
            b = min(beta, 1.0)
            if 0.5 * (2 - b) * gamma > 2 * alpha / (2 - b):
                p = derive_parameters(alpha, beta, gamma, 0.01)
                assert abs(p.k_exponent - gamma) <= TOL
                seen += 1

    def test_beta_clamp_note(self):
        p = derive_parameters(0.1, 1.8, 0.6, 0.01)
        assert p.beta_clamped == 1.0
        assert p.clamp_note is not None
        q = derive_parameters(0.1, 0.9, 0.6, 0.01)
        assert q.clamp_note is None

    def test_strict_boundary_rejection(self):
        with pytest.raises(ValueError):
            derive_parameters(0.1, 0.5, 0.5, 0.01)  # gamma = lo
        with pytest.raises(ValueError):
            derive_parameters(0.1, 0.5, 2 / 3, 0.01)  # gamma = hi
        with pytest.raises(ValueError):
            derive_parameters(0.5, 1.0, 0.6, 0.01)  # empty interval
        with pytest.raises(ValueError):
            derive_parameters(0.1, 0.5, 0.6, 0.0)  # epsilon must be positive

    def test_to_dict_roundtrip_keys(self):
        d = derive_parameters(0.1, 0.5, 0.6, 0.01).to_dict()
        assert d["case"] == "I"
        assert d["gamma_star"] is None
        assert set(d) >= {"alpha", "beta", "gamma", "epsilon", "tau", "k_exponent", "eta"}


class TestDeltaBound:
    def test_formula_value(self):
        params = derive_parameters(0.1, 0.5, 0.6, 0.01)
        p = 1000033  # prime, 1 mod 4
        assert is_prime_1mod4(p)
        rep = delta_bound(p, params)
        expected = (
            300 * math.sqrt(3) * p ** (params.tau - 0.5)
            * (2 * params.tau / (2 - params.beta_effective)) * math.log(p)
        )
        assert rep.value == pytest.approx(expected, rel=1e-15)
        assert rep.threshold == pytest.approx(p**params.eta, rel=1e-15)
        assert rep.holds is (rep.value <= rep.threshold)

    def test_small_p_flag_false(self):
        params = derive_parameters(0.1, 0.5, 0.6, 0.01)
        assert delta_bound(5, params).holds is False

    def test_linear_in_theta_scale(self):
        # fixed p: value / p^(tau - 1/2) is independent of the exponent sign
        params = derive_parameters(0.1, 0.5, 0.6, 0.01)
        rep = delta_bound(13, params)
        ratio = rep.value / 13 ** (params.tau - 0.5)
        assert ratio == pytest.approx(
            300 * math.sqrt(3) * (2 * params.tau / (2 - params.beta_effective)) * math.log(13),
            rel=1e-14,
        )

    def test_rejects_bad_p(self):
        params = derive_parameters(0.1, 0.5, 0.6, 0.01)
        with pytest.raises(ValueError):
            delta_bound(1_000_000, params)
