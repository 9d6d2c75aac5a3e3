"""Domain types and stage primitives."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lobbygame.core import (
    Capacity,
    GameParams,
    LobbyRule,
    PolicyVector,
    REFORM1,
    REFORM2,
    STATUS_QUO,
    StateVector,
    bayes_access_belief,
    dp_utility,
    draw_state,
    policy_best_response,
    validate_params,
    weighted_match_utility,
)
from lobbygame.errors import OutOfRangeError


class TestValidateParams:
    def test_valid_point(self):
        params = validate_params(0.4, 0.4, 0.05, 0.05, 2.0, Capacity.N2)
        assert params.alpha1 == 2.0
        assert params.alpha2 == 1.0
        assert params.capacity == Capacity.N2

    def test_prior_boundary_excluded(self):
        with pytest.raises(OutOfRangeError) as err:
            validate_params(0.5, 0.4, 0.05, 0.05, 2.0, Capacity.N2)
        assert any("pi1" in v for v in err.value.violations)

    def test_alpha_boundary_excluded(self):
        with pytest.raises(OutOfRangeError) as err:
            validate_params(0.4, 0.4, 0.05, 0.05, 1.0, Capacity.N2)
        assert any("alpha" in v for v in err.value.violations)

    def test_all_violations_reported(self):
        with pytest.raises(OutOfRangeError) as err:
            validate_params(0.9, 0.4, 1.5, 0.05, 0.5, Capacity.N1)
        assert len(err.value.violations) == 3

    def test_non_finite_rejected(self):
        with pytest.raises(OutOfRangeError):
            validate_params(float("nan"), 0.4, 0.05, 0.05, 2.0, Capacity.N2)


class TestDpUtility:
    @pytest.mark.parametrize("p, theta, alpha, expected", [
        ((1, 1), (1, 1), 2.0, 3.0),
        ((0, 1), (1, 1), 2.0, 1.0),
        ((1, 0), (1, 0), 1.5, 2.5),
    ])
    def test_examples(self, p, theta, alpha, expected):
        params = validate_params(0.4, 0.4, 0.1, 0.1, alpha, Capacity.N2)
        assert dp_utility(PolicyVector(*p), StateVector(*theta), params) == expected

    @given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1),
           st.integers(0, 1), st.floats(1.0, 10.0))
    def test_relabeling_symmetry(self, p1, p2, t1, t2, alpha):
        # Swapping the issues and their weights leaves the utility unchanged;
        # at alpha = 1 the swap alone is a symmetry.
        direct = weighted_match_utility(PolicyVector(p1, p2), StateVector(t1, t2),
                                        alpha, 1.0)
        swapped = weighted_match_utility(PolicyVector(p2, p1), StateVector(t2, t1),
                                         1.0, alpha)
        assert direct == swapped


class TestBayesAccessBelief:
    def test_overlobby_group2_posterior(self):
        post = bayes_access_belief(0.4, LobbyRule(1.0, 2.0 / 3.0))
        assert post.after_lobby == pytest.approx(0.5, abs=1e-12)

    def test_overlobby_group1_posterior(self):
        post = bayes_access_belief(0.4, LobbyRule(1.0, 2.0 / 9.0))
        assert post.after_lobby == pytest.approx(0.75, abs=1e-12)

    def test_never_lobbies_flags_off_path(self):
        post = bayes_access_belief(0.3, LobbyRule(0.0, 0.0))
        assert post.after_lobby is None
        assert post.after_silence == pytest.approx(0.3, abs=1e-15)

    @given(st.floats(0.01, 0.49), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_posteriors_are_probabilities(self, pi, on, off):
        post = bayes_access_belief(pi, LobbyRule(on, off))
        for value in (post.after_lobby, post.after_silence):
            if value is not None:
                assert 0.0 <= value <= 1.0

    @given(st.floats(0.01, 0.49), st.floats(0.01, 1.0))
    def test_uninformative_lobbying_returns_prior(self, pi, xi):
        post = bayes_access_belief(pi, LobbyRule(xi, xi))
        assert post.after_lobby == pytest.approx(pi, rel=1e-12)

    @given(st.floats(0.01, 0.49), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_posterior_threshold_identity(self, pi, on, off):
        # The posterior clears 1/2 exactly when lobbying is likelier under
        # the favorable state.
        post = bayes_access_belief(pi, LobbyRule(on, off))
        if post.after_lobby is None:
            return
        assert (post.after_lobby >= 0.5) == (pi * on >= (1.0 - pi) * off - 1e-15)


class TestPolicyBestResponse:
    def test_unconstrained_thresholds(self):
        params = validate_params(0.4, 0.4, 0.1, 0.1, 2.0, Capacity.N2)
        br = policy_best_response((0.75, 0.3), params)
        assert br.issue_choices == (1.0, 0.0)
        assert not br.tie

    def test_constrained_prefers_weighted_gain(self):
        params = validate_params(0.4, 0.4, 0.1, 0.1, 2.0, Capacity.N1)
        br = policy_best_response((0.8, 1.0), params)
        assert br.actions == frozenset({REFORM1})
        assert br.gains == pytest.approx((0.6, 0.5))

    def test_constrained_status_quo(self):
        params = validate_params(0.4, 0.4, 0.1, 0.1, 2.0, Capacity.N1)
        br = policy_best_response((0.4, 0.45), params)
        assert br.actions == frozenset({STATUS_QUO})

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(1.01, 5.0))
    def test_constrained_support_is_feasible(self, b1, b2, alpha):
        params = validate_params(0.3, 0.3, 0.1, 0.1, alpha, Capacity.N1)
        br = policy_best_response((b1, b2), params)
        assert br.actions
        assert br.actions <= {REFORM1, REFORM2, STATUS_QUO}

    @given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_unconstrained_unique_off_ties(self, b1, b2):
        params = validate_params(0.3, 0.3, 0.1, 0.1, 2.0, Capacity.N2)
        br = policy_best_response((b1, b2), params)
        for belief, choice in zip((b1, b2), br.issue_choices):
            if abs(belief - 0.5) > 1e-9:
                assert choice == (1.0 if belief > 0.5 else 0.0)


class TestDrawState:
    def test_support(self):
        params = validate_params(0.4, 0.4, 0.1, 0.1, 2.0, Capacity.N2)
        rng = np.random.default_rng(0)
        state = draw_state(params, rng)
        assert state.theta1 in (0, 1) and state.theta2 in (0, 1)

    def test_empirical_means(self):
        params = validate_params(0.4, 0.3, 0.1, 0.1, 2.0, Capacity.N2)
        rng = np.random.default_rng(42)
        n = 1_000_000
        total1 = total2 = 0
        for _ in range(n):
            state = draw_state(params, rng)
            total1 += state.theta1
            total2 += state.theta2
        se1 = math.sqrt(0.4 * 0.6 / n)
        se2 = math.sqrt(0.3 * 0.7 / n)
        assert abs(total1 / n - 0.4) <= 3.0 * se1
        assert abs(total2 / n - 0.3) <= 3.0 * se2

    def test_vanishing_prior_limit(self):
        params = validate_params(0.001, 0.001, 0.1, 0.1, 2.0, Capacity.N2)
        rng = np.random.default_rng(7)
        draws = [draw_state(params, rng) for _ in range(1000)]
        frac_zero = sum(d.theta1 == 0 and d.theta2 == 0 for d in draws) / 1000.0
        assert frac_zero >= 0.997

    def test_deterministic_for_fixed_seed(self):
        params = validate_params(0.4, 0.3, 0.1, 0.1, 2.0, Capacity.N2)
        a = [draw_state(params, np.random.default_rng(5)) for _ in range(1)][0]
        b = [draw_state(params, np.random.default_rng(5)) for _ in range(1)][0]
        assert a == b
