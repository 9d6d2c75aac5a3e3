"""Independent perfect-Bayesian-equilibrium verifier.

Checks any strategy profile against the four equilibrium requirements:
Bayes-consistent beliefs wherever the profile reaches a history with
positive probability, first-order optimality of each group's lobbying
mixture, access weights supported only on the most valuable dossier, and a
policy rule that best-responds to the stated beliefs under the game's
leadership capacity.

All expectations are exact finite enumerations of the probability tree
(states x lobbying outcomes x access outcomes x policy mixing); nothing is
sampled. Stated beliefs at zero-probability events are accepted as-is, the
standard equilibrium freedom.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ACCESS_GI1,
    ACCESS_GI2,
    ACCESS_NONE,
    TOL,
    Capacity,
    GameParams,
    History,
    StrategyProfile,
    access_options,
    all_histories,
    bayes_access_belief,
    history_probabilities,
)
from .errors import MalformedProfileError


@dataclass(frozen=True)
class VerificationIntermediates:
    """Reduced-form quantities behind the optimality conditions.

    ``q_i`` is each group's unconditional lobbying probability, ``grant_i``
    the chance it is examined given that it lobbied. ``w_i``/``z_i`` give
    the probability the policy matches issue i's state when the examination
    goes to group i / to its rival (both evaluated where both groups have
    lobbied, under the stated access-stage beliefs); ``x_i`` is their
    difference, the informational value of examining group i.
    """

    q1: float
    q2: float
    grant1: float
    grant2: float
    w1: float
    w2: float
    z1: float
    z2: float
    x1: float
    x2: float


@dataclass(frozen=True)
class CheckLine:
    """One verified condition: name, verdict, numeric violation, context."""

    name: str
    passed: bool
    violation: float
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    bayes_ok: bool
    lobby_foc_ok: bool
    access_ok: bool
    policy_ok: bool
    max_violation: float
    checks: tuple

    @property
    def passed(self) -> bool:
        return self.bayes_ok and self.lobby_foc_ok and self.access_ok and self.policy_ok

    def to_text(self) -> str:
        lines = []
        for check in self.checks:
            status = "ok" if check.passed else "FAIL"
            detail = f"  ({check.detail})" if check.detail else ""
            lines.append(f"{status:4s} {check.name}: violation={check.violation:.3e}{detail}")
        lines.append(f"{'ok' if self.passed else 'FAIL':4s} overall: "
                     f"max_violation={self.max_violation:.3e}")
        return "\n".join(lines)


def lobbying_probability(profile: StrategyProfile, params: GameParams,
                         group: int) -> float:
    rule = profile.lobby(group)
    pi = params.pi(group)
    return pi * rule.on + (1.0 - pi) * rule.off


def grant_probability(profile: StrategyProfile, params: GameParams,
                      group: int) -> float:
    """Chance group ``group`` is examined given that it lobbies: rival mixes
    it in when both lobby, lone lobbying follows the grant convention."""
    rival = 2 if group == 1 else 1
    q_rival = lobbying_probability(profile, params, rival)
    lone = 1.0 if profile.access.lone_grant else 0.0
    return q_rival * profile.access.gamma(group) + (1.0 - q_rival) * lone


def expected_reform_given_lobby(profile: StrategyProfile, params: GameParams,
                                group: int, theta_i: int, lam_i: int) -> float:
    """Exact probability that issue ``group`` is reformed, conditioning on
    that group's state and lobbying decision and enumerating everything
    else (rival state, rival lobbying, access, revelation, policy mixing)."""
    rival = 2 if group == 1 else 1
    pi_rival = params.pi(rival)
    rival_rule = profile.lobby(rival)
    total = 0.0
    for theta_rival in (0, 1):
        p_theta = pi_rival if theta_rival else 1.0 - pi_rival
        if p_theta == 0.0:
            continue
        q = rival_rule.prob(theta_rival)
        for lam_rival in (0, 1):
            p_lam = q if lam_rival else 1.0 - q
            if p_lam == 0.0:
                continue
            lam = (lam_i, lam_rival) if group == 1 else (lam_rival, lam_i)
            theta = {group: theta_i, rival: theta_rival}
            for acc, p_acc in access_options(lam, profile.access):
                if p_acc == 0.0:
                    continue
                if acc == ACCESS_NONE:
                    rev = None
                else:
                    rev = theta[1] if acc == ACCESS_GI1 else theta[2]
                hist = History(lam, acc, rev)
                total += p_theta * p_lam * p_acc * profile.policy.reform_prob(group, hist)
    return total


def lobby_payoff_derivative(profile: StrategyProfile, params: GameParams,
                            group: int, state: int) -> float:
    """Derivative of group ``group``'s expected payoff with respect to its
    lobbying probability in state ``state``, everything else held fixed.

    The payoff is affine in each lobbying probability, so the derivative is
    the lobbying-minus-silence payoff gap, computed exactly.
    """
    gain_lobby = (expected_reform_given_lobby(profile, params, group, state, 1)
                  - params.f(group))
    gain_silent = expected_reform_given_lobby(profile, params, group, state, 0)
    return gain_lobby - gain_silent


def group_expected_value(profile: StrategyProfile, params: GameParams,
                         group: int, state: int) -> float:
    """Group ``group``'s expected payoff conditional on its state, under its
    own stated mixture. Affine in the mixture; used to cross-check the
    derivative against finite differences."""
    xi = profile.lobby(group).prob(state)
    v_lobby = (expected_reform_given_lobby(profile, params, group, state, 1)
               - params.f(group))
    v_silent = expected_reform_given_lobby(profile, params, group, state, 0)
    return xi * v_lobby + (1.0 - xi) * v_silent


def _match_probability(profile: StrategyProfile, issue: int, hist: History,
                       belief: float) -> float:
    """P(policy on ``issue`` matches its state) at one history, where the
    state is favorable with probability ``belief``."""
    r = profile.policy.reform_prob(issue, hist)
    return belief * r + (1.0 - belief) * (1.0 - r)


def compute_intermediates(profile: StrategyProfile,
                          params: GameParams) -> VerificationIntermediates:
    """Evaluate the reduced-form quantities at the both-lobby access node."""
    q1 = lobbying_probability(profile, params, 1)
    q2 = lobbying_probability(profile, params, 2)
    grant1 = grant_probability(profile, params, 1)
    grant2 = grant_probability(profile, params, 2)
    b1 = profile.beliefs.access_belief(1, 1)
    b2 = profile.beliefs.access_belief(2, 1)
    lam = (1, 1)

    # Examination of group i reveals theta_i; the policy at that history is
    # evaluated against the revelation. Without examination the stated
    # post-lobbying belief prices the match, marginalized over whatever the
    # rival's examination reveals.
    w1 = sum((b1 if t else 1.0 - b1)
             * _match_probability(profile, 1, History(lam, ACCESS_GI1, t), float(t))
             for t in (0, 1))
    w2 = sum((b2 if t else 1.0 - b2)
             * _match_probability(profile, 2, History(lam, ACCESS_GI2, t), float(t))
             for t in (0, 1))
    z1 = sum((b2 if t else 1.0 - b2)
             * _match_probability(profile, 1, History(lam, ACCESS_GI2, t), b1)
             for t in (0, 1))
    z2 = sum((b1 if t else 1.0 - b1)
             * _match_probability(profile, 2, History(lam, ACCESS_GI1, t), b2)
             for t in (0, 1))
    return VerificationIntermediates(q1, q2, grant1, grant2,
                                     w1, w2, z1, z2, w1 - z1, w2 - z2)


def _check_bayes(profile, params, reach, tol, checks):
    for group in (1, 2):
        rule = profile.lobby(group)
        posterior = bayes_access_belief(params.pi(group), rule)
        for lam, expected in ((1, posterior.after_lobby),
                              (0, posterior.after_silence)):
            name = f"bayes/access belief group {group} lam={lam}"
            if expected is None:
                checks.append(CheckLine(name, True, 0.0, "off-path, stated belief accepted"))
                continue
            stated = profile.beliefs.access_belief(group, lam)
            gap = abs(stated - expected)
            checks.append(CheckLine(name, gap <= tol, gap,
                                    f"stated={stated!r} bayes={expected!r}"))
    for hist, prob in reach.items():
        for group in (1, 2):
            name = f"bayes/policy belief group {group} at {hist.key()}"
            stated = profile.beliefs.policy_belief(group, hist)
            if prob == 0.0:
                continue
            if hist.access == group:
                expected = float(hist.revealed)
            else:
                posterior = bayes_access_belief(params.pi(group), profile.lobby(group))
                expected = (posterior.after_lobby if hist.lam[group - 1]
                            else posterior.after_silence)
            gap = abs(stated - expected)
            checks.append(CheckLine(name, gap <= tol, gap,
                                    f"stated={stated!r} bayes={expected!r}"))


def _check_lobby_foc(profile, params, tol, checks):
    for group in (1, 2):
        for state in (0, 1):
            xi = profile.lobby(group).prob(state)
            deriv = lobby_payoff_derivative(profile, params, group, state)
            if xi >= 1.0 - tol:
                violation = max(0.0, -deriv)
                kind = "lobbies"
            elif xi <= tol:
                violation = max(0.0, deriv)
                kind = "abstains"
            else:
                violation = abs(deriv)
                kind = "mixes"
            checks.append(CheckLine(
                f"lobbying optimality group {group} state={state}",
                violation <= tol, violation,
                f"{kind} with xi={xi!r}, payoff derivative={deriv!r}"))


def _check_access(profile, params, tol, checks):
    inter = compute_intermediates(profile, params)
    s1 = inter.x1 * params.alpha1
    s2 = inter.x2 * params.alpha2
    best = max(s1, s2)
    for group, weight, score in ((1, profile.access.gamma1, s1),
                                 (2, profile.access.gamma2, s2)):
        violation = best - score if weight > tol else 0.0
        checks.append(CheckLine(
            f"access optimality weight on group {group}",
            violation <= tol, violation,
            f"gamma={weight!r}, weighted dossier values=({s1!r}, {s2!r})"))


def _check_policy(profile, params, tol, checks):
    n1 = params.capacity == Capacity.N1
    for hist in all_histories(profile.access.lone_grant):
        r1, r2 = profile.policy.action(hist)
        b1 = profile.beliefs.policy_belief(1, hist)
        b2 = profile.beliefs.policy_belief(2, hist)
        w1 = params.alpha1 * (2.0 * b1 - 1.0)
        w2 = params.alpha2 * (2.0 * b2 - 1.0)
        if n1:
            feasibility = max(0.0, r1 + r2 - 1.0)
            achieved = r1 * w1 + r2 * w2
            gap = max(0.0, w1, w2) - achieved
            violation = max(gap, feasibility)
        else:
            gap1 = max(0.0, w1) - r1 * w1
            gap2 = max(0.0, w2) - r2 * w2
            violation = max(gap1, gap2)
        checks.append(CheckLine(
            f"policy optimality at {hist.key()}",
            violation <= tol, violation,
            f"reform=({r1!r}, {r2!r}), beliefs=({b1!r}, {b2!r})"))


def verify_equilibrium(profile: StrategyProfile, params: GameParams,
                       tol: float = TOL) -> VerificationReport:
    """Run every equilibrium check and report per-condition verdicts.

    Passes iff, within ``tol``: stated beliefs match Bayes posteriors at
    every positive-probability event; each group's lobbying probability is
    supported by the sign of its payoff derivative (zero at interior
    mixtures); the access weights ride only on the most valuable dossier;
    and the policy rule maximizes the believed match utility under the
    capacity constraint. Ties are accepted throughout.
    """
    for hist in all_histories(profile.access.lone_grant):
        profile.policy.action(hist)
        profile.beliefs.policy_belief(1, hist)
        profile.beliefs.policy_belief(2, hist)

    reach = history_probabilities(profile, params)
    checks = []
    _check_bayes(profile, params, reach, tol, checks)
    n_bayes = len(checks)
    _check_lobby_foc(profile, params, tol, checks)
    n_foc = len(checks)
    _check_access(profile, params, tol, checks)
    n_access = len(checks)
    _check_policy(profile, params, tol, checks)

    bayes_ok = all(c.passed for c in checks[:n_bayes])
    lobby_ok = all(c.passed for c in checks[n_bayes:n_foc])
    access_ok = all(c.passed for c in checks[n_foc:n_access])
    policy_ok = all(c.passed for c in checks[n_access:])
    max_violation = max((c.violation for c in checks), default=0.0)
    return VerificationReport(bayes_ok, lobby_ok, access_ok, policy_ok,
                              max_violation, tuple(checks))
