"""Regime classification and closed-form equilibrium constructors.

The parameter space splits along two compound conditions. With unconstrained
leadership (capacity 2) the lobbying cost ratio
``C = (pi1*f1 + pi2*f2) / (pi1*pi2)`` separates truthful lobbying
(``C >= 1``) from over-lobbying (``C < 1``). With constrained leadership
(capacity 1) the cost of the low-priority group against the rival's prior,
``f2`` vs ``1 - pi1``, separates a silent group 2 from fully truthful play.
The three-region comparative-statics partition refines the same cuts.

Where a continuum of supporting access weights exists the constructors pick
a deterministic representative (interval midpoint, or the upper end) so
outputs are reproducible; the verifier accepts any supporting value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import (
    ACCESS_GI1,
    ACCESS_GI2,
    TOL,
    AccessRule,
    BeliefSystem,
    BestResponse,
    Capacity,
    GameParams,
    History,
    LobbyRule,
    PolicyRule,
    REFORM1,
    REFORM2,
    StrategyProfile,
    all_histories,
    bayes_access_belief,
    history_probabilities,
    policy_best_response,
)
from .errors import DegenerateFormulaError, RegimeMismatchError


class Lemma1Regime(Enum):
    TRUTHFUL = "truthful"
    OVER_LOBBYING = "over_lobbying"
    BOUNDARY = "boundary"


class Lemma2Regime(Enum):
    CASE1_GI2_SILENT = "case1_gi2_silent"
    CASE2_TRUTHFUL_EXISTS = "case2_truthful_exists"
    CASE2_TRUTHFUL_UNIQUE = "case2_truthful_unique"
    BOUNDARY = "boundary"


class Region(Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"


@dataclass(frozen=True)
class RegimeReport:
    """Where one parameter point falls in every classification at once."""

    c_value: float
    lemma1_regime: Lemma1Regime
    lemma2_regime: Lemma2Regime
    theorem1_region: Region
    region_boundary: bool
    r2_interval_empty: bool
    theorem2_lhs: float
    theorem2_condition: bool
    theorem2_boundary: bool


def cost_ratio(params: GameParams) -> float:
    """The truthful/over-lobbying separator ``(pi1*f1 + pi2*f2)/(pi1*pi2)``."""
    return (params.pi1 * params.f1 + params.pi2 * params.f2) / (params.pi1 * params.pi2)


def pareto_condition_lhs(params: GameParams) -> float:
    """Left side of the capacity-1 Pareto-improvement condition."""
    return ((params.alpha * params.pi1 * params.f1
             + (2.0 * params.alpha - 1.0) * params.pi2 * params.f2)
            / (params.pi1 * params.pi2))


def region_lower_edge(params: GameParams) -> float:
    """The ``f2`` value separating regions R2 and R3."""
    return params.pi1 * (1.0 - params.f1 / params.pi2)


def classify_regimes(params: GameParams, tol: float = TOL) -> RegimeReport:
    """Classify a parameter point into every regime the results reference.

    Weak inequalities are honored as printed; points within ``tol`` of a
    separating surface are flagged as boundary so sweeps can exclude
    knife-edge parameters.
    """
    c = cost_ratio(params)
    if abs(c - 1.0) <= tol:
        lemma1 = Lemma1Regime.BOUNDARY
    elif c >= 1.0:
        lemma1 = Lemma1Regime.TRUTHFUL
    else:
        lemma1 = Lemma1Regime.OVER_LOBBYING

    silent_gap = params.f2 - (1.0 - params.pi1)
    if abs(silent_gap) <= tol:
        lemma2 = Lemma2Regime.BOUNDARY
    elif silent_gap > 0.0:
        lemma2 = Lemma2Regime.CASE1_GI2_SILENT
    elif params.f1 <= 1.0 - params.pi1 and params.f2 <= 1.0 - params.pi2:
        lemma2 = Lemma2Regime.CASE2_TRUTHFUL_UNIQUE
    else:
        lemma2 = Lemma2Regime.CASE2_TRUTHFUL_EXISTS

    lower = region_lower_edge(params)
    upper = 1.0 - params.pi1
    boundary = abs(params.f2 - lower) <= tol or abs(params.f2 - upper) <= tol
    if params.f2 > upper:
        region = Region.R1
    elif params.f2 >= lower:
        region = Region.R2
    else:
        region = Region.R3
    # The lower edge sits strictly below pi1 < 1/2 < 1 - pi1 for every valid
    # point, so an empty middle region cannot occur; kept as a defensive flag.
    r2_empty = lower > upper

    lhs = pareto_condition_lhs(params)
    return RegimeReport(
        c_value=c,
        lemma1_regime=lemma1,
        lemma2_regime=lemma2,
        theorem1_region=region,
        region_boundary=boundary,
        r2_interval_empty=r2_empty,
        theorem2_lhs=lhs,
        theorem2_condition=lhs <= 1.0,
        theorem2_boundary=abs(lhs - 1.0) <= tol,
    )


def _n2_policy_actions(rho1_no_access, rho2_no_access, histories):
    """Expand per-issue rules of the form rho_i(lambda_i, access_i) into a
    full history table: revealed issues follow the revelation, everything
    else depends on own lobbying only."""
    actions = {}
    for h in histories:
        if h.access == ACCESS_GI1:
            r1 = float(h.revealed)
            r2 = rho2_no_access[h.lam[1]]
        elif h.access == ACCESS_GI2:
            r1 = rho1_no_access[h.lam[0]]
            r2 = float(h.revealed)
        else:
            r1 = rho1_no_access[h.lam[0]]
            r2 = rho2_no_access[h.lam[1]]
        actions[h] = (r1, r2)
    return actions


def _off_path_flags(profile, params):
    reach = history_probabilities(profile, params)
    off_hist = frozenset(h for h, p in reach.items() if p == 0.0)
    off_access = set()
    for group in (1, 2):
        rule = profile.lobby(group)
        pi = params.pi(group)
        p_lobby = pi * rule.on + (1.0 - pi) * rule.off
        if p_lobby == 0.0:
            off_access.add((group, 1))
        if p_lobby == 1.0:
            off_access.add((group, 0))
    return frozenset(off_access), off_hist


def _with_flags(lobby1, lobby2, access, actions, access1, access2, params):
    histories = tuple(actions)
    beliefs = BeliefSystem.from_access(access1, access2, histories)
    profile = StrategyProfile(lobby1, lobby2, access, PolicyRule(actions), beliefs)
    off_access, off_hist = _off_path_flags(profile, params)
    beliefs = BeliefSystem.from_access(access1, access2, histories,
                                       off_path_access=off_access,
                                       off_path_histories=off_hist)
    return StrategyProfile(lobby1, lobby2, access, PolicyRule(actions), beliefs)


def lemma1_equilibrium(params: GameParams, regime: Lemma1Regime = None,
                       tol: float = TOL) -> StrategyProfile:
    """Closed-form equilibrium of the capacity-2 game.

    Truthful regime: both groups lobby exactly when favorable, supported by
    any access weight in ``[1 - f1/pi2, f2/pi1]`` (midpoint chosen) and
    degenerate post-lobbying beliefs.

    Over-lobbying regime: both groups always lobby when favorable and mix
    when not, with group 1's silence made rarer by the issue weight; access
    leans toward group 1 and the policymaker mixes on group 2's unexamined
    dossier exactly enough to keep both groups indifferent.
    """
    if params.capacity != Capacity.N2:
        raise RegimeMismatchError("capacity-2 constructor needs a capacity-2 game")
    report = classify_regimes(params, tol)
    if regime is None:
        regime = report.lemma1_regime
        if regime == Lemma1Regime.BOUNDARY:
            raise RegimeMismatchError(
                "parameters sit on the truthful/over-lobbying boundary; pass "
                "an explicit regime to pick a side")
    histories = all_histories(lone_grant=True)

    if regime == Lemma1Regime.TRUTHFUL:
        lo = max(0.0, 1.0 - params.f1 / params.pi2)
        hi = min(1.0, params.f2 / params.pi1)
        if lo > hi + tol:
            raise RegimeMismatchError(
                "no supporting access weight: parameters are over-lobbying")
        gamma1 = 0.5 * (lo + hi)
        lobby = LobbyRule(1.0, 0.0)
        actions = _n2_policy_actions((0.0, 1.0), (0.0, 1.0), histories)
        return _with_flags(lobby, lobby, AccessRule(gamma1), actions,
                           (0.0, 1.0), (0.0, 1.0), params)

    denom = 2.0 * params.pi2 - params.f1
    if denom <= 0.0:
        raise DegenerateFormulaError(
            "group 2's unexamined reform probability is undefined: "
            "f1 >= 2*pi2")
    xi1_off = params.pi1 / ((1.0 - params.pi1) * (2.0 * params.alpha - 1.0))
    xi2_off = params.pi2 / (1.0 - params.pi2)
    gamma2 = params.f1 / (2.0 * params.pi2)
    rho2_alone = (params.pi2 * (2.0 * params.alpha - 1.0) * params.f2
                  / (params.pi1 * params.alpha * denom))
    if not 0.0 <= rho2_alone <= 1.0:
        raise DegenerateFormulaError(
            "group 2's unexamined reform probability falls outside [0, 1]")
    lobby1 = LobbyRule(1.0, xi1_off)
    lobby2 = LobbyRule(1.0, xi2_off)
    b1_lobby = bayes_access_belief(params.pi1, lobby1).after_lobby
    b2_lobby = bayes_access_belief(params.pi2, lobby2).after_lobby
    actions = _n2_policy_actions((0.0, 1.0), (0.0, rho2_alone), histories)
    return _with_flags(lobby1, lobby2, AccessRule(1.0 - gamma2, gamma2), actions,
                       (0.0, b1_lobby), (0.0, b2_lobby), params)


def _n1_policy_from_beliefs(access1, access2, params, histories):
    """Capacity-1 policy: best response at each history's beliefs, breaking
    exact ties toward the weighted issue (reform 1, then reform 2)."""
    actions = {}
    for h in histories:
        b1 = float(h.revealed) if h.access == ACCESS_GI1 else access1[h.lam[0]]
        b2 = float(h.revealed) if h.access == ACCESS_GI2 else access2[h.lam[1]]
        br: BestResponse = policy_best_response((b1, b2), params)
        if REFORM1 in br.actions:
            actions[h] = (1.0, 0.0)
        elif REFORM2 in br.actions:
            actions[h] = (0.0, 1.0)
        else:
            actions[h] = (0.0, 0.0)
    return actions


def lemma2_equilibrium(params: GameParams, regime: Lemma2Regime = None,
                       tol: float = TOL) -> StrategyProfile:
    """Closed-form equilibrium of the capacity-1 game.

    Case 1 (group 2's cost exceeds the chance group 1 stays out): group 1
    lobbies truthfully, group 2 never lobbies, and the policymaker runs on
    priors for issue 2. Case 2: both lobby truthfully; when both issues
    look favorable the weighted issue wins. Supporting access weights put
    enough mass on group 1 to deter its unfavorable lobbying; the upper end
    (always examine group 1 when both lobby) is chosen.
    """
    if params.capacity != Capacity.N1:
        raise RegimeMismatchError("capacity-1 constructor needs a capacity-1 game")
    report = classify_regimes(params, tol)
    if regime is None:
        regime = report.lemma2_regime
        if regime == Lemma2Regime.BOUNDARY:
            regime = Lemma2Regime.CASE2_TRUTHFUL_EXISTS
    histories = all_histories(lone_grant=True)

    if regime == Lemma2Regime.CASE1_GI2_SILENT:
        lobby1 = LobbyRule(1.0, 0.0)
        lobby2 = LobbyRule(0.0, 0.0)
        # Group 2 never lobbies, so its post-lobbying belief is free; the
        # prior is stated and flagged off-path.
        access1 = (0.0, 1.0)
        access2 = (params.pi2, params.pi2)
        actions = _n1_policy_from_beliefs(access1, access2, params, histories)
        return _with_flags(lobby1, lobby2, AccessRule(1.0), actions,
                           access1, access2, params)

    lobby = LobbyRule(1.0, 0.0)
    access1 = (0.0, 1.0)
    access2 = (0.0, 1.0)
    actions = _n1_policy_from_beliefs(access1, access2, params, histories)
    return _with_flags(lobby, lobby, AccessRule(1.0), actions,
                       access1, access2, params)


def equilibrium_for(params: GameParams, tol: float = TOL) -> StrategyProfile:
    """Dispatch to the constructor matching the game's capacity."""
    if params.capacity == Capacity.N2:
        return lemma1_equilibrium(params, tol=tol)
    return lemma2_equilibrium(params, tol=tol)
