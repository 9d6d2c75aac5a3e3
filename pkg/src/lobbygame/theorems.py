"""Comparative statics of the leadership constraint.

Two results are made executable. First, a belief-precision comparison
between the capacity-1 and capacity-2 games: how far the policymaker's
post-lobbying posteriors sit from the uninformed point 1/2, region by
region. Second, a Pareto comparison: relaxing the leadership constraint
from one issue to two makes every player weakly worse off (one strictly)
exactly when a weighted lobbying-cost ratio stays below 1.

Both reports are backed by the closed-form constructors and the exact
payoff enumeration; precision is evaluated on the posterior objects
themselves, not on path averages, so every claim is literally assertable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import TOL, Capacity, GameParams, PayoffVector, StrategyProfile
from .equilibrium import (
    Lemma1Regime,
    Region,
    classify_regimes,
    lemma1_equilibrium,
    lemma2_equilibrium,
    pareto_condition_lhs,
)
from .errors import BoundaryError
from .payoff import exact_payoffs
from .verify import lobbying_probability


@dataclass(frozen=True)
class BeliefPrecision:
    """Distance of one on-path post-lobbying posterior from 1/2."""

    group: int
    lam: int
    belief: float
    precision: float


@dataclass(frozen=True)
class BeliefPrecisionReport:
    region: Region
    part: int
    precisions: Mapping
    inequalities_ok: bool
    lines: tuple


def onpath_precisions(profile: StrategyProfile, params: GameParams,
                      group: int) -> tuple:
    """Every post-lobbying posterior the profile actually reaches."""
    out = []
    q = lobbying_probability(profile, params, group)
    if q > 0.0:
        b = profile.beliefs.access_belief(group, 1)
        out.append(BeliefPrecision(group, 1, b, abs(b - 0.5)))
    if q < 1.0:
        b = profile.beliefs.access_belief(group, 0)
        out.append(BeliefPrecision(group, 0, b, abs(b - 0.5)))
    return tuple(out)


def _all_half(precs, tol):
    return all(abs(p.precision - 0.5) <= tol for p in precs)


def theorem1_compare(params: GameParams, tol: float = TOL) -> BeliefPrecisionReport:
    """Compare posterior precision across the two capacities.

    Region R1: the silent low-priority group leaves the constrained
    policymaker on its prior, strictly less precise than the degenerate
    posteriors of the unconstrained game. Region R2: both games are fully
    revealing. Region R3: over-lobbying blurs the unconstrained game's
    posteriors (weakly, strictly for some lobbying outcome) while the
    constrained game stays fully revealing.
    """
    report = classify_regimes(params, tol)
    if report.region_boundary:
        raise BoundaryError(
            "parameters sit on a region boundary at the working tolerance")
    region = report.theorem1_region

    n1 = lemma2_equilibrium(params.with_capacity(Capacity.N1), tol=tol)
    n2 = lemma1_equilibrium(params.with_capacity(Capacity.N2), tol=tol)
    precisions = {
        (group, cap): onpath_precisions(prof, params.with_capacity(cap), group)
        for group in (1, 2)
        for cap, prof in ((Capacity.N1, n1), (Capacity.N2, n2))
    }

    lines = []
    ok = True

    def record(condition, text):
        nonlocal ok
        ok = ok and condition
        lines.append(f"{'ok' if condition else 'FAIL'} {text}")

    if region == Region.R1:
        part = 1
        record(_all_half(precisions[(1, Capacity.N2)], tol)
               and _all_half(precisions[(1, Capacity.N1)], tol),
               "issue 1 fully revealing under both capacities")
        record(_all_half(precisions[(2, Capacity.N2)], tol),
               "issue 2 fully revealing without the constraint")
        record(all(p.precision < 0.5 - tol for p in precisions[(2, Capacity.N1)]),
               "issue 2 strictly less precise under the constraint")
    elif region == Region.R2:
        part = 2
        for group in (1, 2):
            for cap in (Capacity.N1, Capacity.N2):
                record(_all_half(precisions[(group, cap)], tol),
                       f"issue {group} fully revealing under capacity {int(cap)}")
    else:
        part = 3
        record(all(_all_half(precisions[(g, Capacity.N1)], tol) for g in (1, 2)),
               "constrained game fully revealing on both issues")
        n2_precs = [p for g in (1, 2) for p in precisions[(g, Capacity.N2)]]
        record(all(p.precision <= 0.5 + tol for p in n2_precs),
               "unconstrained posteriors at most as precise")
        record(any(p.precision < 0.5 - tol for p in n2_precs),
               "strictly blurred for some lobbying outcome")

    return BeliefPrecisionReport(region, part, precisions, ok, tuple(lines))


@dataclass(frozen=True)
class ParetoReport:
    """Outcome of the Pareto comparison at one parameter point.

    ``consistent`` states whether the enumerated verdict and the closed-form
    condition agree; it is only populated where the comparison applies (the
    over-lobbying regime). ``eu2_n2_closed_form`` reconciles the one payoff
    display whose printed form is unreliable against the enumeration.
    """

    applicable: bool
    condition_lhs: float
    condition_holds: bool
    boundary: bool
    payoffs_n1: Optional[PayoffVector] = None
    payoffs_n2: Optional[PayoffVector] = None
    pareto_verdict: Optional[bool] = None
    consistent: Optional[bool] = None
    eu2_n2_closed_form: Optional[float] = None
    eu2_closed_form_matches: Optional[bool] = None


def eu2_overlobby_closed_form(params: GameParams) -> float:
    """Group 2's expected over-lobbying payoff in reduced form.

    Equals the prior times the access-grant probability: in the mixed
    equilibrium group 2 is exactly indifferent when unfavorable, and when
    favorable its lobbying nets the examination probability.
    """
    q1 = 2.0 * params.alpha * params.pi1 / (2.0 * params.alpha - 1.0)
    gamma1 = 1.0 - params.f1 / (2.0 * params.pi2)
    return params.pi2 * (1.0 - q1 * gamma1)


def theorem2_check(params: GameParams, tol: float = TOL) -> ParetoReport:
    """Evaluate the Pareto-improvement equivalence at one parameter point.

    Enumerates both games' equilibrium payoffs and verdicts whether the
    constrained game weakly dominates with one strict gain, against the
    weighted-cost condition. Points outside the over-lobbying regime are
    reported as non-applicable rather than forced through the comparison.
    """
    report = classify_regimes(params, tol)
    lhs = pareto_condition_lhs(params)
    condition = lhs <= 1.0
    boundary = abs(lhs - 1.0) <= tol
    if report.lemma1_regime != Lemma1Regime.OVER_LOBBYING:
        return ParetoReport(False, lhs, condition, boundary)

    n1_payoffs = exact_payoffs(
        lemma2_equilibrium(params.with_capacity(Capacity.N1), tol=tol),
        params.with_capacity(Capacity.N1))
    n2_payoffs = exact_payoffs(
        lemma1_equilibrium(params.with_capacity(Capacity.N2), tol=tol),
        params.with_capacity(Capacity.N2))
    diffs = [a - b for a, b in zip(n1_payoffs.as_tuple(), n2_payoffs.as_tuple())]
    verdict = all(d >= -tol for d in diffs) and any(d > tol for d in diffs)
    closed = eu2_overlobby_closed_form(params)
    return ParetoReport(
        applicable=True,
        condition_lhs=lhs,
        condition_holds=condition,
        boundary=boundary,
        payoffs_n1=n1_payoffs,
        payoffs_n2=n2_payoffs,
        pareto_verdict=verdict,
        consistent=verdict == condition,
        eu2_n2_closed_form=closed,
        eu2_closed_form_matches=abs(closed - n2_payoffs.eu_gi2) <= tol,
    )
