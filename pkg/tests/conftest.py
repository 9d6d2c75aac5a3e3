"""Shared fixtures: canonical parameter points, regime-conditioned samplers,
and a profile perturbation helper used by the falsifiability tests."""

import numpy as np
import pytest

from lobbygame.core import (
    ACCESS_GI1,
    AccessRule,
    Capacity,
    GameParams,
    LobbyRule,
    PolicyRule,
    StrategyProfile,
    validate_params,
)
from lobbygame.equilibrium import Lemma1Regime, Lemma2Regime, Region, classify_regimes

# Knife-edge margin for regime-conditioned draws: rejection keeps draws this
# far from every separating surface so weak/strict readings cannot flip.
MARGIN = 1e-6


@pytest.fixture
def overlobby_params() -> GameParams:
    return validate_params(0.4, 0.4, 0.05, 0.05, 2.0, Capacity.N2)


@pytest.fixture
def truthful_params() -> GameParams:
    return validate_params(0.4, 0.4, 0.4, 0.4, 2.0, Capacity.N2)


@pytest.fixture
def case1_params() -> GameParams:
    return validate_params(0.45, 0.3, 0.2, 0.6, 1.5, Capacity.N1)


@pytest.fixture
def case2_params() -> GameParams:
    return validate_params(0.4, 0.4, 0.05, 0.05, 2.0, Capacity.N1)


def sample_params(rng: np.random.Generator, capacity=Capacity.N2) -> GameParams:
    return validate_params(
        rng.uniform(0.02, 0.48), rng.uniform(0.02, 0.48),
        rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99),
        rng.uniform(1.01, 4.0), capacity)


def _off_knife_edge(params: GameParams) -> bool:
    report = classify_regimes(params, tol=0.0)
    edges = (
        report.c_value - 1.0,
        params.f2 - (1.0 - params.pi1),
        params.f2 - params.pi1 * (1.0 - params.f1 / params.pi2),
        report.theorem2_lhs - 1.0,
    )
    return all(abs(e) > MARGIN for e in edges)


def sample_regime(kind: str, rng: np.random.Generator) -> GameParams:
    """Uniform draw from the valid box, rejected into one regime.

    Kinds: ``l1_truthful``, ``l1_overlobby``, ``l2_case1``, ``l2_case2``,
    ``R1``, ``R2``, ``R3``. All draws stay a margin away from every
    separating surface.
    """
    capacity = Capacity.N1 if kind.startswith("l2") else Capacity.N2
    while True:
        params = sample_params(rng, capacity)
        if not _off_knife_edge(params):
            continue
        report = classify_regimes(params)
        if kind == "l1_truthful" and report.lemma1_regime == Lemma1Regime.TRUTHFUL:
            return params
        if kind == "l1_overlobby" and report.lemma1_regime == Lemma1Regime.OVER_LOBBYING:
            return params
        if kind == "l2_case1" and report.lemma2_regime == Lemma2Regime.CASE1_GI2_SILENT:
            return params
        if kind == "l2_case2" and report.lemma2_regime in (
                Lemma2Regime.CASE2_TRUTHFUL_EXISTS, Lemma2Regime.CASE2_TRUTHFUL_UNIQUE):
            return params
        if kind in ("R1", "R2", "R3") and report.theorem1_region == Region[kind]:
            return params


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


# Interior components of an over-lobbying profile, by name.
INTERIOR_COMPONENTS = ("xi1_off", "xi2_off", "gamma1", "rho2_unexamined")


def perturb(profile: StrategyProfile, component: str, delta: float) -> StrategyProfile:
    """Shift one strategy component by ``delta`` (projected into [0, 1]),
    keeping the stated beliefs fixed."""
    lobby1, lobby2 = profile.lobby1, profile.lobby2
    access, policy = profile.access, profile.policy
    if component == "xi1_off":
        lobby1 = LobbyRule(lobby1.on, _clip01(lobby1.off + delta))
    elif component == "xi2_off":
        lobby2 = LobbyRule(lobby2.on, _clip01(lobby2.off + delta))
    elif component == "gamma1":
        access = AccessRule(_clip01(access.gamma1 + delta),
                            lone_grant=access.lone_grant)
    elif component == "rho2_unexamined":
        actions = dict(policy.actions)
        for hist, (r1, r2) in list(actions.items()):
            if hist.lam[1] == 1 and hist.access == ACCESS_GI1:
                actions[hist] = (r1, _clip01(r2 + delta))
        policy = PolicyRule(actions)
    else:
        raise ValueError(f"unknown component {component!r}")
    return StrategyProfile(lobby1, lobby2, access, policy, profile.beliefs)
