"""Exact expected payoffs by tree enumeration, plus a seeded Monte Carlo
cross-check.

``exact_payoffs`` enumerates the full probability tree (states, lobbying
outcomes, access outcomes, policy mixing) and works for any profile, not
just equilibria. ``simulate`` averages independent rollouts produced by the
kernels in :mod:`lobbygame.kernels`; given a seed it is bit-reproducible,
and the draws for trial ``t`` are row ``t`` of one pre-generated uniform
matrix, so any partitioning of trials yields identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    ACCESS_GI1,
    ACCESS_GI2,
    ACCESS_NONE,
    Capacity,
    GameParams,
    History,
    PayoffVector,
    PolicyVector,
    StateVector,
    StrategyProfile,
    access_options,
    dp_utility,
)
from .kernels import N_SLOTS, rollout_trials, select_backend

RNG_ALGORITHM = "numpy-default_rng/PCG64"


@dataclass(frozen=True)
class PlayTrace:
    """One full rollout of the four stages."""

    theta: StateVector
    lobby_outcome: tuple
    access_outcome: tuple
    revealed: Optional[int]
    policy: PolicyVector
    payoffs: PayoffVector

    def __post_init__(self):
        l1, l2 = self.lobby_outcome
        a1, a2 = self.access_outcome
        if (a1 and not l1) or (a2 and not l2):
            raise ValueError("access granted to a group that did not lobby")
        if (self.revealed is None) != (a1 == 0 and a2 == 0):
            raise ValueError("revealed state present iff access granted")


@dataclass(frozen=True)
class PayoffEstimate:
    """Monte Carlo estimate with componentwise standard errors.

    ``stderr`` is the sample standard deviation over the square root of the
    trial count, or ``None`` for a single trial. ``rng_algorithm`` records
    the generator so runs are comparable across machines.
    """

    mean: PayoffVector
    stderr: Optional[PayoffVector]
    trials: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM
    backend: str = "numpy"


def exact_payoffs(profile: StrategyProfile, params: GameParams) -> PayoffVector:
    """Exact ex-ante expected payoffs of the two groups and the policymaker.

    The profile need not be an equilibrium. Payoffs are linear in the
    policy marginals, so the per-issue reform probabilities fully determine
    every expectation regardless of how reforms are coupled.
    """
    eu1 = eu2 = eu_dp = 0.0
    for th1 in (0, 1):
        p_t1 = params.pi1 if th1 else 1.0 - params.pi1
        for th2 in (0, 1):
            p_t2 = params.pi2 if th2 else 1.0 - params.pi2
            for l1 in (0, 1):
                q1 = profile.lobby1.prob(th1)
                p_l1 = q1 if l1 else 1.0 - q1
                if p_l1 == 0.0:
                    continue
                for l2 in (0, 1):
                    q2 = profile.lobby2.prob(th2)
                    p_l2 = q2 if l2 else 1.0 - q2
                    if p_l2 == 0.0:
                        continue
                    for acc, p_acc in access_options((l1, l2), profile.access):
                        if p_acc == 0.0:
                            continue
                        if acc == ACCESS_GI1:
                            rev = th1
                        elif acc == ACCESS_GI2:
                            rev = th2
                        else:
                            rev = None
                        branch = p_t1 * p_t2 * p_l1 * p_l2 * p_acc
                        r1, r2 = profile.policy.action(History((l1, l2), acc, rev))
                        m1 = r1 if th1 else 1.0 - r1
                        m2 = r2 if th2 else 1.0 - r2
                        eu1 += branch * (r1 - l1 * params.f1)
                        eu2 += branch * (r2 - l2 * params.f2)
                        eu_dp += branch * (params.alpha * m1 + m2)
    return PayoffVector(eu1, eu2, eu_dp)


def single_play(profile: StrategyProfile, params: GameParams,
                rng: np.random.Generator) -> PlayTrace:
    """Roll the four stages once, consuming one block of uniforms in the
    kernel slot order so a one-trial simulation reproduces the same trace."""
    u = rng.random(N_SLOTS)
    th1 = int(u[0] < params.pi1)
    th2 = int(u[1] < params.pi2)
    l1 = int(u[2] < profile.lobby1.prob(th1))
    l2 = int(u[3] < profile.lobby2.prob(th2))
    if l1 and l2:
        acc = ACCESS_GI1 if u[4] < profile.access.gamma1 else ACCESS_GI2
    elif l1:
        acc = ACCESS_GI1 if profile.access.lone_grant else ACCESS_NONE
    elif l2:
        acc = ACCESS_GI2 if profile.access.lone_grant else ACCESS_NONE
    else:
        acc = ACCESS_NONE
    if acc == ACCESS_GI1:
        rev = th1
    elif acc == ACCESS_GI2:
        rev = th2
    else:
        rev = None
    hist = History((l1, l2), acc, rev)
    r1, r2 = profile.policy.action(hist)
    if params.capacity == Capacity.N1:
        p1 = int(u[5] < r1)
        p2 = int(p1 == 0 and u[5] < r1 + r2)
    else:
        p1 = int(u[5] < r1)
        p2 = int(u[6] < r2)
    theta = StateVector(th1, th2)
    policy = PolicyVector(p1, p2)
    payoffs = PayoffVector(p1 - l1 * params.f1, p2 - l2 * params.f2,
                           dp_utility(policy, theta, params))
    access_outcome = {ACCESS_NONE: (0, 0), ACCESS_GI1: (1, 0),
                      ACCESS_GI2: (0, 1)}[acc]
    return PlayTrace(theta, (l1, l2), access_outcome, rev, policy, payoffs)


def simulate(profile: StrategyProfile, params: GameParams, trials: int,
             seed: int, backend: str = None) -> PayoffEstimate:
    """Average ``trials`` independent rollouts.

    Bit-reproducible for a fixed seed: the uniforms are one PCG64 stream
    reshaped to ``(trials, slots)`` and both kernel backends produce
    identical per-trial payoffs from them.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    backend = select_backend(backend)
    uniforms = np.random.default_rng(seed).random((trials, N_SLOTS))
    out = rollout_trials(uniforms, profile, params, backend=backend)
    mean = out.mean(axis=0)
    if trials > 1:
        stderr_arr = out.std(axis=0, ddof=1) / math.sqrt(trials)
        stderr = PayoffVector(*map(float, stderr_arr))
    else:
        stderr = None
    return PayoffEstimate(PayoffVector(*map(float, mean)), stderr, trials, seed,
                          backend=backend)
