"""Monte Carlo rollout kernels.

The per-trial rollout is the one hot loop in the package, so it exists
twice: a numba ``@njit`` loop and a vectorized pure-numpy path. Both consume
the same pre-drawn uniform matrix and apply identical comparisons and
arithmetic, so their per-trial payoff arrays are bit-identical; pick one
with the ``LOBBYGAME_BACKEND`` environment variable (``numba`` or
``numpy``). Default is numba when importable. ``benchmarks/bench_simulate.py``
compares the two.

Uniform slot layout per trial: state 1, state 2, lobby 1, lobby 2, access
mix, policy draw 1, policy draw 2 (capacity 1 consumes only the first
policy slot, as an exclusive three-way split).
"""

from __future__ import annotations

import os

import numpy as np

from .core import (
    ACCESS_GI1,
    ACCESS_GI2,
    ACCESS_NONE,
    Capacity,
    GameParams,
    History,
    StrategyProfile,
)

N_SLOTS = 7

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    njit = None

BACKEND_ENV = "LOBBYGAME_BACKEND"


def select_backend(explicit: str = None) -> str:
    """Resolve the kernel backend: explicit argument, then the environment
    flag, then numba when available."""
    choice = explicit or os.environ.get(BACKEND_ENV, "").strip().lower() or None
    if choice is None:
        choice = "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r}; expected 'numba' or 'numpy'")
    if choice == "numba" and not HAVE_NUMBA:
        choice = "numpy"
    return choice


def pack_tables(profile: StrategyProfile, params: GameParams):
    """Flatten a profile into the dense arrays the kernels index.

    Returns ``(xi, policy)`` where ``xi[group, state]`` is the lobbying
    probability and ``policy[l1, l2, access, revealed, issue]`` the reform
    probability (the revealed axis reads 0 when nobody was examined).
    """
    xi = np.array([[profile.lobby1.off, profile.lobby1.on],
                   [profile.lobby2.off, profile.lobby2.on]], dtype=np.float64)
    policy = np.zeros((2, 2, 3, 2, 2), dtype=np.float64)
    for l1 in (0, 1):
        for l2 in (0, 1):
            lam = (l1, l2)
            options = []
            if l1 and l2:
                options = [ACCESS_GI1, ACCESS_GI2]
            elif l1:
                options = [ACCESS_GI1] if profile.access.lone_grant else [ACCESS_NONE]
            elif l2:
                options = [ACCESS_GI2] if profile.access.lone_grant else [ACCESS_NONE]
            else:
                options = [ACCESS_NONE]
            for acc in options:
                revs = (None,) if acc == ACCESS_NONE else (0, 1)
                for rev in revs:
                    r1, r2 = profile.policy.action(History(lam, acc, rev))
                    slot = 0 if rev is None else rev
                    policy[l1, l2, acc, slot, 0] = r1
                    policy[l1, l2, acc, slot, 1] = r2
    return xi, policy


def _rollout_python(u, pi1, pi2, f1, f2, alpha, capacity, xi, gamma1,
                    lone_grant, policy, out):
    n = u.shape[0]
    for t in range(n):
        th1 = 1 if u[t, 0] < pi1 else 0
        th2 = 1 if u[t, 1] < pi2 else 0
        l1 = 1 if u[t, 2] < xi[0, th1] else 0
        l2 = 1 if u[t, 3] < xi[1, th2] else 0
        if l1 == 1 and l2 == 1:
            acc = ACCESS_GI1 if u[t, 4] < gamma1 else ACCESS_GI2
        elif l1 == 1:
            acc = ACCESS_GI1 if lone_grant else ACCESS_NONE
        elif l2 == 1:
            acc = ACCESS_GI2 if lone_grant else ACCESS_NONE
        else:
            acc = ACCESS_NONE
        if acc == ACCESS_GI1:
            rev = th1
        elif acc == ACCESS_GI2:
            rev = th2
        else:
            rev = 0
        r1 = policy[l1, l2, acc, rev, 0]
        r2 = policy[l1, l2, acc, rev, 1]
        if capacity == 1:
            p1 = 1 if u[t, 5] < r1 else 0
            p2 = 1 if (p1 == 0 and u[t, 5] < r1 + r2) else 0
        else:
            p1 = 1 if u[t, 5] < r1 else 0
            p2 = 1 if u[t, 6] < r2 else 0
        out[t, 0] = p1 - l1 * f1
        out[t, 1] = p2 - l2 * f2
        out[t, 2] = alpha * (1.0 if p1 == th1 else 0.0) + (1.0 if p2 == th2 else 0.0)


if HAVE_NUMBA:
    _rollout_numba = njit(cache=True)(_rollout_python)


def _rollout_numpy(u, pi1, pi2, f1, f2, alpha, capacity, xi, gamma1,
                   lone_grant, policy, out):
    th1 = (u[:, 0] < pi1).astype(np.int64)
    th2 = (u[:, 1] < pi2).astype(np.int64)
    l1 = (u[:, 2] < xi[0, th1]).astype(np.int64)
    l2 = (u[:, 3] < xi[1, th2]).astype(np.int64)

    both = (l1 == 1) & (l2 == 1)
    acc = np.zeros(u.shape[0], dtype=np.int64)
    acc[both] = np.where(u[both, 4] < gamma1, ACCESS_GI1, ACCESS_GI2)
    if lone_grant:
        acc[(l1 == 1) & (l2 == 0)] = ACCESS_GI1
        acc[(l1 == 0) & (l2 == 1)] = ACCESS_GI2

    rev = np.zeros(u.shape[0], dtype=np.int64)
    rev[acc == ACCESS_GI1] = th1[acc == ACCESS_GI1]
    rev[acc == ACCESS_GI2] = th2[acc == ACCESS_GI2]

    r1 = policy[l1, l2, acc, rev, 0]
    r2 = policy[l1, l2, acc, rev, 1]
    if capacity == 1:
        p1 = (u[:, 5] < r1).astype(np.int64)
        p2 = ((p1 == 0) & (u[:, 5] < r1 + r2)).astype(np.int64)
    else:
        p1 = (u[:, 5] < r1).astype(np.int64)
        p2 = (u[:, 6] < r2).astype(np.int64)

    out[:, 0] = p1 - l1 * f1
    out[:, 1] = p2 - l2 * f2
    out[:, 2] = alpha * (p1 == th1) + 1.0 * (p2 == th2)


def rollout_trials(uniforms: np.ndarray, profile: StrategyProfile,
                   params: GameParams, backend: str = None) -> np.ndarray:
    """Realized per-trial payoffs ``(eu_gi1, eu_gi2, dp_utility)`` for a
    block of pre-drawn uniforms of shape ``(trials, N_SLOTS)``."""
    if uniforms.ndim != 2 or uniforms.shape[1] != N_SLOTS:
        raise ValueError(f"uniforms must have shape (trials, {N_SLOTS})")
    backend = select_backend(backend)
    xi, policy = pack_tables(profile, params)
    out = np.empty((uniforms.shape[0], 3), dtype=np.float64)
    kernel = _rollout_numba if backend == "numba" else _rollout_numpy
    kernel(uniforms, params.pi1, params.pi2, params.f1, params.f2,
           params.alpha, int(params.capacity), xi, profile.access.gamma1,
           profile.access.lone_grant, policy, out)
    return out
