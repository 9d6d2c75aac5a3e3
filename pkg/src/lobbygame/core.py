"""Domain types and stage primitives for the two-issue lobbying game.

A policymaker faces two interest groups, one per reform issue. Each issue
``i`` has a hidden binary state drawn with prior ``pi_i``; the group for
issue ``i`` observes that state and may lobby at cost ``f_i``. After seeing
who lobbied, the policymaker grants in-depth access to at most one lobbying
group (access forces that issue's state to be revealed), then chooses which
issues to reform subject to a leadership capacity of one or two issues.
Issue 1 carries weight ``alpha > 1``, issue 2 weight 1.

Everything here is immutable after construction and all operations are pure
functions of their inputs; the one stochastic primitive (``draw_state``)
takes an explicit generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .errors import MalformedProfileError, OutOfRangeError

#: Global comparison tolerance. All closed forms are small rational
#: expressions, comfortably inside double precision.
TOL = 1e-9


class Capacity(IntEnum):
    """Maximum number of issues the policymaker can reform."""

    N1 = 1
    N2 = 2


def _as_capacity(value) -> Capacity:
    if isinstance(value, Capacity):
        return value
    if isinstance(value, str):
        v = value.strip().upper().lstrip("N")
        value = int(v)
    return Capacity(int(value))


def check_params(pi1, pi2, f1, f2, alpha) -> list:
    """Return the list of violated parameter constraints (empty if valid)."""
    violations = []
    for name, value in (("pi1", pi1), ("pi2", pi2)):
        if not (0.0 < value < 0.5):
            violations.append(f"{name}={value!r} not in open interval (0, 1/2)")
    for name, value in (("f1", f1), ("f2", f2)):
        if not (0.0 < value < 1.0):
            violations.append(f"{name}={value!r} not in open interval (0, 1)")
    if not alpha > 1.0:
        violations.append(f"alpha={alpha!r} must be strictly greater than 1")
    return violations


@dataclass(frozen=True)
class GameParams:
    """One game instance: priors, lobbying costs, issue-1 weight, capacity.

    ``alpha1``/``alpha2`` expose the per-issue weights (``alpha`` and 1).
    """

    pi1: float
    pi2: float
    f1: float
    f2: float
    alpha: float
    capacity: Capacity

    def __post_init__(self):
        object.__setattr__(self, "capacity", _as_capacity(self.capacity))
        violations = check_params(self.pi1, self.pi2, self.f1, self.f2, self.alpha)
        if violations:
            raise OutOfRangeError(violations)

    @property
    def alpha1(self) -> float:
        return self.alpha

    @property
    def alpha2(self) -> float:
        return 1.0

    def pi(self, group: int) -> float:
        return self.pi1 if group == 1 else self.pi2

    def f(self, group: int) -> float:
        return self.f1 if group == 1 else self.f2

    def weight(self, issue: int) -> float:
        return self.alpha if issue == 1 else 1.0

    def with_capacity(self, capacity) -> "GameParams":
        return GameParams(self.pi1, self.pi2, self.f1, self.f2, self.alpha,
                          _as_capacity(capacity))


def validate_params(pi1, pi2, f1, f2, alpha, capacity) -> GameParams:
    """Validate raw scalars into a :class:`GameParams`.

    Raises :class:`OutOfRangeError` listing every violated constraint;
    values are never clamped.
    """
    for name, value in (("pi1", pi1), ("pi2", pi2), ("f1", f1), ("f2", f2),
                        ("alpha", alpha)):
        if not np.isfinite(value):
            raise OutOfRangeError([f"{name}={value!r} is not finite"])
    return GameParams(float(pi1), float(pi2), float(f1), float(f2),
                      float(alpha), _as_capacity(capacity))


@dataclass(frozen=True)
class StateVector:
    """Realized states of the two issues (1 = reform benefits the DP)."""

    theta1: int
    theta2: int

    def __post_init__(self):
        if self.theta1 not in (0, 1) or self.theta2 not in (0, 1):
            raise OutOfRangeError(["state components must be 0 or 1"])

    def get(self, issue: int) -> int:
        return self.theta1 if issue == 1 else self.theta2


@dataclass(frozen=True)
class PolicyVector:
    """Realized policy decisions (1 = reform issue i)."""

    p1: int
    p2: int

    def __post_init__(self):
        if self.p1 not in (0, 1) or self.p2 not in (0, 1):
            raise OutOfRangeError(["policy components must be 0 or 1"])

    def feasible(self, capacity: Capacity) -> bool:
        return self.p1 + self.p2 <= int(capacity)


def weighted_match_utility(policy: PolicyVector, state: StateVector,
                           alpha1: float, alpha2: float = 1.0) -> float:
    """Weighted count of issues where the policy matches the state."""
    return (alpha1 * (1.0 if policy.p1 == state.theta1 else 0.0)
            + alpha2 * (1.0 if policy.p2 == state.theta2 else 0.0))


def dp_utility(policy: PolicyVector, state: StateVector,
               params: GameParams) -> float:
    """Policymaker utility: ``alpha * 1[p1=theta1] + 1[p2=theta2]``."""
    return weighted_match_utility(policy, state, params.alpha, 1.0)


@dataclass(frozen=True)
class LobbyRule:
    """Per-group lobbying probabilities conditional on the observed state.

    ``on`` is the probability of lobbying in the favorable state,
    ``off`` in the unfavorable one.
    """

    on: float
    off: float

    def __post_init__(self):
        if not (0.0 <= self.on <= 1.0 and 0.0 <= self.off <= 1.0):
            raise OutOfRangeError(["lobbying probabilities must lie in [0, 1]"])

    def prob(self, theta: int) -> float:
        return self.on if theta == 1 else self.off

    @property
    def truthful(self) -> bool:
        return self.on == 1.0 and self.off == 0.0


@dataclass(frozen=True)
class AccessRule:
    """Access-granting rule: mixing weights when both groups lobby, plus the
    convention for a lone lobbier (granted by default; access is costless and
    weakly informative for the policymaker)."""

    gamma1: float
    gamma2: float = None  # type: ignore[assignment]
    lone_grant: bool = True

    def __post_init__(self):
        if self.gamma2 is None:
            object.__setattr__(self, "gamma2", 1.0 - self.gamma1)
        if not (0.0 <= self.gamma1 <= 1.0 and 0.0 <= self.gamma2 <= 1.0):
            raise OutOfRangeError(["access weights must lie in [0, 1]"])
        if abs(self.gamma1 + self.gamma2 - 1.0) > 1e-12:
            raise OutOfRangeError(["access weights must sum to 1"])

    def gamma(self, group: int) -> float:
        return self.gamma1 if group == 1 else self.gamma2


# Access outcome codes used throughout: nobody examined, group 1 examined,
# group 2 examined.
ACCESS_NONE = 0
ACCESS_GI1 = 1
ACCESS_GI2 = 2


@dataclass(frozen=True, order=True)
class History:
    """What the policymaker has seen when choosing policy: the lobbying
    profile, who (if anyone) was granted access, and the revealed state of
    the examined issue."""

    lam: tuple
    access: int
    revealed: Optional[int] = None

    def __post_init__(self):
        l1, l2 = self.lam
        if self.access == ACCESS_GI1 and not l1:
            raise MalformedProfileError("access granted to group 1 without lobbying")
        if self.access == ACCESS_GI2 and not l2:
            raise MalformedProfileError("access granted to group 2 without lobbying")
        if (self.revealed is None) != (self.access == ACCESS_NONE):
            raise MalformedProfileError("revealed state present iff access granted")

    def key(self) -> str:
        a1 = 1 if self.access == ACCESS_GI1 else 0
        a2 = 1 if self.access == ACCESS_GI2 else 0
        base = f"L{self.lam[0]}{self.lam[1]}_A{a1}{a2}"
        if self.revealed is not None:
            base += f"_R{self.revealed}"
        return base


def access_options(lam, rule: AccessRule):
    """Stage-3 access distribution for a lobbying profile.

    Both lobby: mix between the two groups with the rule's weights. Exactly
    one lobbies: granted iff ``lone_grant``. Nobody lobbies: no access.
    """
    l1, l2 = lam
    if l1 and l2:
        return ((ACCESS_GI1, rule.gamma1), (ACCESS_GI2, rule.gamma2))
    if l1:
        return ((ACCESS_GI1, 1.0),) if rule.lone_grant else ((ACCESS_NONE, 1.0),)
    if l2:
        return ((ACCESS_GI2, 1.0),) if rule.lone_grant else ((ACCESS_NONE, 1.0),)
    return ((ACCESS_NONE, 1.0),)


def all_histories(lone_grant: bool = True) -> tuple:
    """Every policy-stage history reachable under the access conventions."""
    out = []
    for l1 in (0, 1):
        for l2 in (0, 1):
            lam = (l1, l2)
            accesses = set()
            if l1 and l2:
                accesses = {ACCESS_GI1, ACCESS_GI2}
            elif l1:
                accesses = {ACCESS_GI1} if lone_grant else {ACCESS_NONE}
            elif l2:
                accesses = {ACCESS_GI2} if lone_grant else {ACCESS_NONE}
            else:
                accesses = {ACCESS_NONE}
            for acc in sorted(accesses):
                if acc == ACCESS_NONE:
                    out.append(History(lam, acc, None))
                else:
                    out.append(History(lam, acc, 0))
                    out.append(History(lam, acc, 1))
    return tuple(sorted(out, key=lambda h: (h.lam, h.access, -1 if h.revealed is None else h.revealed)))


@dataclass(frozen=True, eq=False)
class PolicyRule:
    """Map from history to per-issue reform probabilities.

    Under capacity 1 the two probabilities describe mutually exclusive
    reforms (their sum may not exceed 1); under capacity 2 they are
    independent coins. Player payoffs depend on the marginals only.
    """

    actions: Mapping

    def __post_init__(self):
        frozen = {}
        for hist, probs in dict(self.actions).items():
            r1, r2 = float(probs[0]), float(probs[1])
            if not (0.0 <= r1 <= 1.0 and 0.0 <= r2 <= 1.0):
                raise OutOfRangeError([f"policy entry {hist.key()} outside [0, 1]"])
            frozen[hist] = (r1, r2)
        object.__setattr__(self, "actions", MappingProxyType(frozen))

    def action(self, history: History):
        try:
            return self.actions[history]
        except KeyError:
            raise MalformedProfileError(
                f"policy rule has no entry for history {history.key()}") from None

    def reform_prob(self, issue: int, history: History) -> float:
        return self.action(history)[issue - 1]

    def check_capacity(self, capacity: Capacity, tol: float = TOL) -> list:
        """Histories whose reform mass exceeds the leadership constraint."""
        if capacity == Capacity.N2:
            return []
        return [h for h, (r1, r2) in self.actions.items() if r1 + r2 > 1.0 + tol]


@dataclass(frozen=True, eq=False)
class BeliefSystem:
    """Stated beliefs that the state is favorable, at both decision stages.

    ``access1``/``access2`` hold the post-lobbying posteriors
    ``(after silence, after lobbying)`` used at the access stage; ``policy``
    maps ``(group, history)`` to the belief held when choosing policy.
    ``off_path_access`` / ``off_path_histories`` flag zero-probability
    events whose stated beliefs are unconstrained by Bayes' rule.
    """

    access1: tuple
    access2: tuple
    policy: Mapping
    off_path_access: frozenset = frozenset()
    off_path_histories: frozenset = frozenset()

    def __post_init__(self):
        for pair in (self.access1, self.access2):
            for b in pair:
                if not (0.0 <= b <= 1.0):
                    raise OutOfRangeError(["beliefs must lie in [0, 1]"])
        frozen = {}
        for key, b in dict(self.policy).items():
            if not (0.0 <= b <= 1.0):
                raise OutOfRangeError(["beliefs must lie in [0, 1]"])
            frozen[key] = float(b)
        object.__setattr__(self, "policy", MappingProxyType(frozen))
        object.__setattr__(self, "off_path_access", frozenset(self.off_path_access))
        object.__setattr__(self, "off_path_histories",
                           frozenset(self.off_path_histories))

    def access_belief(self, group: int, lam: int) -> float:
        pair = self.access1 if group == 1 else self.access2
        return pair[lam]

    def policy_belief(self, group: int, history: History) -> float:
        try:
            return self.policy[(group, history)]
        except KeyError:
            raise MalformedProfileError(
                f"belief system has no policy belief for group {group} at "
                f"{history.key()}") from None

    @classmethod
    def from_access(cls, access1, access2, histories,
                    off_path_access=frozenset(), off_path_histories=frozenset()):
        """Derive policy-stage beliefs from access-stage ones.

        States are independent across issues and each group's lobbying
        depends only on its own state, so the rival's lobbying and any
        revealed rival state carry no information: the belief about issue
        ``i`` is the revelation when ``i`` was examined and the
        post-lobbying posterior otherwise.
        """
        policy = {}
        for h in histories:
            for group, pair in ((1, access1), (2, access2)):
                if h.access == group:
                    policy[(group, h)] = float(h.revealed)
                else:
                    policy[(group, h)] = pair[h.lam[group - 1]]
        return cls(tuple(access1), tuple(access2), policy,
                   off_path_access, off_path_histories)


@dataclass(frozen=True, eq=False)
class StrategyProfile:
    """A full strategy profile plus its supporting belief system."""

    lobby1: LobbyRule
    lobby2: LobbyRule
    access: AccessRule
    policy: PolicyRule
    beliefs: BeliefSystem

    def lobby(self, group: int) -> LobbyRule:
        return self.lobby1 if group == 1 else self.lobby2


@dataclass(frozen=True)
class PayoffVector:
    """Expected utilities for the two groups and the policymaker."""

    eu_gi1: float
    eu_gi2: float
    eu_dp: float

    def as_tuple(self):
        return (self.eu_gi1, self.eu_gi2, self.eu_dp)


@dataclass(frozen=True)
class AccessPosterior:
    """Bayes posteriors that the state is favorable, after observing the
    group's lobbying decision. ``None`` marks an off-path observation whose
    belief is left to the caller."""

    after_lobby: Optional[float]
    after_silence: Optional[float]


def bayes_access_belief(pi: float, lobby: LobbyRule) -> AccessPosterior:
    """Posterior over the state from a group's lobbying decision.

    Off-path observations (zero-probability lobbying outcomes) are flagged
    with ``None`` rather than raising; standard equilibrium freedom lets the
    caller state any belief there.
    """
    num_on = pi * lobby.on
    den_on = num_on + (1.0 - pi) * lobby.off
    num_off = pi * (1.0 - lobby.on)
    den_off = num_off + (1.0 - pi) * (1.0 - lobby.off)
    after_lobby = num_on / den_on if den_on > 0.0 else None
    after_silence = num_off / den_off if den_off > 0.0 else None
    return AccessPosterior(after_lobby, after_silence)


# Action labels for capacity-1 best responses.
REFORM1 = "reform1"
REFORM2 = "reform2"
STATUS_QUO = "status_quo"


@dataclass(frozen=True)
class BestResponse:
    """Optimal policy choices given per-issue beliefs.

    Capacity 2: ``issue_choices`` holds the forced reform probability per
    issue (``None`` marks an indifference tie where any value is optimal).
    Capacity 1: any distribution supported on ``actions`` is optimal.
    """

    capacity: Capacity
    gains: tuple
    issue_choices: Optional[tuple] = None
    actions: Optional[frozenset] = None
    tie: bool = False


def policy_best_response(beliefs, params: GameParams,
                         tol: float = TOL) -> BestResponse:
    """Stage-4 best response to beliefs ``(B1, B2)``.

    Unconstrained capacity reforms each issue iff its belief exceeds 1/2;
    under the leadership constraint the issue with the larger positive
    weighted gain ``(B_i - 1/2) * alpha_i`` is reformed, nothing when both
    gains are non-positive. Ties are marked, never broken silently.
    """
    b1, b2 = beliefs
    for b in (b1, b2):
        if not (0.0 <= b <= 1.0):
            raise OutOfRangeError(["beliefs must lie in [0, 1]"])
    g1 = (b1 - 0.5) * params.alpha
    g2 = (b2 - 0.5) * 1.0
    if params.capacity == Capacity.N2:
        choices = []
        tie = False
        for g in (g1, g2):
            if g > tol:
                choices.append(1.0)
            elif g < -tol:
                choices.append(0.0)
            else:
                choices.append(None)
                tie = True
        return BestResponse(Capacity.N2, (g1, g2), issue_choices=tuple(choices),
                            tie=tie)
    values = {STATUS_QUO: 0.0, REFORM1: g1, REFORM2: g2}
    best = max(values.values())
    actions = frozenset(a for a, v in values.items() if v >= best - tol)
    return BestResponse(Capacity.N1, (g1, g2), actions=actions,
                        tie=len(actions) > 1)


def draw_state(params: GameParams, rng: np.random.Generator) -> StateVector:
    """Stage-1 draw: each issue is favorable independently with its prior."""
    u = rng.random(2)
    return StateVector(int(u[0] < params.pi1), int(u[1] < params.pi2))


def history_probabilities(profile: StrategyProfile,
                          params: GameParams) -> dict:
    """Probability of reaching each policy-stage history under the profile.

    Exact finite enumeration over states, lobbying outcomes, and access
    outcomes; used to decide which stated beliefs Bayes' rule pins down.
    """
    probs = {h: 0.0 for h in all_histories(profile.access.lone_grant)}
    for th1 in (0, 1):
        p1 = params.pi1 if th1 else 1.0 - params.pi1
        for th2 in (0, 1):
            p2 = params.pi2 if th2 else 1.0 - params.pi2
            p_state = p1 * p2
            if p_state == 0.0:
                continue
            for l1 in (0, 1):
                q1 = profile.lobby1.prob(th1)
                pl1 = q1 if l1 else 1.0 - q1
                if pl1 == 0.0:
                    continue
                for l2 in (0, 1):
                    q2 = profile.lobby2.prob(th2)
                    pl2 = q2 if l2 else 1.0 - q2
                    if pl2 == 0.0:
                        continue
                    for acc, pa in access_options((l1, l2), profile.access):
                        if pa == 0.0:
                            continue
                        if acc == ACCESS_GI1:
                            rev = th1
                        elif acc == ACCESS_GI2:
                            rev = th2
                        else:
                            rev = None
                        h = History((l1, l2), acc, rev)
                        probs[h] += p_state * pl1 * pl2 * pa
    return probs
