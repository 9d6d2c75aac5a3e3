"""Plain-text round-trip format for game parameters and strategy profiles.

One ``key = value`` pair per line, ``#`` starts a comment. Fixed keys:

* parameters: ``pi1 pi2 f1 f2 alpha capacity``
* lobbying rule: ``xi1_on xi1_off xi2_on xi2_off``
* access rule: ``gamma1 lone_grant``
* access-stage beliefs: ``belief{i}_silent belief{i}_lobby`` with an
  ``offpath_access`` list naming unconstrained entries (``1:lobby`` style)
* policy rule: ``rho{i}_<history>`` where ``<history>`` encodes the lobbying
  profile, the access profile, and the revealed state, e.g.
  ``rho2_L11_A10_R1`` (both lobbied, group 1 examined, its state revealed
  favorable).

Floats are written with ``repr`` so documents round-trip exactly.
"""

from __future__ import annotations

from .core import (
    AccessRule,
    BeliefSystem,
    Capacity,
    GameParams,
    History,
    LobbyRule,
    PolicyRule,
    StrategyProfile,
    all_histories,
)
from .errors import MalformedProfileError

_PARAM_KEYS = ("pi1", "pi2", "f1", "f2", "alpha", "capacity")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dumps_profile(profile: StrategyProfile, params: GameParams) -> str:
    """Serialize a profile (with its game parameters) to the text format."""
    lines = []
    lines.append("# game parameters")
    for key in ("pi1", "pi2", "f1", "f2", "alpha"):
        lines.append(f"{key} = {_fmt(getattr(params, key))}")
    lines.append(f"capacity = {int(params.capacity)}")
    lines.append("# lobbying rule")
    lines.append(f"xi1_on = {_fmt(profile.lobby1.on)}")
    lines.append(f"xi1_off = {_fmt(profile.lobby1.off)}")
    lines.append(f"xi2_on = {_fmt(profile.lobby2.on)}")
    lines.append(f"xi2_off = {_fmt(profile.lobby2.off)}")
    lines.append("# access rule")
    lines.append(f"gamma1 = {_fmt(profile.access.gamma1)}")
    lines.append(f"lone_grant = {_fmt(profile.access.lone_grant)}")
    lines.append("# access-stage beliefs")
    beliefs = profile.beliefs
    for group in (1, 2):
        pair = beliefs.access1 if group == 1 else beliefs.access2
        lines.append(f"belief{group}_silent = {_fmt(pair[0])}")
        lines.append(f"belief{group}_lobby = {_fmt(pair[1])}")
    flagged = sorted(f"{g}:{'lobby' if lam else 'silent'}"
                     for g, lam in beliefs.off_path_access)
    if flagged:
        lines.append(f"offpath_access = {','.join(flagged)}")
    lines.append("# policy rule")
    for hist in all_histories(profile.access.lone_grant):
        r1, r2 = profile.policy.action(hist)
        lines.append(f"rho1_{hist.key()} = {_fmt(r1)}")
        lines.append(f"rho2_{hist.key()} = {_fmt(r2)}")
    return "\n".join(lines) + "\n"


def _parse_history(token: str) -> History:
    try:
        parts = token.split("_")
        lam = (int(parts[0][1]), int(parts[0][2]))
        a1, a2 = int(parts[1][1]), int(parts[1][2])
        access = 1 if a1 else (2 if a2 else 0)
        revealed = int(parts[2][1]) if len(parts) > 2 else None
        return History(lam, access, revealed)
    except (IndexError, ValueError) as exc:
        raise MalformedProfileError(f"bad history key {token!r}") from exc


def _parse_pairs(text: str) -> dict:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedProfileError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in pairs:
            raise MalformedProfileError(f"line {lineno}: duplicate key {key!r}")
        pairs[key] = value
    return pairs


def loads_profile(text: str):
    """Parse the text format back into ``(profile, params)``."""
    pairs = _parse_pairs(text)

    def take(key, cast=float):
        if key not in pairs:
            raise MalformedProfileError(f"missing key {key!r}")
        try:
            return cast(pairs.pop(key))
        except ValueError as exc:
            raise MalformedProfileError(f"bad value for {key!r}") from exc

    params = GameParams(take("pi1"), take("pi2"), take("f1"), take("f2"),
                        take("alpha"), Capacity(take("capacity", int)))
    lobby1 = LobbyRule(take("xi1_on"), take("xi1_off"))
    lobby2 = LobbyRule(take("xi2_on"), take("xi2_off"))
    access = AccessRule(take("gamma1"), lone_grant=bool(take("lone_grant", int)))
    access1 = (take("belief1_silent"), take("belief1_lobby"))
    access2 = (take("belief2_silent"), take("belief2_lobby"))
    off_path_access = set()
    if "offpath_access" in pairs:
        for token in pairs.pop("offpath_access").split(","):
            token = token.strip()
            if not token:
                continue
            group_s, _, side = token.partition(":")
            if side not in ("lobby", "silent") or group_s not in ("1", "2"):
                raise MalformedProfileError(f"bad offpath_access entry {token!r}")
            off_path_access.add((int(group_s), 1 if side == "lobby" else 0))

    histories = all_histories(access.lone_grant)
    actions = {}
    for hist in histories:
        key1, key2 = f"rho1_{hist.key()}", f"rho2_{hist.key()}"
        if key1 not in pairs or key2 not in pairs:
            raise MalformedProfileError(f"missing policy entry for {hist.key()}")
        actions[hist] = (float(pairs.pop(key1)), float(pairs.pop(key2)))
    if pairs:
        unknown = ", ".join(sorted(pairs))
        raise MalformedProfileError(f"unrecognized keys: {unknown}")

    beliefs = BeliefSystem.from_access(access1, access2, histories,
                                       off_path_access=frozenset(off_path_access))
    profile = StrategyProfile(lobby1, lobby2, access, PolicyRule(actions), beliefs)
    return profile, params


def dump_profile(profile, params, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_profile(profile, params))


def load_profile(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads_profile(fh.read())
