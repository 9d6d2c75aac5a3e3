"""Command-line front end.

Subcommands: ``solve`` (construct and print the equilibrium for one
parameter point), ``verify`` (check a profile document), ``payoffs``
(exact expected payoffs), ``simulate`` (seeded Monte Carlo estimate),
``sweep`` (grid evaluation to CSV), ``quadrants`` (country quadrant and
anomaly audit). Numeric output carries 12 significant digits so runs can
be diffed across machines. Exit codes: 0 success, 1 domain error or failed
verification (error name on stderr), 2 argument errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import empirics
from .core import Capacity, GameParams, validate_params
from .equilibrium import classify_regimes, equilibrium_for
from .errors import LobbyGameError
from .payoff import exact_payoffs, simulate
from .serialize import dumps_profile, loads_profile
from .theorems import theorem1_compare, theorem2_check
from .verify import verify_equilibrium

DEFAULT_TOL = 1e-9


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _add_param_flags(parser, required=True):
    parser.add_argument("--pi1", type=float, required=required)
    parser.add_argument("--pi2", type=float, required=required)
    parser.add_argument("--f1", type=float, required=required)
    parser.add_argument("--f2", type=float, required=required)
    parser.add_argument("--alpha", type=float, required=required)
    parser.add_argument("--capacity", type=int, choices=(1, 2),
                        required=required,
                        help="maximum number of issues the policymaker can reform")


def _add_common_flags(parser):
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")


def _params_from_args(args) -> GameParams:
    return validate_params(args.pi1, args.pi2, args.f1, args.f2, args.alpha,
                           Capacity(args.capacity))


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _regime_lines(params, tol) -> list:
    report = classify_regimes(params, tol)
    return [
        f"cost_ratio = {fmt(report.c_value)}",
        f"lemma1_regime = {report.lemma1_regime.value}",
        f"lemma2_regime = {report.lemma2_regime.value}",
        f"theorem1_region = {report.theorem1_region.value}",
        f"region_boundary = {int(report.region_boundary)}",
        f"theorem2_lhs = {fmt(report.theorem2_lhs)}",
        f"theorem2_condition = {int(report.theorem2_condition)}",
    ]


def _profile_json(profile, params) -> dict:
    doc = {}
    for line in dumps_profile(profile, params).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            key, value = (part.strip() for part in line.split("=", 1))
            doc[key] = value
    return doc


def cmd_solve(args) -> int:
    params = _params_from_args(args)
    profile = equilibrium_for(params, tol=args.tol)
    if args.format == "json":
        payload = {
            "regimes": dict(line.split(" = ") for line in _regime_lines(params, args.tol)),
            "profile": _profile_json(profile, params),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        header = "".join(f"# {line}\n" for line in _regime_lines(params, args.tol))
        _emit(header + dumps_profile(profile, params), args.out)
    return 0


def _load_profile_arg(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads_profile(fh.read())
    except OSError as exc:
        raise LobbyGameError(f"cannot read profile {path}: {exc}") from exc


def cmd_verify(args) -> int:
    profile, params = _load_profile_arg(args.profile)
    report = verify_equilibrium(profile, params, tol=args.tol)
    if args.format == "json":
        payload = {
            "passed": report.passed,
            "bayes_ok": report.bayes_ok,
            "lobby_foc_ok": report.lobby_foc_ok,
            "access_ok": report.access_ok,
            "policy_ok": report.policy_ok,
            "max_violation": report.max_violation,
            "checks": [
                {"name": c.name, "passed": c.passed, "violation": c.violation,
                 "detail": c.detail}
                for c in report.checks
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(report.to_text() + "\n", args.out)
    return 0 if report.passed else 1


def _profile_for_payoffs(args):
    if args.profile:
        return _load_profile_arg(args.profile)
    params = _params_from_args(args)
    return equilibrium_for(params, tol=args.tol), params


def cmd_payoffs(args) -> int:
    profile, params = _profile_for_payoffs(args)
    payoffs = exact_payoffs(profile, params)
    if args.format == "json":
        _emit(json.dumps({"eu_gi1": payoffs.eu_gi1, "eu_gi2": payoffs.eu_gi2,
                          "eu_dp": payoffs.eu_dp}) + "\n", args.out)
    elif args.format == "csv":
        _emit("eu_gi1,eu_gi2,eu_dp\n"
              + ",".join(fmt(v) for v in payoffs.as_tuple()) + "\n", args.out)
    else:
        _emit("".join(f"{name} = {fmt(v)}\n" for name, v in
                      zip(("eu_gi1", "eu_gi2", "eu_dp"), payoffs.as_tuple())),
              args.out)
    return 0


def cmd_simulate(args) -> int:
    profile, params = _profile_for_payoffs(args)
    estimate = simulate(profile, params, trials=args.trials, seed=args.seed,
                        backend=args.backend)
    stderr = estimate.stderr.as_tuple() if estimate.stderr else (None,) * 3
    if args.format == "json":
        payload = {
            "mean": dict(zip(("eu_gi1", "eu_gi2", "eu_dp"),
                             estimate.mean.as_tuple())),
            "stderr": None if estimate.stderr is None else dict(
                zip(("eu_gi1", "eu_gi2", "eu_dp"), stderr)),
            "trials": estimate.trials,
            "seed": estimate.seed,
            "rng_algorithm": estimate.rng_algorithm,
            "backend": estimate.backend,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"trials = {estimate.trials}", f"seed = {estimate.seed}",
                 f"rng_algorithm = {estimate.rng_algorithm}",
                 f"backend = {estimate.backend}"]
        for name, m, s in zip(("eu_gi1", "eu_gi2", "eu_dp"),
                              estimate.mean.as_tuple(), stderr):
            stderr_text = "n/a" if s is None else fmt(s)
            lines.append(f"{name} = {fmt(m)} (stderr {stderr_text})")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


@dataclass(frozen=True)
class SweepGrid:
    """Axis ranges for a sweep; each axis is (min, max, steps)."""

    pi1: tuple
    pi2: tuple
    f1: tuple
    f2: tuple
    alpha: tuple
    seed: int = 0

    def axis(self, spec):
        lo, hi, steps = spec
        if steps < 1:
            raise LobbyGameError("steps must be at least 1")
        if steps == 1:
            return [lo]
        return list(np.linspace(lo, hi, steps))

    def points(self):
        for pi1 in self.axis(self.pi1):
            for pi2 in self.axis(self.pi2):
                for f1 in self.axis(self.f1):
                    for f2 in self.axis(self.f2):
                        for alpha in self.axis(self.alpha):
                            yield (pi1, pi2, f1, f2, alpha)


DEFAULT_GRID = SweepGrid(pi1=(0.15, 0.45, 3), pi2=(0.15, 0.45, 3),
                         f1=(0.05, 0.95, 4), f2=(0.05, 0.95, 4),
                         alpha=(1.5, 2.5, 2))

SWEEP_COLUMNS = (
    "pi1", "pi2", "f1", "f2", "alpha", "cost_ratio", "lemma1_regime",
    "lemma2_regime", "region", "boundary", "degenerate", "theorem2_lhs",
    "theorem2_condition", "theorem1_ok", "theorem2_consistent",
    "eu_gi1_n1", "eu_gi2_n1", "eu_dp_n1", "eu_gi1_n2", "eu_gi2_n2", "eu_dp_n2",
)


def _parse_range(text, flag):
    try:
        lo, hi, steps = text.split(":")
        return (float(lo), float(hi), int(steps))
    except ValueError as exc:
        raise LobbyGameError(f"{flag} expects MIN:MAX:STEPS, got {text!r}") from exc


def sweep_rows(grid: SweepGrid, tol: float):
    """Evaluate every grid point in deterministic axis order."""
    yield SWEEP_COLUMNS
    for pi1, pi2, f1, f2, alpha in grid.points():
        params = validate_params(pi1, pi2, f1, f2, alpha, Capacity.N2)
        report = classify_regimes(params, tol)
        boundary = (report.region_boundary
                    or report.lemma1_regime.value == "boundary"
                    or report.lemma2_regime.value == "boundary")
        row = {
            "pi1": fmt(pi1), "pi2": fmt(pi2), "f1": fmt(f1), "f2": fmt(f2),
            "alpha": fmt(alpha), "cost_ratio": fmt(report.c_value),
            "lemma1_regime": report.lemma1_regime.value,
            "lemma2_regime": report.lemma2_regime.value,
            "region": report.theorem1_region.value,
            "boundary": str(int(boundary)),
            "degenerate": "0",
            "theorem2_lhs": fmt(report.theorem2_lhs),
            "theorem2_condition": str(int(report.theorem2_condition)),
            "theorem1_ok": "", "theorem2_consistent": "",
            "eu_gi1_n1": "", "eu_gi2_n1": "", "eu_dp_n1": "",
            "eu_gi1_n2": "", "eu_gi2_n2": "", "eu_dp_n2": "",
        }
        if not boundary:
            try:
                t1 = theorem1_compare(params, tol)
                row["theorem1_ok"] = str(int(t1.inequalities_ok))
                n1 = params.with_capacity(Capacity.N1)
                n2 = params.with_capacity(Capacity.N2)
                pay_n1 = exact_payoffs(equilibrium_for(n1, tol), n1)
                pay_n2 = exact_payoffs(equilibrium_for(n2, tol), n2)
                for key, value in zip(("eu_gi1_n1", "eu_gi2_n1", "eu_dp_n1"),
                                      pay_n1.as_tuple()):
                    row[key] = fmt(value)
                for key, value in zip(("eu_gi1_n2", "eu_gi2_n2", "eu_dp_n2"),
                                      pay_n2.as_tuple()):
                    row[key] = fmt(value)
                t2 = theorem2_check(params, tol)
                if t2.applicable:
                    row["theorem2_consistent"] = str(int(t2.consistent))
            except LobbyGameError as exc:
                row["degenerate"] = type(exc).__name__
        yield tuple(row[c] for c in SWEEP_COLUMNS)


def cmd_sweep(args) -> int:
    if args.grid == "default":
        grid = DEFAULT_GRID
    else:
        grid = SweepGrid(
            pi1=_parse_range(args.pi1_range, "--pi1-range"),
            pi2=_parse_range(args.pi2_range, "--pi2-range"),
            f1=_parse_range(args.f1_range, "--f1-range"),
            f2=_parse_range(args.f2_range, "--f2-range"),
            alpha=_parse_range(args.alpha_range, "--alpha-range"),
            seed=args.seed,
        )
    text = "\n".join(",".join(row) for row in sweep_rows(grid, args.tol)) + "\n"
    _emit(text, args.out)
    return 0


def cmd_quadrants(args) -> int:
    schema = empirics.ColumnMap(
        name=args.name_col, index_value=args.index_col,
        abundance=args.abundance_col, gni=args.gni_col,
        income_class=args.class_col)
    index_bounds = (args.index_min, args.index_max)
    records, diagnostics = empirics.load_countries(
        args.input, schema, index_bounds=index_bounds,
        income_low_cutoff=args.income_cutoff, delimiter=args.delimiter)
    for diag in diagnostics:
        print(f"skipped: {diag}", file=sys.stderr)
    cutoff = args.index_cutoff
    if cutoff is None:
        cutoff = 0.5 * (args.index_min + args.index_max)
    thresholds = empirics.Thresholds(index_high_cutoff=cutoff,
                                     abundance_cutoff=args.abundance_cutoff,
                                     income_low_cutoff=args.income_cutoff)
    table = empirics.anomaly_table(records, thresholds)
    if args.format == "csv":
        _emit("\n".join(",".join(r) for r in table.to_csv_rows()) + "\n", args.out)
    else:
        _emit(table.to_text() + "\n", args.out)
    if args.countries_out:
        with open(args.countries_out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(",".join(r) for r in table.to_country_rows()) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lobbygame",
        description="Two-issue lobbying-access game: equilibria, verification, "
                    "payoffs, sweeps, and country quadrant audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="construct the closed-form equilibrium")
    _add_param_flags(p_solve)
    _add_common_flags(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a profile document")
    p_verify.add_argument("--profile", required=True)
    _add_common_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    for name, func, extra in (("payoffs", cmd_payoffs, False),
                              ("simulate", cmd_simulate, True)):
        p = sub.add_parser(name, help=f"{name} for a profile or parameter point")
        _add_param_flags(p, required=False)
        p.add_argument("--profile", help="profile document (overrides parameter flags)")
        if extra:
            p.add_argument("--trials", type=int, default=100_000)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--backend", choices=("numba", "numpy"))
        _add_common_flags(p)
        p.set_defaults(func=func)

    p_sweep = sub.add_parser("sweep", help="evaluate a parameter grid to CSV")
    p_sweep.add_argument("--grid", default="default",
                         help="'default' or 'custom' with the range flags below")
    p_sweep.add_argument("--pi1-range", default="0.15:0.45:3")
    p_sweep.add_argument("--pi2-range", default="0.15:0.45:3")
    p_sweep.add_argument("--f1-range", default="0.05:0.95:4")
    p_sweep.add_argument("--f2-range", default="0.05:0.95:4")
    p_sweep.add_argument("--alpha-range", default="1.5:2.5:2")
    p_sweep.add_argument("--seed", type=int, default=0)
    _add_common_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_quad = sub.add_parser("quadrants", help="country quadrant and anomaly audit")
    p_quad.add_argument("--input", required=True)
    p_quad.add_argument("--name-col", default="country")
    p_quad.add_argument("--index-col", default="index")
    p_quad.add_argument("--abundance-col", default="abundance")
    p_quad.add_argument("--gni-col", default=None)
    p_quad.add_argument("--class-col", default=None)
    p_quad.add_argument("--index-min", type=float, default=1.0)
    p_quad.add_argument("--index-max", type=float, default=6.0)
    p_quad.add_argument("--index-cutoff", type=float, default=None,
                        help="default: midpoint of the index scale")
    p_quad.add_argument("--abundance-cutoff", type=float,
                        default=empirics.DEFAULT_ABUNDANCE_CUTOFF)
    p_quad.add_argument("--income-cutoff", type=float,
                        default=empirics.DEFAULT_INCOME_LOW_CUTOFF)
    p_quad.add_argument("--delimiter", default=",")
    p_quad.add_argument("--countries-out",
                        help="write the per-country audit CSV to this path")
    _add_common_flags(p_quad)
    p_quad.set_defaults(func=cmd_quadrants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LobbyGameError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
