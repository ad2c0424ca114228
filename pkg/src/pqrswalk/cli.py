"""Command-line front end: `pqrswalk <subcommand> [flags]`.

Exit codes: 0 success, 1 failed verification, 2 bad arguments or invalid
parameters, 3 numerical failure (no convergence, singular point).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import absorption as ab
from . import io
from .coin import WalkType, hadamard, parse_coin, parse_state, pqrs
from .errors import NoConvergence, NormDrift, SingularPoint, WalkError
from .limit import density, limit_mean, limit_sd, limit_second_moment, make_limit_density
from .pathsum import classify_symmetry, moment_closed_form, moment_context, theta
from .verify import ALIASES, SUITES, run_suite
from .walk import distribution, empirical_moment, evolve, step

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _grid(text: str) -> np.ndarray:
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:count, got {text!r}") from None
    if count < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"grid needs count >= 1 and lo <= hi, got {text!r}")
    return np.linspace(lo, hi, count)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", dest="walk_type", default="a", help="walk type: a or g")
    common.add_argument("--coin", default="hadamard", help="coin spec, e.g. hadamard, gudder:0.6")
    common.add_argument("--state", default="R", help="initial qubit: L, R, sym or raw:ar,ai,br,bi")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    parser = _Parser(prog="pqrswalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", parents=[common], help="exact distribution after n steps")
    p.add_argument("--steps", type=int, required=True)

    p = sub.add_parser("moments", parents=[common], help="closed-form vs exact moments")
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--m", default="1,2,3,4", help="comma-separated moment orders")

    p = sub.add_parser("symmetry", parents=[common], help="mirror-symmetry classification")
    p.add_argument("--steps", type=_positive, default=15)

    p = sub.add_parser("density", parents=[common], help="weak-limit density on a grid")
    p.add_argument("--grid", type=_grid, default="-1:1:201", help="lo:hi:count")

    sub.add_parser("limit-stats", parents=[common], help="mean, second moment, sd of the limit")

    p = sub.add_parser("absorb", parents=[common], help="absorption probability at site 0")
    p.add_argument("--mode", choices=("semi", "finite"), default="semi")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-cap", type=_positive, default=None)
    p.add_argument("--panels", type=_positive, default=2**13)
    p.add_argument("--emit-series", default=None, metavar="PATH", help="also write the per-step CSV")

    p = sub.add_parser("verify", help="run a built-in invariant battery")
    p.add_argument("suite", choices=(*SUITES, *ALIASES, "all"))
    p.add_argument("--n-max", type=_positive, default=None)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _context(args):
    return WalkType.parse(args.walk_type), parse_coin(args.coin), parse_state(args.state)


def _cmd_evolve(args) -> int:
    wt, coin, state = _context(args)
    field = evolve(state, coin, wt, args.steps)
    distribution(field)  # raises NormDrift if probability leaked
    rows = list(io.distribution_rows(field))
    if args.format == "json":
        doc = {
            "time": field.time,
            "walk_type": wt.value,
            "coin": args.coin,
            "state": args.state,
            "entries": [list(r) for r in rows],
        }
        _emit(io.dumps(doc) + "\n", args.out)
    else:
        _emit(io.csv_text(io.DIST_HEADER, rows), args.out)
    return EXIT_OK


def _cmd_moments(args) -> int:
    wt, coin, state = _context(args)
    try:
        orders = [int(v) for v in args.m.split(",")]
    except ValueError:
        raise UsageError(f"--m must be comma-separated integers, got {args.m!r}") from None
    if any(m < 1 for m in orders):
        raise UsageError("moment orders must be >= 1")
    ctx = moment_context(coin, wt, state)
    dist = distribution(evolve(state, coin, wt, args.steps))
    rows = []
    for m in orders:
        closed = moment_closed_form(ctx, args.steps, m)
        exact = empirical_moment(dist, m)
        rows.append((m, closed, exact, abs(closed - exact)))
    if args.format == "csv":
        _emit(io.csv_text(("m", "closed_form", "exact", "residual"), rows), args.out)
    else:
        doc = {
            "n": args.steps,
            "moments": [dict(zip(("m", "closed_form", "exact", "residual"), r)) for r in rows],
        }
        _emit(io.dumps(doc) + "\n", args.out)
    return EXIT_OK


def _cmd_symmetry(args) -> int:
    wt, coin, state = _context(args)
    basis = pqrs(coin, wt)
    field = evolve(state, coin, wt, 0)
    mirror = mean = 0.0
    for _ in range(args.steps):
        field = step(field, basis)
        dist = distribution(field)
        mirror = max(mirror, float(np.max(np.abs(dist.probs - dist.probs[::-1]))))
        mean = max(mean, abs(empirical_moment(dist, 1)))
    doc = {
        "balanced": classify_symmetry(coin, wt, state),
        "theta": theta(coin, wt, state),
        "polarization": abs(state.alpha) ** 2 - abs(state.beta) ** 2,
        "n_max": args.steps,
        "max_mirror_residual": mirror,
        "max_abs_mean": mean,
    }
    _emit(io.dumps(doc) + "\n", args.out)
    return EXIT_OK


def _cmd_density(args) -> int:
    wt, coin, state = _context(args)
    d = make_limit_density(coin, wt, state)
    fs = np.atleast_1d(density(d, args.grid))
    _emit(io.csv_text(io.DENSITY_HEADER, zip(args.grid, fs)), args.out)
    return EXIT_OK


def _cmd_limit_stats(args) -> int:
    wt, coin, state = _context(args)
    d = make_limit_density(coin, wt, state)
    doc = {"mean": limit_mean(d), "second_moment": limit_second_moment(d), "sd": limit_sd(d)}
    _emit(io.dumps(doc) + "\n", args.out)
    return EXIT_OK


def _cmd_absorb(args) -> int:
    wt, coin, state = _context(args)
    if args.mode == "finite" and args.N is None:
        raise UsageError("--mode finite needs --N")
    if args.mode == "semi" and args.N is not None:
        raise UsageError("--N only applies to --mode finite")
    spec = ab.AbsorptionSpec(coin, wt, args.k, args.N)
    result = ab.absorption_prob(spec, state, args.n_cap)
    is_hadamard = coin.close_to(hadamard())
    closed = None
    if is_hadamard and spec.semi_infinite and spec.k == 1:
        closed = ab.semi_infinite_closed(state, wt)
    elif is_hadamard and not spec.semi_infinite:
        closed = ab.parseval_prob(spec.N, spec.k, state, wt, args.panels)
    doc = {
        "spec": {**spec.describe(), "coin": args.coin, "state": args.state},
        "prob": result.prob,
        "n_used": result.n_used,
        "tail_bound": result.tail_bound,
        "converged": result.converged,
        "cond_mean_T0": result.cond_mean_T0,
    }
    if closed is not None:
        doc["closed_form"] = closed
    if not spec.semi_infinite and spec.k == 1:
        doc["conjecture_rhs"] = ab.conjecture_rhs(spec.N)
    _emit(io.dumps(doc) + "\n", args.out)
    if args.emit_series:
        series = ab.hitting_series(spec, result.n_used)
        probs = ab.first_hit_probs(series, state)
        _emit(io.csv_text(io.SERIES_HEADER, io.series_rows(series, probs)), args.emit_series)
    if not result.converged:
        print(f"pqrswalk: {NoConvergence(result)}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.n_max)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


COMMANDS = {
    "evolve": _cmd_evolve,
    "moments": _cmd_moments,
    "symmetry": _cmd_symmetry,
    "density": _cmd_density,
    "limit-stats": _cmd_limit_stats,
    "absorb": _cmd_absorb,
    "verify": _cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pqrswalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, SingularPoint, NormDrift) as exc:
        print(f"pqrswalk: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (WalkError, ValueError) as exc:
        print(f"pqrswalk: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pqrswalk: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
