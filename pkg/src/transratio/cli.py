"""Command-line interface.

Exit codes: 0 success, 2 usage or validation error, 3 estimator failure,
4 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import io as tio
from .errors import SamplingError, TooLarge
from .estimators import STANDARD_KINDS, EstimatorKind, correlation_warning, estimate
from .exact import judge_unbiased, exact_distributions
from .montecarlo import simulate
from .output import FORMATS, OutputTable
from .population import Population, TransformConfig, summarize
from .sampling import DEFAULT_CAP, draw_sample
from .theory import efficiency_conditions, variance_first_order
from .validation import check_design

EXIT_OK, EXIT_USAGE, EXIT_ESTIMATOR, EXIT_CAP = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64) (got {text})")
    return value


def _kinds(text: str | None, L: float | None) -> list[EstimatorKind]:
    if text is None:
        return [k for k in STANDARD_KINDS if L is not None or not k.needs_L]
    try:
        kinds = [EstimatorKind.parse(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"--estimators: {exc}") from None
    if not kinds:
        raise UsageError("--estimators: empty list")
    needing = [k.value for k in kinds if k.needs_L]
    if needing and L is None:
        raise UsageError(f"--L is required for estimators: {', '.join(needing)}")
    return kinds


def _load_population(path: str) -> Population:
    try:
        return tio.read_population_csv(path)
    except OSError as exc:
        raise UsageError(f"--population: cannot read {path}: {exc.strerror}") from None
    except (SamplingError, ValueError) as exc:
        raise UsageError(f"--population {path}: {exc}") from None


def _setup(pop: Population, n: int, L: float | None) -> TransformConfig | None:
    try:
        check_design(pop.N, n)
    except SamplingError as exc:
        raise UsageError(f"--n: {exc}") from None
    if L is None:
        return None
    config = TransformConfig(L)
    try:
        config.check(pop)
    except SamplingError as exc:
        raise UsageError(f"--L: DegenerateTransform: {exc}") from None
    return config


def _population_rho(pop: Population, n: int) -> float | None:
    try:
        return summarize(pop, n).rho
    except SamplingError:
        return None


def cmd_estimate(args) -> tuple[OutputTable, int]:
    pop = _load_population(args.population)
    config = _setup(pop, args.n, args.L)
    kinds = _kinds(args.estimators, args.L)
    sample = draw_sample(pop, args.n, args.seed)
    rho = _population_rho(pop, args.n)
    table = OutputTable(["estimator", "estimate", "notes"])
    status = EXIT_OK
    for kind in kinds:
        notes = [] if rho is None else [w for w in [correlation_warning(kind, rho)] if w]
        try:
            value = estimate(pop, sample, kind, config)
        except SamplingError as exc:
            value = None
            notes.append(f"failed: {exc}")
            status = EXIT_ESTIMATOR
        table.add(kind.value, value, "; ".join(notes))
    return table, status


def _parse_L_values(args) -> list[float]:
    if args.L_list is not None:
        try:
            values = [float(t) for t in args.L_list.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"--L-list: cannot parse {args.L_list!r}") from None
        if not values:
            raise UsageError("--L-list: empty list")
        return values
    try:
        lo, hi, step = (float(t) for t in args.L_range.split(":"))
    except ValueError:
        raise UsageError(f"--L-range: expected LO:HI:STEP, got {args.L_range!r}") from None
    if not step > 0 or hi < lo:
        raise UsageError("--L-range: need STEP > 0 and HI >= LO")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(count)]


SWEEP_COLUMNS = [
    "L", "Vbar", "var_du", "re_vs_ybar", "re_vs_d1u", "re_vs_d2u",
    "beats_ybar_and_d1u", "beats_d2u", "beats_dstar", "vbar_source", "status",
]


def cmd_sweep(args) -> tuple[OutputTable, int]:
    if args.params is not None:
        if args.vbar == "exact":
            raise UsageError("--vbar exact needs unit-level data (--population), not --params")
        try:
            params = tio.read_params(args.params)
        except OSError as exc:
            raise UsageError(f"--params: cannot read {args.params}: {exc.strerror}") from None
        except (SamplingError, ValueError) as exc:
            raise UsageError(f"--params {args.params}: {exc}") from None
        if args.n is not None and args.n != params.n:
            try:
                params = params.with_design(args.n)
            except SamplingError as exc:
                raise UsageError(f"--n: {exc}") from None
    else:
        if args.n is None:
            raise UsageError("--n is required with --population")
        pop = _load_population(args.population)
        _setup(pop, args.n, None)
        try:
            params = summarize(pop, args.n)
        except SamplingError as exc:
            raise UsageError(str(exc)) from None
    mode = args.vbar or ("exact" if params.population is not None else "approx")

    table = OutputTable(SWEEP_COLUMNS)
    for L in _parse_L_values(args):
        try:
            rep = efficiency_conditions(params, L, mode)
        except SamplingError as exc:
            table.add(L, *([None] * (len(SWEEP_COLUMNS) - 3)), None, f"{type(exc).__name__}: {exc}")
            continue
        table.add(
            L, rep.Vbar, rep.var_du, rep.re_vs_ybar, rep.re_vs_d1u, rep.re_vs_d2u,
            rep.beats_ybar_and_d1u, rep.beats_d2u, rep.beats_dstar, rep.vbar_source, "ok",
        )
    return table, EXIT_OK


def cmd_verify(args) -> tuple[OutputTable, int]:
    pop = _load_population(args.population)
    config = _setup(pop, args.n, args.L)
    kinds = _kinds(args.estimators, args.L)
    try:
        dists = exact_distributions(pop, args.n, kinds, config, cap=args.cap)
    except TooLarge as exc:
        print(f"transratio verify: C(N, n) = {exc.count} exceeds cap {exc.cap}", file=sys.stderr)
        return OutputTable([]), EXIT_CAP
    table = OutputTable(["estimator", "exact_mean", "Ybar", "bias", "unbiased", "failed", "tol"])
    for kind in kinds:
        d = dists[kind]
        check = judge_unbiased(d, args.tol)
        table.add(kind.value, d.mean, d.Ybar, d.bias, check.passed, d.failed_samples, args.tol)
    return table, EXIT_OK


def cmd_simulate(args) -> tuple[OutputTable, int]:
    if args.reps < 2:
        raise UsageError(f"--reps must be at least 2 (got {args.reps})")
    if args.workers < 1:
        raise UsageError(f"--workers must be at least 1 (got {args.workers})")
    pop = _load_population(args.population)
    config = _setup(pop, args.n, args.L)
    kinds = _kinds(args.estimators, args.L)
    reports = simulate(pop, args.n, kinds, config, reps=args.reps, seed=args.seed, workers=args.workers)
    try:
        params = summarize(pop, args.n, config)
    except SamplingError:
        params = None
    table = OutputTable(["estimator", "mc_mean", "mc_var", "se", "formula_var", "ratio", "failed"])
    for rep in reports:
        formula = None
        if params is not None:
            try:
                formula = variance_first_order(rep.estimator, params).variance
            except SamplingError:
                pass
        ratio = rep.variance / formula if formula else None
        table.add(rep.estimator.value, rep.mean, rep.variance, rep.std_error_of_mean, formula, ratio, rep.failed_reps)
    return table, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="human", help="output format (default: human)")

    parser = argparse.ArgumentParser(
        prog="transratio",
        description="Unbiased ratio-type estimation of a finite population mean with a transformed auxiliary variable.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", parents=[common], help="draw one sample and evaluate estimators")
    p.add_argument("--population", required=True, metavar="FILE", help="CSV with header x,y")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--seed", type=_u64, required=True, help="unsigned 64-bit seed")
    p.add_argument("--L", type=float, help="transformation constant")
    p.add_argument("--estimators", metavar="LIST", help="comma-separated estimator names")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", parents=[common], help="relative efficiencies over a grid of L")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--params", metavar="FILE", help="key=value summary constants")
    src.add_argument("--population", metavar="FILE", help="CSV with header x,y")
    p.add_argument("--n", type=int, help="sample size (defaults to the params file value)")
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--L-list", dest="L_list", metavar="CSV", help="comma-separated L values")
    grid.add_argument("--L-range", dest="L_range", metavar="LO:HI:STEP", help="inclusive L grid")
    p.add_argument("--vbar", choices=("exact", "approx"), help="how to obtain Vbar (default: exact with raw data)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="exact unbiasedness by enumerating all samples")
    p.add_argument("--population", required=True, metavar="FILE")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--L", type=float)
    p.add_argument("--estimators", metavar="LIST")
    p.add_argument("--tol", type=float, default=1e-12, help="relative tolerance (default 1e-12)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of subsets")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo replication")
    p.add_argument("--population", required=True, metavar="FILE")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--L", type=float)
    p.add_argument("--estimators", metavar="LIST")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        table, status = args.func(args)
    except UsageError as exc:
        print(f"transratio {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SamplingError as exc:
        print(f"transratio {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATOR
    if table.columns:
        sys.stdout.write(table.render(args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
