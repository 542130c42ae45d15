"""``transmute`` command line: tables, samples, moments, calibration, region.

Exit codes: 0 success, 2 parse error, 3 invalid map, 4 unsupported
analytic base, 5 nonexistent moments, 6 unreachable calibration target.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .base_dist import BaseDistribution, CauchyBase, ExponentialBase, NormalBase, parse_base
from .errors import (
    InvalidMapError,
    MomentsUndefinedError,
    ParameterError,
    SpecParseError,
    UnreachableTargetError,
    UnsupportedBaseError,
)
from .moments import (
    CalibrationTarget,
    analytic_moments,
    calibrate,
    quadrature_moments,
    sample_moments,
)
from .moments import _normal_raw
from .rtm import parse_map, trace_region
from .transmuted import TransmutedDistribution, sample_streams

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID_MAP = 3
EXIT_UNSUPPORTED = 4
EXIT_NO_MOMENTS = 5
EXIT_UNREACHABLE = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    base_spec: str
    map_spec: str
    grid: tuple[float, float, int]
    seed: int = 0
    output_path: str = "-"

    def __post_init__(self):
        lo, hi, n = self.grid
        if n < 2 or not lo < hi:
            raise CliError(f"bad grid: need lo < hi and n >= 2, got {self.grid}", EXIT_PARSE)


def fmt(x: float) -> str:
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def default_grid(base: BaseDistribution) -> tuple[float, float]:
    if isinstance(base, (NormalBase, CauchyBase)):
        return (-4.0, 4.0)
    if isinstance(base, ExponentialBase):
        return (0.0, 8.0 / base.beta)
    return (0.0, 1.0)


def build(base_spec: str, map_spec: str) -> TransmutedDistribution:
    try:
        base = parse_base(base_spec)
        spec = parse_map(map_spec)
    except (SpecParseError, ParameterError) as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    try:
        rtm = spec.build()
    except InvalidMapError as exc:
        details = " ".join(exc.report.lines()) if exc.report else ""
        raise CliError(f"{exc} ({details})", EXIT_INVALID_MAP) from exc
    except ParameterError as exc:
        raise CliError(f"{exc} ({' '.join(spec.report().lines())})", EXIT_INVALID_MAP) from exc
    return TransmutedDistribution(base, rtm)


def csv_text(header: str, rows) -> str:
    lines = [header]
    lines += [",".join(c if isinstance(c, str) else fmt(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_table(config: RunConfig) -> str:
    d = build(config.base_spec, config.map_spec)
    lo, hi, n = config.grid
    x = np.linspace(lo, hi, n)
    pdf = np.asarray(d.pdf(x))
    cdf = np.asarray(d.cdf(x))
    return csv_text("x,pdf,cdf", zip(x, pdf, cdf))


def cmd_sample(config: RunConfig, n: int, streams: int = 1) -> str:
    d = build(config.base_spec, config.map_spec)
    if n < 0:
        raise CliError("sample count must be non-negative", EXIT_PARSE)
    if streams < 1:
        raise CliError("--streams must be at least 1", EXIT_PARSE)
    if n == 0:
        return ""
    x = sample_streams(d, config.seed, n, streams)
    return "\n".join(map(fmt, x)) + "\n"


def cmd_moments(config: RunConfig, mode: str, n: int = 10**6, streams: int = 1) -> str:
    d = build(config.base_spec, config.map_spec)
    try:
        if mode == "analytic":
            m = analytic_moments(d)
        elif mode == "quadrature":
            m = quadrature_moments(d)
        elif mode == "monte-carlo":
            if not d.has_moments:
                raise MomentsUndefinedError(f"{d.name}: moments do not exist")
            m, _ = sample_moments(sample_streams(d, config.seed, n, streams))
        else:
            raise CliError(f"unknown mode {mode!r}", EXIT_PARSE)
    except UnsupportedBaseError as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from exc
    except MomentsUndefinedError as exc:
        raise CliError(str(exc), EXIT_NO_MOMENTS) from exc
    rows = [(str(k), v) for k, v in enumerate(m.raw, start=1)]
    rows += [
        ("mean", m.mean),
        ("variance", m.variance),
        ("skewness", m.skewness),
        ("exkurt", m.excess_kurtosis),
    ]
    return csv_text("k,value", rows)


def cmd_region(alpha2_lo: float, alpha2_hi: float, n: int) -> str:
    if n < 2 or not alpha2_lo < alpha2_hi:
        raise CliError("region needs lo < hi and n >= 2", EXIT_PARSE)
    rows = trace_region(np.linspace(alpha2_lo, alpha2_hi, n))
    return csv_text("alpha2,alpha1_min,alpha1_max", rows)


def cmd_calibrate(skew: float, exkurt: float) -> str:
    try:
        target = CalibrationTarget(skew, exkurt)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    try:
        a1, a2 = calibrate(target)
    except UnreachableTargetError as exc:
        raise CliError(str(exc), EXIT_UNREACHABLE) from exc
    m1, m2, _, _ = _normal_raw(a1, a2)
    return csv_text("alpha1,alpha2,mu,sigma", [(a1, a2, m1, math.sqrt(m2 - m1 * m1))])


def cmd_check(map_spec: str) -> tuple[str, int]:
    try:
        report = parse_map(map_spec).report()
    except (SpecParseError, ParameterError) as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    code = EXIT_OK if report.valid else EXIT_INVALID_MAP
    return "\n".join(report.lines()) + "\n", code


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", default="normal", help="uniform | normal | cauchy | exp:beta=<r>")
    common.add_argument("--map", default="poly:a1=0,a2=0", help="quad:lambda=<r>[,clip] | cubic:gamma=<r> | poly:a1=<r>,a2=<r>[,clip]")
    common.add_argument("--lo", type=float)
    common.add_argument("--hi", type=float)
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--streams", type=int, default=1)
    common.add_argument("--out", default="-", help="output file, '-' for stdout")

    parser = argparse.ArgumentParser(prog="transmute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="pdf and cdf on a grid")
    sub.add_parser("sample", parents=[common], help="Monte Carlo draws, one per line")
    p = sub.add_parser("moments", parents=[common], help="raw and standardised moments")
    p.add_argument("--mode", choices=["analytic", "quadrature", "monte-carlo"], default="analytic")
    p = sub.add_parser("calibrate", parents=[common], help="match skewness and excess kurtosis")
    p.add_argument("--skew", type=float, required=True)
    p.add_argument("--exkurt", type=float, required=True)
    sub.add_parser("region", parents=[common], help="admissible (alpha1, alpha2) region")
    sub.add_parser("check", parents=[common], help="validity report for a map")
    return parser


def run(args: argparse.Namespace) -> tuple[str, int]:
    cmd = args.command
    if cmd == "check":
        return cmd_check(args.map)
    if cmd == "region":
        lo = -2.0 if args.lo is None else args.lo
        hi = 4.0 if args.hi is None else args.hi
        return cmd_region(lo, hi, 61 if args.n is None else args.n), EXIT_OK
    if cmd == "calibrate":
        return cmd_calibrate(args.skew, args.exkurt), EXIT_OK

    if cmd == "table":
        try:
            default_lo, default_hi = default_grid(parse_base(args.base))
        except (SpecParseError, ParameterError) as exc:
            raise CliError(str(exc), EXIT_PARSE) from exc
        grid = (
            default_lo if args.lo is None else args.lo,
            default_hi if args.hi is None else args.hi,
            401 if args.n is None else args.n,
        )
        return cmd_table(RunConfig(args.base, args.map, grid, args.seed, args.out)), EXIT_OK

    config = RunConfig(args.base, args.map, (0.0, 1.0, 2), args.seed, args.out)
    if cmd == "sample":
        return cmd_sample(config, 1000 if args.n is None else args.n, args.streams), EXIT_OK
    n = 10**6 if args.n is None else args.n
    return cmd_moments(config, args.mode, n, args.streams), EXIT_OK


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        text, code = run(args)
    except CliError as exc:
        print(f"transmute: {exc}", file=sys.stderr)
        return exc.code
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
