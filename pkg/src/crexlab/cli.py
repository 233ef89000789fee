"""Command-line front end.

Subcommands
-----------
measure       evaluate the cumulative residual measure (single value,
              design level, or residual-lifetime variant)
estimate      run an estimator on a sample (from CSV, inline values, or a
              freshly drawn seeded sample)
simulate      run the Monte Carlo benchmark grid and emit CSV rows
discriminate  evaluate the design discrimination measures
calibrate     scan candidate distributions against a target (bias, RMSE)

Exit codes: 0 ok, 2 usage/config error, 3 numeric divergence,
4 partial grid failure.  The environment variable ``CREXLAB_THREADS``
caps the simulation worker count.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import __version__
from .discrimination import d_designs, d_min_vs_parent
from .distributions import parse_distribution
from .errors import (
    DivergenceError,
    DomainError,
    ParameterError,
    SizeError,
    SpecParseError,
)
from .estimators import EstimatorKind, EstimatorSpec, estimate as run_estimator
from .measures import (
    crex,
    crex_minrssu_design,
    crex_srs_design,
    dynamic_crex,
    dynamic_crex_designs,
)
from .sampling import draw_minrssu, sample_from_csv, sample_to_csv, MinRssuSample
from .simulation import (
    DEFAULT_SEED,
    SimulationConfig,
    calibrate_parameter,
    protocol_config,
    replication_rng,
    rows_from_csv,
    rows_to_csv,
    run_grid,
)

USAGE_EXIT = 2
DIVERGENCE_EXIT = 3
PARTIAL_FAILURE_EXIT = 4


def _fmt(value, args):
    if getattr(args, "raw", False):
        return repr(float(value))
    return f"{float(value):.{args.precision}g}"


def _print_measure_rows(rows, args):
    print(f"{'measure':<28} {'value':>16} {'method':<12} {'abs_error_bound':>16}")
    for label, cv in rows:
        print(
            f"{label:<28} {_fmt(cv.value, args):>16} {cv.method.value:<12} "
            f"{_fmt(cv.abs_error_bound, args):>16}"
        )


def cmd_measure(args):
    dist = parse_distribution(args.dist)
    method = args.method
    design = args.design
    if design == "single":
        if args.t is None:
            rows = [("crex", crex(dist, method=method))]
        else:
            rows = [(f"dynamic_crex[t={args.t:g}]", dynamic_crex(dist, args.t, method=method))]
    elif design == "dynamic":
        if args.t is None:
            raise SpecParseError("--design dynamic requires --t")
        pair = dynamic_crex_designs(dist, args.m, args.t, method=method)
        rows = [
            (f"dynamic_crex[minrssu,m={args.m},t={args.t:g}]", pair[0]),
            (f"dynamic_crex[srs,m={args.m},t={args.t:g}]", pair[1]),
        ]
    else:
        if args.t is not None:
            pair = dynamic_crex_designs(dist, args.m, args.t, method=method)
            cv = pair[0] if design == "minrssu" else pair[1]
            rows = [(f"dynamic_crex[{design},m={args.m},t={args.t:g}]", cv)]
        elif design == "minrssu":
            rows = [(f"crex[minrssu,m={args.m}]", crex_minrssu_design(dist, args.m, method=method))]
        else:
            rows = [(f"crex[srs,m={args.m}]", crex_srs_design(dist, args.m, method=method))]
    _print_measure_rows(rows, args)
    return 0


def _load_estimate_data(args, spec):
    sources = sum(x is not None for x in (args.input, args.values, args.draw))
    if sources != 1:
        raise SpecParseError("choose exactly one of --input, --values, --draw")
    if args.input is not None:
        with open(args.input, newline="") as fh:
            sample = sample_from_csv(fh)
    elif args.values is not None:
        try:
            vals = np.array([float(v) for v in args.values.split(",") if v.strip() != ""])
        except ValueError:
            raise SpecParseError(f"bad --values list: {args.values!r}") from None
        if vals.size == 0:
            raise SpecParseError("--values is empty")
        sample = MinRssuSample(m=1, l=vals.size, values=vals.reshape(-1, 1))
    else:
        dist = parse_distribution(args.draw)
        rng = replication_rng(args.seed, 0, 0)
        sample = draw_minrssu(dist, args.m, args.l, rng)
    if args.save is not None:
        with open(args.save, "w", newline="") as fh:
            sample_to_csv(sample, fh)
    if spec.kind in (EstimatorKind.VN, EstimatorKind.LSTAT):
        return sample.values.ravel()
    return sample


def cmd_estimate(args):
    spec = EstimatorSpec.parse(args.estimator)
    data = _load_estimate_data(args, spec)
    value = run_estimator(spec, data)
    print(f"{spec.text():<28} {_fmt(value, args):>16}")
    return 0


def _parse_int_list(text, label):
    try:
        return tuple(int(v) for v in str(text).split(",") if v.strip() != "")
    except ValueError:
        raise SpecParseError(f"bad {label} list: {text!r}") from None


def _config_from_json(path):
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"bad JSON config: {exc}") from None
    known = {
        "distribution",
        "m",
        "l",
        "estimators",
        "w",
        "psi_family",
        "replications",
        "seed",
        "bias_convention",
    }
    unknown = set(raw) - known
    if unknown:
        raise SpecParseError(f"unknown config keys: {sorted(unknown)}")
    w_lists = {}
    for kind, entry in (raw.get("w") or {}).items():
        if isinstance(entry, dict):
            w_lists[kind] = {int(m): tuple(v) for m, v in entry.items()}
        else:
            w_lists[kind] = tuple(entry)
    try:
        return SimulationConfig(
            distribution=raw["distribution"],
            m_values=tuple(raw.get("m", (2, 3, 4, 5))),
            l_values=tuple(raw.get("l", (2, 3))),
            estimators=tuple(raw.get("estimators", ("rn", "rmn"))),
            w_lists=w_lists,
            psi_family=raw.get("psi_family"),
            replications=int(raw.get("replications", 5000)),
            base_seed=int(raw.get("seed", DEFAULT_SEED)),
            bias_convention=raw.get("bias_convention", "truth-minus-estimate"),
        )
    except KeyError as exc:
        raise SpecParseError(f"config missing key: {exc}") from None


def _config_from_flags(args):
    if args.protocol is not None:
        sides = tuple(s.strip() for s in args.sides.split(",") if s.strip())
        for side in sides:
            if side not in ("spacing", "order"):
                raise SpecParseError(f"unknown side {side!r} (use spacing/order)")
        return protocol_config(
            args.protocol,
            replications=args.reps,
            base_seed=args.seed if args.seed is not None else DEFAULT_SEED,
            sides=sides,
        )
    if args.dist is None:
        raise SpecParseError("simulate needs --config, --protocol, or --dist")
    w_lists = {}
    if args.w_rmn is not None:
        w_lists["rmn"] = _parse_int_list(args.w_rmn, "--w-rmn")
    if args.w_lstat_adj is not None:
        w_lists["lstat_adj"] = _parse_int_list(args.w_lstat_adj, "--w-lstat-adj")
    return SimulationConfig(
        distribution=args.dist,
        m_values=_parse_int_list(args.m, "--m"),
        l_values=_parse_int_list(args.l, "--l"),
        estimators=tuple(e.strip() for e in args.estimators.split(",") if e.strip()),
        w_lists=w_lists,
        psi_family=args.psi_family,
        replications=args.reps,
        base_seed=args.seed if args.seed is not None else DEFAULT_SEED,
        bias_convention=args.bias_convention,
    )


def _print_rows_summary(rows):
    print(f"{'estimator':<24} {'m':>2} {'l':>2} {'w':>4} {'bias':>12} {'rmse':>12}")
    for row in rows:
        w = "" if row.w is None else str(row.w)
        print(
            f"{row.estimator:<24} {row.m:>2} {row.l:>2} {w:>4} "
            f"{row.bias:>12.4f} {row.rmse:>12.4f}"
        )


def cmd_simulate(args):
    if args.input is not None:
        with open(args.input, newline="") as fh:
            rows = rows_from_csv(fh)
        _print_rows_summary(rows)
        return 0
    if args.config is not None:
        config = _config_from_json(args.config)
    else:
        config = _config_from_flags(args)
    result = run_grid(config, workers=args.threads)
    lines = []
    if args.seed is None and args.config is None:
        lines.append(f"# seed defaulted to {DEFAULT_SEED}")
    lines.append(rows_to_csv(result.rows))
    text = "\n".join(lines)
    if args.out is not None:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for failure in result.failures:
        print(f"cell failed: {failure}", file=sys.stderr)
    return PARTIAL_FAILURE_EXIT if result.failures else 0


def cmd_discriminate(args):
    dist = parse_distribution(args.dist)
    if args.mode == "min-vs-parent":
        if args.i is None:
            raise SpecParseError("--mode min-vs-parent requires --i")
        dv = d_min_vs_parent(dist, args.i, method=args.method)
        label = f"d[min-vs-parent,i={dv.i_or_m}]"
    else:
        if args.m is None:
            raise SpecParseError("--mode designs requires --m")
        dv = d_designs(dist, args.m, method=args.method)
        label = f"d[designs,m={dv.i_or_m}]"
    print(f"{label:<28} {_fmt(dv.value, args):>16} {dv.method.value}")
    return 0


def cmd_calibrate(args):
    spec = EstimatorSpec.parse(args.estimator)
    result = calibrate_parameter(
        args.dist_grid,
        spec,
        args.m,
        args.l,
        (args.target_bias, args.target_rmse),
        replications=args.reps,
        base_seed=args.seed if args.seed is not None else DEFAULT_SEED,
    )
    print(
        f"target: bias={args.target_bias:g} rmse={args.target_rmse:g} "
        f"(cell m={args.m}, l={args.l}, estimator {spec.text()})"
    )
    for entry in result.details:
        print(
            f"  candidate {entry['distribution']:<24} {entry['bias_convention']:<22} "
            f"bias={_fmt(entry['bias'], args):>12} rmse={_fmt(entry['rmse'], args):>12} "
            f"residual={_fmt(entry['residual'], args)}"
        )
    print(
        f"best fit: {result.spec_string} under {result.bias_convention.value} "
        f"(bias={_fmt(result.bias, args)}, rmse={_fmt(result.rmse, args)}, "
        f"residual={_fmt(result.residual, args)})"
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crexlab",
        description="Cumulative residual extropy measures, estimators, and benchmarks.",
    )
    parser.add_argument("--version", action="version", version=f"crexlab {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add_output_flags(p):
        p.add_argument(
            "--precision", type=int, default=6, help="significant digits (default 6)"
        )
        p.add_argument(
            "--raw", action="store_true", help="print full-precision values"
        )

    p = sub.add_parser("measure", help="evaluate the cumulative residual measure")
    p.add_argument("--dist", required=True, help="distribution spec, e.g. exp:rate=1")
    p.add_argument(
        "--design",
        choices=("single", "srs", "minrssu", "dynamic"),
        default="single",
        help="evaluation level (default single)",
    )
    p.add_argument("--m", type=int, default=1, help="design size (default 1)")
    p.add_argument("--t", type=float, default=None, help="age for residual variants")
    p.add_argument(
        "--method",
        choices=("closed", "quadrature"),
        default="closed",
        help="evaluation route (default closed)",
    )
    add_output_flags(p)
    p.set_defaults(handler=cmd_measure)

    p = sub.add_parser("estimate", help="run an estimator on a sample")
    p.add_argument(
        "--estimator",
        required=True,
        help="estimator spec: vn | rn | rmn:w=-2 | lstat | lstat_adj:family=exp,w=0",
    )
    p.add_argument("--input", help="sample CSV (header cycle,set_size,value)")
    p.add_argument("--values", help="inline comma-separated values (treated as m=1)")
    p.add_argument("--draw", help="draw a fresh sample from this distribution spec")
    p.add_argument("--m", type=int, default=2, help="sets per cycle for --draw")
    p.add_argument("--l", type=int, default=2, help="cycles for --draw")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for --draw")
    p.add_argument("--save", help="write the sample to this CSV file")
    add_output_flags(p)
    p.set_defaults(handler=cmd_estimate)

    p = sub.add_parser("simulate", help="run the Monte Carlo benchmark grid")
    # let w lists like "-2,-1,0,1" pass as option values, not option names
    p._negative_number_matcher = re.compile(r"^-\d+[\d,.\-]*$")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--protocol", choices=("exp", "unif", "beta"), help="benchmark-table grid")
    p.add_argument(
        "--sides",
        default="spacing,order",
        help="protocol halves: spacing, order, or both (default)",
    )
    p.add_argument("--dist", help="distribution spec")
    p.add_argument("--m", default="2,3,4,5", help="comma list of m values")
    p.add_argument("--l", default="2,3", help="comma list of l values")
    p.add_argument("--estimators", default="rn,rmn", help="comma list of estimator kinds")
    p.add_argument("--w-rmn", dest="w_rmn", help="comma list of w values for rmn")
    p.add_argument(
        "--w-lstat-adj", dest="w_lstat_adj", help="comma list of w values for lstat_adj"
    )
    p.add_argument("--psi-family", dest="psi_family", choices=("exp", "unif", "beta"))
    p.add_argument("--reps", type=int, default=5000, help="replications per cell")
    p.add_argument("--seed", type=int, default=None, help=f"base seed (default {DEFAULT_SEED})")
    p.add_argument(
        "--bias-convention",
        dest="bias_convention",
        choices=("truth-minus-estimate", "estimate-minus-truth"),
        default="truth-minus-estimate",
    )
    p.add_argument("--threads", type=int, default=None, help="worker count")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--input", help="reprint a previously emitted results CSV")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("discriminate", help="design discrimination measures")
    p.add_argument("--dist", required=True, help="distribution spec")
    p.add_argument(
        "--mode", choices=("min-vs-parent", "designs"), default="min-vs-parent"
    )
    p.add_argument("--i", type=int, default=None, help="set size for min-vs-parent")
    p.add_argument("--m", type=int, default=None, help="design size for designs mode")
    p.add_argument("--method", choices=("closed", "quadrature"), default="closed")
    add_output_flags(p)
    p.set_defaults(handler=cmd_discriminate)

    p = sub.add_parser("calibrate", help="fit a distribution to a target bias/RMSE")
    p.add_argument(
        "--dist-grid",
        dest="dist_grid",
        nargs="+",
        required=True,
        help="candidate distribution specs",
    )
    p.add_argument("--estimator", required=True, help="estimator spec for the cell")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--target-bias", dest="target_bias", type=float, required=True)
    p.add_argument("--target-rmse", dest="target_rmse", type=float, required=True)
    p.add_argument("--reps", type=int, default=500)
    p.add_argument("--seed", type=int, default=None)
    add_output_flags(p)
    p.set_defaults(handler=cmd_calibrate)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) is None:
        parser.print_help()
        return USAGE_EXIT
    try:
        return args.handler(args)
    except SpecParseError as exc:
        print(f"crexlab: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (DomainError, ParameterError, SizeError) as exc:
        print(f"crexlab: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except DivergenceError as exc:
        print(f"crexlab: divergence: {exc}", file=sys.stderr)
        return DIVERGENCE_EXIT
    except FileNotFoundError as exc:
        print(f"crexlab: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
