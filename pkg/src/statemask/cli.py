"""Command-line front end: ``statemask <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 validation/parse error,
3 infeasible cost budget, 4 I/O error.  ``STATEMASK_SEED`` and
``STATEMASK_UNIT`` override the seed and unit defaults.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict
from typing import Optional, Sequence

import numpy as np

from . import io as smio
from .discrete.bounds import (binning_budget, binning_region, inner_bounds, outer_bounds,
                              projected_inequalities)
from .discrete.frontier import RateQuintuple, check_point
from .discrete.search import SearchConfig, search_inner_region, zero_rate_region
from .gaussian import GaussianParams, sweep_region
from .gaussverify import sample_params, verify_gaussian_point
from .probcore import InfeasibleError, NumericalError, ValidationError, assemble_joint

EXIT_OK, EXIT_FAIL, EXIT_VALIDATION, EXIT_INFEASIBLE, EXIT_IO = 0, 1, 2, 3, 4
COMMANDS = ("inner", "outer", "binning", "search", "zero-rate", "check",
            "gaussian", "verify-gaussian")


def _env_default(name: str, fallback, cast):
    raw = os.environ.get(name)
    return fallback if raw is None else cast(raw)


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _joint(args):
    ch = smio.parse_channel_file(args.channel)
    cond = smio.parse_conditional_file(args.cond)
    return ch, assemble_joint(ch, cond, unit=args.unit)


def cmd_inner(args) -> int:
    _, joint = _joint(args)
    _write(_json(asdict(inner_bounds(joint))), args.output)
    return EXIT_OK


def cmd_outer(args) -> int:
    _, joint = _joint(args)
    _write(_json(asdict(outer_bounds(joint))), args.output)
    return EXIT_OK


def cmd_binning(args) -> int:
    _, joint = _joint(args)
    reg = binning_region(joint)
    direct = inner_bounds(joint)
    doc = {
        "budget": asdict(binning_budget(joint)),
        "inequalities": projected_inequalities(),
        "rhs": reg.rhs.tolist(),
        "feasible": reg.feasible,
        "per_rate": list(reg.per_rate),
        "support": {"r0": reg.b_r0, "r0+r1": reg.b_r01, "r0+r2": reg.b_r02,
                    "r0+r1+r2": reg.b_rsum},
        "l1": reg.l1, "l2": reg.l2,
        "sum_rate_direct": direct.b_rsum,
        "sum_rate_binning": direct.b_rsum_binning,
    }
    _write(_json(doc), args.output)
    return EXIT_OK


def _emit_frontier(frontier, args) -> None:
    _write(smio.frontier_csv_text(frontier), args.output)
    if args.provenance:
        smio.write_provenance(frontier, args.provenance)
    if args.plot_data:
        _write(smio.gnuplot_text(("r0", "r1", "r2", "e1", "e2"), frontier.as_array()),
               args.plot_data)


def cmd_search(args) -> int:
    ch = smio.parse_channel_file(args.channel)
    cards = tuple(args.cards) if args.cards else None
    cfg = SearchConfig(seed=args.seed, samples=args.samples, local_iters=args.local_iters)
    _emit_frontier(search_inner_region(ch, cards, cfg, unit=args.unit), args)
    return EXIT_OK


def cmd_zero_rate(args) -> int:
    ch = smio.parse_channel_file(args.channel)
    _emit_frontier(zero_rate_region(ch, args.steps, unit=args.unit), args)
    return EXIT_OK


def cmd_check(args) -> int:
    frontier = smio.read_frontier_csv(args.frontier)
    verdict = check_point(frontier, RateQuintuple(*args.point), tol=args.tolerance)
    _write(verdict.value + "\n", args.output)
    return EXIT_OK


def _gaussian_base(args) -> GaussianParams:
    return GaussianParams(args.P, args.N1, args.N2, args.Q1, args.Q2, args.gamma,
                          args.rho1, args.rho2)


def cmd_gaussian(args) -> int:
    params, values = sweep_region(_gaussian_base(args), args.gamma_steps, args.rho_steps)
    _write(smio.gaussian_csv_text(params, values), args.output)
    if args.plot_data:
        rows = np.hstack([params, values])
        _write(smio.gnuplot_text(smio.GAUSSIAN_HEADER, rows), args.plot_data)
    return EXIT_OK


def cmd_verify_gaussian(args) -> int:
    if args.samples > 0:
        points = sample_params(np.random.default_rng(args.seed), args.samples)
    else:
        points = [_gaussian_base(args)]
    header = ("P", "N1", "N2", "Q1", "Q2", "gamma", "rho1", "rho2",
              "res_r1", "res_r2", "res_e1", "res_e2", "mask1", "mask2", "status")
    lines = [",".join(header)]
    ok = True
    for gp in points:
        rep = verify_gaussian_point(gp)
        ok &= rep.passed
        res = rep.residuals
        vals = [gp.p, gp.n1, gp.n2, gp.q1, gp.q2, gp.gamma, gp.rho1, gp.rho2,
                res["r1"], res["r2"], res["e1"], res["e2"], res["mask1"], res["mask2"]]
        lines.append(",".join(smio.fmt(v) for v in vals) + ("," + ("PASS" if rep.passed else "FAIL")))
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    seed = _env_default("STATEMASK_SEED", 0, int)
    unit = _env_default("STATEMASK_UNIT", "bits", str)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=seed)
    common.add_argument("--unit", choices=("bits", "nats"), default=unit)
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="statemask", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (("inner", cmd_inner, "inner-bound values"),
                                 ("outer", cmd_outer, "outer-bound values"),
                                 ("binning", cmd_binning, "binning budget and eliminated region")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("channel", help="channel file ('-' for stdin)")
        p.add_argument("cond", help="auxiliary conditional file")
        p.set_defaults(func=func)

    frontier_out = argparse.ArgumentParser(add_help=False)
    frontier_out.add_argument("--provenance", help="write per-point conditionals (JSON)")
    frontier_out.add_argument("--plot-data", help="write gnuplot-style data file")

    p = sub.add_parser("search", parents=[common, frontier_out], help="randomized inner-region search")
    p.add_argument("channel")
    p.add_argument("--cards", type=int, nargs=3, metavar=("W", "U", "V"))
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--local-iters", type=int, default=20)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("zero-rate", parents=[common, frontier_out], help="zero-rate leakage region")
    p.add_argument("channel")
    p.add_argument("--steps", type=int, default=32, help="grid spacing 1/steps")
    p.set_defaults(func=cmd_zero_rate)

    p = sub.add_parser("check", parents=[common], help="test a quintuple against a frontier CSV")
    p.add_argument("frontier")
    p.add_argument("point", type=float, nargs=5, metavar=("R0", "R1", "R2", "E1", "E2"))
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_check)

    gauss = argparse.ArgumentParser(add_help=False)
    gauss.add_argument("--P", type=float, default=1.0)
    gauss.add_argument("--N1", type=float, default=1.0)
    gauss.add_argument("--N2", type=float, default=2.0)
    gauss.add_argument("--Q1", type=float, default=1.0)
    gauss.add_argument("--Q2", type=float, default=1.0)
    gauss.add_argument("--gamma", type=float, default=0.5)
    gauss.add_argument("--rho1", type=float, default=0.0)
    gauss.add_argument("--rho2", type=float, default=0.0)

    p = sub.add_parser("gaussian", parents=[common, gauss], help="sweep the Gaussian region")
    p.add_argument("--gamma-steps", type=int, default=33)
    p.add_argument("--rho-steps", type=int, default=33)
    p.add_argument("--plot-data")
    p.set_defaults(func=cmd_gaussian)

    p = sub.add_parser("verify-gaussian", parents=[common, gauss],
                       help="check closed forms against covariance log-dets")
    p.add_argument("--samples", type=int, default=0,
                   help="random parameter sets (0: verify the given parameters)")
    p.set_defaults(func=cmd_verify_gaussian)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"statemask: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValidationError, NumericalError) as exc:
        print(f"statemask: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"statemask: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
