"""Command-line front end.

Subcommands: info, transform, norm, region, cpq, witness, sweep, estimate,
uncertainty.  JSON on stdout by default; CSV for function data and sweeps.
Floats are emitted with shortest round-trip encoding; infinities appear as
the string "inf".  Exit codes: 0 success, 2 usage error, 3 capacity error,
4 numeric non-convergence (with a partial report).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

import numpy as np

from .groups import COMPACT, DISCRETE, CapacityError, GroupSpec
from .transform import (
    TIME,
    MeasuredFunction,
    character_function,
    delta,
    forward,
    inverse,
    parseval_defect,
    read_csv,
    write_csv,
)
from .norms import INF, classify, closed_form_cpq, lp_norm, recip
from . import witnesses as wit
from .estimator import EstimatorConfig, estimate_norm, ratio
from .uncertainty import (
    donoho_stark_check,
    support_product,
    unweighted_up_margin,
    weighted_up_margin,
    weighted_up_violator,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_NOCONVERGE = 4


def _jsonable(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return _jsonable(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def _emit_json(payload, out=None):
    (out or sys.stdout).write(json.dumps(_jsonable(payload), indent=2) + "\n")


def _exponent(text: str) -> float:
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    try:
        val = float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an exponent: {text!r}")
    if not val > 0:
        raise argparse.ArgumentTypeError("exponent must be positive")
    return val


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _read_function(path) -> MeasuredFunction:
    if path in (None, "-"):
        return read_csv(sys.stdin.read())
    with open(path) as fh:
        return read_csv(fh.read())


# -- subcommand handlers -----------------------------------------------------

def _cmd_info(args) -> int:
    spec = GroupSpec.parse(args.group)
    _emit_json(
        {
            "group": spec.describe(),
            "orders": list(spec.orders),
            "view": spec.view,
            "mass": spec.mass,
            "size": spec.size,
            "primal_atom": spec.primal_atom,
            "primal_total": spec.primal_total,
            "dual_atom": spec.dual_atom,
            "dual_total": spec.dual_total,
        }
    )
    return EXIT_OK


def _cmd_transform(args) -> int:
    f = _read_function(args.input)
    g = inverse(f, method=args.method) if args.inverse else forward(f, method=args.method)
    out, close = _open_out(args.output)
    try:
        out.write(write_csv(g))
    finally:
        if close:
            out.close()
    return EXIT_OK


def _cmd_norm(args) -> int:
    f = _read_function(args.input)
    _emit_json(
        {
            "group": f.spec.describe(),
            "side": f.side,
            "p": args.p,
            "norm": lp_norm(f, args.p),
        }
    )
    return EXIT_OK


def _cmd_region(args) -> int:
    spec = GroupSpec.parse(args.group) if args.group else None
    verdict = classify(args.side, args.u, args.v, spec=spec)
    _emit_json(
        {
            "side": verdict.side,
            "u": args.u,
            "v": args.v,
            "label": verdict.label,
            "finite": verdict.finite,
            "value": verdict.value,
        }
    )
    return EXIT_OK


def _cmd_cpq(args) -> int:
    spec = GroupSpec.parse(args.group)
    _emit_json(
        {
            "group": spec.describe(),
            "p": args.p,
            "q": args.q,
            "value": closed_form_cpq(spec, args.p, args.q),
        }
    )
    return EXIT_OK


def _require(args, names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise SystemExit2(f"family {args.family!r} needs --" + ", --".join(missing))


class SystemExit2(Exception):
    """Usage error raised after argparse has finished."""


def _witness_point(family: str, args):
    p = args.p if args.p is not None else 1.0
    q = args.q if args.q is not None else 1.0
    if family == "arc_indicator":
        _require(args, ["k", "m"])
        return wit.arc_indicator_witness(args.k, args.m, p, q)
    if family == "subgroup_indicator":
        _require(args, ["r", "n"])
        return wit.subgroup_indicator_witness(args.r, args.n, p, q)
    if family == "full_orbit":
        _require(args, ["m"])
        return wit.full_orbit_witness(args.m, p, q)
    if family == "chirp":
        _require(args, ["r", "n"])
        return wit.chirp_witness(args.r, args.n, q, p=p)
    if family == "lacunary_compact":
        _require(args, ["m"])
        return wit.lacunary_compact_witness(args.m, p, q, beta=args.beta, c=args.c)
    if family == "lacunary_discrete":
        _require(args, ["n"])
        return wit.lacunary_discrete_witness(args.n, p, q, grid_points=args.grid)
    if family == "clt_delta":
        _require(args, ["r", "n"])
        return wit.clt_delta_witness(args.r, args.n, p, q)
    raise SystemExit2(f"unknown family {family!r}")


def _cmd_witness(args) -> int:
    result = _witness_point(args.family, args)
    if isinstance(result, wit.CltWitness):
        payload = asdict(result.point)
        payload.update(
            tail_probability=result.tail_probability,
            threshold=result.threshold,
            sigma_sq=result.sigma_sq,
        )
    elif isinstance(result, wit.LacunaryDiscreteWitness):
        payload = {
            "family": "lacunary_discrete",
            "param_n": result.param_n,
            "p": result.p,
            "q": result.q,
            "norm_f": result.norm_f,
            "norm_fhat": result.norm_fhat,
            "ratio": result.ratio,
            "norm_fhat_l2": result.norm_fhat_l2,
            "parseval_l2": result.parseval_l2,
        }
    else:
        payload = asdict(result)
    _emit_json(payload)
    return EXIT_OK


WITNESS_SWEEP_HEADER = [
    "family",
    "param_n",
    "group_size",
    "p",
    "q",
    "norm_f",
    "norm_fhat",
    "ratio",
    "prediction",
    "prediction_kind",
]


def _sweep_row(point) -> list:
    if isinstance(point, wit.CltWitness):
        point = point.point
    if isinstance(point, wit.LacunaryDiscreteWitness):
        return [
            "lacunary_discrete",
            point.param_n,
            2**point.param_n,
            _fmt(point.p),
            _fmt(point.q),
            repr(point.norm_f),
            repr(point.norm_fhat),
            repr(point.ratio),
            "",
            "",
        ]
    return [
        point.family,
        point.param_n,
        point.group_size,
        _fmt(point.p),
        _fmt(point.q),
        repr(point.norm_f),
        repr(point.norm_fhat),
        repr(point.ratio),
        "" if point.prediction is None else repr(point.prediction),
        point.prediction_kind or "",
    ]


def _fmt(x: float) -> str:
    return "inf" if x == INF else repr(float(x))


def _cmd_sweep(args) -> int:
    out, close = _open_out(args.output)
    writer = csv.writer(out, lineterminator="\n")
    try:
        if args.kind == "region":
            writer.writerow(["u", "v", "side", "label", "finite", "value"])
            spec = GroupSpec.parse(args.group) if args.group else None
            grid = [(u, v) for u in args.u_values for v in args.v_values]

            def region_one(uv):
                u, v = uv
                verdict = classify(args.side, u, v, spec=spec)
                return [
                    repr(u),
                    repr(v),
                    verdict.side,
                    verdict.label,
                    verdict.finite,
                    "" if verdict.value is None else repr(verdict.value),
                ]

            with ThreadPoolExecutor(max_workers=args.workers) as ex:
                for row in ex.map(region_one, grid):
                    writer.writerow(row)
        else:
            writer.writerow(WITNESS_SWEEP_HEADER)
            params = args.params

            def witness_one(value):
                sub = argparse.Namespace(**vars(args))
                if args.family == "arc_indicator":
                    sub.k = value
                    sub.m = value * args.m_factor
                elif args.family in ("full_orbit", "lacunary_compact"):
                    sub.m = value
                else:
                    sub.n = value
                return _sweep_row(_witness_point(args.family, sub))

            with ThreadPoolExecutor(max_workers=args.workers) as ex:
                for row in ex.map(witness_one, params):
                    writer.writerow(row)
    finally:
        if close:
            out.close()
    return EXIT_OK


def _cmd_estimate(args) -> int:
    spec = GroupSpec.parse(args.group)
    config = EstimatorConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        seed=args.seed,
    )
    result = estimate_norm(spec, args.p, args.q, config)
    verdict = classify(spec.view, recip(args.p), recip(args.q), spec=spec)
    _emit_json(
        {
            "group": spec.describe(),
            "p": args.p,
            "q": args.q,
            "estimate": result.value,
            "closed_form": verdict.value if verdict.finite else INF,
            "region": verdict.label,
            "converged": result.converged,
            "iterations": result.iterations,
        }
    )
    return EXIT_OK if result.converged else EXIT_NOCONVERGE


def _cmd_uncertainty(args) -> int:
    if args.mode == "check":
        psi = _read_function(args.input)
        if args.p is None or args.q is None:
            raise SystemExit2("mode check needs --p and --q")
        if args.unweighted:
            report = unweighted_up_margin(psi, args.p, args.q)
        else:
            report = weighted_up_margin(psi, args.p, args.q)
        _emit_json(
            {
                "mode": "check",
                "weighted": not args.unweighted,
                "group": psi.spec.describe(),
                "p": args.p,
                "q": args.q,
                "lhs": report.lhs,
                "rhs": report.rhs,
                "margin": report.margin,
                "satisfied": report.satisfied,
            }
        )
        return EXIT_OK
    if args.mode == "violate":
        if args.p is None or args.q is None or args.target is None:
            raise SystemExit2("mode violate needs --p, --q and --target")
        result = weighted_up_violator(args.target, args.p, args.q, args.side)
        witness_ref = None
        if result.psi is not None and args.output:
            with open(args.output, "w", newline="") as fh:
                fh.write(write_csv(result.psi))
            witness_ref = args.output
        _emit_json(
            {
                "mode": "violate",
                "side": result.side,
                "family": result.family,
                "param_n": result.param_n,
                "group": result.group_descr,
                "value": result.value,
                "target": result.target,
                "achieved": result.achieved,
                "witness": witness_ref,
                "materialized": result.psi is not None,
            }
        )
        return EXIT_OK
    # mode support
    psi = _read_function(args.input)
    n_t, n_w, product = donoho_stark_check(psi)
    _emit_json(
        {
            "mode": "support",
            "group": psi.spec.describe(),
            "support_product": support_product(psi),
            "n_t": n_t,
            "n_w": n_w,
            "product": product,
            "group_size": psi.spec.size,
            "satisfied": product >= psi.spec.size,
        }
    )
    return EXIT_OK


# -- selftest ---------------------------------------------------------------

def _selftest() -> int:
    """Fast fixed-seed subset of the acceptance checks."""
    rng = np.random.default_rng(12345)
    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures += 1

    worst = 0.0
    for _ in range(50):
        orders = tuple(int(rng.integers(2, 9)) for _ in range(int(rng.integers(1, 3))))
        view = COMPACT if rng.integers(2) else DISCRETE
        spec = GroupSpec(orders=orders, view=view, mass=float(rng.uniform(0.5, 2.0)))
        vals = rng.standard_normal(spec.size) + 1j * rng.standard_normal(spec.size)
        f = MeasuredFunction(spec, TIME, vals)
        worst = max(worst, parseval_defect(f))
    check("parseval on random groups", worst <= 1e-10)

    spec = GroupSpec(orders=(4,), view=COMPACT, mass=1.0)
    chi = character_function(spec, (1,))
    check("character attains compact closed form", abs(ratio(chi, 1.0, 4.0) - 1.0) <= 1e-12)

    dspec = GroupSpec(orders=(4,), view=DISCRETE, mass=0.25)
    d = delta(dspec)
    check(
        "delta attains discrete closed form",
        abs(ratio(d, 1.0, 1.0) - closed_form_cpq(dspec, 1.0, 1.0)) <= 1e-9,
    )

    cw = wit.chirp_witness(2, 2, 1.0)
    check("chirp exact ratio", abs(cw.ratio - 4.0) <= 1e-12)

    ok = True
    for _ in range(100):
        spec = GroupSpec(orders=(16,), view=DISCRETE, mass=1.0)
        vals = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        psi = MeasuredFunction(spec, TIME, vals)
        _, _, product = donoho_stark_check(psi)
        ok = ok and product >= 16
    check("support products", ok)

    return EXIT_OK if failures == 0 else 1


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abelfourier")
    parser.add_argument("--selftest", action="store_true", help="run a fast acceptance subset")
    sub = parser.add_subparsers(dest="subcommand")

    sp = sub.add_parser("info", help="describe a group spec")
    sp.add_argument("--group", required=True)

    sp = sub.add_parser("transform", help="Fourier transform of a CSV function")
    sp.add_argument("--input", default="-")
    sp.add_argument("--output", default="-")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--method", choices=["auto", "direct", "fft"], default="auto")

    sp = sub.add_parser("norm", help="L^p norm of a CSV function")
    sp.add_argument("--input", default="-")
    sp.add_argument("--p", type=_exponent, required=True)

    sp = sub.add_parser("region", help="classify a point in the (1/p, 1/q) plane")
    sp.add_argument("--side", choices=[COMPACT, DISCRETE], required=True)
    sp.add_argument("--u", type=float, required=True)
    sp.add_argument("--v", type=float, required=True)
    sp.add_argument("--group")

    sp = sub.add_parser("cpq", help="closed-form operator norm")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_exponent, required=True)
    sp.add_argument("--q", type=_exponent, required=True)

    def add_witness_flags(sp):
        sp.add_argument("--p", type=_exponent)
        sp.add_argument("--q", type=_exponent)
        sp.add_argument("--k", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--beta", type=float, default=1.5)
        sp.add_argument("--c", type=float, default=1.0)
        sp.add_argument("--grid", type=int)

    families = [
        "arc_indicator",
        "subgroup_indicator",
        "full_orbit",
        "chirp",
        "lacunary_compact",
        "lacunary_discrete",
        "clt_delta",
    ]
    sp = sub.add_parser("witness", help="evaluate one witness family member")
    sp.add_argument("--family", choices=families, required=True)
    add_witness_flags(sp)

    sp = sub.add_parser("sweep", help="CSV sweep over witness parameters or region grid")
    sp.add_argument("--kind", choices=["witness", "region"], default="witness")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", default="-")
    sp.add_argument("--family", choices=families)
    sp.add_argument("--params", type=_int_list, help="comma-separated family parameters")
    sp.add_argument("--m-factor", type=int, default=200, help="m = factor*k for arc sweeps")
    add_witness_flags(sp)
    sp.add_argument("--side", choices=[COMPACT, DISCRETE])
    sp.add_argument("--u-values", type=_float_list)
    sp.add_argument("--v-values", type=_float_list)
    sp.add_argument("--group")

    sp = sub.add_parser("estimate", help="numerical operator-norm estimate")
    sp.add_argument("--group", required=True)
    sp.add_argument("--p", type=_exponent, required=True)
    sp.add_argument("--q", type=_exponent, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--max-iters", type=int, default=5000)

    sp = sub.add_parser("uncertainty", help="entropic uncertainty checks")
    sp.add_argument("--mode", choices=["check", "violate", "support"], required=True)
    sp.add_argument("--input", default="-")
    sp.add_argument("--p", type=_exponent)
    sp.add_argument("--q", type=_exponent)
    sp.add_argument("--unweighted", action="store_true")
    sp.add_argument("--target", type=float)
    sp.add_argument("--side", choices=[COMPACT, DISCRETE], default=COMPACT)
    sp.add_argument("--output")

    return parser


_HANDLERS = {
    "info": _cmd_info,
    "transform": _cmd_transform,
    "norm": _cmd_norm,
    "region": _cmd_region,
    "cpq": _cmd_cpq,
    "witness": _cmd_witness,
    "sweep": _cmd_sweep,
    "estimate": _cmd_estimate,
    "uncertainty": _cmd_uncertainty,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.selftest:
        return _selftest()
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.subcommand == "sweep":
        if args.kind == "witness" and (args.family is None or not args.params):
            print("sweep --kind witness needs --family and --params", file=sys.stderr)
            return EXIT_USAGE
        if args.kind == "region" and (
            args.side is None or not args.u_values or not args.v_values
        ):
            print("sweep --kind region needs --side, --u-values, --v-values", file=sys.stderr)
            return EXIT_USAGE
    try:
        return _HANDLERS[args.subcommand](args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except SystemExit2 as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
