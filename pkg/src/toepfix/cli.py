"""Command-line front end.

Every subcommand reads kernels/distributions as JSON (inline or from a
file), dispatches to the library, and prints a single JSON object (or a
CSV trace) on standard output. Exit codes: 0 success, 1 domain error
with a machine-readable error object, 2 usage error.

JSON reports carry schema_version "1" and serialize rationals as "p/q"
strings; keys are sorted so identical runs are byte-identical.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import asymptotics, backends, genfun, recurrence, stochastic, values
from .classify import (
    classify,
    find_root_in_unit_interval,
    limit_value_n1,
    regime_report_to_json,
    root_report_to_json,
)
from .errors import ConditioningEventTooRare, ModeMismatch, ToepfixError
from .kernel import kernel_from_json, make_kernel

SCHEMA_VERSION = "1"


def _emit(obj):
    obj["schema_version"] = SCHEMA_VERSION
    print(json.dumps(obj, sort_keys=True))


def _load_obj(arg):
    """Inline JSON if the argument looks like an object, else a file path."""
    text = arg
    if not arg.lstrip().startswith("{"):
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _load_kernel(arg):
    return kernel_from_json(_load_obj(arg))


def _load_dist(arg):
    return stochastic.dist_from_json(_load_obj(arg))


def _parse_token(tok, kernel):
    v = Fraction(tok)
    if kernel.value_kind == values.FLOAT:
        return float(v)
    return v


def _parse_prefix_args(kernel, args):
    if getattr(args, "prefix", None) is not None:
        toks = [t.strip() for t in args.prefix.split(",") if t.strip()]
        return recurrence.make_prefix(kernel, [_parse_token(t, kernel) for t in toks])
    return recurrence.uniform_prefix(kernel, _parse_token(args.uniform_prefix, kernel))


def _float_pair(kernel, prefix):
    """Float twins of (kernel, prefix) for the trace-based estimators."""
    if kernel.value_kind == values.FLOAT:
        return kernel, prefix
    fk = make_kernel(
        kernel.band_depth,
        [float(c) for c in kernel.coeffs],
        float(kernel.tail_mass_bound),
        kind=values.FLOAT,
    )
    fp = recurrence.make_prefix(fk, [float(v) for v in prefix.values])
    return fk, fp


def _cmd_classify(args):
    kernel = _load_kernel(args.kernel)
    rep = classify(kernel, tolerance=args.tolerance)
    _emit(regime_report_to_json(rep))
    return 0


def _cmd_solve(args):
    kernel = _load_kernel(args.kernel)
    if args.exact and kernel.value_kind != values.EXACT:
        raise ModeMismatch("--exact requires a kernel with exact coefficients")
    prefix = _parse_prefix_args(kernel, args)
    bit_limit = None if args.bit_limit == 0 else args.bit_limit
    trace = recurrence.solve_forward(kernel, prefix, args.K, bit_limit=bit_limit)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            recurrence.write_trace_csv(trace, fh)
        _emit(
            {
                "rows": len(trace.values),
                "mode": trace.mode,
                "out": args.out,
                "warnings": list(trace.warnings),
            }
        )
    else:
        recurrence.write_trace_csv(trace, sys.stdout)
    return 0


def _cmd_roots(args):
    kernel = _load_kernel(args.kernel)
    rep = find_root_in_unit_interval(kernel, args.w, tol=args.tol)
    _emit(root_report_to_json(rep))
    return 0


def _cmd_limit(args):
    kernel = _load_kernel(args.kernel)
    x0 = _parse_token(args.x0, kernel)
    value = limit_value_n1(kernel, x0)
    _emit({"limit": values.format_value(value)})
    return 0


def _cmd_tauber(args):
    kernel = _load_kernel(args.kernel)
    prefix = _parse_prefix_args(kernel, args)
    pred = asymptotics.predicted_slope(kernel, prefix)
    fk, fp = _float_pair(kernel, prefix)
    trace = recurrence.solve_forward(fk, fp, args.K)
    ces = asymptotics.cesaro_slope(trace)
    if args.epsilons:
        eps = tuple(float(Fraction(t.strip())) for t in args.epsilons.split(","))
    else:
        eps = asymptotics.DEFAULT_EPSILONS
    abel = asymptotics.abel_limit(kernel, prefix, eps)
    if args.csv:
        total = 0.0
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write("N,S_N\n")
            for i, v in enumerate(trace.values):
                total += float(v)
                fh.write(f"{i},{total!r}\n")
    pf = float(pred)
    _emit(
        {
            "predicted": values.format_value(pred),
            "cesaro": asymptotics.slope_estimate_to_json(ces),
            "abel": abel,
            "relative_errors": {
                "cesaro": abs(ces.slope - pf) / abs(pf),
                "abel": abs(abel - pf) / abs(pf),
            },
        }
    )
    return 0


def _cmd_gf(args):
    kernel = _load_kernel(args.kernel)
    prefix = _parse_prefix_args(kernel, args)
    z = _parse_token(args.z, kernel)
    rep = genfun.chi_series_check(kernel, prefix, z, args.K)
    _emit(genfun.consistency_report_to_json(rep))
    return 0


def _cmd_simulate(args):
    nu = _load_dist(args.nu)
    if args.threads is not None:
        backends.set_worker_count(args.threads)
    if args.mu is None:
        est = stochastic.simulate_sup_single(
            nu, args.k, horizon=args.horizon, reps=args.reps, seed=args.seed
        )
        _emit(
            {
                "kind": "single",
                "k": args.k,
                "estimate": stochastic.walk_estimate_to_json(est),
            }
        )
    else:
        mu = _load_dist(args.mu)
        uncond, cond = stochastic.simulate_sup_two(
            nu, mu, args.n, args.k,
            horizon=args.horizon, reps=args.reps, seed=args.seed,
        )
        _emit(
            {
                "kind": "two",
                "k": args.k,
                "n": args.n,
                "unconditional": stochastic.walk_estimate_to_json(uncond),
                "conditional": stochastic.walk_estimate_to_json(cond),
            }
        )
    return 0


def _add_prefix_flags(sub, required=True, default_uniform=None):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument(
        "--prefix", help="comma-separated prefix values x_0,...,x_{n-1}"
    )
    group.add_argument(
        "--uniform-prefix",
        default=default_uniform,
        help="single value repeated across the whole prefix",
    )


def build_parser():
    p = argparse.ArgumentParser(
        prog="toepfix",
        description=(
            "Bounded positive solutions of x = Tx for banded Toeplitz "
            "matrices: classification, exact traces, asymptotics, and "
            "random-walk cross-checks."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser(
        "classify", help="decide the regime (mass and moment trichotomy)"
    )
    s.add_argument("--kernel", required=True, help="kernel JSON (inline or path)")
    s.add_argument("--tolerance", type=float, default=1e-12)
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser(
        "solve", help="run the forward recurrence and emit a CSV trace"
    )
    s.add_argument("--kernel", required=True)
    _add_prefix_flags(s)
    s.add_argument("--K", type=int, required=True, help="last index to compute")
    s.add_argument(
        "--exact", action="store_true",
        help="insist on exact rational arithmetic (kernel must be exact)",
    )
    s.add_argument(
        "--bit-limit", type=int, default=recurrence.DEFAULT_BIT_LIMIT,
        help="cap on exact numerator bit lengths; 0 lifts the cap",
    )
    s.add_argument("--out", help="write the CSV here instead of stdout")
    s.set_defaults(func=_cmd_solve)

    s = sub.add_parser(
        "roots", help="root of z^n = w*tau(z) in the open unit interval"
    )
    s.add_argument("--kernel", required=True)
    s.add_argument("--w", type=float, required=True, help="weight w > 0")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=_cmd_roots)

    s = sub.add_parser(
        "limit", help="closed-form solution limit for critical depth-1 kernels"
    )
    s.add_argument("--kernel", required=True)
    s.add_argument("--x0", default="1", help="starting value x_0")
    s.set_defaults(func=_cmd_limit)

    s = sub.add_parser(
        "tauber", help="partial-sum slope vs the closed-form constant"
    )
    s.add_argument("--kernel", required=True)
    _add_prefix_flags(s, required=False, default_uniform="1")
    s.add_argument("--K", type=int, required=True)
    s.add_argument("--epsilons", help="comma-separated Abel offsets, decreasing")
    s.add_argument("--csv", help="also write (N, S_N) rows to this path")
    s.set_defaults(func=_cmd_tauber)

    s = sub.add_parser(
        "gf", help="check the truncated series against the closed form"
    )
    s.add_argument("--kernel", required=True)
    _add_prefix_flags(s)
    s.add_argument("--z", required=True, help="evaluation point in [0, 1)")
    s.add_argument("--K", type=int, required=True, help="series truncation order")
    s.set_defaults(func=_cmd_gf)

    s = sub.add_parser(
        "simulate", help="Monte Carlo estimate of a walk-supremum probability"
    )
    s.add_argument("--nu", required=True, help="distribution JSON (inline or path)")
    s.add_argument("--mu", help="second distribution; switches to the two-walk mode")
    s.add_argument("--n", type=int, default=1, help="band depth for the two-walk mode")
    s.add_argument("--k", type=int, required=True, help="level of the sup CDF")
    s.add_argument("--reps", type=int, default=100_000)
    s.add_argument("--horizon", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--threads", type=int, help="worker count for the simulation")
    s.set_defaults(func=_cmd_simulate)

    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConditioningEventTooRare as exc:
        obj = {
            "schema_version": SCHEMA_VERSION,
            "error": exc.code,
            "message": str(exc),
        }
        if exc.unconditional is not None:
            obj["unconditional"] = stochastic.walk_estimate_to_json(exc.unconditional)
        print(json.dumps(obj, sort_keys=True))
        return 1
    except ToepfixError as exc:
        print(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "error": exc.code,
                    "message": str(exc),
                },
                sort_keys=True,
            )
        )
        return 1
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "error": "INVALID_INPUT",
                    "message": str(exc),
                },
                sort_keys=True,
            )
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
