"""Command-line front end: ``picard-tau {eval,verify,sequence}``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 domain or numerical error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import elliptic_core as ec
from . import painleve_vi as pv
from . import tau_functions as tf
from .errors import NonPositiveArgument, PicardTauError
from .jacobi_functions import jacobi_sn_cn_dn
from .theta_functions import theta
from .verify import SUITES, format_table, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


def _parse_range(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}") from None


def _parse_t(text: str):
    if ":" in text:
        a, b, n = _parse_range(text)
        return [float(v) for v in np.linspace(a, b, n)]
    try:
        return [float(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or a:b:n, got {text!r}") from None


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a (complex) number, got {text!r}") from None


def _evaluate(what: str, t: float, args) -> complex:
    pp = pv.PicardParams(args.x, args.y)
    if what == "K":
        return complex(ec.make_context(t).K)
    if what == "E":
        return complex(ec.make_context(t).E)
    if what == "theta":
        return theta(args.index, args.v, ec.make_context(t))
    if what == "sn":
        return jacobi_sn_cn_dn(args.u, ec.make_context(t))[0]
    return {
        "q0": pv.picard_q0,
        "H0": pv.picard_H0,
        "H1": pv.picard_H1,
        "tau0": tf.tau0,
        "tau1": tf.tau1,
        "scriptE": pv.script_E,
    }[what](t, pp)


def _sig15(v: float) -> float:
    return float(f"{v:.15g}")


def cmd_eval(args) -> int:
    rows = [(t, _evaluate(args.what, t, args)) for t in args.t]
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\r\n")
        writer.writerow(["t", "re", "im"])
        for t, v in rows:
            writer.writerow([f"{t:.15g}", f"{v.real:.15g}", f"{v.imag:.15g}"])
    else:
        doc = {
            "what": args.what,
            "values": [{"t": _sig15(t), "re": _sig15(v.real), "im": _sig15(v.imag)} for t, v in rows],
        }
        print(json.dumps(doc))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, density=args.grid, tol_scale=args.tol_scale)
    print(format_table(results))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sequence(args) -> int:
    if args.m_min > args.m_max:
        raise _UsageError(f"--m-min {args.m_min} exceeds --m-max {args.m_max}")
    a, b, n = args.t_range
    if not a < b or n < 2:
        raise _UsageError(f"--t-range needs a < b and n >= 2, got {a}:{b}:{n}")
    pp = pv.PicardParams(args.x, args.y)
    grid = tf.build_tau_grid(pp, a, b, n, members=(0, 1), c_convention=args.c)
    grid = tf.toda_extend(grid, args.m_max, stride=args.stride)
    grid = tf.toda_extend(grid, args.m_min, stride=args.stride)
    keep = {m: v for m, v in grid.log_tau.items() if args.m_min <= m <= args.m_max}
    grid = tf.TauGrid(
        grid.t_start, grid.t_end, grid.n_points, grid.x, grid.y, keep,
        grid.b_base, grid.c_convention, grid.eroded_margin,
    )
    text = grid.to_json()
    summary = (
        f"members {grid.members}; eroded {grid.eroded_margin} points per edge; "
        f"{len(grid.t_values)} of {grid.n_points} grid points remain "
        f"(t in [{grid.t_values[0]:.6g}, {grid.t_values[-1]:.6g}])"
    )
    if args.out == "-":
        print(text)
        print(summary, file=sys.stderr)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(summary)
    return EXIT_OK


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="picard-tau", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one quantity, optionally over a t-sweep")
    ev.add_argument("--what", required=True,
                    choices=["K", "E", "theta", "sn", "q0", "H0", "H1", "tau0", "tau1", "scriptE"])
    ev.add_argument("--t", required=True, type=_parse_t, help="value or sweep a:b:n")
    ev.add_argument("--x", type=_parse_complex, default=0.3)
    ev.add_argument("--y", type=_parse_complex, default=0.0)
    ev.add_argument("--v", type=_parse_complex, default=0.0, help="theta argument")
    ev.add_argument("--u", type=_parse_complex, default=0.5, help="sn argument")
    ev.add_argument("--index", type=int, choices=[1, 2, 3, 4], default=1, help="theta index")
    ev.add_argument("--format", choices=["json", "csv"], default="json")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="run invariant suites and print a residual table")
    ve.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    ve.add_argument("--grid", type=int, default=4, help="grid density per axis")
    ve.add_argument("--tol-scale", type=float, default=1.0)
    ve.set_defaults(func=cmd_verify)

    se = sub.add_parser("sequence", help="generate log T_m on a t-grid and write JSON")
    se.add_argument("--x", type=_parse_complex, required=True)
    se.add_argument("--y", type=_parse_complex, required=True)
    se.add_argument("--t-range", type=_parse_range, required=True, help="a:b:n")
    se.add_argument("--m-max", type=int, default=1)
    se.add_argument("--m-min", type=int, default=0)
    se.add_argument("--c", type=float, default=1.0, help="normalisation constant c(m)")
    se.add_argument("--stride", type=int, default=None, help="stencil stride (default: automatic)")
    se.add_argument("--out", default="-", help="output file, '-' for stdout")
    se.set_defaults(func=cmd_sequence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.error(str(exc))
    except NonPositiveArgument as exc:
        print(f"error: NonPositiveArgument: {exc} (m={exc.m}, t={exc.t})", file=sys.stderr)
        return EXIT_NUMERIC
    except PicardTauError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
