"""Command-line front end.

Examples::

    barneszeta eval --w 1,1 --a 1 --s 3
    barneszeta zero --w 1,1 --a 0.5
    barneszeta beta-curve --w 1,2 --a-values 0.1,0.5,1.0 --output csv
    barneszeta scan --w 1,1 --a 0.3 --N 1
    barneszeta bernoulli --w 1,2 --K 6 --x 0.5
    barneszeta verify --seed 7

Exit status: 0 ok, 1 verify failure, 2 domain or usage error, 3 numerical
failure (including an error estimate above ``--tol``).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import verify
from . import zeros as zr
from . import zeta as zt
from .errors import DomainError, NumericalError
from .kernel import BarnesParams
from .multibern import bernoulli_values, gen_bernoulli_table
from .output import dumps, fmt_float, to_csv
from .quad import QuadConfig

EXIT_OK, EXIT_VERIFY, EXIT_DOMAIN, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _point(text: str) -> complex | float:
    try:
        z = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse s={text!r}")
    return z.real if z.imag == 0 else z


def _add_params(p: argparse.ArgumentParser, need_a: bool = True) -> None:
    p.add_argument("--w", type=_floats, required=True, help="weights, comma separated")
    p.add_argument("--r", type=int, help="number of weights (checked against --w)")
    if need_a:
        p.add_argument("--a", type=float, required=True, help="shift a > 0")


def _add_numeric(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, help="split point of the Mellin integral")
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--abs-tol", type=float)
    p.add_argument("--max-depth", type=int)


def _add_output(p: argparse.ArgumentParser, csv: bool = False) -> None:
    p.add_argument("--output", choices=("json", "csv") if csv else ("json",), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="barneszeta", description="Barnes multiple zeta functions and their real zeros.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate zeta_r(s, w, a)")
    _add_params(p)
    p.add_argument("--s", type=_point, required=True, help="point, e.g. 1.5 or 0.5+2j")
    p.add_argument("--method", choices=zt.METHODS)
    p.add_argument("--N", type=int, help="subtraction order for the general continuation")
    p.add_argument("--tol", type=float, default=1e-9, help="largest acceptable error estimate (relative)")
    _add_numeric(p)
    _add_output(p)

    p = sub.add_parser("zero", help="zero of zeta_2 in (1, 2)")
    _add_params(p)
    p.add_argument("--grid-size", type=int, default=zr.GRID_SIZE)
    _add_numeric(p)
    _add_output(p)

    p = sub.add_parser("beta-curve", help="zero in (1, 2) as a function of a")
    _add_params(p, need_a=False)
    p.add_argument("--a-values", type=_floats, required=True)
    _add_output(p, csv=True)

    p = sub.add_parser("scan", help="search (-N-1, -N) for a real zero")
    _add_params(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--grid-size", type=int, default=zr.GRID_SIZE)
    _add_numeric(p)
    _add_output(p, csv=True)

    p = sub.add_parser("bernoulli", help="generalized Bernoulli polynomials")
    _add_params(p, need_a=False)
    p.add_argument("--K", type=int, default=8, help="highest index")
    p.add_argument("--x", type=float, help="evaluate at x instead of printing coefficients")
    p.add_argument("--exact", action="store_true", help="rational coefficients (K <= 30)")
    _add_output(p)

    p = sub.add_parser("verify", help="run the self-check catalogue")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", choices=("table", "json"), default="table")
    return ap


def _params(args) -> tuple:
    w = tuple(args.w)
    if not w:
        raise UsageError("--w needs at least one weight")
    if args.r is not None and args.r != len(w):
        raise UsageError(f"--r {args.r} does not match the {len(w)} weights given")
    return w


def _config(args, w) -> Optional[QuadConfig]:
    over = {k: getattr(args, k, None) for k in ("lam", "rel_tol", "abs_tol", "max_depth")}
    over = {k: v for k, v in over.items() if v is not None}
    if not over:
        return None
    cfg = QuadConfig.for_weights(w, **over)
    cfg.check_weights(w)
    return cfg


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def cmd_eval(args) -> int:
    w = _params(args)
    p = BarnesParams(w, args.a)
    res = zt.zeta(p, args.s, _config(args, w), args.method, N=args.N)
    print(dumps(res.to_json()))
    scale = max(1.0, abs(res.value))
    if not res.converged or not res.err_est <= args.tol * scale:
        _warn(f"error estimate {res.err_est:.3g} exceeds tolerance {args.tol:g}")
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_zero(args) -> int:
    w = _params(args)
    if len(w) != 2:
        raise UsageError("zero needs exactly two weights")
    rep = zr.report_12(w, args.a, grid_size=args.grid_size, cfg=_config(args, w))
    print(dumps(rep.to_json()))
    return EXIT_OK


def cmd_beta_curve(args) -> int:
    w = _params(args)
    if len(w) != 2:
        raise UsageError("beta-curve needs exactly two weights")
    curve = zr.beta_curve(w, args.a_values)
    if args.output == "csv":
        sys.stdout.write(to_csv(["a", "beta", "error"], [(c.a, c.beta, c.error or "") for c in curve]))
    else:
        print(dumps({
            "weights": list(w),
            "points": [{"a": c.a, "beta": c.beta, "error": c.error} for c in curve],
            "decreasing": zr.is_decreasing(curve),
        }))
    # past the boundary a missing zero is the correct answer, not a failure
    failed = [c for c in curve if c.beta is None and zr.zero_exists_12(w, c.a)]
    for c in failed:
        _warn(f"a={fmt_float(c.a)}: {c.error}")
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_scan(args) -> int:
    w = _params(args)
    p = BarnesParams(w, args.a)
    rep = zr.scan_negative_interval(p, args.N, args.grid_size, _config(args, w))
    if args.output == "csv":
        sys.stdout.write(to_csv(["sigma", "sign"], [(float(x), sg) for x, sg in rep.bracket_trace]))
    else:
        print(dumps(rep.to_json()))
    if rep.inconclusive:
        _warn("no sign change on the grid; absence is not proven")
    return EXIT_OK


def cmd_bernoulli(args) -> int:
    w = _params(args)
    if args.K < 0:
        raise UsageError("--K must be nonnegative")
    table = gen_bernoulli_table(w, args.K, exact=args.exact)
    if args.x is None:
        out = table.to_json()
        if args.exact:
            out["exact_coeffs"] = [[str(c) for c in row] for row in table.coeffs]
    else:
        out = {"weights": list(w), "x": args.x, "values": [float(v) for v in bernoulli_values(table, args.x)]}
    print(dumps(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_all(args.seed)
    if args.output == "json":
        print(dumps([r._asdict() for r in results]))
    else:
        width = max(len(f"{r.module}: {r.name}") for r in results)
        for r in results:
            label = f"{r.module}: {r.name}"
            print(f"{'PASS' if r.passed else 'FAIL'}  {label:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed", file=sys.stderr)
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


COMMANDS = {
    "eval": cmd_eval,
    "zero": cmd_zero,
    "beta-curve": cmd_beta_curve,
    "scan": cmd_scan,
    "bernoulli": cmd_bernoulli,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
