"""Command-line interface: ``graphpinv {gen,pinv,verify,rank-test,trace}``."""
from __future__ import annotations

import argparse
import logging
import sys

from . import engine, io
from .generators import FAMILIES
from .graph import GraphError, adjacency_matrix
from .oracle import spectral_pinv
from .verification import mp_check, nonsingularity_test, variational_check

EX_OK = 0
EX_FAIL = 1
EX_NONCONVERGENCE = 2
EX_USAGE = 64
EX_NOINPUT = 66
EX_CANTCREAT = 73

log = logging.getLogger("graphpinv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


class _InputError(Exception):
    pass


class _OutputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise _OutputError(f"cannot write {path}: {exc.strerror}") from None


def _load_graph(path):
    return io.parse_edge_list(_read(path))


def cmd_gen(args) -> int:
    family = args.family
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    params = args.params
    try:
        if family == "petersen":
            if params:
                raise UsageError("petersen takes no parameters")
            g = FAMILIES[family]()
        elif family == "erdos-renyi":
            if len(params) != 2:
                raise UsageError("erdos-renyi needs <n> <p>")
            g = FAMILIES[family](int(params[0]), float(params[1]), args.seed)
        else:
            if len(params) != 1:
                raise UsageError(f"{family} needs <n>")
            g = FAMILIES[family](int(params[0]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, io.format_edge_list(g))
    return EX_OK


def _config(args, **overrides):
    kw = dict(
        lambda_ratio=args.ratio,
        lambda_cap=args.lambda_cap,
    )
    if getattr(args, "lambda_start", None) is not None:
        kw["lambda_start"] = args.lambda_start
    if getattr(args, "tol", None) is not None:
        kw["tol"] = args.tol
    kw.update(overrides)
    try:
        return engine.PathConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_pinv(args) -> int:
    g = _load_graph(args.graph)
    cfg = _config(args, extrapolate=not args.no_extrapolate)
    try:
        res = engine.pinv(g, cfg, threads=args.threads)
    except engine.NonConvergence as exc:
        log.warning("%s; writing last iterate", exc)
        _write(args.output, io.format_matrix(exc.last_iterate, args.format, args.precision))
        return EX_NONCONVERGENCE
    _write(args.output, io.format_matrix(res.pinv, args.format, args.precision))
    r1, r2, r3, r4 = res.mp_residuals
    print(
        f"final lambda   {res.final_lambda:g}\n"
        f"iterations     {res.iterations}\n"
        f"converged      {'yes' if res.converged else 'no'} (last change {res.last_change:.3e})\n"
        f"mp residuals   {r1:.3e} {r2:.3e} {r3:.3e} {r4:.3e}\n"
        f"rank estimate  {res.rank_estimate}",
        file=sys.stderr,
    )
    return EX_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    x = io.parse_matrix(_read(args.matrix))
    if x.shape != (g.order, g.order):
        raise GraphError(f"matrix is {x.shape[0]}x{x.shape[1]}, graph has order {g.order}")
    report = mp_check(adjacency_matrix(g), x, tol=args.tol)
    variational = variational_check(g, x, trials=args.trials, seed=args.seed)
    print(report)
    print(f"variational check {'PASS' if variational else 'FAIL'}")
    return EX_OK if report.passed and variational else EX_FAIL


def cmd_rank_test(args) -> int:
    g = _load_graph(args.graph)
    res = nonsingularity_test(g, lambda_cap=args.lambda_cap, tol=args.tol)
    print(f"{res.label} {res.witness:.6e}")
    return EX_OK


def cmd_trace(args) -> int:
    g = _load_graph(args.graph)
    cfg = _config(args)
    ref = spectral_pinv(adjacency_matrix(g))
    lines = ["lambda,max_change,error_vs_oracle,extrapolated_error"]
    for p in engine.trace_path(g, cfg, reference=ref):
        cells = [f"{p.lam:.6g}"] + [
            "" if v is None else f"{v:.6e}" for v in (p.change, p.error, p.extrapolated_error)
        ]
        lines.append(",".join(cells))
    _write(args.output, "\n".join(lines) + "\n")
    return EX_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphpinv", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write an edge list for a graph family")
    p.add_argument("family", help=", ".join(FAMILIES))
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pinv", help="pseudoinverse along the regularisation path")
    p.add_argument("graph")
    p.add_argument("--tol", type=float)
    p.add_argument("--lambda-start", type=float)
    p.add_argument("--lambda-cap", type=float, default=engine.PathConfig.lambda_cap)
    p.add_argument("--ratio", type=float, default=engine.PathConfig.lambda_ratio)
    p.add_argument("--no-extrapolate", action="store_true")
    p.add_argument("--format", choices=io.MATRIX_FORMATS, default="tsv")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("verify", help="check a candidate pseudoinverse")
    p.add_argument("graph")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank-test", help="nonsingularity test on R^-1 A^2")
    p.add_argument("graph")
    p.add_argument("--lambda-cap", type=float, default=1e8)
    p.add_argument("--tol", type=float, default=1e-3)
    p.set_defaults(func=cmd_rank_test)

    p = sub.add_parser("trace", help="CSV of the regularisation path")
    p.add_argument("graph")
    p.add_argument("--lambda-start", type=float)
    p.add_argument("--ratio", type=float, default=engine.PathConfig.lambda_ratio)
    p.add_argument("--lambda-cap", type=float, default=engine.TRACE_LAMBDA_CAP)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"graphpinv: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except _InputError as exc:
        print(f"graphpinv: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except _OutputError as exc:
        print(f"graphpinv: {exc}", file=sys.stderr)
        return EX_CANTCREAT
    except (GraphError, ValueError, ArithmeticError) as exc:
        print(f"graphpinv: {exc}", file=sys.stderr)
        return EX_FAIL


if __name__ == "__main__":
    sys.exit(main())
