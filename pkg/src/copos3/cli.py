"""Command-line interface.

Subcommands::

    copos3 check TENSOR.json [--strict] [--tol T] [--oracle]
    copos3 bfb PARAMS.json [--oracle]
    copos3 scan PARAMS.json --vary KEY=MIN:MAX:STEPS [--vary ...] --out REGION.csv [--workers N]
    copos3 roots POLY.json

``check`` and ``bfb`` print a verdict document (JSON) on standard output.
Exit status is 0 whenever the command ran; with ``--exit-verdict`` it is
0 for a positive verdict, 1 for a negative one and 2 for a marginal one.
Usage errors exit with 64, malformed input with 65, unreadable input
with 66 and an unwritable output with 73.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import oracle as orc
from .documents import (
    DocumentError,
    VerdictDocument,
    load_params,
    load_polynomial,
    load_tensor,
    plain,
)
from .general import is_copositive_general
from .polysolve import real_roots
from .verdict import BAND, Verdict
from .z3 import PARAM_NAMES, Z3Params, build_tensor, is_bfb

EX_OK = 0
EX_NEGATIVE = 1
EX_MARGINAL = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_CANTCREAT = 73


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="copos3", description="Copositivity and bounded-from-below checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide copositivity of a tensor file")
    c.add_argument("tensor")
    c.add_argument("--strict", action="store_true", help="distinguish strict copositivity")
    c.add_argument("--tol", type=_positive_float, default=BAND, help="comparison band (default 1e-9)")
    c.add_argument("--oracle", action="store_true", help="append a brute-force simplex check")
    c.add_argument("--exit-verdict", action="store_true", help="encode the verdict in the exit status")

    b = sub.add_parser("bfb", help="decide boundedness from below of a Z3 parameter file")
    b.add_argument("params")
    b.add_argument("--tol", type=_positive_float, default=BAND)
    b.add_argument("--oracle", action="store_true")
    b.add_argument("--exit-verdict", action="store_true")

    s = sub.add_parser("scan", help="grid scan of the bfb verdict")
    s.add_argument("params")
    s.add_argument("--vary", action="append", required=True, metavar="KEY=MIN:MAX:STEPS")
    s.add_argument("--out", required=True)
    s.add_argument("--workers", type=_positive_int, default=1)
    s.add_argument("--tol", type=_positive_float, default=BAND)

    r = sub.add_parser("roots", help="real roots of a polynomial file")
    r.add_argument("poly")
    return p


# -- helpers -------------------------------------------------------------------


def oracle_block(t, positive: bool, resolution: int = orc.DEFAULT_RESOLUTION) -> dict:
    res = orc.simplex_min(t, resolution)
    ov = res.verdict()
    return {
        "min_value": res.min_value,
        "argmin": list(res.argmin),
        "resolution": res.resolution,
        "margin": orc.MARGIN,
        "positive": ov,
        "agrees": None if ov is None else ov == positive,
    }


def _exit_code(v: Verdict, use_verdict: bool) -> int:
    if not use_verdict:
        return EX_OK
    if v.marginal:
        return EX_MARGINAL
    return EX_OK if v.positive else EX_NEGATIVE


def parse_vary(text: str) -> tuple[str, np.ndarray]:
    try:
        key, rng = text.split("=", 1)
        lo, hi, steps = rng.split(":")
        lo_f, hi_f, n = float(lo), float(hi), int(steps)
    except ValueError:
        raise UsageError(f"--vary {text!r}: expected KEY=MIN:MAX:STEPS") from None
    if key not in PARAM_NAMES:
        raise UsageError(f"--vary {text!r}: unknown parameter {key!r}")
    if n < 1:
        raise UsageError(f"--vary {text!r}: STEPS must be at least 1")
    if not (np.isfinite(lo_f) and np.isfinite(hi_f)):
        raise UsageError(f"--vary {text!r}: bounds must be finite")
    return key, np.linspace(lo_f, hi_f, n)


def _fmt(x: float) -> str:
    return "%.17g" % x


def scan_rows(base: dict, keys: Sequence[str], points: Sequence[Sequence[float]], tol: float) -> list[list[str]]:
    """CSV rows (as strings) for the given grid points, in order."""
    rows = []
    for vals in points:
        d = dict(base)
        d.update(zip(keys, vals))
        v = is_bfb(Z3Params(**d), tol)
        c2 = v.record("condition2")
        if c2 is not None:
            case = c2.branch or ""
        else:
            c1 = v.record("condition1")
            case = "cond1:" + (c1.branch or "")
        rows.append([_fmt(x) for x in vals] + [v.status, case, "true" if v.marginal else "false"])
    return rows


def _scan_chunk(args):
    return scan_rows(*args)


def run_scan(base: Z3Params, axes: list[tuple[str, np.ndarray]], workers: int, tol: float) -> str:
    keys = [k for k, _ in axes]
    if len(set(keys)) != len(keys):
        raise UsageError("each parameter may be varied once")
    grids = np.meshgrid(*[g for _, g in axes], indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1).tolist()
    for k, g in axes:
        if k == "rho" and (g.min() < 0 or g.max() > 1):
            raise DocumentError("rho must lie in [0, 1] over the whole scan")
    base_d = base.to_dict()
    if workers == 1 or len(points) < 2:
        rows = scan_rows(base_d, keys, points, tol)
    else:
        n = min(workers * 4, len(points))
        bounds = np.linspace(0, len(points), n + 1).astype(int)
        jobs = [(base_d, keys, points[a:b], tol) for a, b in zip(bounds[:-1], bounds[1:])]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
        rows = [row for part in parts for row in part]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys + ["status", "case", "marginal"])
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands -----------------------------------------------------------------


def cmd_check(args) -> int:
    t = load_tensor(args.tensor)
    v = is_copositive_general(t, strict=args.strict, tol=args.tol)
    oracle = oracle_block(t, v.positive) if args.oracle else None
    doc = VerdictDocument.from_verdict("copositivity", v, oracle, order=t.order)
    print(doc.to_json())
    return _exit_code(v, args.exit_verdict)


def cmd_bfb(args) -> int:
    p = load_params(args.params)
    v = is_bfb(p, args.tol)
    oracle = oracle_block(build_tensor(p), v.positive) if args.oracle else None
    c2 = v.record("condition2")
    doc = VerdictDocument.from_verdict(
        "bfb", v, oracle, case=c2.branch if c2 is not None else None, params=p.to_dict()
    )
    print(doc.to_json())
    return _exit_code(v, args.exit_verdict)


def cmd_scan(args) -> int:
    p = load_params(args.params)
    axes = [parse_vary(s) for s in args.vary]
    text = run_scan(p, axes, args.workers, args.tol)
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"copos3: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EX_CANTCREAT
    rows = text.count("\n") - 1
    print(json.dumps({"out": args.out, "rows": rows, "varied": [k for k, _ in axes]}))
    return EX_OK


def cmd_roots(args) -> int:
    poly = load_polynomial(args.poly)
    rs = real_roots(poly)
    out = {
        "degree": poly.degree,
        "roots": [{"value": r, "multiplicity": m} for r, m in rs.roots],
        "residual_bound": rs.residual_bound,
        "all_reals": rs.all_reals,
    }
    print(json.dumps(plain(out), indent=2))
    return EX_OK


COMMANDS = {"check": cmd_check, "bfb": cmd_bfb, "scan": cmd_scan, "roots": cmd_roots}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"copos3: {exc}", file=sys.stderr)
        return EX_USAGE
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"copos3: cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EX_NOINPUT
    except UnicodeDecodeError as exc:
        print(f"copos3: input is not UTF-8: {exc}", file=sys.stderr)
        return EX_DATAERR
    except (DocumentError, ValueError) as exc:
        print(f"copos3: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
