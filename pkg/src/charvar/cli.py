"""Command-line front end.

    charvar classify --coords '[1,1,1,2]' --signs '[-1,-1,1,1]'
    charvar verify --suite switch-involution --count 1000 --seed 7

Structured results go to stdout as compact JSON (rationals as "p/q"), time
series as CSV.  Exit codes: 0 success, 1 domain error, 2 suite failure,
64 usage error.
"""
import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__, SCHEMA_VERSION
from .algorithms import ReductionDiagnostics, hyperbolicity_scan, sample_component, trace_reduce
from .coords import (CUSP_PUNCTURES, check_coords, check_signs, classify, parse_signs_name,
                     signs_at_cusps)
from .dynamics import (OmegaPoint, TraceCoords, ellipse_k, relation_residual, twist34,
                       twist_ab)
from .errors import CharvarError, Inadmissible
from .scalars import DEFAULT_TOL, to_json
from .suites import SUITES, run_suite
from .surface import edge_of_pair
from .switches import triangle_switch
from .traces import CONVENTIONS, PAIRS, edge_curve_trace

EXIT_OK, EXIT_DOMAIN, EXIT_SUITE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    backend: str = "exact"
    seed: int = 0
    tolerance: float = DEFAULT_TOL
    fmt: str = "json"
    max_steps: int = 1000
    depth: int = 6

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise UsageError(f"unknown backend {self.backend!r}")
        if not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.max_steps < 0 or self.depth < 0:
            raise UsageError("limits must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must fit in 64 bits")


# ---------------------------------------------------------------- input / output

def _jsonable(x):
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, (int, Fraction, float, np.floating)):
        return to_json(x if not isinstance(x, np.floating) else float(x))
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _emit(obj, out):
    out.write(json.dumps(_jsonable(obj), separators=(",", ":")) + "\n")


def _load(text):
    """Inline JSON, '-' for stdin, or a path to a JSON file."""
    if text == "-":
        text = sys.stdin.read()
    elif os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {exc}") from None


def _scalar(v, cfg):
    if isinstance(v, bool) or not isinstance(v, (int, float, str)):
        raise UsageError(f"bad number {v!r}")
    try:
        x = Fraction(v) if isinstance(v, str) else v
    except ValueError:
        raise UsageError(f"bad number {v!r}") from None
    if cfg.backend == "float":
        return float(x)
    return Fraction(str(x)) if isinstance(x, float) else x


def _signs(v):
    if isinstance(v, str):
        v = v.strip()
        if v.startswith("["):
            try:
                v = json.loads(v)
            except json.JSONDecodeError:
                raise UsageError(f"bad sign vector {v!r}") from None
        elif len(v) == 4 and set(v) <= {"+", "-"}:
            v = [1 if c == "+" else -1 for c in v]
        else:
            raise UsageError(f"bad sign vector {v!r}")
    if not isinstance(v, list) or len(v) != 4:
        raise UsageError("sign vector must be a list of four +-1")
    return check_signs(v)


def _chart(args, cfg):
    """(X, eps) from --coords (list, or object with X and signs) and --signs."""
    if args.coords is None:
        raise UsageError("--coords is required")
    data = _load(args.coords)
    signs = getattr(args, "signs", None)
    if isinstance(data, dict):
        if "X" not in data:
            raise UsageError("coordinate object needs an 'X' entry")
        X, signs = data["X"], signs or data.get("signs")
    else:
        X = data
    if not isinstance(X, list) or len(X) != 4:
        raise UsageError("coordinates must be a list of four numbers")
    if signs is None:
        raise UsageError("--signs is required")
    return check_coords(tuple(_scalar(x, cfg) for x in X)), _signs(signs)


def _triangle(text):
    t = text.strip().lower().lstrip("t")
    if t not in ("1", "2", "3", "4"):
        raise UsageError(f"bad triangle {text!r} (use t1..t4)")
    return int(t)


# ---------------------------------------------------------------- commands

def cmd_sample(args, cfg, out):
    s = parse_signs_name(args.signs) if args.signs else None
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for _ in range(args.count):
        X, eps = sample_component(args.euler, s, rng)
        rows.append({"X": X, "signs": eps, "label": classify(X, eps)})
    _emit(rows, out)
    return EXIT_OK


def cmd_classify(args, cfg, out):
    X, eps = _chart(args, cfg)
    _emit(classify(X, eps, cfg.tolerance), out)
    return EXIT_OK


def cmd_traces(args, cfg, out):
    X, eps = _chart(args, cfg)
    cusp = signs_at_cusps(X, eps, cfg.tolerance)
    rows = []
    for p in PAIRS:
        r = edge_curve_trace(X, eps, p, args.convention, cfg.tolerance)
        rows.append({"curve": f"gamma_{edge_of_pair(*p)}", "pair": list(p),
                     "abs_trace": r.abs_trace, "kind": r.kind})
    for p, v in enumerate(CUSP_PUNCTURES):
        rows.append({"curve": f"peripheral_{v}", "pair": None, "abs_trace": 2,
                     "kind": "parabolic", "parabolic_sign": cusp[p]})
    if cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["curve", "pair", "abs_trace", "kind", "parabolic_sign"])
        for r in rows:
            pair = "" if r["pair"] is None else f"{r['pair'][0]}{r['pair'][1]}"
            w.writerow([r["curve"], pair, to_json(r["abs_trace"]), r["kind"],
                        r.get("parabolic_sign", "")])
    else:
        _emit({"curves": rows, "cusp_signs": cusp}, out)
    return EXIT_OK


def cmd_switch(args, cfg, out):
    if args.input is not None:
        args.coords = args.input
    X, eps = _chart(args, cfg)
    l = _triangle(args.along)
    _emit(triangle_switch(X, eps, l, cfg.tolerance), out)
    return EXIT_OK


def _write_diagnostics(diag, path):
    cols = ReductionDiagnostics.CSV_COLUMNS
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for row in diag.rows:
            w.writerow(["" if row.get(c) in (None, "") else row[c] for c in cols])


def cmd_reduce(args, cfg, out):
    X, eps = _chart(args, cfg)
    log, diag = trace_reduce(X, eps, cfg.max_steps)
    if args.diagnostics:
        _write_diagnostics(diag, args.diagnostics)
    _emit(log, out)
    return EXIT_OK


def cmd_scan(args, cfg, out):
    X, eps = _chart(args, cfg)
    _emit(hyperbolicity_scan(X, eps, cfg.depth), out)
    return EXIT_OK


def cmd_orbit(args, cfg, out):
    start = _load(args.start)
    if not isinstance(start, dict):
        raise UsageError("orbit start must be a JSON object")
    num = lambda key, default=None: _scalar(start.get(key, default), cfg)
    try:
        if args.space == "omega":
            p = OmegaPoint(num("a"), num("c"), num("d"))
            step, cols = twist34, ["step", "a", "c", "d", "k"]
            row = lambda n, q: [n, q.a, q.c, q.d, ellipse_k(q)]
        else:
            p = TraceCoords(*(num(k) for k in "abcd"), *(num(k, 2) for k in "xyz"))
            step, cols = twist_ab, ["step", "a", "b", "c", "d", "x", "y", "z", "residual"]
            row = lambda n, q: [n, *q, relation_residual(q)]
    except (TypeError, UsageError):
        raise UsageError("orbit start is missing coordinates") from None
    fh = open(args.out, "w", newline="") if args.out else out
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for n in range(args.steps + 1):
            w.writerow([to_json(v) for v in row(n, p)])
            if n < args.steps:
                p = step(p)
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def cmd_verify(args, cfg, out):
    if args.list:
        _emit(list(SUITES), out)
        return EXIT_OK
    if args.suite is None:
        raise UsageError("--suite is required (or --list)")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}")
    reports = [run_suite(n, args.count, cfg.seed, args.convention) for n in names]
    if len(reports) == 1:
        _emit(reports[0], out)
    else:
        _emit({"passed": all(r["passed"] for r in reports), "suites": reports}, out)
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_SUITE


# ---------------------------------------------------------------- parser

def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    p = _Parser(prog="charvar", description="Type-preserving representations of the "
                "thrice-punctured projective plane: coordinates, switches, traces, dynamics.")
    p.add_argument("--version", action="version", version=f"charvar {__version__} schema {SCHEMA_VERSION}")
    common = _Parser(add_help=False)
    common.add_argument("--backend", choices=("exact", "float"), default=None)
    common.add_argument("--seed", type=_nonneg, default=None,
                        help="random seed (default: $CHARVAR_SEED, else 0)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def chart(sp, signs=True):
        sp.add_argument("--coords", help="JSON list of X, or file with {\"X\":..., \"signs\":...}")
        if signs:
            sp.add_argument("--signs", help="JSON list of four +-1, or e.g. '++-+'")

    sp = sub.add_parser("sample", parents=[common], help="sample charts in one component")
    sp.add_argument("--euler", type=int, required=True)
    sp.add_argument("--signs", required=True, help="cusp signs, e.g. '+--' or 's1+'")
    sp.add_argument("--count", type=_nonneg, default=1)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("classify", parents=[common], help="component label of a chart")
    chart(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("traces", parents=[common], help="edge-curve traces and cusp signs")
    chart(sp)
    sp.add_argument("--convention", choices=CONVENTIONS, default="engine", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_traces)

    sp = sub.add_parser("switch", parents=[common], help="triangle switch along t1..t4")
    chart(sp)
    sp.add_argument("--along", required=True)
    sp.add_argument("--input", help="JSON file (or '-') with X and signs")
    sp.set_defaults(func=cmd_switch)

    sp = sub.add_parser("reduce", parents=[common], help="trace reduction")
    chart(sp)
    sp.add_argument("--max-steps", type=_nonneg, default=1000)
    sp.add_argument("--diagnostics", help="CSV file for per-step diagnostics")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("scan", parents=[common], help="hyperbolicity scan of the triangulation tree")
    chart(sp)
    sp.add_argument("--depth", type=_nonneg, default=6)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("orbit", parents=[common], help="twist orbit as CSV")
    sp.add_argument("--space", choices=("omega", "trace"), required=True)
    sp.add_argument("--start", required=True)
    sp.add_argument("--steps", type=_nonneg, default=1000)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_orbit, orbit=True)

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", help="suite name or 'all'")
    sp.add_argument("--count", type=_nonneg, default=None)
    sp.add_argument("--list", action="store_true")
    # test hook: evaluate closed forms with the swapped +- pairing
    sp.add_argument("--convention", choices=CONVENTIONS, default="engine", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)
    return p


def _config(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get("CHARVAR_SEED")
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"CHARVAR_SEED is not an integer: {env!r}") from None
    backend = args.backend or ("float" if getattr(args, "orbit", False) else "exact")
    return RunConfig(backend=backend, seed=seed, tolerance=args.tol, fmt=args.format,
                     max_steps=getattr(args, "max_steps", 1000), depth=getattr(args, "depth", 6))


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        return args.func(args, cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"charvar: usage error: {exc}\n")
        return EXIT_USAGE
    except (CharvarError, ValueError, ZeroDivisionError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, Inadmissible) and exc.edge is not None:
            err["edge"] = exc.edge
        sys.stderr.write(json.dumps(_jsonable(err), separators=(",", ":")) + "\n")
        return EXIT_DOMAIN


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
