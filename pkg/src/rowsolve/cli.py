"""Command-line front end.

Exit codes: 0 success, 1 parse/dimension/usage error, 2 inconsistent system
(the result is still printed), 3 ``check`` found one of conditions 1, 2, 4
violated.
"""

import argparse
import json
import sys

import numpy as np

from . import online, solver, verify
from .matfile import ParseError, parse_stream_header, parse_stream_row, read_matrix
from .rop import DEFAULT_EPS, Normalize, Orthogonalize

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONSISTENT = 2
EXIT_NOT_124 = 3

EMIT_CHOICES = ("xp", "proj", "ginv", "nullbasis", "m", "log", "penrose")


def _pair(z):
    return [float(z.real), float(z.imag)]


def _vector(v):
    return [_pair(z) for z in np.asarray(v).ravel()]


def _matrix(a):
    return [[_pair(z) for z in row] for row in np.asarray(a)]


def _log(log):
    out = []
    for step in log:
        if isinstance(step, Normalize):
            out.append({"op": "normalize", "i": step.i, "mag": step.mag})
        elif isinstance(step, Orthogonalize):
            out.append({"op": "orthogonalize", "k": step.k, "i": step.i, "prod": _pair(step.prod)})
        else:
            out.append({"op": "skip_zero", "i": step.i})
    return out


def _format_complex(z):
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _render_text(doc, out):
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            print(f"{key}:", file=out)
            for item in value:
                print(f"  {_render_value(item)}", file=out)
        else:
            print(f"{key}: {_render_value(value)}", file=out)


def _render_value(value):
    if isinstance(value, list):
        if len(value) == 2 and all(isinstance(v, float) for v in value):
            return _format_complex(complex(*value))
        return "[" + ", ".join(_render_value(v) for v in value) + "]"
    if isinstance(value, dict):
        return json.dumps(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit(doc, as_json, out=None):
    out = out or sys.stdout
    if as_json:
        print(json.dumps(doc), file=out)
    else:
        _render_text(doc, out)


def _parse_emit(text):
    items = [s for s in text.split(",") if s]
    bad = [s for s in items if s not in EMIT_CHOICES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown --emit item(s) {bad}; choose from {EMIT_CHOICES}")
    return set(items)


def cmd_solve(args):
    a = read_matrix(args.matrix)
    b = read_matrix(args.rhs)
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"matrix has {a.shape[0]} rows but rhs has {b.shape[0]}")
    emit = args.emit
    needs_m = emit & {"ginv", "m", "penrose"}

    if b.shape[1] > 1:
        res = solver.solve_matrix_rhs(a, b, eps=args.eps)
        doc = {
            "x_p": _matrix(res.x_p),
            "rank": res.rank,
            "consistent": all(res.consistent),
            "consistent_columns": list(res.consistent),
            "norm_x_p": float(np.linalg.norm(res.x_p)),
        }
        offending = [r for r in res.offending_rows if r is not None]
        if offending:
            doc["offending_rows"] = list(res.offending_rows)
        consistent = all(res.consistent)
    else:
        if needs_m and args.variation != solver.ACCUMULATE_M:
            raise ValueError(f"--emit {','.join(sorted(needs_m))} requires --variation accumulate-m")
        res = solver.solve(a, b[:, 0], variation=args.variation, eps=args.eps)
        doc = {
            "x_p": _vector(res.x_p),
            "rank": res.rank,
            "consistent": res.consistent,
            "norm_x_p": float(np.linalg.norm(res.x_p)),
        }
        if res.offending_row is not None:
            doc["offending_row"] = res.offending_row
        consistent = res.consistent

    if "proj" in emit:
        doc["projector"] = _matrix(res.projector)
    if "ginv" in emit:
        doc["g"] = _matrix(res.g)
    if "m" in emit:
        doc["m_factor"] = _matrix(res.m_factor)
    if "nullbasis" in emit:
        doc["null_basis"] = [_vector(v) for v in solver.null_space_basis(res.projector)]
    if "log" in emit:
        doc["log"] = _log(res.log)
    if "penrose" in emit:
        doc["penrose"] = verify.penrose_check(a, res.g).as_dict()
    if "xp" not in emit:
        doc.pop("x_p")

    _emit(doc, args.json)
    return EXIT_OK if consistent else EXIT_INCONSISTENT


def cmd_stream(args, stdin=None):
    stdin = stdin or sys.stdin
    state = None
    increments = []
    finished = False
    lineno = 0
    for lineno, raw in enumerate(stdin, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if state is None:
            n = parse_stream_header(line, lineno)
            state = online.online_init(n, args.eps, track_g=args.track_g, reorth=args.reorth)
            continue
        if line == "END":
            finished = True
            break
        row, b = parse_stream_row(line, state.n, lineno)
        inc = state.ingest(row, b)
        _, rank, norm = state.estimate()
        record = {
            "index": inc.index,
            "x_p_inc": _vector(inc.x_p_inc),
            "norm": norm,
            "rank": rank,
            "was_zero_row": inc.was_zero_row,
            "inconsistent": inc.inconsistency_detected,
        }
        increments.append(record)
        if args.json:
            print(json.dumps(record))
        else:
            print(
                f"row {inc.index}: x_p_inc={_render_value(record['x_p_inc'])} norm={norm:.17g} "
                f"rank={rank} zero={_render_value(inc.was_zero_row)} "
                f"inconsistent={_render_value(inc.inconsistency_detected)}"
            )
        sys.stdout.flush()
    if state is None:
        raise ParseError("stream must start with 'n <count>'", lineno + 1)
    if not finished:
        raise ParseError("stream ended without END", lineno + 1)

    res = state.finalize()
    doc = {
        "x_p": _vector(res.x_p),
        "rank": res.rank,
        "consistent": res.consistent,
        "norm_x_p": float(np.linalg.norm(res.x_p)),
    }
    if res.offending_row is not None:
        doc["offending_row"] = res.offending_row
    if res.g is not None:
        doc["g"] = _matrix(res.g)
    if args.json:
        doc["increments"] = increments
    _emit(doc, args.json)
    return EXIT_OK if res.consistent else EXIT_INCONSISTENT


def cmd_check(args):
    a = read_matrix(args.matrix)
    g = read_matrix(args.ginv)
    report = verify.penrose_check(a, g, args.tol)
    _emit({"penrose": report.as_dict()}, args.json)
    return EXIT_OK if {1, 2, 4} <= report.inferred_class else EXIT_NOT_124


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rowsolve",
        description="Minimum-norm solutions of consistent complex linear systems by row orthonormalization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve A x = b (or A X = B) from matrix files")
    p.add_argument("--matrix", required=True, help="coefficient matrix file")
    p.add_argument("--rhs", required=True, help="right-hand side file (m x 1, or m x p)")
    p.add_argument("--variation", choices=solver.VARIATIONS, default=solver.TRANSFORM_RHS)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="relative zero-row threshold")
    p.add_argument("--emit", type=_parse_emit, default={"xp"},
                   help=f"comma-separated subset of {','.join(EMIT_CHOICES)}")
    p.add_argument("--json", action="store_true", help="print a JSON document")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stream", help="solve online from rows on stdin")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--track-g", action="store_true", help="also accumulate the generalized inverse")
    p.add_argument("--reorth", action="store_true", help="run the Gram-Schmidt pass twice per row")
    p.add_argument("--json", action="store_true", help="JSON lines per row, then a JSON document")
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("check", help="report Penrose condition residuals for (A, G)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--ginv", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2, which is reserved for inconsistent systems
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"rowsolve {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
