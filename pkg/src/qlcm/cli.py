"""Command-line front end.

    qlcm eval log-qgamma --q 0.5 --x 3
    qlcm eval li2 --z 1
    qlcm verify thm-2.1 --alpha 0.75
    qlcm verify all --format json
    qlcm limit cq --q 0.9,0.99,0.999

Standard output carries only the data table (CSV with a header row, or a
JSON array of flat objects).  The command echo, the summary and the wall
time go to standard error, so identical invocations give identical stdout.
Exit codes: 0 all checks passed, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass

from qlcm.classical import digamma, log_gamma
from qlcm.core import DomainError, EvalConfig, EvaluationError, PreconditionError, make_qcontext
from qlcm.dilog import li2, li2_series
from qlcm.lcm import LcmParams, dlogf, log_f, phi
from qlcm.moak import DEFAULT_TERMS, cq_constant, moak_expansion
from qlcm.qgamma import (
    log1m_qpow,
    log_qgamma,
    log_qgamma_series,
    moak_I,
    qdigamma,
    qdigamma_deriv,
    qdigamma_deriv_series,
    qdigamma_tail,
)
from qlcm.suites import FIELDS, SUITES, Overrides, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.count < 1:
            raise UsageError("grid count must be >= 1")
        if self.count > 1 and not self.start < self.stop:
            raise UsageError("grid needs start < stop")
        if self.scale not in ("linear", "log"):
            raise UsageError(f"unknown grid scale {self.scale!r}")
        if self.scale == "log" and not self.start > 0:
            raise UsageError("log grid needs start > 0")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise UsageError(f"grid must be start:stop:count[:log], got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"bad grid {text!r}") from None
        scale = parts[3] if len(parts) == 4 else "linear"
        return cls(start, stop, count, scale)

    def points(self) -> tuple[float, ...]:
        if self.count == 1:
            return (self.start,)
        if self.scale == "log":
            a, b = math.log(self.start), math.log(self.stop)
            pts = [math.exp(a + (b - a) * i / (self.count - 1)) for i in range(self.count)]
        else:
            pts = [self.start + (self.stop - self.start) * i / (self.count - 1) for i in range(self.count)]
        pts[0], pts[-1] = self.start, self.stop
        return tuple(pts)


# ---------------------------------------------------------------- formatting

def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_value(v) -> str:
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return fmt_value(v)
    return json.dumps(v)


def render(records: list[dict], fields, fmt: str) -> str:
    if fmt == "json":
        rows = [
            "{" + ", ".join(f"{json.dumps(k)}: {_json_value(r.get(k))}" for k in fields) + "}"
            for r in records
        ]
        return "[\n" + ",\n".join("  " + row for row in rows) + ("\n" if rows else "") + "]\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in records:
        w.writerow([fmt_value(r.get(k)) for k in fields])
    return buf.getvalue()


def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def info(msg: str):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------- eval

def _ctx(args):
    if args.q is None:
        raise UsageError("--q is required")
    return make_qcontext(args.q[0] if isinstance(args.q, list) else args.q)


def _params(args):
    return LcmParams(0.5 if args.alpha is None else args.alpha, 1.0 if args.beta is None else args.beta)


def _cfg(args) -> EvalConfig:
    return EvalConfig(rel_tol=args.tol, max_terms=args.max_terms)


def _ev_log_qgamma(args, v, cfg):
    ctx = _ctx(args)
    return log_qgamma(ctx, v, cfg), log_qgamma_series(ctx, v, cfg).terms_used


def _ev_qdigamma(args, v, cfg):
    ctx = _ctx(args)
    return qdigamma(ctx, v, cfg), qdigamma_tail(ctx, v, cfg).terms_used


def _ev_qdigamma_deriv(args, v, cfg):
    ctx = _ctx(args)
    m = args.order or 1
    return qdigamma_deriv(ctx, v, m, cfg), qdigamma_deriv_series(ctx, v, m, cfg).terms_used


def _ev_li2(args, v, cfg):
    terms = li2_series(v, cfg).terms_used if abs(v) <= 0.5 else None
    return li2(v, cfg), terms


def _ev_moak_I(args, v, cfg):
    return moak_I(_ctx(args), v), None


def _ev_moak_expansion(args, v, cfg):
    return moak_expansion(_ctx(args), v, args.terms or DEFAULT_TERMS, cfg), None


def _ev_cq(args, v, cfg):
    return cq_constant(make_qcontext(v), cfg), None


def _ev_log_f(args, v, cfg):
    return log_f(_params(args), _ctx(args), v, cfg), None


def _ev_phi(args, v, cfg):
    return phi(v, _params(args)), None


def _ev_dlogf(args, v, cfg):
    return dlogf(_params(args), _ctx(args), v, cfg), None


# name -> (evaluator, primary variable, extra input columns)
EVALUATORS = {
    "log-qgamma": (_ev_log_qgamma, "x", ("q",)),
    "qdigamma": (_ev_qdigamma, "x", ("q",)),
    "qdigamma-deriv": (_ev_qdigamma_deriv, "x", ("q", "order")),
    "li2": (_ev_li2, "z", ()),
    "moak-I": (_ev_moak_I, "x", ("q",)),
    "moak-expansion": (_ev_moak_expansion, "x", ("q", "terms")),
    "cq": (_ev_cq, "q", ()),
    "log-f": (_ev_log_f, "x", ("q", "alpha", "beta")),
    "phi": (_ev_phi, "y", ("alpha", "beta")),
    "dlogf": (_ev_dlogf, "x", ("q", "alpha", "beta")),
}


def _primary_points(args, var) -> tuple[float, ...]:
    if args.grid is not None:
        return GridSpec.parse(args.grid).points()
    val = getattr(args, var)
    if val is None:
        raise UsageError(f"--{var} or --grid is required")
    return tuple(val) if isinstance(val, list) else (val,)


def cmd_eval(args) -> int:
    fn, var, extras = EVALUATORS[args.function]
    cfg = _cfg(args)
    defaults = {"order": 1, "terms": DEFAULT_TERMS, "alpha": 0.5, "beta": 1.0}
    fixed = {}
    for name in extras:
        val = getattr(args, name)
        if isinstance(val, list):
            val = val[0]
        fixed[name] = defaults.get(name) if val is None else val
    records = []
    for v in _primary_points(args, var):
        try:
            value, terms = fn(args, v, cfg)
        except (DomainError, PreconditionError, ValueError) as exc:
            raise UsageError(f"{args.function} at {var}={v!r}: {exc}") from None
        rec = {"function": args.function, **fixed, var: v, "value": value, "terms_used": terms}
        records.append(rec)
    fields = ("function",) + extras + (var, "value", "terms_used")
    emit(render(records, fields, args.format), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    ov = Overrides(
        q_grid=tuple(args.q) if args.q else None,
        x_grid=GridSpec.parse(args.grid).points() if args.grid else (tuple(args.x) if args.x else None),
        alpha=args.alpha,
        beta=args.beta,
        order=args.order,
        sign_tol=args.sign_tol,
        cfg=_cfg(args),
    )
    if ov.order is not None and ov.order < 1:
        raise UsageError("--order must be >= 1")
    t0 = time.perf_counter()
    try:
        records = run_suite(args.suite, ov)
    except (DomainError, PreconditionError) as exc:
        raise UsageError(str(exc)) from None
    elapsed = time.perf_counter() - t0
    emit(render(records, FIELDS, args.format), args.out)
    failed = [r for r in records if not r["passed"]]
    for r in failed[:20]:
        info(f"violation: suite={r['suite']} check={r['check']} q={fmt_value(r['q'])} "
             f"x={fmt_value(r['x'])} n={fmt_value(r['n'])} value={fmt_value(r['value'])}")
    if len(failed) > 20:
        info(f"... {len(failed) - 20} more violations")
    info(f"verify {args.suite}: {len(records)} checks, {len(records) - len(failed)} passed, "
         f"{len(failed)} failed ({elapsed:.2f} s)")
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- limit

def _lim_log_qgamma(ctx, x, cfg):
    return log_qgamma(ctx, x, cfg), log_gamma(x)


def _lim_qdigamma(ctx, x, cfg):
    return qdigamma(ctx, x, cfg), digamma(x)


def _lim_cq(ctx, x, cfg):
    return cq_constant(ctx, cfg), 0.5 * math.log(2.0 * math.pi)


def _lim_li2_over_logq(ctx, x, cfg):
    return li2(-math.expm1(x * ctx.log_q), cfg) / ctx.log_q, -x


LIMITS = {
    "log-qgamma": (_lim_log_qgamma, True),
    "qdigamma": (_lim_qdigamma, True),
    "cq": (_lim_cq, False),
    "li2-over-logq": (_lim_li2_over_logq, True),
}


def cmd_limit(args) -> int:
    fn, needs_x = LIMITS[args.function]
    if not args.q:
        raise UsageError("--q needs a comma-separated sequence approaching 1")
    qs = list(args.q)
    if any(q == 1.0 for q in qs):
        raise UsageError("the q sequence must not touch 1")
    below = all(q < 1.0 for q in qs) and all(a < b for a, b in zip(qs, qs[1:]))
    above = all(q > 1.0 for q in qs) and all(a > b for a, b in zip(qs, qs[1:]))
    if not (below or above):
        raise UsageError("q must increase toward 1 from below or decrease toward 1 from above")
    x = None
    if needs_x:
        if args.x is None:
            raise UsageError("--x is required")
        x = args.x[0]
    cfg = _cfg(args)
    records = []
    prev_err = None
    monotone = True
    for q in qs:
        try:
            value, target = fn(make_qcontext(q), x, cfg)
        except (DomainError, ValueError) as exc:
            raise UsageError(f"{args.function} at q={q!r}: {exc}") from None
        err = abs(value - target)
        dec = None if prev_err is None else err < prev_err
        if dec is False:
            monotone = False
        records.append({"function": args.function, "x": x, "q": q, "value": value,
                        "target": target, "error": err, "error_decreasing": dec})
        prev_err = err
    emit(render(records, ("function", "x", "q", "value", "target", "error", "error_decreasing"),
                args.format), args.out)
    if not monotone:
        info(f"limit {args.function}: error does not decrease monotonically")
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--q", type=_float_list, help="q value (or comma-separated list)")
    p.add_argument("--x", type=_float_list)
    p.add_argument("--y", type=_float_list)
    p.add_argument("--z", type=_float_list)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--order", type=int, help="derivative order")
    p.add_argument("--terms", type=int, help="Moak expansion terms K")
    p.add_argument("--tol", type=float, default=1e-14, help="series relative tolerance")
    p.add_argument("--max-terms", type=int, default=1_000_000)
    p.add_argument("--grid", help="start:stop:count[:log]")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qlcm", description="q-gamma functions and log-complete-monotonicity checks")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a function")
    p.add_argument("function", choices=sorted(EVALUATORS))
    _common(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    _common(p)
    p.add_argument("--sign-tol", type=float, help="sign tolerance for certificates (default 1e-12)")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("limit", help="study the q -> 1 limit")
    p.add_argument("function", choices=sorted(LIMITS))
    _common(p)
    p.set_defaults(run=cmd_limit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    info("qlcm " + " ".join(sys.argv[1:] if argv is None else argv))
    try:
        return args.run(args)
    except UsageError as exc:
        info(f"error: {exc}")
        return EXIT_USAGE
    except EvaluationError as exc:
        info(f"evaluation error: {exc}")
        return EXIT_USAGE
    except ValueError as exc:
        info(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
