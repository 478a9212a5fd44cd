"""Verification suites: each one sweeps a monotonicity certificate or a bound over its default grid.

A suite returns flat records (dicts with the keys in ``FIELDS``); a record
with ``passed == False`` is a failed check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from qlcm.core import DEFAULT_CONFIG, EvalConfig, EvaluationError, make_qcontext
from qlcm.inequalities import (
    BoundReport,
    WeightedPoints,
    classical_gurland,
    classical_ratio_bounds,
    convex_sandwich,
    factorial_bounds,
    gurland_bounds,
    jensen_upper,
    qgamma_bounds,
    ratio_bounds,
    stirling_remainder,
)
from qlcm.lcm import (
    DEFAULT_ORDER,
    DEFAULT_Q_GRID,
    DEFAULT_SIGN_TOL,
    DEFAULT_X_GRID,
    Direction,
    LcmParams,
    certify,
)
from qlcm.qgamma import LemmaViolation, solve_salem_witness

FIELDS = (
    "suite", "check", "q", "alpha", "beta", "x", "y", "n",
    "value", "lower", "middle", "upper", "tolerance", "passed",
)

REGION_PARAMS = ((0.5, 1.0), (0.5, 2.0), (0.0, 1.5), (-1.0, 3.0))
LEMMA_Q_GRID = DEFAULT_Q_GRID + (1.5, 2.0, 5.0)
POINT_SETS = (
    ((2.0,), (1.0,)),
    ((1.0, 1.0), (0.5, 0.5)),
    ((1.0, 2.0), (0.5, 0.5)),
    ((1.0, 4.0), (0.5, 0.5)),
    ((0.1, 10.0), (0.3, 0.7)),
    ((0.5, 2.0, 7.0), (0.2, 0.3, 0.5)),
    ((0.25, 1.0, 4.0, 16.0), (0.25, 0.25, 0.25, 0.25)),
    ((0.2, 40.0), (0.9, 0.1)),
)
RATIO_POINTS = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)
QGAMMA_X = (1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 10.0, 20.0, 50.0)
GURLAND_POINTS = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
N_MAX = 1000


@dataclass
class Overrides:
    """Command-line overrides; ``None`` keeps the suite default."""

    q_grid: Optional[tuple[float, ...]] = None
    x_grid: Optional[tuple[float, ...]] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    order: Optional[int] = None
    sign_tol: Optional[float] = None
    cfg: EvalConfig = field(default_factory=lambda: DEFAULT_CONFIG)


def _record(suite, check, passed, **kw):
    rec = dict.fromkeys(FIELDS)
    rec.update(kw)
    rec["suite"] = suite
    rec["check"] = check
    rec["passed"] = bool(passed)
    return rec


def _bound_record(suite, check, rep: BoundReport, **kw):
    return _record(suite, check, rep.satisfied, lower=rep.lower, middle=rep.middle,
                   upper=rep.upper, tolerance=rep.tol, **kw)


def _certificate(suite, pairs, direction, ov: Overrides):
    for alpha, beta in pairs:
        cert = certify(
            LcmParams(alpha, beta),
            direction,
            q_grid=ov.q_grid or DEFAULT_Q_GRID,
            x_grid=ov.x_grid or DEFAULT_X_GRID,
            max_order=ov.order or DEFAULT_ORDER,
            sign_tolerance=DEFAULT_SIGN_TOL if ov.sign_tol is None else ov.sign_tol,
            cfg=ov.cfg,
        )
        for r in cert.results:
            yield _record(suite, direction.value, r.ok, q=r.q, alpha=alpha, beta=beta,
                          x=r.x, n=r.n, value=r.value, tolerance=r.threshold)


def thm_2_1(ov: Overrides):
    alpha = 0.5 if ov.alpha is None else ov.alpha
    beta = 1.0 if ov.beta is None else ov.beta
    return _certificate("thm-2.1", [(alpha, beta)], Direction.F_IS_LCM, ov)


def thm_2_2(ov: Overrides):
    alpha = 1.0 if ov.alpha is None else ov.alpha
    beta = 1.0 if ov.beta is None else ov.beta
    return _certificate("thm-2.2", [(alpha, beta)], Direction.INVERSE_IS_LCM, ov)


def thm_2_3(ov: Overrides):
    if ov.alpha is None and ov.beta is None:
        pairs = REGION_PARAMS
    else:
        pairs = [(0.5 if ov.alpha is None else ov.alpha, 1.0 if ov.beta is None else ov.beta)]
    return _certificate("thm-2.3", pairs, Direction.F_IS_LCM, ov)


def lemma_2_1(ov: Overrides):
    for q in ov.q_grid or LEMMA_Q_GRID:
        ctx = make_qcontext(q)
        for x in ov.x_grid or DEFAULT_X_GRID:
            try:
                w = solve_salem_witness(ctx, x, ov.cfg)
            except LemmaViolation:
                yield _record("lemma-2.1", "witness", False, q=q, x=x, tolerance=1e-12)
                continue
            ok = 0.0 <= w.a <= 1.0 and abs(w.residual) <= 1e-12
            yield _record("lemma-2.1", "witness", ok, q=q, x=x, value=w.a,
                          middle=w.residual, tolerance=1e-12)


def _q_below_one(ov):
    return tuple(q for q in (ov.q_grid or DEFAULT_Q_GRID) if q < 1.0)


def _detail(wp):
    return "x=" + "|".join(repr(v) for v in wp.points) + " p=" + "|".join(repr(v) for v in wp.weights)


def cor_3_1(ov: Overrides):
    if ov.alpha is None and ov.beta is None:
        pairs = REGION_PARAMS
    else:
        pairs = [(0.5 if ov.alpha is None else ov.alpha, 1.0 if ov.beta is None else ov.beta)]
    for (alpha, beta), q, (pts, ws) in itertools.product(pairs, _q_below_one(ov), POINT_SETS):
        wp = WeightedPoints(pts, ws)
        rep = jensen_upper(wp, LcmParams(alpha, beta), make_qcontext(q), ov.cfg)
        yield _bound_record("cor-3.1", _detail(wp), rep, q=q, alpha=alpha, beta=beta, x=wp.mean)


def cor_3_2(ov: Overrides):
    for q, (pts, ws) in itertools.product(_q_below_one(ov), POINT_SETS):
        wp = WeightedPoints(pts, ws)
        rep = convex_sandwich(wp, make_qcontext(q), ov.cfg)
        yield _bound_record("cor-3.2", _detail(wp), rep, q=q, x=wp.mean)


def cor_3_3(ov: Overrides):
    for q in _q_below_one(ov):
        ctx = make_qcontext(q)
        for a, b in itertools.combinations(RATIO_POINTS, 2):
            yield _bound_record("cor-3.3", "ratio", ratio_bounds(a, b, ctx, ov.cfg), q=q, x=a, y=b)
    for a, b in itertools.combinations(RATIO_POINTS, 2):
        yield _bound_record("cor-3.3", "classical-ratio", classical_ratio_bounds(a, b), x=a, y=b)


def cor_3_4(ov: Overrides):
    xs = tuple(x for x in (ov.x_grid or QGAMMA_X) if x >= 1.0)
    for q in _q_below_one(ov):
        ctx = make_qcontext(q)
        for x in xs:
            yield _bound_record("cor-3.4", "qgamma", qgamma_bounds(x, ctx, ov.cfg), q=q, x=x)


def cor_3_5(ov: Overrides):
    for n in range(1, N_MAX + 1):
        yield _bound_record("cor-3.5", "factorial", factorial_bounds(n), n=n)
    for n in range(1, N_MAX + 1):
        rep = stirling_remainder(n).report()
        yield _bound_record("cor-3.5", "remainder", rep, n=n)


def stirling(ov: Overrides):
    for n in range(1, N_MAX + 1):
        sr = stirling_remainder(n)
        rep = sr.robbins_report()
        yield _record("stirling", "robbins", sr.robbins_ok, n=n, lower=rep.lower,
                      middle=rep.middle, upper=rep.upper, tolerance=0.0)
        yield _bound_record("stirling", "log-band", sr.report(), n=n)


def gurland(ov: Overrides):
    pairs = list(itertools.combinations_with_replacement(GURLAND_POINTS, 2))
    for q in _q_below_one(ov):
        ctx = make_qcontext(q)
        for x, y in pairs:
            yield _bound_record("gurland", "q-gurland", gurland_bounds(x, y, ctx, ov.cfg), q=q, x=x, y=y)
    for x, y in pairs:
        yield _bound_record("gurland", "classical", classical_gurland(x, y), x=x, y=y)


SUITES: dict[str, Callable[[Overrides], Iterable[dict]]] = {
    "thm-2.1": thm_2_1,
    "thm-2.2": thm_2_2,
    "thm-2.3": thm_2_3,
    "lemma-2.1": lemma_2_1,
    "cor-3.1": cor_3_1,
    "cor-3.2": cor_3_2,
    "cor-3.3": cor_3_3,
    "cor-3.4": cor_3_4,
    "cor-3.5": cor_3_5,
    "stirling": stirling,
    "gurland": gurland,
}


def run_suite(name: str, ov: Optional[Overrides] = None) -> list[dict]:
    ov = ov or Overrides()
    if name == "all":
        return [rec for key in SUITES for rec in SUITES[key](ov)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return list(fn(ov))
