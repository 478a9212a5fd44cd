"""Two-sided gamma-function bounds derived from the log-complete-monotonicity results.

Every bound is evaluated in log space and returned as a :class:`BoundReport`.
``[x]_q`` below means ``(1 - q**x) / (1 - q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from qlcm.classical import log_factorial, log_gamma, stirling_correction
from qlcm.core import DEFAULT_CONFIG, DomainError, EvalConfig, PreconditionError, QContext
from qlcm.dilog import li2_one_minus_qpow
from qlcm.lcm import LcmParams
from qlcm.qgamma import log_qbracket, log_qgamma

__all__ = [
    "BOUND_TOL",
    "BoundReport",
    "WeightedPoints",
    "StirlingRemainder",
    "jensen_upper",
    "convex_sandwich",
    "ratio_bounds",
    "classical_ratio_bounds",
    "qgamma_bounds",
    "factorial_bounds",
    "stirling_remainder",
    "gurland_bounds",
    "classical_gurland",
]

BOUND_TOL = 1e-10
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class BoundReport:
    lower: Optional[float]
    middle: float
    upper: Optional[float]
    context: str = ""
    tol: float = BOUND_TOL

    @property
    def slack_low(self) -> Optional[float]:
        return None if self.lower is None else self.middle - self.lower

    @property
    def slack_high(self) -> Optional[float]:
        return None if self.upper is None else self.upper - self.middle

    @property
    def satisfied(self) -> bool:
        lo, hi = self.slack_low, self.slack_high
        return (lo is None or lo >= -self.tol) and (hi is None or hi >= -self.tol)


@dataclass(frozen=True)
class WeightedPoints:
    points: tuple[float, ...]
    weights: tuple[float, ...]

    def __init__(self, points: Sequence[float], weights: Sequence[float]):
        pts = tuple(float(x) for x in points)
        ws = tuple(float(p) for p in weights)
        if not pts or len(pts) != len(ws):
            raise ValueError("points and weights must be non-empty and of equal length")
        if any(not x > 0 for x in pts):
            raise DomainError(f"points must be positive: {pts}")
        if any(p < 0 for p in ws):
            raise ValueError(f"weights must be non-negative: {ws}")
        if abs(math.fsum(ws) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {math.fsum(ws)!r}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", ws)

    @property
    def mean(self) -> float:
        return math.fsum(p * x for p, x in zip(self.weights, self.points))

    def average(self, fn) -> float:
        return math.fsum(p * fn(x) for p, x in zip(self.weights, self.points) if p != 0.0)


def _require_q_below_one(ctx: QContext):
    if ctx.heaviside:
        raise DomainError("these bounds are stated for 0 < q < 1")


def _dilog_gap(wp: WeightedPoints, ctx: QContext, cfg: EvalConfig) -> float:
    """``(Li2(1 - q**xbar) - sum p_k Li2(1 - q**x_k)) / log q``."""
    mean = wp.mean
    avg = wp.average(lambda x: li2_one_minus_qpow(ctx, x, cfg))
    return (li2_one_minus_qpow(ctx, mean, cfg) - avg) / ctx.log_q


def _power_gap(wp: WeightedPoints, ctx: QContext, shift: float) -> float:
    """``(xbar + shift) log[xbar] - sum p_k (x_k + shift) log[x_k]``."""
    mean = wp.mean
    return (mean + shift) * log_qbracket(ctx, mean) - wp.average(
        lambda x: (x + shift) * log_qbracket(ctx, x)
    )


def _gamma_gap(wp: WeightedPoints, ctx: QContext, beta: float, cfg: EvalConfig) -> float:
    mean = wp.mean
    return log_qgamma(ctx, mean + beta, cfg) - wp.average(lambda x: log_qgamma(ctx, x + beta, cfg))


def jensen_upper(wp: WeightedPoints, params: LcmParams, ctx: QContext,
                 cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Upper bound on ``Gamma_q(xbar + beta) / prod Gamma_q(x_k + beta)**p_k``
    from log-convexity of ``f_{alpha,beta}``; needs ``2 alpha <= 1 <= beta``."""
    _require_q_below_one(ctx)
    if not (2.0 * params.alpha <= 1.0 <= params.beta):
        raise PreconditionError(
            f"Jensen bound needs 2*alpha <= 1 <= beta, got alpha={params.alpha}, beta={params.beta}"
        )
    middle = _gamma_gap(wp, ctx, params.beta, cfg)
    upper = _power_gap(wp, ctx, params.beta - params.alpha) + _dilog_gap(wp, ctx, cfg)
    return BoundReport(None, middle, upper,
                       f"jensen q={ctx.q!r} alpha={params.alpha!r} beta={params.beta!r} "
                       f"x={list(wp.points)} p={list(wp.weights)}")


def convex_sandwich(wp: WeightedPoints, ctx: QContext,
                    cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Two-sided bound on ``Gamma_q(xbar + 1) / prod Gamma_q(x_k + 1)**p_k``."""
    _require_q_below_one(ctx)
    gap = _dilog_gap(wp, ctx, cfg)
    return BoundReport(
        _power_gap(wp, ctx, 0.0) + gap,
        _gamma_gap(wp, ctx, 1.0, cfg),
        _power_gap(wp, ctx, 0.5) + gap,
        f"sandwich q={ctx.q!r} x={list(wp.points)} p={list(wp.weights)}",
    )


def ratio_bounds(a: float, b: float, ctx: QContext,
                 cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Bounds on ``log(Gamma_q(b) / Gamma_q(a))`` for ``0 < a < b``."""
    _require_q_below_one(ctx)
    if not 0 < a:
        raise DomainError(f"a must be positive, got {a!r}")
    if not a < b:
        raise ValueError(f"ratio_bounds needs a < b, got a={a!r}, b={b!r}")
    la, lb = log_qbracket(ctx, a), log_qbracket(ctx, b)
    gap = (li2_one_minus_qpow(ctx, b, cfg) - li2_one_minus_qpow(ctx, a, cfg)) / ctx.log_q
    return BoundReport(
        (b - 1.0) * lb - (a - 1.0) * la + gap,
        log_qgamma(ctx, b, cfg) - log_qgamma(ctx, a, cfg),
        (b - 0.5) * lb - (a - 0.5) * la + gap,
        f"ratio q={ctx.q!r} a={a!r} b={b!r}",
    )


def classical_ratio_bounds(a: float, b: float) -> BoundReport:
    """q -> 1 limit of :func:`ratio_bounds`: ``b**(b-1)/a**(a-1) e**(a-b)`` and
    ``b**(b-1/2)/a**(a-1/2) e**(a-b)`` around ``Gamma(b)/Gamma(a)``."""
    if not 0 < a < b:
        raise ValueError(f"classical_ratio_bounds needs 0 < a < b, got a={a!r}, b={b!r}")
    la, lb = math.log(a), math.log(b)
    return BoundReport(
        (b - 1.0) * lb - (a - 1.0) * la + a - b,
        log_gamma(b) - log_gamma(a),
        (b - 0.5) * lb - (a - 0.5) * la + a - b,
        f"classical ratio a={a!r} b={b!r}",
    )


def qgamma_bounds(x: float, ctx: QContext, cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Bounds on ``log Gamma_q(x + 1)`` valid for ``x >= 1``."""
    _require_q_below_one(ctx)
    if not x >= 1.0:
        raise PreconditionError(f"qgamma_bounds holds for x >= 1, got {x!r}")
    lx = log_qbracket(ctx, x)
    gap = (li2_one_minus_qpow(ctx, x, cfg) - li2_one_minus_qpow(ctx, 1.0, cfg)) / ctx.log_q
    return BoundReport(x * lx + gap, log_qgamma(ctx, x + 1.0, cfg), (x + 0.5) * lx + gap,
                       f"qgamma q={ctx.q!r} x={x!r}")


def factorial_bounds(n: int) -> BoundReport:
    """``e (n/e)**n <= n! <= e sqrt(n) (n/e)**n`` in log space."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    ln = math.log(n)
    base = 1.0 + n * ln - n
    return BoundReport(base, log_factorial(n), base + 0.5 * ln, f"factorial n={n}")


@dataclass(frozen=True)
class StirlingRemainder:
    """``r_n`` in ``n! = sqrt(2 pi n) (n/e)**n exp(r_n)`` with its known bounds."""

    n: int
    r_n: float

    @property
    def lower(self) -> float:
        return 1.0 - 0.5 * math.log(2.0 * math.pi * self.n)

    @property
    def upper(self) -> float:
        return 1.0 - HALF_LOG_2PI

    @property
    def robbins_lower(self) -> float:
        return 1.0 / (12 * self.n + 1)

    @property
    def robbins_upper(self) -> float:
        return 1.0 / (12 * self.n)

    def report(self, tol: float = BOUND_TOL) -> BoundReport:
        return BoundReport(self.lower, self.r_n, self.upper, f"stirling n={self.n}", tol)

    def robbins_report(self) -> BoundReport:
        return BoundReport(self.robbins_lower, self.r_n, self.robbins_upper,
                           f"robbins n={self.n}", 0.0)

    @property
    def robbins_ok(self) -> bool:
        return self.robbins_lower < self.r_n < self.robbins_upper


def stirling_remainder(n: int) -> StirlingRemainder:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if n <= 20:
        r = log_factorial(n) - 0.5 * math.log(2.0 * math.pi * n) - n * math.log(n) + n
    else:
        # the subtraction above cancels ~log n! digits; the series gives r_n directly
        r = stirling_correction(float(n))
    return StirlingRemainder(n, r)


def gurland_bounds(x: float, y: float, ctx: QContext,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> BoundReport:
    """Bounds on the q-Gurland ratio ``Gamma_q((x+y+2)/2)**2 / (Gamma_q(x+1) Gamma_q(y+1))``
    scaled by the dilogarithm factor, all in log space."""
    _require_q_below_one(ctx)
    if not (x > 0 and y > 0):
        raise DomainError(f"x and y must be positive, got x={x!r}, y={y!r}")
    m = 0.5 * (x + y)
    lm, lx, ly = log_qbracket(ctx, m), log_qbracket(ctx, x), log_qbracket(ctx, y)
    li = lambda t: li2_one_minus_qpow(ctx, t, cfg)  # noqa: E731
    middle = (
        2.0 * log_qgamma(ctx, m + 1.0, cfg)
        - log_qgamma(ctx, x + 1.0, cfg)
        - log_qgamma(ctx, y + 1.0, cfg)
        + (li(x) + li(y) - 2.0 * li(m)) / ctx.log_q
    )
    lower = (x + y) * lm - x * lx - y * ly
    upper = (x + y + 1.0) * lm - (x + 0.5) * lx - (y + 0.5) * ly
    return BoundReport(lower, middle, upper, f"gurland q={ctx.q!r} x={x!r} y={y!r}")


def classical_gurland(x: float, y: float) -> BoundReport:
    if not (x > 0 and y > 0):
        raise DomainError(f"x and y must be positive, got x={x!r}, y={y!r}")
    m = 0.5 * (x + y)
    lm, lx, ly = math.log(m), math.log(x), math.log(y)
    return BoundReport(
        (x + y) * lm - x * lx - y * ly,
        2.0 * log_gamma(m + 1.0) - log_gamma(x + 1.0) - log_gamma(y + 1.0),
        (x + y + 1.0) * lm - (x + 0.5) * lx - (y + 0.5) * ly,
        f"classical gurland x={x!r} y={y!r}",
    )
