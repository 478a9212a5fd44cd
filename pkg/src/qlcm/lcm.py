"""The function f_{alpha,beta}(x; q), its log-derivatives, and sign certification.

``log f(x) = log Gamma_q(x + beta) - (x + beta - alpha) log[x]_q - Li2(1 - q**x)/log q``
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from qlcm.core import DEFAULT_CONFIG, DomainError, EvalConfig, QContext, make_qcontext, sum_dominated
from qlcm.dilog import li2_one_minus_qpow
from qlcm.qgamma import _check_x, _checked, log1m_qpow, log_qbracket, log_qgamma, qdigamma_tail

__all__ = [
    "LcmParams",
    "Direction",
    "Violation",
    "PointResult",
    "MonotonicityCertificate",
    "DEFAULT_Q_GRID",
    "DEFAULT_X_GRID",
    "DEFAULT_ORDER",
    "DEFAULT_SIGN_TOL",
    "log_f",
    "phi",
    "phi_series",
    "dlogf",
    "dnlogf_series",
    "certify",
    "log_grid",
]

DEFAULT_ORDER = 6
DEFAULT_SIGN_TOL = 1e-12


def log_grid(start: float, stop: float, count: int) -> tuple[float, ...]:
    if count == 1:
        return (float(start),)
    a, b = math.log(start), math.log(stop)
    pts = [math.exp(a + (b - a) * i / (count - 1)) for i in range(count)]
    pts[0], pts[-1] = float(start), float(stop)
    return tuple(pts)


DEFAULT_Q_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
DEFAULT_X_GRID = log_grid(0.1, 50.0, 25)


@dataclass(frozen=True)
class LcmParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.beta >= 0.0:
            raise DomainError(f"beta must be >= 0, got {self.beta!r}")


class Direction(str, enum.Enum):
    F_IS_LCM = "f_is_lcm"
    INVERSE_IS_LCM = "inverse_is_lcm"


@dataclass(frozen=True)
class Violation:
    q: float
    x: float
    n: int
    value: float


@dataclass(frozen=True)
class PointResult:
    q: float
    x: float
    n: int
    value: float
    threshold: float
    ok: bool


@dataclass(frozen=True)
class MonotonicityCertificate:
    params: LcmParams
    direction: Direction
    q_grid: tuple[float, ...]
    x_grid: tuple[float, ...]
    max_order: int
    sign_tolerance: float
    violations: tuple[Violation, ...] = field(default=())
    results: tuple[PointResult, ...] = field(default=(), repr=False)

    @property
    def checks(self) -> int:
        return len(self.results)

    @property
    def passed(self) -> bool:
        return not self.violations


def _require_q_below_one(ctx: QContext):
    if ctx.heaviside:
        raise DomainError("f_{alpha,beta} is only treated for 0 < q < 1")


def log_f(params: LcmParams, ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    _require_q_below_one(ctx)
    x = _check_x(x)
    a, b = params.alpha, params.beta
    return (
        log_qgamma(ctx, x + b, cfg)
        - (x + b - a) * log_qbracket(ctx, x)
        - li2_one_minus_qpow(ctx, x, cfg) / ctx.log_q
    )


def _phi_t(t: float, alpha: float, beta: float) -> tuple[float, float]:
    """``phi`` at ``y = exp(-t)``, ``t > 0``, with the sum of its pieces' magnitudes."""
    one_m_y = -math.expm1(-t)
    a = -t * math.exp(-beta * t)
    b = -(beta - alpha) * one_m_y * t
    return a + b + one_m_y, abs(a) + abs(b) + one_m_y


def phi(y: float, params: LcmParams) -> float:
    """``y**beta log y + (beta - alpha)(1 - y) log y + (1 - y)`` on (0, 1)."""
    if not 0.0 < y < 1.0:
        raise DomainError(f"phi is defined for 0 < y < 1, got {y!r}")
    ly = math.log(y)
    return y ** params.beta * ly + (params.beta - params.alpha) * (1.0 - y) * ly + (1.0 - y)


def phi_series(y: float, alpha: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Power-series form of ``phi`` at ``beta = 1``:
    ``y * sum_{k>=2} log(1/y)**k / (k-1)! * (alpha - 1 + 1/k)``."""
    if not 0.0 < y < 1.0:
        raise DomainError(f"phi_series is defined for 0 < y < 1, got {y!r}")
    L = -math.log(y)
    logL = math.log(L)

    def term(j):
        k = j + 1
        c = math.exp(k * logL - math.lgamma(k))
        coef = alpha - 1.0 + 1.0 / k
        # coef vanishes at k = 1/(1 - alpha); the majorant keeps the tail honest
        return c * coef, c * (abs(alpha - 1.0) + 1.0 / k)

    return y * _checked(sum_dominated(term, cfg), "phi_series")


def _dlogf_parts(params: LcmParams, ctx: QContext, x: float, cfg: EvalConfig):
    # psi_q(x+beta) + log(1-q) = log q * S(x+beta); all pieces O(q**x)
    lq = ctx.log_q
    s = _checked(qdigamma_tail(ctx, x + params.beta, cfg), "dlogf") if x + params.beta > 0 else 0.0
    t = x * lq
    r = math.exp(t) / -math.expm1(t)
    parts = (lq * s, -log1m_qpow(t), (params.beta - params.alpha) * lq * r)
    return parts


def dlogf(params: LcmParams, ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """First derivative of ``log f``:
    ``psi_q(x + beta) - log[x]_q + (beta - alpha) log(q) q**x / (1 - q**x)``."""
    _require_q_below_one(ctx)
    x = _check_x(x)
    return math.fsum(_dlogf_parts(params, ctx, x, cfg))


def _dnlogf(params: LcmParams, ctx: QContext, x: float, n: int, cfg: EvalConfig):
    lq = ctx.log_q
    a, b = params.alpha, params.beta
    p = n - 2
    mags = []

    def term(k):
        t = -k * lq
        w = (-t) ** p * lq * math.exp(k * x * lq) / -math.expm1(k * lq)
        ph, mag = _phi_t(t, a, b)
        mags.append(abs(w) * mag)
        return w * ph, mags[-1]

    value = _checked(sum_dominated(term, cfg), "dnlogf_series")
    # magnitude of the summed pieces, used to scale sign tolerances
    return value, math.fsum(mags)


def dnlogf_series(params: LcmParams, ctx: QContext, x: float, n: int,
                  cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """n-th derivative (n >= 2) of ``log f`` from the termwise series
    ``sum_k (k log q)**(n-2) * log(q) q**(k x) / (1 - q**k) * phi(q**k)``."""
    _require_q_below_one(ctx)
    x = _check_x(x)
    if int(n) != n or n < 2:
        raise ValueError(f"series derivative order must be an integer >= 2, got {n!r}")
    return _dnlogf(params, ctx, x, int(n), cfg)[0]


def certify(params: LcmParams, direction: Direction | str = Direction.F_IS_LCM,
            q_grid=DEFAULT_Q_GRID, x_grid=DEFAULT_X_GRID, max_order: int = DEFAULT_ORDER,
            sign_tolerance: float = DEFAULT_SIGN_TOL,
            cfg: EvalConfig = DEFAULT_CONFIG) -> MonotonicityCertificate:
    """Check the alternating-sign pattern of ``(log f)^{(n)}`` on a grid.

    For ``f_is_lcm`` the requirement is ``(-1)**n (log f)^{(n)} >= 0`` for
    ``n = 1..max_order``; ``inverse_is_lcm`` flips every sign.  A point is
    a violation only when the forbidden-sign excess beats
    ``sign_tolerance * (1 + scale)``, where ``scale`` is the sum of
    magnitudes of the pieces that were added to produce the value.
    """
    direction = Direction(direction)
    q_grid = tuple(float(q) for q in q_grid)
    x_grid = tuple(float(x) for x in x_grid)
    if not q_grid or not x_grid:
        raise ValueError("certify needs non-empty grids")
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    if sign_tolerance < 0:
        raise ValueError("sign_tolerance must be >= 0")
    flip = 1.0 if direction is Direction.F_IS_LCM else -1.0
    violations = []
    results = []
    for q in q_grid:
        ctx = make_qcontext(q)
        _require_q_below_one(ctx)
        for x in x_grid:
            for n in range(1, max_order + 1):
                if n == 1:
                    parts = _dlogf_parts(params, ctx, x, cfg)
                    value = math.fsum(parts)
                    scale = sum(abs(v) for v in parts)
                else:
                    res, scale = _dnlogf(params, ctx, x, n, cfg)
                    value = res
                threshold = sign_tolerance * (1.0 + scale)
                ok = flip * (-1.0) ** n * value >= -threshold
                results.append(PointResult(q, x, n, value, threshold, ok))
                if not ok:
                    violations.append(Violation(q, x, n, value))
    return MonotonicityCertificate(
        params=params,
        direction=direction,
        q_grid=q_grid,
        x_grid=x_grid,
        max_order=max_order,
        sign_tolerance=sign_tolerance,
        violations=tuple(violations),
        results=tuple(results),
    )
