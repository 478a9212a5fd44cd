"""log q-gamma, q-digamma and its derivatives, Moak's approximation, Salem's witness."""

from __future__ import annotations

import math
from dataclasses import dataclass

from qlcm.core import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DomainError,
    EvalConfig,
    EvaluationError,
    QContext,
    SeriesResult,
    make_qcontext,
    sum_series,
)

__all__ = [
    "LemmaViolation",
    "SalemWitness",
    "log1m_qpow",
    "log_qbracket",
    "log_qgamma",
    "log_qgamma_series",
    "qdigamma",
    "qdigamma_tail",
    "qdigamma_deriv",
    "qdigamma_deriv_series",
    "moak_I",
    "salem_residual",
    "solve_salem_witness",
]

X_MIN = 1e-8


class LemmaViolation(EvaluationError):
    """No witness in [0, 1] brackets a root of the Salem residual."""


@dataclass(frozen=True)
class SalemWitness:
    a: float
    residual: float


def _checked(res: SeriesResult, what: str) -> float:
    if not res.converged:
        raise ConvergenceError(
            f"{what}: no convergence after {res.terms_used} terms (tail {res.tail_bound:.3g})"
        )
    return res.value


def _check_x(x: float) -> float:
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    if x < X_MIN:
        raise DomainError(f"x below supported minimum {X_MIN}: {x!r}")
    return x


def log1m_qpow(t: float) -> float:
    """``log(1 - exp(t))`` for ``t < 0`` without cancellation."""
    if t > -0.6931471805599453:
        return math.log(-math.expm1(t))
    return math.log1p(-math.exp(t))


def log_qbracket(ctx: QContext, x: float) -> float:
    """``log((1 - q**x) / (1 - q))``, the log of the q-number [x]_q."""
    if ctx.q < 1.0:
        return log1m_qpow(x * ctx.log_q) - log1m_qpow(ctx.log_q)
    # (q**x - 1)/(q - 1) = p**(1-x) (1 - p**x)/(1 - p) with p = 1/q
    lp = -ctx.log_q
    return (1.0 - x) * lp + log1m_qpow(x * lp) - log1m_qpow(lp)


def log_qgamma_series(ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Series part of ``log Gamma_{hat q}(x)``:
    ``sum_{j>=0} log(1 - p**(j+1)) - log(1 - p**(j+x))`` with ``p = hat_q``."""
    x = _check_x(x)
    lp = ctx.log_hat_q

    def term(k):
        j = k - 1
        return log1m_qpow((j + 1) * lp) - log1m_qpow((j + x) * lp)

    return sum_series(term, cfg)


def log_qgamma(ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """``log Gamma_q(x)`` for ``x > 0``; ``q > 1`` goes through ``1/q``.

    >>> round(log_qgamma(make_qcontext(0.5), 3.0), 12) == round(math.log(1.5), 12)
    True
    """
    x = _check_x(x)
    lp = ctx.log_hat_q
    s = _checked(log_qgamma_series(ctx, x, cfg), "log_qgamma")
    val = (1.0 - x) * log1m_qpow(lp) + s
    if ctx.heaviside:
        val += 0.5 * (x - 1.0) * (x - 2.0) * ctx.log_q
    return val


def qdigamma_tail(ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """``sum_{k>=1} p**(k x) / (1 - p**k)`` with ``p = hat_q``."""
    x = _check_x(x)
    lp = ctx.log_hat_q

    def term(k):
        return math.exp(k * x * lp) / -math.expm1(k * lp)

    return sum_series(term, cfg)


def qdigamma(ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """q-digamma ``psi_q(x)`` for ``x > 0``."""
    lp = ctx.log_hat_q
    s = _checked(qdigamma_tail(ctx, x, cfg), "qdigamma")
    val = -log1m_qpow(lp) + lp * s
    if ctx.heaviside:
        val += (x - 1.5) * ctx.log_q
    return val


def qdigamma_deriv_series(ctx: QContext, x: float, m: int,
                          cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """``sum_{k>=1} k**m q**(k x) / (1 - q**k)`` for ``0 < q < 1``."""
    if int(m) != m or m < 1:
        raise ValueError(f"derivative order must be an integer >= 1, got {m!r}")
    if ctx.heaviside:
        raise DomainError("qdigamma_deriv is only supported for 0 < q < 1")
    x = _check_x(x)
    lq = ctx.log_q
    m = int(m)

    def term(k):
        return k ** m * math.exp(k * x * lq) / -math.expm1(k * lq)

    return sum_series(term, cfg)


def qdigamma_deriv(ctx: QContext, x: float, m: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """m-th derivative of ``psi_q`` at ``x``, ``0 < q < 1``:
    ``(log q)**(m+1) * sum k**m q**(k x) / (1 - q**k)``."""
    s = _checked(qdigamma_deriv_series(ctx, x, m, cfg), "qdigamma_deriv")
    return ctx.log_q ** (int(m) + 1) * s


def moak_I(ctx: QContext, x: float) -> float:
    """Moak's approximation ``log[x]_q + log(q) q**x / (2 (1 - q**x))``."""
    if ctx.heaviside:
        raise DomainError("moak_I is only supported for 0 < q < 1")
    x = _check_x(x)
    t = x * ctx.log_q
    return log_qbracket(ctx, x) + 0.5 * ctx.log_q * math.exp(t) / -math.expm1(t)


def salem_residual(ctx: QContext, x: float, a: float, cfg: EvalConfig = DEFAULT_CONFIG,
                   _tail: float | None = None) -> float:
    """``psi_q(x)`` minus the Salem right-hand side at shift ``a``.

    Written so that the large common terms cancel analytically: for
    ``q < 1`` every remaining piece is O(q**x).
    """
    x = _check_x(x)
    s = qdigamma_tail(ctx, x, cfg).value if _tail is None else _tail
    if not ctx.heaviside:
        lq = ctx.log_q
        t = x * lq
        return lq * s - log1m_qpow((x + a) * lq) - lq * math.exp(t) / -math.expm1(t)
    # q > 1, expressed in p = 1/q with L = log q
    L = ctx.log_q
    t = -x * L
    return (1.0 - 2.0 * a) * L - log1m_qpow(-(x + a) * L) - L * (s - math.exp(t) / -math.expm1(t))


def solve_salem_witness(ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG,
                        max_iter: int = 100, tol: float = 1e-12) -> SalemWitness:
    """Find ``a`` in [0, 1] solving Salem's identity for ``psi_q(x)`` by bisection."""
    x = _check_x(x)
    s = _checked(qdigamma_tail(ctx, x, cfg), "solve_salem_witness")

    def g(a):
        return salem_residual(ctx, x, a, cfg, _tail=s)

    lo, hi = 0.0, 1.0
    g_lo, g_hi = g(lo), g(hi)
    if g_lo * g_hi > 0.0:
        # no sign change; an endpoint that already satisfies tol is still a witness
        if min(abs(g_lo), abs(g_hi)) <= tol:
            return SalemWitness(lo, g_lo) if abs(g_lo) <= abs(g_hi) else SalemWitness(hi, g_hi)
        raise LemmaViolation(
            f"no witness in [0, 1] for q={ctx.q!r}, x={x!r}: g(0)={g_lo:.6g}, g(1)={g_hi:.6g}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0:
            return SalemWitness(mid, 0.0)
        if (g_mid < 0.0) == (g_lo < 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
        if hi - lo <= 4 * math.ulp(mid):
            break
    if abs(g_lo) <= abs(g_hi):
        return SalemWitness(lo, g_lo)
    return SalemWitness(hi, g_hi)
