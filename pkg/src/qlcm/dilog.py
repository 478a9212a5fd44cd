"""Real dilogarithm on (-inf, 1]."""

from __future__ import annotations

import math

from qlcm.core import DEFAULT_CONFIG, DomainError, EvalConfig, QContext, sum_series

__all__ = ["li2", "li2_series", "li2_one_minus_qpow"]

PI2_6 = math.pi ** 2 / 6.0


def li2_series(z: float, cfg: EvalConfig = DEFAULT_CONFIG):
    """Power series ``sum z**k / k**2``; only used for ``|z| <= 1/2``."""
    if z == 0.0:
        return sum_series(lambda k: 0.0, cfg)

    def term(k, z=z):
        return z ** k / (k * k)

    return sum_series(term, cfg)


def _li2_unit(z: float, cfg: EvalConfig) -> float:
    # 0 <= z <= 1
    if z <= 0.5:
        return li2_series(z, cfg).value
    if z == 1.0:
        return PI2_6
    w = 1.0 - z
    return PI2_6 - math.log(z) * math.log(w) - li2_series(w, cfg).value


def li2(z: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Dilogarithm ``Li2(z) = -int_0^z log(1-t)/t dt`` for real ``z <= 1``.

    Uses the power series on ``|z| <= 1/2``, reflection on ``(1/2, 1]``,
    Landen's identity on ``[-1, -1/2)`` and inversion below ``-1``.
    """
    z = float(z)
    if not z <= 1.0:
        raise DomainError(f"li2 is real only for z <= 1, got {z!r}")
    if -0.5 <= z <= 1.0:
        return _li2_unit(z, cfg) if z >= 0.0 else li2_series(z, cfg).value
    if z >= -1.0:
        # Landen: Li2(z) = -Li2(z/(z-1)) - log(1-z)**2 / 2
        return -_li2_unit(z / (z - 1.0), cfg) - 0.5 * math.log1p(-z) ** 2
    # inversion: Li2(z) = -pi^2/6 - log(-z)**2 / 2 - Li2(1/z)
    return -PI2_6 - 0.5 * math.log(-z) ** 2 - li2(1.0 / z, cfg)


def li2_one_minus_qpow(ctx: QContext, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """``Li2(1 - q**x)`` for ``0 < q < 1``, ``x > 0``.

    Works from ``t = x*log(q)`` so that neither ``1 - q**x`` (small x) nor
    ``log(q**x)`` (large x) is formed by cancellation.
    """
    if ctx.q >= 1.0:
        raise DomainError("li2_one_minus_qpow needs 0 < q < 1")
    if not x > 0.0:
        raise DomainError(f"x must be positive, got {x!r}")
    t = x * ctx.log_q
    u = math.exp(t)
    if u >= 0.5:
        return li2_series(-math.expm1(t), cfg).value
    return PI2_6 - t * math.log1p(-u) - li2_series(u, cfg).value
