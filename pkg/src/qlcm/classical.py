"""Classical (q = 1) log-gamma and digamma from the Stirling series with argument shift."""

from __future__ import annotations

import math

from qlcm.moak import _bernoulli_exact

__all__ = ["log_gamma", "digamma", "stirling_correction", "log_factorial"]

_SHIFT_TO = 15.0
_NTERMS = 10
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_B = _bernoulli_exact(2 * _NTERMS)
_LG_COEF = tuple(float(_B[2 * k] / (2 * k * (2 * k - 1))) for k in range(1, _NTERMS + 1))
_PSI_COEF = tuple(float(_B[2 * k] / (2 * k)) for k in range(1, _NTERMS + 1))


def stirling_correction(x: float) -> float:
    """``log Gamma(x) - (x - 1/2) log x + x - log(2 pi)/2``.

    For integer ``n`` this equals the Stirling remainder ``r_n`` of ``n!``.
    """
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    if x >= _SHIFT_TO:
        inv = 1.0 / x
        inv2 = inv * inv
        acc = 0.0
        for c in reversed(_LG_COEF):
            acc = acc * inv2 + c
        return acc * inv
    m = math.ceil(_SHIFT_TO - x)
    y = x + m
    # corr(x) = corr(x+m) + sum_{i<m} [(x+i+1/2) log(1 + 1/(x+i)) - 1]
    acc = stirling_correction(y)
    for i in range(m):
        z = x + i
        acc += (z + 0.5) * math.log1p(1.0 / z) - 1.0
    return acc


def log_gamma(x: float) -> float:
    """``log Gamma(x)`` for ``x > 0``."""
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + stirling_correction(x)


def digamma(x: float) -> float:
    if not x > 0:
        raise ValueError(f"x must be positive, got {x!r}")
    acc = 0.0
    while x < _SHIFT_TO:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    s = 0.0
    for c in reversed(_PSI_COEF):
        s = s * inv2 + c
    return acc + math.log(x) - 0.5 / x - s * inv2


def log_factorial(n: int) -> float:
    """``log n!``; exact integer factorial up to 20."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n <= 20:
        return math.log(math.factorial(n))
    return log_gamma(n + 1.0)
