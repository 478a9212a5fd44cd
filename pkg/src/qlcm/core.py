"""Shared types for the q-gamma family and the series summation engine."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "DomainError",
    "EvaluationError",
    "ConvergenceError",
    "PreconditionError",
    "QContext",
    "EvalConfig",
    "SeriesResult",
    "DEFAULT_CONFIG",
    "make_qcontext",
    "sum_series",
    "sum_dominated",
]


class DomainError(ValueError):
    """Argument outside the domain where a function is defined or supported."""


class PreconditionError(ValueError):
    """A bound or theorem was requested outside its hypotheses."""


class EvaluationError(ArithmeticError):
    """Numerical evaluation produced an unusable value."""


class ConvergenceError(EvaluationError):
    """A series did not reach the requested tolerance within ``max_terms``."""


@dataclass(frozen=True)
class QContext:
    q: float
    hat_q: float
    heaviside: int
    log_q: float

    @property
    def log_hat_q(self) -> float:
        return -abs(self.log_q)


@dataclass(frozen=True)
class EvalConfig:
    rel_tol: float = 1e-14
    abs_tol: float = 1e-300
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.abs_tol < 0:
            raise ValueError(f"abs_tol must be non-negative, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    converged: bool
    tail_bound: float

    def __float__(self) -> float:
        return self.value


def make_qcontext(q: float) -> QContext:
    """Build the branch-resolved context for deformation parameter ``q``.

    For ``q > 1`` the evaluators work with ``hat_q = 1/q`` and the
    Heaviside flag set.

    >>> make_qcontext(2.0).hat_q
    0.5
    """
    q = float(q)
    if not math.isfinite(q) or q <= 0.0:
        raise DomainError(f"q must be a positive finite real, got {q!r}")
    if q == 1.0:
        raise DomainError("q = 1 is the classical limit and is not representable")
    if q < 1.0:
        return QContext(q=q, hat_q=q, heaviside=0, log_q=math.log(q))
    return QContext(q=q, hat_q=1.0 / q, heaviside=1, log_q=math.log(q))


_RHO_MAX = math.nextafter(1.0, 0.0)


def sum_series(term: Callable[[int], float], cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Sum ``term(1) + term(2) + ...`` until a geometric tail estimate is small.

    After each term ``t_K`` the remaining tail is estimated as
    ``|t_K| * rho / (1 - rho)`` with ``rho = |t_K / t_{K-1}|`` clamped to
    ``[0, 1)``.  A zero term gives a zero tail and ends the sum.
    Summation is compensated (Neumaier), so long slowly decaying series do
    not accumulate rounding drift.
    """

    def pair(k):
        t = term(k)
        return t, abs(t)

    return sum_dominated(pair, cfg)


def sum_dominated(term: Callable[[int], tuple[float, float]],
                  cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Like :func:`sum_series`, but ``term(k)`` returns ``(t_k, m_k)`` with
    ``|t_k| <= m_k`` and the tail estimate is driven by the majorant ``m_k``.

    Use this when individual terms can vanish or change sign while the
    series as a whole keeps decaying geometrically.
    """
    total = 0.0
    comp = 0.0
    prev = None
    tail = math.inf
    k = 0
    for k in range(1, cfg.max_terms + 1):
        t, m = term(k)
        if not (math.isfinite(t) and math.isfinite(m)):
            raise EvaluationError(f"series term {k} is not finite: {t!r}")
        s = total + t
        if abs(total) >= abs(t):
            comp += (total - s) + t
        else:
            comp += (t - s) + total
        total = s
        if m == 0.0:
            return SeriesResult(total + comp, k, True, 0.0)
        if prev is None:
            prev = m
            continue
        rho = min(m / prev, _RHO_MAX)
        tail = m * rho / (1.0 - rho)
        prev = m
        if tail <= 0.1 * max(cfg.rel_tol * abs(total + comp), cfg.abs_tol):
            return SeriesResult(total + comp, k, True, tail)
    value = total + comp
    return SeriesResult(value, k, tail <= max(cfg.rel_tol * abs(value), cfg.abs_tol), tail)
