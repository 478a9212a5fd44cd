"""Moak's q-Stirling expansion: Bernoulli numbers, P_k polynomials, C_q and the truncated series."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from qlcm.core import DEFAULT_CONFIG, DomainError, EvalConfig, EvaluationError, QContext
from qlcm.dilog import li2, li2_one_minus_qpow
from qlcm.qgamma import _check_x, log_qbracket

__all__ = [
    "PkPolynomial",
    "BernoulliTable",
    "pk_polynomials",
    "bernoulli",
    "cq_constant",
    "theta_sum",
    "moak_expansion",
    "DEFAULT_TERMS",
]

DEFAULT_TERMS = 3
MAX_TERMS = 10


@dataclass(frozen=True)
class PkPolynomial:
    """Integer polynomial, coefficients in ascending powers."""

    degree: int
    coeffs: tuple[int, ...]

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


@dataclass(frozen=True)
class BernoulliTable:
    exact: tuple[Fraction, ...]

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self.exact)

    def __getitem__(self, n: int) -> float:
        return float(self.exact[n])

    def __len__(self) -> int:
        return len(self.exact)


@lru_cache(maxsize=None)
def _pk_table(kmax: int) -> tuple[PkPolynomial, ...]:
    polys = [PkPolynomial(0, (1,))]
    prev = [1]
    for k in range(1, kmax + 1):
        # P_k = (z - z^2) P'_{k-1} + (k z + 1) P_{k-1}
        deriv = [i * c for i, c in enumerate(prev)][1:]
        new = [0] * (len(prev) + 1)
        for i, c in enumerate(deriv):
            new[i + 1] += c
            new[i + 2] -= c
        for i, c in enumerate(prev):
            new[i] += c
            new[i + 1] += k * c
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        polys.append(PkPolynomial(len(new) - 1, tuple(new)))
        prev = new
    return tuple(polys)


def pk_polynomials(kmax: int) -> list[PkPolynomial]:
    """[P_0, ..., P_kmax] from the first-order recurrence, in exact integers."""
    if kmax < 0:
        raise ValueError(f"kmax must be >= 0, got {kmax}")
    return list(_pk_table(kmax))


def _pk(k: int) -> PkPolynomial:
    # P_{-1} = P_0 = 1
    return _pk_table(max(k, 0))[max(k, 0)]


@lru_cache(maxsize=None)
def _bernoulli_exact(n: int) -> tuple[Fraction, ...]:
    # B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j, with B_1 = -1/2
    b = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum(math.comb(m + 1, j) * b[j] for j in range(m))
        b.append(-acc / (m + 1))
    return tuple(b)


def bernoulli(table_size: int) -> BernoulliTable:
    """Bernoulli numbers ``B_0 .. B_table_size`` (``B_1 = -1/2``)."""
    if table_size < 2:
        raise ValueError(f"table_size must be >= 2, got {table_size}")
    if table_size > 60:
        warnings.warn(
            f"Bernoulli numbers beyond B_60 lose relative precision as floats (asked {table_size})",
            RuntimeWarning,
            stacklevel=2,
        )
    return BernoulliTable(_bernoulli_exact(table_size))


def theta_sum(log_p: float, abs_tol: float = 1e-300) -> float:
    """Bilateral sum ``sum_m r**(m(6m+1)) - r**((2m+1)(3m+1))``, ``r = exp(4 pi^2 / log p)``."""
    if not log_p < 0.0:
        raise DomainError("theta_sum needs log p < 0")
    c = 4.0 * math.pi ** 2 / log_p
    total = 0.0
    m = 0
    while True:
        e_vals = []
        for mm in ((m,) if m == 0 else (m, -m)):
            e1 = mm * (6 * mm + 1)
            e2 = (2 * mm + 1) * (3 * mm + 1)
            total += math.exp(c * e1) - math.exp(c * e2)
            e_vals.extend((e1, e2))
        if m > 0 and all(math.exp(c * e) < abs_tol for e in e_vals if e > 0):
            break
        m += 1
    return total


def cq_constant(ctx: QContext, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Moak's constant ``C_{hat q}``; tends to ``log(2 pi)/2`` as ``q -> 1``."""
    lp = ctx.log_hat_q
    p = ctx.hat_q
    theta = theta_sum(lp, cfg.abs_tol)
    if not theta > 0.0:
        raise EvaluationError(f"theta sum is not positive ({theta!r}) at q={ctx.q!r}")
    # (p - 1)/log p > 0 for 0 < p < 1
    ratio = -math.expm1(lp) / -lp
    return 0.5 * math.log(2.0 * math.pi) + 0.5 * math.log(ratio) - lp / 24.0 + math.log(theta)


def moak_expansion(ctx: QContext, x: float, K: int = DEFAULT_TERMS,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """K-term truncation of Moak's asymptotic series for ``log Gamma_q(x)``."""
    x = _check_x(x)
    if int(K) != K or K < 1:
        raise ValueError(f"K must be an integer >= 1, got {K!r}")
    if K > MAX_TERMS:
        raise ValueError(f"K > {MAX_TERMS} is not supported")
    K = int(K)
    lq = ctx.log_q
    if ctx.heaviside:
        li2_term = li2(-math.expm1(x * lq), cfg) / lq
    else:
        li2_term = li2_one_minus_qpow(ctx, x, cfg) / lq
    val = (x - 0.5) * log_qbracket(ctx, x) + li2_term + 0.5 * ctx.heaviside * lq
    val += cq_constant(ctx, cfg)

    lp = ctx.log_hat_q
    px = math.exp(x * lp)
    u = lp / math.expm1(x * lp)
    bern = _bernoulli_exact(2 * K)
    corr = 0.0
    for k in range(1, K + 1):
        coef = float(bern[2 * k] / math.factorial(2 * k))
        corr += coef * u ** (2 * k - 1) * px * _pk(2 * k - 3)(px)
    return val + corr
