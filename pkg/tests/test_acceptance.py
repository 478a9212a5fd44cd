"""Acceptance criteria, one test per criterion.

Every test records a PASS/FAIL line (shown in the terminal summary, or inline
with ``-s``) before asserting, so a failing criterion still reports its numbers.
"""
import math
import subprocess
import sys

import mpmath
import pytest

from qlcm.cli import main
from qlcm.core import make_qcontext
from qlcm.dilog import PI2_6, li2, li2_one_minus_qpow
from qlcm.inequalities import factorial_bounds, qgamma_bounds, stirling_remainder
from qlcm.lcm import LcmParams, phi, phi_series
from qlcm.moak import cq_constant, moak_expansion
from qlcm.qgamma import log_qgamma, solve_salem_witness
from qlcm.suites import run_suite

Q_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _quiet_main(capsys, argv):
    code = main(argv)
    out, _ = capsys.readouterr()
    return code, out


def test_telescoping(report):
    worst = 0.0
    for q in Q_GRID:
        ctx = make_qcontext(q)
        for n in range(1, 11):
            exact = math.fsum(math.log((1 - q ** k) / (1 - q)) for k in range(1, n + 1))
            worst = max(worst, abs(log_qgamma(ctx, n + 1.0) - exact))
    ok = report(1, "telescoping", worst <= 1e-12, f"max abs error {worst:.3e} (tol 1e-12)")
    assert ok


@pytest.mark.xfail(strict=True, reason="exact gap at q=0.999, x=7 is 7.50e-3 (mpmath), above the 5e-3 tolerance")
def test_classical_limit(report):
    errors = {}
    for x in (0.5, 1.5, 3.0, 7.0):
        errors[x] = [abs(log_qgamma(make_qcontext(q), x) - math.lgamma(x)) for q in (0.9, 0.99, 0.999)]
    final = max(e[-1] for e in errors.values())
    decreasing = all(e[0] > e[1] > e[2] for e in errors.values())
    ok = report(2, "classical limit", final <= 5e-3 and decreasing,
                f"max error at q=0.999 {final:.3e} (tol 5e-3), strictly decreasing={decreasing}")
    assert ok


@pytest.mark.xfail(strict=True, reason="exact Li2(1-q^x)/log q + x at q=0.999, x=5 is 6.25e-3 (mpmath), above 2e-3")
def test_dilogarithm(report):
    reflection = 0.0
    for i in range(1, 201):
        z = i / 201
        rhs = PI2_6 - math.log(z) * math.log1p(-z)
        reflection = max(reflection, abs(li2(z) + li2(1 - z) - rhs))
    at_one = abs(li2(1.0) - math.pi ** 2 / 6)
    ctx = make_qcontext(0.999)
    limit = max(abs(li2_one_minus_qpow(ctx, x) / ctx.log_q + x) for x in (1.0, 2.0, 5.0))
    ok = report(3, "dilogarithm", reflection <= 1e-12 and at_one <= 1e-12 and limit <= 2e-3,
                f"reflection {reflection:.3e}, Li2(1) {at_one:.3e}, limit {limit:.3e}")
    assert ok


# The two criteria above fail only on their largest x.  The companions below pin
# the exact gaps against mpmath and check the attainable parts.

# mpmath, 30 digits, product truncated at 80000 factors:
# log Gamma_q(x) - log Gamma(x) at q = 0.999
EXACT_GAMMA_GAP = {0.5: -1.8757295836130522e-4, 1.5: 6.2520843756232425e-5,
                   3.0: -5.0012504168229792e-4, 7.0: -7.5002072910831108e-3}
# mpmath: Li2(1 - q**x)/log q + x at q = 0.999
EXACT_LI2_GAP = {1.0: 2.5009727781512002e-4, 2.0: 1.0002778889441067e-3,
                 5.0: 6.2496513881366672e-3}


def test_classical_limit_exact_gaps():
    ctx = make_qcontext(0.999)
    for x, gap in EXACT_GAMMA_GAP.items():
        assert log_qgamma(ctx, x) - math.lgamma(x) == pytest.approx(gap, rel=1e-8, abs=1e-13)
    for x in (0.5, 1.5, 3.0):
        assert abs(log_qgamma(ctx, x) - math.lgamma(x)) <= 5e-3
    for x in EXACT_GAMMA_GAP:
        e = [abs(log_qgamma(make_qcontext(q), x) - math.lgamma(x)) for q in (0.9, 0.99, 0.999)]
        assert e[0] > e[1] > e[2]


def test_dilogarithm_exact_gaps():
    ctx = make_qcontext(0.999)
    for x, gap in EXACT_LI2_GAP.items():
        assert li2_one_minus_qpow(ctx, x) / ctx.log_q + x == pytest.approx(gap, rel=1e-8)
    for x in (1.0, 2.0):
        assert abs(li2_one_minus_qpow(ctx, x) / ctx.log_q + x) <= 2e-3


def test_moak_expansion(report):
    ctx = make_qcontext(0.5)
    xs = (20.0, 25.0, 30.0, 40.0, 50.0, 75.0, 100.0, 200.0)
    worst = max(abs(moak_expansion(ctx, x, 2) - log_qgamma(ctx, x)) for x in xs)
    c = abs(cq_constant(make_qcontext(0.999)) - HALF_LOG_2PI)
    ok = report(4, "q-Stirling expansion", worst <= 1e-9 and c <= 1e-3,
                f"max error for x>=20 {worst:.3e} (tol 1e-9), |C_0.999 - log(2pi)/2| {c:.3e}")
    assert ok


def test_certificates(report, capsys):
    codes = {s: _quiet_main(capsys, ["verify", s])[0] for s in ("thm-2.1", "thm-2.2", "thm-2.3")}
    code, out = _quiet_main(capsys, ["verify", "thm-2.1", "--alpha", "0.75"])
    located = [line for line in out.splitlines()[1:] if line.endswith(",false")]
    ok = report(5, "log-complete-monotonicity certificates",
                all(c == 0 for c in codes.values()) and code == 1 and bool(located),
                f"exit codes {codes}, alpha=0.75 exit {code} with {len(located)} located violations")
    assert ok


def test_phi_dichotomy(report):
    ys = [i / 201 for i in range(1, 201)]
    lo = LcmParams(0.5, 1.0)
    hi = LcmParams(1.0, 1.0)
    worst_lo = max(phi(y, lo) for y in ys)
    worst_hi = min(phi(y, hi) for y in ys)
    identity = max(abs(phi(y, LcmParams(a, 1.0)) - phi_series(y, a))
                   for y in (0.1, 0.5, 0.9) for a in (0.0, 0.25, 0.5, 0.75, 1.0, 2.0))
    ok = report(6, "phi sign dichotomy",
                worst_lo <= 1e-15 and worst_hi >= -1e-15 and identity <= 1e-12,
                f"max phi(alpha=0.5) {worst_lo:.3e}, min phi(alpha=1) {worst_hi:.3e}, "
                f"series residual {identity:.3e}")
    assert ok


def _witness_oracle(q, x):
    """Solve for the witness in closed form at 50 digits."""
    with mpmath.workdps(50):
        q = mpmath.mpf(q)
        lq = mpmath.log(q)
        n = int(55 * math.log(10) / -math.log(float(q)) / x) + 1
        psi = -mpmath.log(1 - q) + lq * mpmath.fsum(q ** (k * x) / (1 - q ** k) for k in range(1, n))
        shift = psi - lq * q ** x / (1 - q ** x)
        return float(mpmath.log(1 - (1 - q) * mpmath.exp(shift)) / lq - x)


def test_witness(report):
    rows = run_suite("lemma-2.1")
    failed = [r for r in rows if not r["passed"]]
    w = solve_salem_witness(make_qcontext(0.5), 1.0)
    oracle = _witness_oracle(0.5, 1.0)
    ok = report(7, "witness",
                not failed and abs(w.a - 0.5426) <= 1e-3 and abs(w.a - oracle) <= 1e-10,
                f"{len(rows)} grid points, {len(failed)} failures; a(0.5, 1) = {w.a:.6f} "
                f"(oracle {oracle:.6f})")
    assert ok


def test_inequality_sweeps(report):
    suites = ("cor-3.1", "cor-3.2", "cor-3.3", "cor-3.4", "cor-3.5", "gurland")
    failed = {s: sum(not r["passed"] for r in run_suite(s)) for s in suites}
    qg = max(max(abs(r.slack_low), abs(r.slack_high))
             for r in (qgamma_bounds(1.0, make_qcontext(q)) for q in Q_GRID + (0.99,)))
    fb = factorial_bounds(1)
    triple = fb.lower == fb.middle == fb.upper
    r1 = abs(stirling_remainder(1).r_n - (1 - HALF_LOG_2PI))
    ok = report(8, "inequality sweeps",
                not any(failed.values()) and qg <= 1e-12 and triple and r1 <= 1e-12,
                f"failures {failed}; slack at x=1 {qg:.3e}; factorial n=1 equal={triple}; "
                f"r_1 error {r1:.3e}")
    assert ok


def test_stirling_remainder(report):
    bad = [n for n in range(1, 1001)
           if not (stirling_remainder(n).robbins_ok and stirling_remainder(n).report().satisfied)]
    ok = report(9, "Stirling remainder", not bad, f"n=1..1000, {len(bad)} outside either band")
    assert ok


def test_determinism(report):
    cmd = [sys.executable, "-m", "qlcm", "verify", "all", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and len(first.stdout) > 0
    ok = report(10, "determinism", same and first.returncode == 0,
                f"{len(first.stdout)} bytes, identical={same}, exit {first.returncode}")
    assert ok
