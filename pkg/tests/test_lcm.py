import math

import pytest
from hypothesis import given, settings, strategies as st

from qlcm.core import DomainError, make_qcontext
from qlcm.lcm import (
    DEFAULT_X_GRID,
    Direction,
    LcmParams,
    certify,
    dlogf,
    dnlogf_series,
    log_f,
    phi,
    phi_series,
)

HALF = make_qcontext(0.5)
P_HALF = LcmParams(0.5, 1.0)
P_ONE = LcmParams(1.0, 1.0)


def test_params_validation():
    with pytest.raises(DomainError):
        LcmParams(0.0, -0.1)


def test_log_f_value():
    # log Gamma_q(2) - 0 - Li2(1/2)/log(1/2)
    assert log_f(P_ONE, HALF, 1.0) == pytest.approx(0.5822405264650125 / math.log(2.0), abs=1e-14)


@pytest.mark.parametrize("alpha", [-3.0, 0.0, 0.3, 2.0, 7.5])
def test_log_f_alpha_free_at_one(alpha):
    assert log_f(LcmParams(alpha, 1.0), HALF, 1.0) == pytest.approx(log_f(P_ONE, HALF, 1.0), abs=1e-14)


def test_log_f_decreasing_for_half():
    vals = [log_f(P_HALF, HALF, x) for x in (1.0, 2.0, 4.0, 8.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_log_f_rejects_q_above_one():
    with pytest.raises(DomainError):
        log_f(P_HALF, make_qcontext(2.0), 1.0)


def test_phi_values():
    assert abs(phi(0.999999, LcmParams(0.3, 1.0))) < 1e-5
    assert phi(0.25, P_ONE) == pytest.approx(0.25 * math.log(0.25) + 0.75, abs=1e-15)
    assert phi(0.25, P_ONE) > 0
    assert phi(0.25, P_HALF) == pytest.approx(-0.11643397569993164, abs=1e-15)
    with pytest.raises(DomainError):
        phi(1.0, P_ONE)
    with pytest.raises(DomainError):
        phi(0.0, P_ONE)


def test_phi_sign_dichotomy():
    for i in range(1, 201):
        y = i / 201
        assert phi(y, P_HALF) <= 1e-15
        assert phi(y, P_ONE) >= -1e-15


@pytest.mark.parametrize("y", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 0.75, -2.0])
def test_phi_series_identity(y, alpha):
    assert abs(phi(y, LcmParams(alpha, 1.0)) - phi_series(y, alpha)) <= 1e-12


def test_dlogf_signs():
    assert dlogf(P_HALF, HALF, 2.0) <= 0
    assert dlogf(P_ONE, HALF, 2.0) >= 0


@pytest.mark.parametrize("params", [P_HALF, P_ONE, LcmParams(0.0, 1.5), LcmParams(-1.0, 3.0)])
@pytest.mark.parametrize("q, x", [(0.5, 1.3), (0.2, 0.7), (0.9, 4.0)])
def test_dlogf_finite_difference(params, q, x):
    ctx = make_qcontext(q)
    h = 1e-5
    fd = (log_f(params, ctx, x + h) - log_f(params, ctx, x - h)) / (2 * h)
    assert fd == pytest.approx(dlogf(params, ctx, x), rel=1e-6, abs=1e-9)


def test_dlogf_vanishes_at_infinity():
    assert abs(dlogf(P_HALF, HALF, 200.0)) < 1e-12
    assert abs(dlogf(P_ONE, HALF, 200.0)) < 1e-12


def test_second_derivative_signs():
    assert dnlogf_series(P_HALF, HALF, 1.0, 2) >= 0
    assert dnlogf_series(P_ONE, HALF, 1.0, 2) <= 0


@pytest.mark.parametrize("params", [P_HALF, P_ONE, LcmParams(0.75, 1.0), LcmParams(0.0, 1.5)])
@pytest.mark.parametrize("q, x", [(0.5, 1.0), (0.3, 2.5), (0.8, 0.6)])
def test_series_derivatives_match_differences(params, q, x):
    ctx = make_qcontext(q)
    h = 1e-4
    d2 = (log_f(params, ctx, x + h) - 2 * log_f(params, ctx, x) + log_f(params, ctx, x - h)) / h ** 2
    assert d2 == pytest.approx(dnlogf_series(params, ctx, x, 2), rel=1e-5, abs=1e-7)
    d2b = (dlogf(params, ctx, x + h) - dlogf(params, ctx, x - h)) / (2 * h)
    assert d2b == pytest.approx(dnlogf_series(params, ctx, x, 2), rel=1e-5, abs=1e-8)
    d3 = (dlogf(params, ctx, x + h) - 2 * dlogf(params, ctx, x) + dlogf(params, ctx, x - h)) / h ** 2
    assert d3 == pytest.approx(dnlogf_series(params, ctx, x, 3), rel=1e-5, abs=1e-6)


def test_dnlogf_order_check():
    with pytest.raises(ValueError):
        dnlogf_series(P_HALF, HALF, 1.0, 1)


def test_certify_half_alpha_direction():
    cert = certify(P_HALF, Direction.F_IS_LCM, q_grid=[i / 10 for i in range(1, 10)],
                   x_grid=[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0], max_order=6)
    assert cert.passed
    assert cert.checks == 9 * 7 * 6


def test_certify_inverse_direction():
    cert = certify(P_ONE, "inverse_is_lcm", q_grid=[i / 10 for i in range(1, 10)],
                   x_grid=[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0], max_order=6)
    assert cert.passed


def test_certify_only_if_direction():
    cert = certify(LcmParams(0.75, 1.0), Direction.F_IS_LCM)
    assert not cert.passed
    assert cert.violations
    for v in cert.violations:
        signed = (-1.0) ** v.n * v.value
        assert signed < -cert.sign_tolerance


@pytest.mark.parametrize("alpha, beta", [(0.5, 1.0), (0.5, 2.0), (0.0, 1.5), (-1.0, 3.0)])
def test_certify_general_region(alpha, beta):
    assert certify(LcmParams(alpha, beta)).passed


def test_certificate_ordering_is_lexicographic():
    cert = certify(LcmParams(0.75, 1.0), q_grid=[0.9, 0.1], x_grid=[5.0, 0.5], max_order=3)
    keys = [(r.q, r.x, r.n) for r in cert.results]
    assert keys == [(q, x, n) for q in (0.9, 0.1) for x in (5.0, 0.5) for n in (1, 2, 3)]
    assert cert.passed == (not cert.violations)


def test_certify_argument_checks():
    with pytest.raises(ValueError):
        certify(P_HALF, q_grid=[])
    with pytest.raises(ValueError):
        certify(P_HALF, max_order=0)


def test_default_x_grid():
    assert len(DEFAULT_X_GRID) == 25
    assert DEFAULT_X_GRID[0] == 0.1 and DEFAULT_X_GRID[-1] == 50.0


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.95), st.floats(min_value=0.05, max_value=40.0),
       st.floats(min_value=-2.0, max_value=0.5), st.floats(min_value=1.0, max_value=4.0))
def test_general_region_second_derivative_sign(q, x, alpha, beta):
    # 2 alpha <= 1 <= beta: phi <= 0 termwise, so (log f)'' >= 0
    assert dnlogf_series(LcmParams(alpha, beta), make_qcontext(q), x, 2) >= -1e-14
