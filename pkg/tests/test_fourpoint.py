from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubeineq.errors import DomainError, UsageError
from cubeineq.fourpoint import (
    G, FourPointInput, antidiagonal_check, check_G_max, cosh_check, cosh_sides, curve_crossing,
    curve_second_derivative_at_crossing, curve_second_derivative_fd, curve_slope_at_zero, four_point_check,
    four_point_sides, g_along_curve, hessian_center, hessian_report, hessian_sign_flip, partner_exponent,
    pde_battery, pde_residual, phi0_zero_count, phi2_prime_poly, phi_chain, phi_chain_check, pprime_check,
    theta, young_endpoint_ddp,
)
from cubeineq.regions import young_endpoint_dp, young_endpoint_p

LOG2_6 = math.log2(6.0)
Q_YOUNG = (1.5, 2.0, 3.0, 5.0)


@pytest.mark.parametrize("q", Q_YOUNG)
def test_G_equality_points(q):
    for x, y in ((0, 0), (1, 0), (0, 1), (1, 1)):
        assert G(q, x, y) == pytest.approx(1.0, abs=1e-15)
    assert G(q, 0.5, 0.5) == pytest.approx(1.0, abs=1e-12)


def test_G_symmetry_example():
    assert G(2.0, 0.3, 0.8) == pytest.approx(G(2.0, 0.2, 0.7), abs=1e-15)


@given(st.floats(1.0, 8.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_G_symmetries(q, x, y):
    g = G(q, x, y)
    assert g == pytest.approx(G(q, y, x), abs=1e-12)
    assert g == pytest.approx(G(q, 1 - y, 1 - x), abs=1e-12)


@given(st.floats(1.0, 8.0), st.floats(0.0, 1.0))
def test_G_boundary(q, y):
    p = young_endpoint_p(q)
    b = G(q, 0.0, y)
    assert b == pytest.approx((1 - y) ** (q / p) + y ** (q / p), abs=1e-14)
    assert b <= 1.0 + 1e-14


def test_endpoint_identity():
    # 2^{2q/p} - 2^q = 2, checked as 2^{2q/p - q} - 1 = 2^{1-q} to stay scale free.
    for q in np.linspace(1.0, 60.0, 200):
        p = young_endpoint_p(q)
        lhs = math.expm1((2 * q / p - q) * math.log(2.0))
        assert abs(lhs - 2.0 ** (1 - q)) <= 1e-12


def test_four_point_examples():
    q = 2.0
    p = young_endpoint_p(q)
    rep = four_point_check(FourPointInput(1, 1, 1, 1, p, q))
    assert rep.passed
    assert rep.values["lhs"] == pytest.approx((2**q + 2) ** (1 / q), rel=1e-14)
    assert rep.values["rhs"] == pytest.approx(rep.values["lhs"], rel=1e-14)
    rep = four_point_check(FourPointInput(0.7, 0, 1.3, 0, p, q))
    assert rep.values["lhs"] == pytest.approx(0.7 * 1.3, rel=1e-15)
    assert rep.values["rhs"] == pytest.approx(0.7 * 1.3, rel=1e-15)
    with pytest.raises(UsageError):
        four_point_check(FourPointInput(1, 1, 1, 1, 1.6, 2.0))
    with pytest.raises(DomainError):
        FourPointInput(-1, 1, 1, 1, p, q)


@pytest.mark.parametrize("q", Q_YOUNG)
def test_four_point_random_sweep(q):
    rng = np.random.default_rng(int(10 * q))
    a0, a1, b0, b1 = rng.random((4, 10_000))
    p = young_endpoint_p(q)
    lhs, rhs = four_point_sides(a0, a1, b0, b1, p, q)
    assert np.all(lhs <= rhs * (1 + 1e-12))
    # Equality only at the symmetric all-equal shape or single support.
    battery = [(1, 1, 1, 1), (2, 2, 3, 3), (1, 0, 1, 0), (0, 1, 0, 1), (1, 0, 0, 1), (1, 0.5, 1, 0.5), (1, 1, 1, 0.5)]
    eq = []
    for v in battery:
        l, r = four_point_sides(*v, p, q)
        eq.append(abs(l - r) <= 1e-12 * r)
    assert eq == [True, True, True, True, True, False, False]


@pytest.mark.parametrize("q", [1.5, 2.0, 5.0])
def test_check_G_max(q):
    rep = check_G_max(q)
    assert rep.passed
    assert rep.values["max"] <= 1.0 + 1e-10
    assert rep.values["near_one_maxima_away_from_equality_points"] == []


def test_check_G_max_grid_size():
    with pytest.raises(UsageError):
        check_G_max(2.0, grid_size=20)


def test_cosh_examples():
    q = 3.0
    p = young_endpoint_p(q)
    l0, r0, d0 = cosh_sides(q, 0.0, p)
    assert l0 == 0.0 and r0 == 0.0
    assert 2.0**q > 2 * (2 * q - p) / p and d0 > 0
    rep = cosh_check(p, q, np.linspace(-50, 50, 10_000))
    assert rep.passed
    with pytest.raises(UsageError):
        cosh_check(1.5, q, [0.0])


def test_pprime_examples():
    assert young_endpoint_dp(1.0) == pytest.approx(0.75, abs=1e-8)
    p2 = young_endpoint_p(2.0)
    assert 0 < young_endpoint_dp(2.0) <= 3 * p2 / 8
    p4 = young_endpoint_p(4.0)
    assert 2 * p4 / 80 < -young_endpoint_ddp(4.0) < 4 * p4 / 80
    rep = pprime_check(np.linspace(1.0, 4.0, 301))
    assert rep.passed
    with pytest.raises(UsageError):
        pprime_check([0.5, 2.0])


def test_second_derivative_of_endpoint_against_differences():
    q, h = 2.7, 1e-4
    fd = (young_endpoint_dp(q + h) - young_endpoint_dp(q - h)) / (2 * h)
    assert young_endpoint_ddp(q) == pytest.approx(fd, rel=1e-7)


def test_curve_diagonal_symmetric():
    xs = np.linspace(0.01, 0.49, 25)
    assert np.allclose(theta(1.0, xs), xs)
    assert np.allclose(g_along_curve(2.0, 1.0, xs), g_along_curve(2.0, 1.0, 1 - xs), atol=1e-14)


@pytest.mark.parametrize("q, a", [(2.0, 0.5), (3.0, 0.2), (1.5, 0.9)])
def test_curve_slope_at_zero(q, a):
    p = young_endpoint_p(q)
    assert curve_slope_at_zero(q, a) == pytest.approx(-(q / p) * (1 + a), abs=1e-4)


@pytest.mark.parametrize("q", [1.5, 2.0, 3.0])
@pytest.mark.parametrize("a", [0.1, 0.5, 0.9])
def test_curve_concave_at_crossing(q, a):
    closed = curve_second_derivative_at_crossing(q, a)
    assert closed < 0
    assert closed == pytest.approx(curve_second_derivative_fd(q, a), rel=1e-5)
    x = curve_crossing(a)
    assert theta(a, x) == pytest.approx(1 - x, abs=1e-15)


def test_curve_parameter_domain():
    with pytest.raises(DomainError):
        g_along_curve(2.0, 0.0, 0.3)
    with pytest.raises(DomainError):
        phi_chain(2.0, 0.5, -1.0)


@given(st.floats(1.2, 4.0), st.floats(0.05, 1.0), st.floats(0.05, 20.0))
def test_phi2_prime_scaled_form(q, a, u):
    p = young_endpoint_p(q)
    c = phi_chain(q, a, u)
    scaled = p**4 * u ** (3 - q / p) * c.phi2_prime / (2 * q * (q - p) * (2 * q - p))
    expected = -(q + p) * (1 + a) * u - 2 * (q - 2 * p) * a
    assert scaled == pytest.approx(expected, rel=1e-12, abs=1e-12)
    assert phi2_prime_poly(q, a, u) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("q, a, u", [(2.0, 0.5, 0.7), (3.0, 0.2, 2.5), (1.5, 0.9, 1.3)])
def test_phi_chain_consistency(q, a, u):
    rep = phi_chain_check(q, a, u)
    assert rep.passed, rep.values["rel_errors"]


def test_phi0_at_diagonal_crossing():
    assert phi_chain(2.0, 1.0, 1.0).phi0 == pytest.approx(0.0, abs=1e-12)


def test_phi0_zero_count_reported():
    # The count is an observation, not a theorem; it must be finite and below seven.
    n = phi0_zero_count(2.0, 0.5)
    assert 0 <= n < 7


@pytest.mark.parametrize("q, x, y", [(2.0, 0.3, 0.6), (1.5, 0.7, 0.2)])
def test_pde_examples(q, x, y):
    assert pde_residual(q, x, y) <= 1e-9


def test_pde_diagonal_and_domain():
    assert pde_residual(2.5, 0.4, 0.4) == 0.0
    with pytest.raises(DomainError):
        pde_residual(2.0, 0.0, 0.5)


def test_pde_battery():
    rep = pde_battery()
    assert rep.passed and rep.values["max_residual"] <= 1e-9


def test_hessian_examples():
    p = 4.0 / LOG2_6
    h = hessian_center(p, p)
    assert h.classification == "local_max"
    assert max(map(abs, h.grad)) <= 1e-11
    assert np.allclose(h.hess_diag, h.hess_diag_closed, rtol=1e-10)
    h = hessian_center(1.2, partner_exponent(1.2))
    assert h.hess_diag[0] > 0 and h.classification != "local_max"
    assert max(map(abs, h.grad)) <= 1e-11
    with pytest.raises(UsageError):
        hessian_center(1.5, 1.5)


def test_hessian_sign_flip():
    assert hessian_sign_flip() == pytest.approx(4.0 / 3.0, abs=1e-9)
    assert hessian_report().passed


@pytest.mark.parametrize("q", [1.2, 2.0, 3.9])
def test_antidiagonal(q):
    rep = antidiagonal_check(q)
    assert rep.passed
