"""Extremal analysis behind the binary Hausdorff-Young inequality.

With ``p = p(q)`` the endpoint exponent, the two-point inequality
``(int_0^1 |a e^{2 pi i t} + b|^q dt)^{1/q} <= (a^p + b^p)^{1/p}`` reduces
after normalization ``a^p = x``, ``b^p = 1 - x`` to ``F_q(x) <= 1`` with

    F_q(x) = int_0^1 ((1-x)^{2/p} + x^{2/p} + 2 (x(1-x))^{1/p} cos 2 pi t)^{q/2} dt.

This module evaluates ``F_q`` directly and through a Legendre function,
checks the second-order ODE it satisfies, its local expansions at ``0`` and
``1/2`` and the sign structure used to rule out interior maxima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, UsageError
from .regions import ExponentPair, Regime, hy_endpoint_p, in_range
from .report import Report, verdict_of
from .specfun import binom_gen, legendre_p

F_RTOL = 1e-14


def modulus_moment(alpha, beta, q, m=0, rtol=F_RTOL):
    """``int_0^1 |alpha e^{2 pi i t} + beta|^q cos(2 pi t)^m dt`` for ``alpha, beta >= 0``.

    Vectorized over ``alpha`` and ``beta``. Returns ``(values, errors)``.
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    d = (alpha - beta) ** 2
    e = 4.0 * alpha * beta
    return kernels.cospow_moment(d, e, 0.5 * q, m, rtol, 0.0)


def _endpoint(q, p):
    if p is None:
        if q <= 2.0:
            raise DomainError("F requires q > 2")
        p = hy_endpoint_p(q)
    return float(p)


def _ab(x, p):
    x = np.asarray(x, dtype=float)
    if np.any((x < 0.0) | (x > 1.0)):
        raise DomainError("x must lie in [0, 1]")
    return x ** (1.0 / p), (1.0 - x) ** (1.0 / p)


def F(q, x, p=None, rtol=F_RTOL):
    """``F_q(x)`` by adaptive quadrature; vectorized over ``x``.

    ``p`` defaults to the endpoint exponent of ``q``.
    """
    p = _endpoint(q, p)
    a, b = _ab(x, p)
    val, _ = modulus_moment(a, b, q, 0, rtol)
    return float(val) if np.ndim(x) == 0 else val


def F_curve(q, n=1001):
    xs = np.linspace(0.0, 1.0, n)
    return xs, F(q, xs)


def F_via_legendre(q, x, p=None):
    """``F_q(x)`` through the Legendre function of degree ``q/2``.

    For ``x < 1/2`` we have ``F_q(x) = (b^2 - a^2)^{q/2} P_{q/2}(z)`` with
    ``a = x^{1/p}``, ``b = (1-x)^{1/p}`` and ``z = (a^2 + b^2) / (b^2 - a^2)``.
    """
    p = _endpoint(q, p)
    x = float(x)
    if not 0.0 <= x < 0.5:
        raise DomainError("the Legendre form needs 0 <= x < 1/2")
    if x == 0.0:
        return 1.0
    a2 = x ** (2.0 / p)
    b2 = (1.0 - x) ** (2.0 / p)
    z = (a2 + b2) / (b2 - a2)
    return (b2 - a2) ** (0.5 * q) * legendre_p(0.5 * q, z)


@dataclass(frozen=True)
class OdeCoefficients:
    a: float
    b: float
    c: float


def ode_coeffs(q, x, p=None) -> OdeCoefficients:
    """Coefficients of the second-order linear ODE satisfied by ``F_q``."""
    p = _endpoint(q, p)
    x = float(x)
    if not 0.0 < x < 0.5:
        raise DomainError("ode coefficients are defined for 0 < x < 1/2")
    u = (1.0 - x) ** (2.0 / p)
    v = x ** (2.0 / p)
    a = p * p * (1.0 - x) ** 2 * x * x * (u - v)
    b = p * (1.0 - x) * x * (
        u * (p * (1.0 - 2.0 * x) + 2.0 * q * x)
        + v * (p * (2.0 * x - 1.0) + 2.0 * q * (1.0 - x))
    )
    c = q * u * x * (p * (1.0 - x) + q * x) - q * v * (1.0 - x) * (p * x + q * (1.0 - x))
    return OdeCoefficients(a, b, c)


def F_derivatives(q, x, p=None, rtol=F_RTOL):
    """``(F, F', F'')`` at ``x`` in ``(0, 1)``, differentiating under the integral sign.

    The integrand is ``(A + B cos 2 pi t)^s`` with ``s = q/2``,
    ``A = x^{2/p} + (1-x)^{2/p}`` and ``B = 2 (x(1-x))^{1/p}``.
    """
    p = _endpoint(q, p)
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError("derivatives are taken at interior points")
    s = 0.5 * q
    k = 2.0 / p
    y = 1.0 - x
    g = x * y
    dA = k * (x ** (k - 1.0) - y ** (k - 1.0))
    ddA = k * (k - 1.0) * (x ** (k - 2.0) + y ** (k - 2.0))
    dg = 1.0 - 2.0 * x
    dB = k * g ** (0.5 * k - 1.0) * dg
    ddB = k * ((0.5 * k - 1.0) * g ** (0.5 * k - 2.0) * dg * dg - 2.0 * g ** (0.5 * k - 1.0))
    a, b = x ** (1.0 / p), y ** (1.0 / p)
    dd = (a - b) ** 2
    ee = 4.0 * a * b

    def mom(shift, m):
        return float(kernels.cospow_moment(dd, ee, s - shift, m, rtol, 0.0)[0])

    f0 = mom(0, 0)
    i10, i11 = mom(1, 0), mom(1, 1)
    i20, i21, i22 = mom(2, 0), mom(2, 1), mom(2, 2)
    f1 = s * (dA * i10 + dB * i11)
    f2 = s * (ddA * i10 + ddB * i11) + s * (s - 1.0) * (
        dA * dA * i20 + 2.0 * dA * dB * i21 + dB * dB * i22
    )
    return f0, f1, f2


def ode_residual(q, x, p=None) -> float:
    """Scaled residual ``|aF'' + bF' + cF| / (|aF''| + |bF'| + |cF| + tiny)``."""
    co = ode_coeffs(q, x, p)
    f0, f1, f2 = F_derivatives(q, x, p)
    terms = (co.a * f2, co.b * f1, co.c * f0)
    return abs(math.fsum(terms)) / (sum(abs(t) for t in terms) + 1e-300)


@dataclass(frozen=True)
class TwoPointInput:
    alpha: float
    beta: float
    p: float
    q: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("alpha and beta must be nonnegative")


def two_point_sides(alpha, beta, p, q):
    lhs = float(modulus_moment(alpha, beta, q)[0]) ** (1.0 / q)
    rhs = (alpha**p + beta**p) ** (1.0 / p)
    return lhs, rhs


def two_point_check(inp: TwoPointInput, rtol: float = 1e-10) -> Report:
    """Two-point inequality ``||a e(t) + b||_{L^q} <= ||(a, b)||_{l^p}``."""
    if not in_range(ExponentPair(inp.p, inp.q, Regime.HY_BINARY)):
        raise UsageError("(p, q) outside the binary Hausdorff-Young range")
    lhs, rhs = two_point_sides(inp.alpha, inp.beta, inp.p, inp.q)
    return Report(
        suite="twopoint",
        check="two_point_inequality",
        verdict=verdict_of(lhs <= rhs + rtol * rhs),
        inputs={"alpha": inp.alpha, "beta": inp.beta, "p": inp.p, "q": inp.q},
        values={"lhs": lhs, "rhs": rhs, "ratio": lhs / rhs if rhs > 0 else 1.0},
        tolerances={"rtol": rtol},
        anchor="two-point Hausdorff-Young inequality on {0,1}",
    )


def _refine_max(f, x0, h, lo=0.0, hi=1.0, rounds=4):
    """Parabolic refinement of a local maximum near ``x0``."""
    x = x0
    for _ in range(rounds):
        xs = np.clip(np.array([x - h, x, x + h]), lo, hi)
        if xs[0] == xs[1] or xs[1] == xs[2]:
            break
        y = np.asarray(f(xs))
        denom = y[0] - 2.0 * y[1] + y[2]
        if denom >= 0.0:
            break
        step = 0.5 * h * (y[0] - y[2]) / denom
        x = float(np.clip(x + np.clip(step, -h, h), lo, hi))
        h = max(h / 10.0, 1e-5)
    return x, float(np.asarray(f(np.array([x])))[0])


def _local_extrema(y):
    """Indices of discrete local maxima (endpoints included) and interior minima."""
    n = y.size
    maxima = []
    minima = []
    for i in range(n):
        left = y[i - 1] if i > 0 else -np.inf
        right = y[i + 1] if i < n - 1 else -np.inf
        if y[i] >= left and y[i] >= right:
            maxima.append(i)
        if 0 < i < n - 1 and y[i] < y[i - 1] and y[i] < y[i + 1]:
            minima.append(i)
    return maxima, minima


def check_F_max(q, grid_size=1001, tol=1e-10, eq_tol=1e-8) -> Report:
    """Verify ``F_q <= 1`` on a grid, refining every discrete local maximum."""
    if grid_size < 101:
        raise UsageError("grid_size must be at least 101")
    xs = np.linspace(0.0, 1.0, grid_size)
    ys = F(q, xs)
    maxima, minima = _local_extrema(ys)
    h = 1.0 / (grid_size - 1)

    def f(x):
        return F(q, x)

    refined = [_refine_max(f, xs[i], h) for i in maxima]
    best = max([float(ys.max())] + [v for _, v in refined])
    anchors = np.array([0.0, 0.5, 1.0])
    at_anchors = F(q, anchors)
    eq_points = sorted({round(float(x), 12) for x, v in refined if v >= 1.0 - eq_tol})
    eq_dist = [float(np.min(np.abs(anchors - x))) for x in eq_points]
    ok = (
        best <= 1.0 + tol
        and bool(np.all(np.abs(at_anchors - 1.0) <= eq_tol))
        and all(dv <= 1e-6 for dv in eq_dist)
    )
    return Report(
        suite="twopoint",
        check="F_max",
        verdict=verdict_of(ok),
        inputs={"q": q, "p": hy_endpoint_p(q), "grid_size": grid_size},
        values={
            "max": best,
            "F_at_0_half_1": at_anchors,
            "equality_points": eq_points,
            "equality_distance_to_anchors": eq_dist,
            "interior_local_minima": len(minima),
            "interior_local_minima_x": xs[minima],
        },
        tolerances={"max_excess": tol, "equality": eq_tol, "location": 1e-6},
        anchor="F_q <= 1 on [0,1] with equality at 0, 1/2, 1",
    )


def _extrapolate(eps, vals, exponents):
    """Least-squares fit ``vals ~ c0 + sum_k c_k eps^{e_k}``; returns ``c0``."""
    cols = [np.ones_like(eps)] + [eps**e for e in exponents]
    mat = np.column_stack(cols)
    scale = np.abs(mat).max(axis=0)
    coef, *_ = np.linalg.lstsq(mat / scale, vals, rcond=None)
    return float(coef[0] / scale[0])


def perturbative_slope(q, eps=1e-5):
    """Extrapolated one-sided slope of ``F_q`` at 0."""
    p = hy_endpoint_p(q)
    e = eps * 2.0 ** np.arange(10)
    vals = (F(q, e, rtol=1e-15) - 1.0) / e
    g = 2.0 / p - 1.0
    return _extrapolate(e, vals, [g, 1.0, g + 1.0, 2.0 * g + 1.0])


def perturbative_curvature(q, h0=1e-3):
    """Extrapolated limit of ``(F_q(1/2 - e) - 1) / e^2`` as ``e -> 0``."""
    e = h0 * 1.5 ** np.arange(10)
    vals = (F(q, 0.5 - e, rtol=1e-15) - 1.0) / e**2
    return _extrapolate(e, vals, [q - 1.0, 2.0, q + 1.0, 4.0])


def perturbative_check(q, eps=1e-5) -> Report:
    """Local expansions of ``F_q`` at ``0`` (slope) and ``1/2`` (curvature)."""
    if not 1e-6 <= eps <= 1e-3:
        raise UsageError("eps must lie in [1e-6, 1e-3]")
    p = hy_endpoint_p(q)
    slope = perturbative_slope(q, eps)
    slope_exact = -q / p
    curv = perturbative_curvature(q)
    curv_exact = -2.0 * q * q * (1.0 - 1.0 / p - 1.0 / q) / (p * (q - 1.0))
    slope_rel = abs(slope - slope_exact) / abs(slope_exact)
    curv_rel = abs(curv - curv_exact) / abs(curv_exact)
    return Report(
        suite="twopoint",
        check="perturbative",
        verdict=verdict_of(slope_rel <= 1e-3 and curv_rel <= 1e-2 and curv_exact < 0),
        inputs={"q": q, "p": p, "eps": eps},
        values={
            "slope": slope,
            "slope_expected": slope_exact,
            "slope_rel_error": slope_rel,
            "curvature": curv,
            "curvature_expected": curv_exact,
            "curvature_rel_error": curv_rel,
        },
        tolerances={"slope_rel": 1e-3, "curvature_rel": 1e-2},
        anchor="F_q(e) = 1 - (q/p) e + o(e), F_q(1/2 - e) = 1 - C e^2 + o(e^2)",
    )


def phi(y, q, p=None):
    """``p y^{2/p} + q y^{2/p-1} - q y - p``, whose sign is that of ``c_q(1/(y+1))``."""
    p = _endpoint(q, p)
    y = np.asarray(y, dtype=float)
    return p * y ** (2.0 / p) + q * y ** (2.0 / p - 1.0) - q * y - p


def phi_prime(y, q, p=None):
    p = _endpoint(q, p)
    y = np.asarray(y, dtype=float)
    return 2.0 * y ** (2.0 / p - 1.0) + q * (2.0 / p - 1.0) * y ** (2.0 / p - 2.0) - q


def _bisect(f, a, b, xtol=1e-12):
    fa = f(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        if b - a <= xtol * max(1.0, abs(m)):
            break
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def phi_zero_analysis(q, n=10_000, y_max=1e6) -> Report:
    """Zeros of ``phi`` on ``(1, y_max]`` and its behaviour at ``y = 1``."""
    p = hy_endpoint_p(q)
    ys = np.geomspace(1.0, y_max, n + 1)[1:]
    vals = phi(ys, q)
    sign = np.sign(vals)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    zeros = [_bisect(lambda y: float(phi(y, q)), ys[i], ys[i + 1]) for i in idx]
    phi1 = float(phi(1.0, q))
    dphi1 = float(phi_prime(1.0, q))
    dphi1_closed = -2.0 * q * (1.0 - 1.0 / p - 1.0 / q)

    # c_q(1/(y+1)) = q y (y+1)^{-2/p-2} phi(y): compare with the ODE coefficient.
    probe = np.geomspace(1.0 + 1e-3, y_max, 64)
    mismatch = 0.0
    sign_ok = True
    for y in probe:
        c = ode_coeffs(q, 1.0 / (y + 1.0)).c
        pred = q * y * (y + 1.0) ** (-2.0 / p - 2.0) * float(phi(y, q))
        scale = abs(c) + abs(pred) + 1e-300
        mismatch = max(mismatch, abs(c - pred) / scale)
        if abs(pred) > 1e-12 * scale:
            sign_ok = sign_ok and (np.sign(c) == np.sign(pred))

    ok = len(zeros) == 1 and abs(phi1) <= 1e-12 and dphi1 < 0 and mismatch <= 1e-9 and sign_ok
    return Report(
        suite="twopoint",
        check="phi_zero",
        verdict=verdict_of(ok),
        inputs={"q": q, "p": p, "grid_points": n, "y_max": y_max},
        values={
            "zero_count": len(zeros),
            "zeros": zeros,
            "phi_at_1": phi1,
            "phi_prime_at_1": dphi1,
            "phi_prime_at_1_closed_form": dphi1_closed,
            "c_coefficient_rel_mismatch": mismatch,
            "c_coefficient_sign_matches": sign_ok,
        },
        tolerances={"bisection_xtol": 1e-12, "phi_at_1": 1e-12},
        anchor="phi has a unique zero in (1, inf), phi(1) = 0, phi'(1) < 0",
    )


def finite_sum_F(k: int, a: float, b: float) -> float:
    """``sum_j C(k,j)^2 a^{(r/k)(k-j)} b^{(r/k) j}`` with ``r = log2 C(2k, k)``."""
    if k < 1:
        raise DomainError("k must be a positive integer")
    r = math.log2(binom_gen(2 * k, k))
    e = r / k
    terms = [math.comb(k, j) ** 2 * a ** (e * (k - j)) * b ** (e * j) for j in range(k + 1)]
    return math.fsum(terms)


def finite_sum_bound(k: int, a: float, b: float) -> float:
    return (a + b) ** math.log2(binom_gen(2 * k, k))


ODE_X_BATTERY = (0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45)


def ode_battery(q_list, x_list=ODE_X_BATTERY, tol=1e-7) -> Report:
    """Scaled ODE residual over a ``(q, x)`` battery."""
    worst = (0.0, None, None)
    for q in q_list:
        for x in x_list:
            r = ode_residual(q, x)
            if r >= worst[0]:
                worst = (r, q, x)
    return Report(
        suite="twopoint",
        check="ode_residual",
        verdict=verdict_of(worst[0] <= tol),
        inputs={"q": list(q_list), "x": list(x_list)},
        values={"max_residual": worst[0], "argmax_q": worst[1], "argmax_x": worst[2]},
        tolerances={"residual": tol},
        anchor="F_q solves a second-order linear ODE on (0, 1/2)",
    )


def legendre_agreement(q_list, x_list=ODE_X_BATTERY, tol=1e-9) -> Report:
    """Direct quadrature of ``F_q`` against the Legendre-function representation."""
    worst = (0.0, None, None)
    sym = 0.0
    for q in q_list:
        direct = F(q, np.asarray(x_list))
        mirror = F(q, 1.0 - np.asarray(x_list))
        sym = max(sym, float(np.max(np.abs(direct - mirror))))
        for x, v in zip(x_list, direct):
            err = abs(F_via_legendre(q, x) - float(v))
            if err >= worst[0]:
                worst = (err, q, x)
    return Report(
        suite="twopoint",
        check="legendre_agreement",
        verdict=verdict_of(worst[0] <= tol and sym <= 1e-11),
        inputs={"q": list(q_list), "x": list(x_list)},
        values={"max_abs_difference": worst[0], "argmax_q": worst[1], "argmax_x": worst[2],
                "max_symmetry_defect": sym},
        tolerances={"agreement": tol, "symmetry": 1e-11},
        anchor="F_q(x) = (b^2 - a^2)^{q/2} P_{q/2}(z) and F_q(x) = F_q(1-x)",
    )
