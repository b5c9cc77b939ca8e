"""Extremal analysis behind the binary Young convolution inequality.

With ``p = p(q) = 2q / log2(2^q + 2)`` and ``k = q/p``, the four-point
inequality reduces to ``G_q(x, y) <= 1`` on the unit square, where

    G_q(x, y) = ((1-x)(1-y))^k + ((1-x)^{1/p} y^{1/p} + x^{1/p} (1-y)^{1/p})^q + (xy)^k.

Everything here is elementary, so all derivatives are in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError, UsageError
from .regions import ExponentPair, Regime, in_range, young_endpoint_dp, young_endpoint_p
from .report import Report, verdict_of

LN2 = math.log(2.0)
LOG2_6_HALF = 0.5 * math.log2(6.0)


def _p(q, p):
    return young_endpoint_p(q) if p is None else float(p)


def G(q, x, y, p=None):
    """``G_q(x, y)``; vectorized over ``x`` and ``y``."""
    p = _p(q, p)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = q / p
    s = 1.0 / p
    mid = (1.0 - x) ** s * y**s + x**s * (1.0 - y) ** s
    out = ((1.0 - x) * (1.0 - y)) ** k + mid**q + (x * y) ** k
    return float(out) if out.ndim == 0 else out


def G_surface(q, n=201):
    xs = np.linspace(0.0, 1.0, n)
    return xs, G(q, xs[:, None], xs[None, :])


@dataclass(frozen=True)
class FourPointInput:
    alpha0: float
    alpha1: float
    beta0: float
    beta1: float
    p: float
    q: float

    def __post_init__(self):
        if min(self.alpha0, self.alpha1, self.beta0, self.beta1) < 0:
            raise DomainError("all four values must be nonnegative")


def four_point_sides(a0, a1, b0, b1, p, q):
    lhs = ((a0 * b0) ** q + (a0 * b1 + a1 * b0) ** q + (a1 * b1) ** q) ** (1.0 / q)
    rhs = (a0**p + a1**p) ** (1.0 / p) * (b0**p + b1**p) ** (1.0 / p)
    return lhs, rhs


def four_point_check(inp: FourPointInput, rtol: float = 1e-12) -> Report:
    """Four-point inequality: Young's inequality for functions on ``{0,1}``."""
    if not in_range(ExponentPair(inp.p, inp.q, Regime.YOUNG_BINARY)):
        raise UsageError("(p, q) outside the binary Young range")
    lhs, rhs = four_point_sides(inp.alpha0, inp.alpha1, inp.beta0, inp.beta1, inp.p, inp.q)
    return Report(
        suite="fourpoint",
        check="four_point_inequality",
        verdict=verdict_of(lhs <= rhs + rtol * rhs),
        inputs={
            "alpha0": inp.alpha0, "alpha1": inp.alpha1,
            "beta0": inp.beta0, "beta1": inp.beta1, "p": inp.p, "q": inp.q,
        },
        values={"lhs": lhs, "rhs": rhs, "ratio": lhs / rhs if rhs > 0 else 1.0},
        tolerances={"rtol": rtol},
        anchor="four-point Young inequality on {0,1}",
    )


EQUALITY_POINTS = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (0.5, 0.5))


def check_G_max(q, grid_size=201, tol=1e-10, eq_tol=1e-8) -> Report:
    """Verify ``G_q <= 1`` on a grid and refine every discrete local maximum."""
    if grid_size < 101:
        raise UsageError("grid_size must be at least 101")
    xs, vals = G_surface(q, grid_size)
    n = grid_size
    padded = np.pad(vals, 1, constant_values=-np.inf)
    is_max = np.ones_like(vals, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_max &= vals >= padded[1 + di:1 + di + n, 1 + dj:1 + dj + n]
    cand = np.argwhere(is_max)
    refined = []
    for i, j in cand:
        start = np.array([xs[i], xs[j]])
        res = optimize.minimize(
            lambda z: -G(q, z[0], z[1]), start, method="L-BFGS-B",
            bounds=[(0.0, 1.0), (0.0, 1.0)], options={"ftol": 1e-15, "gtol": 1e-12},
        )
        refined.append((float(res.x[0]), float(res.x[1]), max(-float(res.fun), float(vals[i, j]))))
    best = max([float(vals.max())] + [v for *_, v in refined])
    at_eq = [G(q, x, y) for x, y in EQUALITY_POINTS]
    high = [(x, y, v) for x, y, v in refined if v >= 1.0 - eq_tol]
    far = [
        (x, y) for x, y, _ in high
        if min(math.hypot(x - a, y - b) for a, b in EQUALITY_POINTS) > 1e-6
    ]
    ok = best <= 1.0 + tol and all(abs(v - 1.0) <= eq_tol for v in at_eq) and not far
    return Report(
        suite="fourpoint",
        check="G_max",
        verdict=verdict_of(ok),
        inputs={"q": q, "p": young_endpoint_p(q), "grid_size": grid_size},
        values={
            "max": best,
            "G_at_equality_points": at_eq,
            "discrete_local_maxima": len(cand),
            "near_one_maxima_away_from_equality_points": far,
        },
        tolerances={"max_excess": tol, "equality": eq_tol},
        anchor="G_q <= 1 on [0,1]^2 with equality at the corners and the centre",
    )


def _logcosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - LN2


def cosh_sides(q, t, p=None):
    """Differences ``lhs - rhs`` of the two hyperbolic-cosine inequalities.

    The first is ``2^{2q/p}((cosh(pt/2q))^{2q/p} - 1) - 2^q((cosh(t/q))^q - 1)``
    computed with ``expm1``; the second is the logarithmic form
    ``q ln(2 cosh(t/q)) - ln(2(2q-p)/p) - ln cosh(pt/q)``.
    """
    p = _p(q, p)
    t = np.asarray(t, dtype=float)
    k = 2.0 * q / p
    lhs1 = 2.0**k * np.expm1(k * _logcosh(p * t / (2.0 * q)))
    rhs1 = 2.0**q * np.expm1(q * _logcosh(t / q))
    diff2 = q * (LN2 + _logcosh(t / q)) - math.log(2.0 * (2.0 * q - p) / p) - _logcosh(p * t / q)
    return lhs1, rhs1, diff2


def cosh_check(p, q, t_grid, rtol=1e-12) -> Report:
    """Both hyperbolic-cosine inequalities on a grid of ``t``."""
    if abs(p - young_endpoint_p(q)) > 1e-12 * p:
        raise UsageError("p must be the Young endpoint exponent of q")
    t = np.asarray(t_grid, dtype=float)
    lhs1, rhs1, diff2 = cosh_sides(q, t, p)
    slack1 = lhs1 - rhs1
    bad1 = slack1 < -rtol * np.abs(rhs1)
    bad2 = diff2 <= 0.0
    l0, r0, _ = cosh_sides(q, 0.0, p)
    values = {
        "min_rel_slack_first": float(np.min(slack1 / np.maximum(np.abs(rhs1), 1e-300))),
        "min_log_margin_second": float(diff2.min()),
        "first_at_zero": (float(l0), float(r0)),
        "violations_first": t[bad1][:10],
        "violations_second": t[bad2][:10],
    }
    ok = not bad1.any() and not bad2.any() and l0 == 0.0 and r0 == 0.0
    return Report(
        suite="fourpoint",
        check="cosh_inequalities",
        verdict=verdict_of(ok),
        inputs={"p": p, "q": q, "t_min": float(t.min()), "t_max": float(t.max()), "points": t.size},
        values=values,
        tolerances={"first_rtol": rtol},
        anchor="two hyperbolic-cosine inequalities for the Young endpoint",
    )


def young_endpoint_ddp(q):
    """Second derivative of the Young endpoint curve in closed form."""
    q = np.asarray(q, dtype=float)
    p = young_endpoint_p(q)
    dp = young_endpoint_dp(q)
    w = 1.0 / (1.0 + 2.0 ** (1.0 - q))
    dw = LN2 * w * (1.0 - w)
    out = (dp / q - p / q**2) * (1.0 - 0.5 * p * w) - 0.5 * (p / q) * (dp * w + p * dw)
    return float(out) if out.ndim == 0 else out


def pprime_check(q_grid, fd_step=1e-5) -> Report:
    """Closed-form ``p'`` against central differences, and bounds on ``p'`` and ``p''``."""
    q = np.asarray(q_grid, dtype=float)
    if q.min() < 1.0 or q.max() > 4.0:
        raise UsageError("q grid must lie in [1, 4]")
    p = young_endpoint_p(q)
    dp = young_endpoint_dp(q)
    ddp = young_endpoint_ddp(q)
    h = fd_step
    # The curve is defined for all q > 0, so the stencil may leave [1, 4].
    qa, qb = q - h, q + h
    pa = 2.0 * qa / (qa + np.log2(1.0 + 2.0 ** (1.0 - qa)))
    pb = 2.0 * qb / (qb + np.log2(1.0 + 2.0 ** (1.0 - qb)))
    fd = (pb - pa) / (2.0 * h)
    fd_rel = np.abs(fd - dp) / np.abs(dp)
    upper = 3.0 * p / (4.0 * q)
    ok_fd = fd_rel <= 1e-6
    ok_dp = (dp > 0) & (dp <= upper * (1.0 + 1e-12))
    ok_ddp = (2.0 * p / (5.0 * q**2) < -ddp) & (-ddp < 4.0 * p / (5.0 * q**2))
    bad = ~(ok_fd & ok_dp & ok_ddp)
    return Report(
        suite="fourpoint",
        check="pprime",
        verdict=verdict_of(not bad.any()),
        inputs={"q_min": float(q.min()), "q_max": float(q.max()), "points": q.size},
        values={
            "max_fd_rel_error": float(fd_rel.max()),
            "max_dp_over_bound": float(np.max(dp / upper)),
            "min_ddp_lower_ratio": float(np.min(-ddp * 5.0 * q**2 / (2.0 * p))),
            "max_ddp_upper_ratio": float(np.max(-ddp * 5.0 * q**2 / (4.0 * p))),
            "dp_at_first": float(dp[0]),
            "violations": q[bad][:10],
        },
        tolerances={"fd_rel": 1e-6, "fd_step": h},
        anchor="0 < p' <= 3p/(4q) and 2p/(5q^2) < -p'' < 4p/(5q^2) on [1,4]",
    )


def theta(a, x):
    """Curve ``y = a x / (1 - x + a x)`` through ``(0,0)`` and ``(1,1)``."""
    return a * x / (1.0 - x + a * x)


def _check_a(a):
    if not 0.0 < a <= 1.0:
        raise DomainError("curve parameter a must lie in (0, 1]")


def g_along_curve(q, a, x, p=None):
    _check_a(a)
    x = np.asarray(x, dtype=float)
    return G(q, x, theta(a, x), p)


def curve_crossing(a):
    """Point where the curve meets the anti-diagonal ``y = 1 - x``."""
    return 1.0 / (1.0 + math.sqrt(a))


def curve_slope_at_zero(q, a, h0=1e-6):
    """Extrapolated one-sided slope of ``x -> G_q(x, theta_a(x))`` at 0.

    ``(G - 1)/x`` carries correction terms ``x^g`` with ``g = q/p - 1``,
    ``x``, ``x^{g+1}``, ``x^2`` and ``x^{2g+1}``; they are fitted and removed.
    """
    p = young_endpoint_p(q)
    g = q / p - 1.0
    xs = h0 * 2.0 ** np.arange(12)
    vals = (g_along_curve(q, a, xs) - 1.0) / xs
    cols = [np.ones_like(xs)] + [xs**e for e in (g, 1.0, g + 1.0, 2.0, 2.0 * g + 1.0)]
    mat = np.column_stack(cols)
    scale = np.abs(mat).max(axis=0)
    coef, *_ = np.linalg.lstsq(mat / scale, vals, rcond=None)
    return float(coef[0] / scale[0])


def curve_second_derivative_at_crossing(q, a):
    """Closed-form second derivative of ``G_q`` along the curve at the anti-diagonal."""
    _check_a(a)
    p = young_endpoint_p(q)
    r = q / p
    sa = math.sqrt(a)
    bracket = (
        -((a ** (-0.5 / p) + a ** (0.5 / p)) ** q)
        + r * (1.0 / sa + sa)
        + 2.0 * (q - p) / p
    )
    return 2.0 * r * a ** ((q - p) / (2.0 * p)) * (1.0 + sa) ** (2.0 * (p - q) / p) * bracket


def curve_second_derivative_fd(q, a, h=1e-4):
    x = curve_crossing(a)
    f = lambda s: g_along_curve(q, a, s)
    return (f(x - h) - 2.0 * f(x) + f(x + h)) / (h * h)


@dataclass(frozen=True)
class PhiChain:
    phi0: float
    phi0_prime: float
    phi1: float
    phi2: float
    phi2_prime: float


def phi_chain(q, a, u) -> PhiChain:
    """The chain ``phi0 -> phi1 -> phi2`` attached to the curve with parameter ``a``.

    With ``x = 1/(u+1)`` the derivative of ``G_q`` along the curve has the
    sign of ``phi0(u)``; ``phi0'' = u^{r-3} phi1``, ``phi1' = u phi2`` and
    ``phi2'`` is ``u^{r-3}`` times a first-degree polynomial (``r = q/p``).
    """
    _check_a(a)
    if u <= 0:
        raise DomainError("u must be positive")
    p = young_endpoint_p(q)
    r = q / p
    K = (1.0 + a ** (1.0 / p)) ** q
    ar = a**r
    phi0 = (
        -(1.0 + a) * u ** (2 * r) - 2.0 * a * u ** (2 * r - 1) + K * u ** (r + 1)
        - a * K * u ** (r - 1) + 2.0 * ar * u + (1.0 + a) * ar
    )
    phi0p = (
        -2.0 * q * (1.0 + a) * u ** (2 * r - 1) - 2.0 * (2 * q - p) * a * u ** (2 * r - 2)
        + (q + p) * K * u**r - (q - p) * a * K * u ** (r - 2) + 2.0 * p * ar
    ) / p
    phi1 = (
        -2.0 * q * (2 * q - p) * (1.0 + a) * u ** (r + 1) - 4.0 * (2 * q - p) * (q - p) * a * u**r
        + q * (q + p) * K * u**2 - (q - p) * (q - 2 * p) * a * K
    ) / p**2
    phi2 = (
        -2.0 * q * (2 * q - p) * (q + p) * (1.0 + a) * u ** (r - 1)
        - 4.0 * q * (2 * q - p) * (q - p) * a * u ** (r - 2) + 2.0 * p * q * (q + p) * K
    ) / p**3
    phi2p = 2.0 * q * (q - p) * (2 * q - p) * u ** (r - 3) / p**4 * phi2_prime_poly(q, a, u)
    return PhiChain(phi0, phi0p, phi1, phi2, phi2p)


def phi2_prime_poly(q, a, u):
    """``-(q+p)(1+a) u - 2(q-2p) a``: ``phi2'`` with its positive factor removed."""
    p = young_endpoint_p(q)
    return -(q + p) * (1.0 + a) * u - 2.0 * (q - 2.0 * p) * a


def phi0_zero_count(q, a, lo=1e-6, hi=1e6, n=20_000):
    us = np.geomspace(lo, hi, n)
    vals = np.array([phi_chain(q, a, u).phi0 for u in us])
    s = np.sign(vals)
    return int(np.count_nonzero(s[:-1] * s[1:] < 0))


def phi_chain_check(q, a, u, h=1e-4) -> Report:
    """Finite-difference consistency of the chain and its link to ``G_q``."""
    p = young_endpoint_p(q)
    r = q / p
    c = phi_chain(q, a, u)
    f = lambda v, name: getattr(phi_chain(q, a, v), name)
    d0 = (f(u + h, "phi0") - f(u - h, "phi0")) / (2 * h)
    dd0 = (f(u + h, "phi0") - 2 * c.phi0 + f(u - h, "phi0")) / (h * h)
    d1 = (f(u + h, "phi1") - f(u - h, "phi1")) / (2 * h)
    d2 = (f(u + h, "phi2") - f(u - h, "phi2")) / (2 * h)

    def rel(a_, b_):
        return abs(a_ - b_) / max(abs(a_), abs(b_), 1e-12)

    errs = {
        "phi0_prime": rel(d0, c.phi0_prime),
        "phi0_second_vs_phi1": rel(dd0, u ** (r - 3) * c.phi1),
        "phi1_prime_vs_phi2": rel(d1, u * c.phi2),
        "phi2_prime": rel(d2, c.phi2_prime),
    }
    # Link to the curve: (1-x+ax)^{2r} d/dx G = r (u+1)^{1-3r} (u+a)^{r-1} phi0(u).
    x = 1.0 / (u + 1.0)
    hx = 1e-6 * min(x, 1 - x)
    dg = (g_along_curve(q, a, x + hx) - g_along_curve(q, a, x - hx)) / (2 * hx)
    lhs = (1.0 - x + a * x) ** (2 * r) * float(dg)
    rhs = r * (u + 1.0) ** (1 - 3 * r) * (u + a) ** (r - 1) * c.phi0
    errs["curve_derivative_link"] = rel(lhs, rhs)
    ok = all(v <= 1e-6 for v in errs.values())
    return Report(
        suite="fourpoint",
        check="phi_chain",
        verdict=verdict_of(ok),
        inputs={"q": q, "a": a, "u": u},
        values={"chain": c.__dict__, "rel_errors": errs},
        tolerances={"fd_rel": 1e-6},
        anchor="Rolle chain phi0 -> phi1 -> phi2 along the dissecting curves",
    )


def _grad_hess(x, y, ex, ey, r):
    """Value, gradient and Hessian of

    ``H(x, y) = (1-x)^{r ex}(1-y)^{r ey} + U^r + x^{r ex} y^{r ey}``,
    ``U = (1-x)^{ex} y^{ey} + x^{ex} (1-y)^{ey}``.
    """
    X, Y = 1.0 - x, 1.0 - y
    kx, ky = r * ex, r * ey
    t1 = X**kx * Y**ky
    t1x = -kx * X ** (kx - 1) * Y**ky
    t1y = -ky * X**kx * Y ** (ky - 1)
    t1xx = kx * (kx - 1) * X ** (kx - 2) * Y**ky
    t1yy = ky * (ky - 1) * X**kx * Y ** (ky - 2)
    t1xy = kx * ky * X ** (kx - 1) * Y ** (ky - 1)
    t3 = x**kx * y**ky
    t3x = kx * x ** (kx - 1) * y**ky
    t3y = ky * x**kx * y ** (ky - 1)
    t3xx = kx * (kx - 1) * x ** (kx - 2) * y**ky
    t3yy = ky * (ky - 1) * x**kx * y ** (ky - 2)
    t3xy = kx * ky * x ** (kx - 1) * y ** (ky - 1)
    u = X**ex * y**ey + x**ex * Y**ey
    ux = -ex * X ** (ex - 1) * y**ey + ex * x ** (ex - 1) * Y**ey
    uy = ey * X**ex * y ** (ey - 1) - ey * x**ex * Y ** (ey - 1)
    uxx = ex * (ex - 1) * (X ** (ex - 2) * y**ey + x ** (ex - 2) * Y**ey)
    uyy = ey * (ey - 1) * (X**ex * y ** (ey - 2) + x**ex * Y ** (ey - 2))
    uxy = -ex * ey * (X ** (ex - 1) * y ** (ey - 1) + x ** (ex - 1) * Y ** (ey - 1))
    v = u**r
    v1 = r * u ** (r - 1)
    v2 = r * (r - 1) * u ** (r - 2)
    val = t1 + v + t3
    gx = t1x + v1 * ux + t3x
    gy = t1y + v1 * uy + t3y
    gxx = t1xx + v2 * ux * ux + v1 * uxx + t3xx
    gyy = t1yy + v2 * uy * uy + v1 * uyy + t3yy
    gxy = t1xy + v2 * ux * uy + v1 * uxy + t3xy
    return val, np.array([gx, gy]), np.array([[gxx, gxy], [gxy, gyy]])


def G_grad_hess(q, x, y, p=None):
    p = _p(q, p)
    return _grad_hess(x, y, 1.0 / p, 1.0 / p, q)


def pde_residual(q, x, y, p=None) -> float:
    """Scaled residual of the second-order PDE satisfied by ``G_q``.

    The equation is ``(A(x,y) - A(y,x)) v H v^T + (B(x,y), -B(y,x)) . grad G
    + (C(x,y) - C(y,x)) G = 0`` with ``v = (x(1-x), y(1-y))`` and ``H`` the
    Hessian. Returns ``|sum| / sum of |terms|``, or 0 when all terms vanish.
    """
    p = _p(q, p)
    if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
        raise DomainError("(x, y) must lie in the open unit square")
    if x == y:
        # All antisymmetrized coefficients vanish and G_x = G_y by symmetry.
        return 0.0
    s = 1.0 / p

    def A(x_, y_):
        return p * p * x_**s * (1.0 - y_) ** s

    def B(x_, y_):
        return p * (1.0 - x_) * x_ * (
            x_**s * (1.0 - y_) ** s * (p * (1.0 - 2.0 * x_) + q * (2.0 * x_ + 2.0 * y_ - 1.0))
            - (1.0 - x_) ** s * y_**s * (p * (1.0 - 2.0 * x_) + q * (2.0 * x_ + 2.0 * y_ - 3.0))
        )

    def C(x_, y_):
        return q * x_**s * (1.0 - y_) ** s * (
            p * ((1.0 - x_) * x_ + (1.0 - y_) * y_) + q * ((x_ + y_) ** 2 - x_ - 3.0 * y_)
        )

    val, grad, hess = G_grad_hess(q, x, y, p)
    v = np.array([x * (1.0 - x), y * (1.0 - y)])
    t1 = (A(x, y) - A(y, x)) * float(v @ hess @ v)
    t2 = B(x, y) * grad[0] - B(y, x) * grad[1]
    t3 = (C(x, y) - C(y, x)) * val
    scale = abs(t1) + abs(t2) + abs(t3)
    if scale == 0.0:
        return 0.0
    return abs(math.fsum((t1, t2, t3))) / scale


@dataclass(frozen=True)
class HessianCenter:
    grad: tuple
    hess_diag: tuple
    hess_diag_closed: tuple
    hess_offdiag: float
    classification: str


def hessian_center(p, q) -> HessianCenter:
    """Gradient and Hessian at ``(1/2, 1/2)`` of the three-exponent function with ``r = 2``.

    Requires ``1/p + 1/q = (1/2) log2 6``.
    """
    if abs(1.0 / p + 1.0 / q - LOG2_6_HALF) > 1e-10:
        raise UsageError("need 1/p + 1/q = (1/2) log2 6")
    _, grad, hess = _grad_hess(0.5, 0.5, 1.0 / p, 1.0 / q, 2.0)
    c = 2.0 ** (4.0 - 2.0 / p - 2.0 / q)
    closed = (c * (4.0 - 3.0 * p) / p**2, c * (4.0 - 3.0 * q) / q**2)
    diag = (float(hess[0, 0]), float(hess[1, 1]))
    if diag[0] < 0 and diag[1] < 0:
        kind = "local_max"
    elif diag[0] > 0 and diag[1] > 0:
        kind = "local_min"
    else:
        kind = "not_max"
    return HessianCenter(
        grad=(float(grad[0]), float(grad[1])),
        hess_diag=diag,
        hess_diag_closed=closed,
        hess_offdiag=float(hess[0, 1]),
        classification=kind,
    )


def partner_exponent(p):
    """``q`` with ``1/p + 1/q = (1/2) log2 6``."""
    return 1.0 / (LOG2_6_HALF - 1.0 / p)


def hessian_sign_flip(lo=1.1, hi=1.5, tol=1e-12):
    """Bisection for the ``p`` where the first closed-form diagonal entry changes sign."""
    def entry(p):
        return hessian_center(p, partner_exponent(p)).hess_diag_closed[0]

    f_lo = entry(lo)
    if f_lo * entry(hi) > 0:
        raise UsageError("no sign change in the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if entry(mid) * f_lo > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def antidiagonal_check(q, n=2001) -> Report:
    """``G_q(x, 1-x) <= 1`` directly and through the first cosh inequality.

    The substitution ``x = 1/(1 + e^{pt/q})`` maps the anti-diagonal bound to
    ``(2 cosh(pt/2q))^{2q/p} >= (2 cosh(t/q))^q + 2``.
    """
    p = young_endpoint_p(q)
    t = np.linspace(-20.0, 20.0, n)
    x = 1.0 / (1.0 + np.exp(p * t / q))
    direct = 1.0 - G(q, x, 1.0 - x)
    lhs1, rhs1, _ = cosh_sides(q, t, p)
    # Multiply the anti-diagonal slack by the positive factor (e^{pt/q}+1)^{2q/p} e^{-t}.
    factor = np.exp((2.0 * q / p) * np.log1p(np.exp(p * t / q)) - t)
    mapped = direct * factor
    mismatch = np.abs(mapped - (lhs1 - rhs1)) / np.maximum(1.0, np.abs(lhs1))
    ok = bool(np.all(direct >= -1e-12) and mismatch.max() <= 1e-10)
    return Report(
        suite="fourpoint",
        check="antidiagonal",
        verdict=verdict_of(ok),
        inputs={"q": q, "points": n},
        values={"min_slack": float(direct.min()), "max_mapping_mismatch": float(mismatch.max())},
        tolerances={"mapping": 1e-10},
        anchor="G_q(x, 1-x) <= 1 is the first cosh inequality after substitution",
    )


def pde_battery(n=100, seed=0, q_range=(1.0, 4.0), tol=1e-9) -> Report:
    """Scaled PDE residual at seeded random ``(q, x, y)``."""
    rng = np.random.default_rng(seed)
    qs = rng.uniform(*q_range, n)
    pts = rng.uniform(0.01, 0.99, (n, 2))
    res = np.array([pde_residual(q, x, y) for q, (x, y) in zip(qs, pts)])
    i = int(np.argmax(res))
    return Report(
        suite="fourpoint",
        check="pde_residual",
        verdict=verdict_of(float(res.max()) <= tol),
        inputs={"points": n, "seed": seed, "q_range": q_range},
        values={"max_residual": float(res.max()), "argmax": (float(qs[i]), *map(float, pts[i]))},
        tolerances={"residual": tol},
        anchor="G_q satisfies an antisymmetrized second-order PDE",
    )


def hessian_report(p_list=(1.2, 4.0 / 3.0 + 1e-3, 1.45), grad_tol=1e-11, flip_tol=1e-9) -> Report:
    """Gradient and Hessian at the centre along ``1/p + 1/q = (1/2) log2 6``."""
    centres = {}
    grad_max = 0.0
    for p in p_list:
        h = hessian_center(p, partner_exponent(p))
        centres[repr(float(p))] = h.__dict__
        grad_max = max(grad_max, abs(h.grad[0]), abs(h.grad[1]))
    flip = hessian_sign_flip()
    ok = grad_max <= grad_tol and abs(flip - 4.0 / 3.0) <= flip_tol
    return Report(
        suite="fourpoint",
        check="hessian_centre",
        verdict=verdict_of(ok),
        inputs={"p": list(p_list)},
        values={"max_abs_gradient": grad_max, "sign_flip_p": flip, "centres": centres},
        tolerances={"gradient": grad_tol, "sign_flip": flip_tol},
        anchor="the centre is critical on the log6 line, and stops being a maximum past p = 4/3",
    )
