"""Pure numpy implementations of the hot kernels.

These mirror the compiled routines in ``_kernels.pyx`` and are used when the
extension is not available (or when ``CUBEINEQ_PURE_PYTHON=1``).
"""

from __future__ import annotations

import math

import numpy as np

# 15-point Kronrod rule and its embedded 7-point Gauss rule on [-1, 1].
# Positive half of the abscissae, largest first; the last node is 0.
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node layout: -x0, ..., -x6, 0, x6, ..., x0.
NODES = np.concatenate([-XGK[:7], [0.0], XGK[6::-1]])
WEIGHTS_K = np.concatenate([WGK[:7], [WGK[7]], WGK[6::-1]])
_wg_half = np.zeros(8)
_wg_half[1::2] = WG
WEIGHTS_G = np.concatenate([_wg_half[:7], [_wg_half[7]], _wg_half[6::-1]])

EPS = np.finfo(float).eps
MAX_DEPTH = 50


def _two_point_integrand(u, d, e, s, m):
    sq = np.sin(np.pi * u) ** 2
    base = d + e * sq
    with np.errstate(divide="ignore"):
        val = base ** s
    if m:
        val = val * (2.0 * sq - 1.0) ** m
    return val


def cospow_moment(d, e, s, m=0, rtol=1e-13, atol=0.0):
    """Integrate ``(d + e sin^2(pi u))^s (2 sin^2(pi u) - 1)^m`` over [0, 1].

    Vectorized over ``d`` and ``e``. Returns ``(values, errors)``.
    """
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    d, e = np.broadcast_arrays(d, e)
    shape = d.shape
    d = d.ravel()
    e = e.ravel()
    n = d.size
    out = np.zeros(n)
    err = np.zeros(n)

    owner = np.arange(n)
    lo = np.zeros(n)
    hi = np.full(n, 0.5)
    tol = None
    depth = 0
    while owner.size:
        half = 0.5 * (hi - lo)
        center = 0.5 * (hi + lo)
        u = center[:, None] + half[:, None] * NODES[None, :]
        fv = _two_point_integrand(u, d[owner, None], e[owner, None], s, m)
        k = half * (fv @ WEIGHTS_K)
        g = half * (fv @ WEIGHTS_G)
        resabs = half * (np.abs(fv) @ WEIGHTS_K)
        if tol is None:
            tol = np.maximum(0.5 * atol, rtol * resabs)
        est = np.abs(k - g)
        local = np.maximum(tol[owner] * (hi - lo) / 0.5, 50.0 * EPS * resabs)
        done = (est <= local) | (depth >= MAX_DEPTH)
        np.add.at(out, owner[done], k[done])
        np.add.at(err, owner[done], est[done])
        keep = ~done
        owner = np.repeat(owner[keep], 2)
        mid = center[keep]
        lo = np.column_stack([lo[keep], mid]).ravel()
        hi = np.column_stack([mid, hi[keep]]).ravel()
        depth += 1
    return (2.0 * out).reshape(shape), (2.0 * err).reshape(shape)


def young_endpoint_p(q):
    # log2(2^q + 2) = q + log2(1 + 2^(1-q)) avoids overflow for large q.
    return 2.0 * q / (q + np.log2(1.0 + 2.0 ** (1.0 - q)))


def young_endpoint_dp(q, p):
    w = 1.0 / (1.0 + 2.0 ** (1.0 - q))
    return p / q * (1.0 - 0.5 * p * w)


def _logcosh(x):
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - math.log(2.0)


def dq_phi_tilde(q, u):
    """Closed-form q-derivative of the log-ratio function of the second cosh inequality."""
    q = np.asarray(q, dtype=float)
    u = np.asarray(u, dtype=float)
    p = young_endpoint_p(q)
    dp = young_endpoint_dp(q, p)
    eta = _logcosh(u) - dp * u * np.tanh(p * u)
    return eta + 2.0 / (2.0 * q - p) * (dp * q / p - 1.0) + math.log(2.0)


def dq_phi_tilde_grid_min(q0, dq, nq, u0, du, nu):
    """Minimum of :func:`dq_phi_tilde` over the nodes ``(q0 + i dq, u0 + j du)``.

    Returns ``(value, i, j, nan_count)``; ties resolve to the lexicographically
    smallest ``(i, j)``.
    """
    qs = q0 + dq * np.arange(nq)
    us = u0 + du * np.arange(nu)
    vals = dq_phi_tilde(qs[:, None], us[None, :])
    bad = ~np.isfinite(vals)
    nan_count = int(bad.sum())
    if nan_count:
        vals = np.where(bad, np.inf, vals)
    flat = int(np.argmin(vals))
    i, j = divmod(flat, nu)
    return float(vals[i, j]), i, j, nan_count
