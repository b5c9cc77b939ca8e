# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: two-point modulus quadrature and the grid sweep of the
certificate function. Semantics match ``_kernels_py``."""

import numpy as np

from libc.math cimport sin, pow, fabs, log, log1p, exp, tanh, log2, isfinite, M_PI, INFINITY

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]

XGK[:] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
WGK[:] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
WG[:] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]

cdef double EPS = 2.220446049250313e-16

# Full 15-node layout -x0, ..., -x6, 0, x6, ..., x0 with matching weights.
cdef double _NODES15[15]
cdef double _WK15[15]
cdef double _WG15[15]
cdef int _jj
for _jj in range(7):
    _NODES15[_jj] = -XGK[_jj]
    _NODES15[14 - _jj] = XGK[_jj]
    _WK15[_jj] = WGK[_jj]
    _WK15[14 - _jj] = WGK[_jj]
    _WG15[_jj] = WG[_jj // 2] if _jj % 2 == 1 else 0.0
    _WG15[14 - _jj] = _WG15[_jj]
_NODES15[7] = 0.0
_WK15[7] = WGK[7]
_WG15[7] = WG[3]
cdef int MAX_DEPTH = 50


cdef inline double _g(double sq, double d, double e, double s, int m) nogil:
    # The integrand as a function of sin^2(pi u).
    cdef double base = d + e * sq
    cdef double v
    cdef int k
    if base > 0.0:
        v = exp(s * log(base))
    else:
        v = pow(base, s)
    if m:
        for k in range(m):
            v *= 2.0 * sq - 1.0
    return v


# sin^2 at the 15 nodes of every dyadic panel of [0, 1/2] down to TABLE_DEPTH;
# panel (depth, index) starts at row 2^depth - 1 + index.
cdef enum:
    TABLE_DEPTH = 10
cdef double _SQ[(2 << TABLE_DEPTH) - 1][15]
cdef int _r, _c
cdef double _lo, _w
for _r in range((2 << TABLE_DEPTH) - 1):
    _depth = (_r + 1).bit_length() - 1
    _w = 0.5 / (1 << _depth)
    _lo = (_r + 1 - (1 << _depth)) * _w
    for _c in range(15):
        _SQ[_r][_c] = sin(M_PI * (_lo + 0.5 * _w * (1.0 + _NODES15[_c]))) ** 2


cdef inline void _gk15(double lo, double hi, int depth, long index,
                       double d, double e, double s, int m,
                       double* k_out, double* g_out, double* abs_out) nogil:
    cdef double half = 0.5 * (hi - lo)
    cdef double rk = 0.0, rg = 0.0, ra = 0.0, v, sq
    cdef int j
    cdef const double* row = NULL
    if depth <= TABLE_DEPTH:
        row = _SQ[(1 << depth) - 1 + index]
    for j in range(15):
        if row != NULL:
            sq = row[j]
        else:
            sq = sin(M_PI * (lo + half * (1.0 + _NODES15[j])))
            sq = sq * sq
        v = _g(sq, d, e, s, m)
        rk += _WK15[j] * v
        rg += _WG15[j] * v
        ra += _WK15[j] * fabs(v)
    k_out[0] = rk * half
    g_out[0] = rg * half
    abs_out[0] = ra * half


cdef void _adapt(double lo, double hi, int depth, long index,
                 double d, double e, double s, int m,
                 double tol, double k, double g, double ra,
                 double* acc, double* err) nogil:
    # (k, g, ra) are the Kronrod, Gauss and |f| sums already computed on [lo, hi].
    cdef double est = fabs(k - g)
    cdef double local = tol * (hi - lo) / 0.5
    if local < 50.0 * EPS * ra:
        local = 50.0 * EPS * ra
    if est <= local or depth >= MAX_DEPTH:
        acc[0] += k
        err[0] += est
        return
    cdef double mid = 0.5 * (lo + hi)
    cdef double k1, g1, r1, k2, g2, r2
    _gk15(lo, mid, depth + 1, 2 * index, d, e, s, m, &k1, &g1, &r1)
    _gk15(mid, hi, depth + 1, 2 * index + 1, d, e, s, m, &k2, &g2, &r2)
    _adapt(lo, mid, depth + 1, 2 * index, d, e, s, m, tol, k1, g1, r1, acc, err)
    _adapt(mid, hi, depth + 1, 2 * index + 1, d, e, s, m, tol, k2, g2, r2, acc, err)


def cospow_moment(d, e, double s, int m=0, double rtol=1e-13, double atol=0.0):
    """Integrate ``(d + e sin^2(pi u))^s (2 sin^2(pi u) - 1)^m`` over [0, 1].

    Vectorized over ``d`` and ``e``. Returns ``(values, errors)``.
    """
    da, ea = np.broadcast_arrays(np.asarray(d, dtype=float), np.asarray(e, dtype=float))
    shape = da.shape
    cdef double[::1] dv = np.ascontiguousarray(da.ravel())
    cdef double[::1] ev = np.ascontiguousarray(ea.ravel())
    cdef Py_ssize_t n = dv.shape[0]
    out_arr = np.empty(n)
    err_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[::1] err = err_arr
    cdef Py_ssize_t i
    cdef double k, g, ra, tol, acc, ea_
    with nogil:
        for i in range(n):
            _gk15(0.0, 0.5, 0, 0, dv[i], ev[i], s, m, &k, &g, &ra)
            tol = rtol * ra
            if tol < 0.5 * atol:
                tol = 0.5 * atol
            acc = 0.0
            ea_ = 0.0
            _adapt(0.0, 0.5, 0, 0, dv[i], ev[i], s, m, tol, k, g, ra, &acc, &ea_)
            out[i] = 2.0 * acc
            err[i] = 2.0 * ea_
    return out_arr.reshape(shape), err_arr.reshape(shape)


cdef inline double _young_p(double q) nogil:
    return 2.0 * q / (q + log2(1.0 + pow(2.0, 1.0 - q)))


cdef inline double _logcosh(double x) nogil:
    cdef double ax = fabs(x)
    return ax + log1p(exp(-2.0 * ax)) - 0.6931471805599453


def dq_phi_tilde_grid_min(double q0, double dq, Py_ssize_t nq,
                          double u0, double du, Py_ssize_t nu):
    """Minimum of the certificate function over ``(q0 + i dq, u0 + j du)``.

    Returns ``(value, i, j, nan_count)``; ties resolve to the lexicographically
    smallest ``(i, j)``.
    """
    cdef Py_ssize_t i, j, bi = 0, bj = 0, nan_count = 0
    cdef double q, u, p, dp, w, const, v, best = INFINITY
    # The u-dependent part without p is shared by every row.
    lc_arr = np.empty(max(nu, 1))
    us_arr = np.empty(max(nu, 1))
    cdef double[::1] lc = lc_arr
    cdef double[::1] us = us_arr
    for j in range(nu):
        us[j] = u0 + du * j
        lc[j] = _logcosh(us[j])
    with nogil:
        for i in range(nq):
            q = q0 + dq * i
            p = _young_p(q)
            w = 1.0 / (1.0 + pow(2.0, 1.0 - q))
            dp = p / q * (1.0 - 0.5 * p * w)
            const = 2.0 / (2.0 * q - p) * (dp * q / p - 1.0) + 0.6931471805599453
            for j in range(nu):
                u = us[j]
                v = lc[j] - dp * u * tanh(p * u) + const
                if not isfinite(v):
                    nan_count += 1
                    continue
                if v < best:
                    best = v
                    bi = i
                    bj = j
    return best, bi, bj, nan_count
