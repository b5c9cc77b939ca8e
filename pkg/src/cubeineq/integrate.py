"""Quadrature engines on the circle and on tori.

* :func:`integrate_circle` -- adaptive Gauss-Kronrod (G7/K15) with bisection.
* :func:`integrate_torus` -- iterated adaptive integration (``tensor``, d <= 3)
  or a randomly shifted rank-1 lattice rule (``qmc``, d <= 10).

Integrands are vectorized: ``f(t)`` for the circle takes a 1-d array, and
``f(xi)`` for the torus takes an ``(n, d)`` array of points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernels_py import EPS, NODES, WEIGHTS_G, WEIGHTS_K
from .errors import NumericalFailure, UsageError

METHODS = ("adaptive1d", "tensor", "qmc")
QMC_SHIFTS = 16
MAX_DEPTH = 50


@dataclass(frozen=True)
class QuadratureSpec:
    """Parameters for the quadrature engines.

    ``nodes_per_axis`` is the minimum number of Kronrod nodes each axis starts
    from before adaptive bisection, rounded up to whole 15-node panels.
    ``samples`` is the total number of lattice points over all random shifts
    for ``qmc``.
    """

    method: str = "adaptive1d"
    abs_tol: float = 1e-12
    nodes_per_axis: int = 16
    samples: int = 2**20
    seed: int = 0
    max_evaluations: int = 20_000_000

    def __post_init__(self):
        if self.method not in METHODS:
            raise UsageError(f"unknown quadrature method {self.method!r}")
        if not self.abs_tol > 0:
            raise UsageError("abs_tol must be positive")
        if self.method == "tensor" and self.nodes_per_axis < 16:
            raise UsageError("tensor method needs nodes_per_axis >= 16")
        if self.method == "qmc" and self.samples < 2**10:
            raise UsageError("qmc method needs samples >= 2**10")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")

    def with_(self, **changes) -> "QuadratureSpec":
        fields = {**self.__dict__, **changes}
        return QuadratureSpec(**fields)


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    error_bound: float
    method_used: str
    evaluations: int
    statistical: bool = False

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "method_used": self.method_used,
            "evaluations": self.evaluations,
            "statistical": self.statistical,
        }


def adaptive_batch(func, n, a, b, atol, panels=1, max_evaluations=20_000_000):
    """Integrate ``n`` one-dimensional problems on ``[a, b]`` simultaneously.

    ``func(owner, t)`` evaluates problem ``owner[k]`` at ``t[k]`` (both
    arrays of equal length). Panels are bisected until each satisfies a
    width-proportional share of ``atol`` (scalar or per problem).

    Returns ``(values, errors, evaluations, converged)``.
    """
    atol = np.broadcast_to(np.asarray(atol, dtype=float), (n,))
    out = np.zeros(n)
    err = np.zeros(n)
    edges = np.linspace(a, b, panels + 1)
    owner = np.repeat(np.arange(n), panels)
    lo = np.tile(edges[:-1], n)
    hi = np.tile(edges[1:], n)
    width = b - a
    evaluations = 0
    depth = 0
    converged = True
    while owner.size:
        half = 0.5 * (hi - lo)
        center = 0.5 * (hi + lo)
        t = center[:, None] + half[:, None] * NODES[None, :]
        fv = np.asarray(func(np.repeat(owner, NODES.size), t.ravel()), dtype=float)
        fv = fv.reshape(t.shape)
        evaluations += fv.size
        k = half * (fv @ WEIGHTS_K)
        g = half * (fv @ WEIGHTS_G)
        resabs = half * (np.abs(fv) @ WEIGHTS_K)
        est = np.abs(k - g)
        local = np.maximum(atol[owner] * (hi - lo) / width, 50.0 * EPS * resabs)
        done = est <= local
        if depth >= MAX_DEPTH or evaluations >= max_evaluations:
            if not done.all():
                converged = False
            done[:] = True
        np.add.at(out, owner[done], k[done])
        np.add.at(err, owner[done], est[done])
        keep = ~done
        owner = np.repeat(owner[keep], 2)
        mid = center[keep]
        lo = np.column_stack([lo[keep], mid]).ravel()
        hi = np.column_stack([mid, hi[keep]]).ravel()
        depth += 1
    if not np.all(np.isfinite(out)):
        converged = False
    return out, err, evaluations, converged


def integrate_circle(f, spec: QuadratureSpec | None = None, *, even: bool = False) -> IntegralEstimate:
    """Integrate a real function over the circle ``[0, 1)``.

    With ``even=True`` the integrand is assumed symmetric about ``t = 1/2``:
    only ``[0, 1/2]`` is integrated and the result doubled.
    """
    spec = spec or QuadratureSpec()
    b = 0.5 if even else 1.0
    scale = 2.0 if even else 1.0

    def func(owner, t):
        return f(t)

    vals, errs, n_eval, ok = adaptive_batch(
        func, 1, 0.0, b, spec.abs_tol / scale, panels=1,
        max_evaluations=spec.max_evaluations,
    )
    est = IntegralEstimate(
        value=float(scale * vals[0]),
        error_bound=float(scale * errs[0]),
        method_used="adaptive1d",
        evaluations=n_eval,
    )
    if not ok:
        raise NumericalFailure("adaptive quadrature did not converge", est)
    return est


def integrate_torus(f, d: int, spec: QuadratureSpec | None = None) -> IntegralEstimate:
    """Integrate a real function over the torus ``[0, 1)^d``."""
    if d < 1:
        raise UsageError("dimension must be positive")
    spec = spec or QuadratureSpec(method="tensor" if d <= 3 else "qmc")
    method = spec.method
    if method == "adaptive1d":
        method = "tensor" if d <= 3 else "qmc"
    if method == "tensor":
        if d > 3:
            raise UsageError("tensor quadrature supports d <= 3")
        return _tensor(f, d, spec)
    if d > 10:
        raise UsageError("quasi-Monte Carlo supports d <= 10")
    return _qmc(f, d, spec)


def _tensor(f, d, spec):
    panels = -(-spec.nodes_per_axis // len(NODES))
    counter = [0]
    inner_err = [0.0]
    ok = [True]

    def level(k, prefix, atol):
        m = prefix.shape[0]

        def func(owner, t):
            pts = np.column_stack([prefix[owner], t])
            if k == d - 1:
                return f(pts)
            vals, errs = level(k + 1, pts, atol / 4.0)
            inner_err[0] = max(inner_err[0], float(errs.max(initial=0.0)))
            return vals

        vals, errs, n_eval, conv = adaptive_batch(
            func, m, 0.0, 1.0, atol, panels=panels,
            max_evaluations=spec.max_evaluations,
        )
        counter[0] += n_eval
        ok[0] = ok[0] and conv
        return vals, errs

    vals, errs = level(0, np.zeros((1, 0)), spec.abs_tol / 2.0)
    est = IntegralEstimate(
        value=float(vals[0]),
        error_bound=float(errs[0] + inner_err[0]),
        method_used="tensor",
        evaluations=counter[0],
    )
    if not ok[0]:
        raise NumericalFailure("tensor quadrature did not converge", est)
    return est


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for k in range(3, r + 1, 2):
        if n % k == 0:
            return False
    return True


def _prev_prime(n):
    while not _is_prime(n):
        n -= 1
    return n


@lru_cache(maxsize=64)
def korobov_vector(n: int, d: int) -> tuple[int, ...]:
    """Korobov generating vector ``(1, a, a^2, ...) mod n`` minimizing P_2.

    The candidate generators are a fixed, seed-free set spread over
    ``[2, n/2]``, so the result is a deterministic function of ``(n, d)``.
    """
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    candidates = []
    for i in range(1, 65):
        a = int(n * ((i * golden) % 1.0))
        a = min(a, n - a)
        if a >= 2 and a not in candidates:
            candidates.append(a)
    k = np.arange(n, dtype=np.int64)
    best = None
    for a in candidates[:32]:
        z = [pow(a, j, n) for j in range(d)]
        prod = np.ones(n)
        for zj in z:
            x = (k * zj % n) / n
            prod *= 1.0 + 2.0 * math.pi**2 * (x * x - x + 1.0 / 6.0)
        p2 = prod.mean() - 1.0
        if best is None or p2 < best[0]:
            best = (p2, tuple(z))
    return best[1]


def lattice_points(n: int, d: int) -> np.ndarray:
    z = np.array(korobov_vector(n, d), dtype=np.int64)
    k = np.arange(n, dtype=np.int64)
    return (k[:, None] * z[None, :] % n) / n


def _qmc(f, d, spec):
    n = _prev_prime(max(spec.samples // QMC_SHIFTS, 5))
    pts = lattice_points(n, d)
    rng = np.random.default_rng(spec.seed)
    shifts = rng.random((QMC_SHIFTS, d))
    chunk = max(1, 2**16)
    estimates = np.empty(QMC_SHIFTS)
    for m, shift in enumerate(shifts):
        partial = []
        for start in range(0, n, chunk):
            x = pts[start:start + chunk] + shift
            x -= np.floor(x)
            partial.append(float(np.sum(f(x))))
        estimates[m] = math.fsum(partial) / n
    value = float(estimates.mean())
    se = float(estimates.std(ddof=1) / math.sqrt(QMC_SHIFTS))
    est = IntegralEstimate(
        value=value,
        error_bound=3.0 * se,
        method_used="qmc",
        evaluations=n * QMC_SHIFTS,
        statistical=True,
    )
    if not (math.isfinite(value) and math.isfinite(se)):
        raise NumericalFailure("non-finite quasi-Monte Carlo estimate", est)
    return est
