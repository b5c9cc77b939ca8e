"""Exponent regions for the Hausdorff-Young and Young inequalities.

Points are described by ``(1/p, 1/q)``. The classical regions hold for all
functions on ``Z^d``; the binary regions are the larger ranges that hold for
functions supported in ``{0,1}^d``. Infinite exponents are ``math.inf``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError
from .report import Report, verdict_of
from .specfun import log_binom_gen, trigamma

LN2 = math.log(2.0)
BOUNDARY_ATOL = 1e-12
STRICT_MARGIN = 1e-12


class Regime(str, enum.Enum):
    HY_CLASSICAL = "HY_classical"
    HY_BINARY = "HY_binary"
    YOUNG_CLASSICAL = "Young_classical"
    YOUNG_BINARY = "Young_binary"


def _inv(x: float) -> float:
    return 0.0 if math.isinf(x) else 1.0 / x


@dataclass(frozen=True)
class ExponentPair:
    p: float
    q: float
    regime: Regime = Regime.HY_BINARY

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if math.isnan(v) or v < 1.0:
                raise DomainError(f"{name} must lie in [1, inf]")
        object.__setattr__(self, "regime", Regime(self.regime))

    @property
    def inv_p(self) -> float:
        return _inv(self.p)

    @property
    def inv_q(self) -> float:
        return _inv(self.q)

    @property
    def p_conj(self) -> float:
        return conjugate(self.p)

    @property
    def q_conj(self) -> float:
        return conjugate(self.q)


def conjugate(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def hy_log_ratio(q):
    """``(1/q) log2 C(q, q/2)``: the smallest admissible ``1/p`` on the binary HY boundary."""
    return log_binom_gen(q, q / 2.0) / (q * LN2)


def hy_endpoint_p(q: float) -> float:
    """Endpoint exponent ``q / log2 C(q, q/2)`` of the binary Hausdorff-Young range."""
    q = float(q)
    if not math.isfinite(q) or q < 2.0:
        raise DomainError("hy_endpoint_p requires finite q >= 2")
    return 1.0 / hy_log_ratio(q)


def young_endpoint_p(q):
    """Endpoint exponent ``2q / log2(2^q + 2)`` of the binary Young range."""
    qa = np.asarray(q, dtype=float)
    if not np.all(np.isfinite(qa)) or np.any(qa < 1.0):
        raise DomainError("young_endpoint_p requires finite q >= 1")
    # log2(2^q + 2) = q + log2(1 + 2^(1-q)) stays finite for large q.
    out = 2.0 * qa / (qa + np.log2(1.0 + 2.0 ** (1.0 - qa)))
    return float(out) if np.ndim(q) == 0 else out


def young_endpoint_dp(q):
    """Derivative of :func:`young_endpoint_p` in closed form."""
    p = young_endpoint_p(q)
    w = 1.0 / (1.0 + 2.0 ** (1.0 - np.asarray(q, dtype=float)))
    out = p / q * (1.0 - 0.5 * p * w)
    return float(out) if np.ndim(q) == 0 else out


def lower_inv_p(regime: Regime, q: float) -> float:
    """Smallest admissible ``1/p`` for the given ``q`` in a regime."""
    regime = Regime(regime)
    if regime is Regime.HY_CLASSICAL:
        if math.isinf(q):
            return 1.0
        return 1.0 - 1.0 / q if q >= 2.0 else 0.5
    if regime is Regime.HY_BINARY:
        if math.isinf(q):
            return 1.0
        return hy_log_ratio(q) if q >= 2.0 else 0.5
    if regime is Regime.YOUNG_CLASSICAL:
        return 0.5 * (1.0 + _inv(q))
    if math.isinf(q):
        return 0.5
    return 1.0 / young_endpoint_p(q)


def in_range(pair: ExponentPair) -> bool:
    """Whether ``(p, q)`` lies in the closed region of its regime."""
    return pair.inv_p >= lower_inv_p(pair.regime, pair.q) - BOUNDARY_ATOL


def boundary_samples(regime: Regime, resolution: int) -> list[tuple[float, float]]:
    """Boundary points ``(1/p, 1/q)`` ordered by increasing ``q`` from 1 to infinity.

    ``1/q`` runs over an equispaced grid of ``[0, 1]`` (both ends included);
    for the Hausdorff-Young regimes the corner ``q = 2`` is always included.
    """
    if resolution < 2:
        raise UsageError("resolution must be at least 2")
    regime = Regime(regime)
    inv_q = set(np.linspace(1.0, 0.0, resolution).tolist())
    if regime in (Regime.HY_CLASSICAL, Regime.HY_BINARY):
        inv_q.add(0.5)
    out = []
    for s in sorted(inv_q, reverse=True):
        q = math.inf if s == 0.0 else 1.0 / s
        out.append((lower_inv_p(regime, q), s))
    return out


def boundary_rows(regimes=tuple(Regime), resolution: int = 256):
    """Rows ``(regime, inv_p, inv_q)`` for CSV export."""
    rows = []
    for regime in regimes:
        for ip, iq in boundary_samples(regime, resolution):
            rows.append((Regime(regime).value, ip, iq))
    return rows


def log_central_binom2(t):
    """``log2 C(t, t/2)``, written as a function of real ``t >= 0``."""
    return log_binom_gen(t, t / 2.0) / LN2


def log_central_binom2_dd(t):
    """Second derivative of :func:`log_central_binom2` via the halved trigamma form."""
    return (trigamma(t / 2.0 + 0.5) - trigamma(t / 2.0 + 1.0)) / (4.0 * LN2)


def log_central_binom2_dd_direct(t):
    """Same second derivative before applying the multiplication theorem."""
    return trigamma(t + 1.0) / LN2 - trigamma(t / 2.0 + 1.0) / (2.0 * LN2)


def boundary_report(q_grid) -> Report:
    """Analytic facts about the binary Hausdorff-Young boundary, checked on a grid.

    (a) ``q -> p(q)`` strictly decreases; (b) ``q -> 1/p(q)`` strictly
    increases; (c) ``1/p + 1/q < 1`` for ``q > 2``; (d) the second derivative
    of ``log2 C(t, t/2)`` is positive; (e) ``|t - 1 - log2 C(t, t/2) - log2(t)/2|``
    stays below 1.
    """
    q = np.array(sorted(float(v) for v in q_grid))
    if q.size < 2 or q[0] < 2.0 or q[-1] > 512.0:
        raise UsageError("q grid must have at least two points in [2, 512]")
    p = np.array([hy_endpoint_p(v) for v in q])
    inv_p = 1.0 / p
    failures = {}

    dp = np.diff(p)
    if not np.all(dp < -STRICT_MARGIN):
        failures["a_p_decreasing"] = float(q[1:][np.argmax(dp)])
    dinv = np.diff(inv_p)
    if not np.all(dinv > STRICT_MARGIN):
        failures["b_inv_p_increasing"] = float(q[1:][np.argmin(dinv)])
    if not (np.all(p > 1.0) and np.all(p <= 2.0 + STRICT_MARGIN)):
        failures["p_in_(1,2]"] = float(q[np.argmax(np.abs(p - 1.5))])
    interior = q > 2.0
    slack = 1.0 - inv_p - 1.0 / q
    if np.any(slack[interior] <= STRICT_MARGIN):
        failures["c_sub_holder"] = float(q[interior][np.argmin(slack[interior])])
    dd = np.array([log_central_binom2_dd(v) for v in q])
    dd_direct = np.array([log_central_binom2_dd_direct(v) for v in q])
    if np.any(dd <= 0.0):
        failures["d_convexity"] = float(q[np.argmin(dd)])
    mult_gap = float(np.max(np.abs(dd - dd_direct)))
    if mult_gap > 1e-11:
        failures["d_multiplication_theorem"] = mult_gap
    gap = np.array([t - 1.0 - log_central_binom2(t) - 0.5 * math.log2(t) for t in q])
    if np.max(np.abs(gap)) >= 1.0:
        failures["e_log_growth"] = float(q[np.argmax(np.abs(gap))])

    return Report(
        suite="regions",
        check="binary_boundary",
        verdict=verdict_of(not failures),
        inputs={"q_min": q[0], "q_max": q[-1], "points": q.size},
        values={
            "p_first": p[0],
            "p_last": p[-1],
            "min_sub_holder_slack_q_gt_2": float(slack[interior].min()) if interior.any() else None,
            "min_second_derivative": float(dd.min()),
            "multiplication_theorem_gap": mult_gap,
            "max_abs_log_growth_gap": float(np.max(np.abs(gap))),
            "failures": failures,
        },
        tolerances={"strict_margin": STRICT_MARGIN, "log_growth_bound": 1.0},
        anchor="binary Hausdorff-Young boundary: monotone, sub-Holder, convex log binomial",
    )
