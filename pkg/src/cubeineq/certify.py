"""Lipschitz-grid certificates.

A certificate evaluates a function at every node of a uniform grid on a
rectangle. Each node value is reduced by an evaluation-error pad, and
Lipschitz bounds in both directions control the function between nodes:
every point of the rectangle lies within ``dq/2`` and ``du/2`` of a node, so

    min over rectangle >= min over nodes - pad - L_q dq/2 - L_u du/2.

The built-in rigorous instance is the ``q``-derivative of

    Phi(q, u) = q ln cosh u - ln cosh(p u) + ln(p 2^{q-1} / (2q - p)),

with ``p`` the Young endpoint exponent, on ``[1, 4] x [0, 3]``. Its
Lipschitz constants are proved analytically and checked by
:func:`lipschitz_bounds_check`. The pad is audited against high-precision
evaluations at sample nodes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from . import kernels
from ._kernels_py import dq_phi_tilde as _dq_phi_tilde_np
from .errors import NumericalFailure, UsageError
from .fourpoint import G, young_endpoint_ddp
from .regions import young_endpoint_dp, young_endpoint_p
from .report import Report, verdict_of
from .twopoint import F

DEFAULT_RECTANGLE = (1.0, 4.0, 0.0, 3.0)
DEFAULT_STEPS = (1.0 / 700.0, 1.0 / 300.0)
DEFAULT_LIPSCHITZ = (7.0, 3.0)
DEFAULT_THRESHOLD = 1.0 / 50.0
DEFAULT_PAD = 1e-6


def dq_phi_tilde(q, u):
    """``d/dq Phi(q, u)`` in closed form; vectorized."""
    out = _dq_phi_tilde_np(q, u)
    return float(out) if np.ndim(out) == 0 else out


def phi_tilde(q, u):
    """``Phi(q, u) = q ln cosh u - ln cosh(pu) + ln(p 2^{q-1}/(2q-p))``."""
    p = young_endpoint_p(q)
    lc = lambda v: abs(v) + math.log1p(math.exp(-2.0 * abs(v))) - math.log(2.0)
    return q * lc(u) - lc(p * u) + math.log(p * 2.0 ** (q - 1.0) / (2.0 * q - p))


def _dq_phi_tilde_mp(q, u):
    q = mpmath.mpf(q)
    u = mpmath.mpf(u)
    p = 2 * q / mpmath.log(2**q + 2, 2)
    w = 2**q / (2**q + 2)
    dp = p / q * (1 - p * w / 2)
    return (
        mpmath.log(mpmath.cosh(u)) - dp * u * mpmath.tanh(p * u)
        + 2 / (2 * q - p) * (dp * q / p - 1) + mpmath.log(2)
    )


def d2q_phi_tilde(q, u):
    """``d^2/dq^2 Phi(q, u)``; vectorized."""
    q = np.asarray(q, dtype=float)
    u = np.asarray(u, dtype=float)
    p = young_endpoint_p(q)
    dp = young_endpoint_dp(q)
    ddp = young_endpoint_ddp(q)
    pu = p * u
    sech2 = 1.0 / np.cosh(pu) ** 2
    m = 2.0 * q - p
    return (
        -ddp * u * np.tanh(pu) - dp * dp * u * u * sech2
        + ddp * 2.0 * q / (p * m) - dp * dp * 4.0 * q * (q - p) / (p * p * m * m)
        + 4.0 * (1.0 - dp) / (m * m)
    )


def dudq_phi_tilde(q, u):
    """``d^2/du dq Phi(q, u)``; vectorized."""
    q = np.asarray(q, dtype=float)
    u = np.asarray(u, dtype=float)
    p = young_endpoint_p(q)
    dp = young_endpoint_dp(q)
    pu = p * u
    return -dp * np.tanh(pu) - dp * pu / np.cosh(pu) ** 2 + np.tanh(u)


@dataclass
class CertFunction:
    """A function that can be certified on a grid.

    ``grid_min(q0, dq, nq, u0, du, nu, **params)`` returns
    ``(value, i, j, nan_count)``. ``exact`` optionally evaluates one node in
    high precision for auditing the pad.
    """

    name: str
    grid_min: object
    rigorous: bool
    pad: float
    exact: object = None
    description: str = ""


_REGISTRY: dict[str, CertFunction] = {}


def register(fn: CertFunction) -> None:
    _REGISTRY[fn.name] = fn


def registered() -> list[str]:
    return sorted(_REGISTRY)


def _vectorized_grid_min(func):
    def grid_min(q0, dq, nq, u0, du, nu, **params):
        qs = q0 + dq * np.arange(nq)
        us = u0 + du * np.arange(nu)
        vals = np.asarray(func(qs[:, None], us[None, :], **params), dtype=float)
        vals = np.broadcast_to(vals, (nq, nu))
        bad = ~np.isfinite(vals)
        vals = np.where(bad, np.inf, vals)
        flat = int(np.argmin(vals))
        i, j = divmod(flat, nu)
        return float(vals[i, j]), i, j, int(bad.sum())

    return grid_min


def _f_excess(q, x):
    # Axes are the exponent q > 2 and the point x in [0, 1].
    qs = np.ravel(q)
    xs = np.ravel(x)
    return np.array([1.0 - F(v, xs) for v in qs])


def _g_excess(x, y, q=2.0):
    return 1.0 - G(q, x, y)


register(CertFunction(
    name="dq_phi_tilde",
    grid_min=kernels.dq_phi_tilde_grid_min,
    rigorous=True,
    pad=DEFAULT_PAD,
    exact=_dq_phi_tilde_mp,
    description="q-derivative of the log-ratio of the second cosh inequality",
))
register(CertFunction(
    name="F_q_excess",
    grid_min=_vectorized_grid_min(_f_excess),
    rigorous=False,
    pad=1e-12,
    description="1 - F_q(x) over (q, x)",
))
register(CertFunction(
    name="G_q_excess",
    grid_min=_vectorized_grid_min(_g_excess),
    rigorous=False,
    pad=1e-13,
    description="1 - G_q(x, y)",
))


@dataclass
class GridCertificate:
    function_id: str
    rectangle: tuple
    steps: tuple
    grid_shape: tuple
    lipschitz: tuple
    node_threshold: float
    eval_error_bound: float
    worst_node: tuple
    nodes_checked: int
    lipschitz_slack: float
    guaranteed_floor: float
    interior_lower_bound: float
    verdict: str
    rigor: str
    params: dict = field(default_factory=dict)
    pad_audit: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


def _nodes(lo, hi, step):
    n = round((hi - lo) / step) + 1
    if n < 1 or abs(lo + (n - 1) * step - hi) > 1e-9 * max(1.0, abs(hi)):
        raise UsageError("rectangle side is not a whole number of steps")
    return n


def certify_grid(
    function_id: str,
    rectangle=DEFAULT_RECTANGLE,
    steps=DEFAULT_STEPS,
    lipschitz=DEFAULT_LIPSCHITZ,
    threshold=DEFAULT_THRESHOLD,
    pad=None,
    params=None,
    audit_samples=64,
    seed=0,
) -> GridCertificate:
    """Evaluate a registered function on every grid node and bound it in between.

    The verdict is ``pass`` iff every node value minus the pad exceeds
    ``threshold``. ``guaranteed_floor = threshold - pad - L_q dq/2 - L_u du/2``
    is then a proven lower bound on the whole rectangle; the sharper
    ``interior_lower_bound`` uses the observed minimum instead of the threshold.
    """
    if function_id not in _REGISTRY:
        raise UsageError(f"unknown function id {function_id!r}")
    fn = _REGISTRY[function_id]
    q_lo, q_hi, u_lo, u_hi = map(float, rectangle)
    dq, du = map(float, steps)
    lq, lu = map(float, lipschitz)
    if dq <= 0 or du <= 0 or lq < 0 or lu < 0:
        raise UsageError("steps must be positive and Lipschitz bounds nonnegative")
    nq = _nodes(q_lo, q_hi, dq)
    nu = _nodes(u_lo, u_hi, du)
    params = dict(params or {})
    pad = fn.pad if pad is None else float(pad)

    value, i, j, nan_count = fn.grid_min(q_lo, dq, nq, u_lo, du, nu, **params)
    if nan_count:
        raise NumericalFailure(f"{nan_count} non-finite node values")

    audit = {}
    if fn.exact is not None and audit_samples:
        rng = np.random.default_rng(seed)
        idx = [(i, j)] + [
            (int(a), int(b))
            for a, b in zip(rng.integers(0, nq, audit_samples), rng.integers(0, nu, audit_samples))
        ]
        worst_err = 0.0
        for a, b in idx:
            qa, ub = q_lo + dq * a, u_lo + du * b
            approx = fn.grid_min(qa, dq, 1, ub, du, 1, **params)[0]
            with mpmath.workdps(40):
                err = abs(float(fn.exact(qa, ub, **params) - approx))
            worst_err = max(worst_err, err)
        audit = {"samples": len(idx), "max_abs_error": worst_err, "within_pad": worst_err <= pad}
        if worst_err > pad:
            raise NumericalFailure("evaluation error exceeds the declared pad")

    slack = 0.5 * (lq * dq + lu * du)
    ok = value - pad > threshold
    return GridCertificate(
        function_id=function_id,
        rectangle=(q_lo, q_hi, u_lo, u_hi),
        steps=(dq, du),
        grid_shape=(nq, nu),
        lipschitz=(lq, lu),
        node_threshold=float(threshold),
        eval_error_bound=pad,
        worst_node=(q_lo + dq * i, u_lo + du * j, float(value)),
        nodes_checked=nq * nu,
        lipschitz_slack=slack,
        guaranteed_floor=float(threshold) - pad - slack,
        interior_lower_bound=float(value) - pad - slack,
        verdict="pass" if ok else "fail",
        rigor="rigorous" if fn.rigorous else "heuristic",
        params=params,
        pad_audit=audit,
    )


def lipschitz_bounds_check(q_grid, u_grid, bounds=DEFAULT_LIPSCHITZ) -> Report:
    """Check ``|d^2_q Phi| <= L_q`` and ``|d_u d_q Phi| <= L_u`` on a grid."""
    q = np.asarray(q_grid, dtype=float)
    u = np.asarray(u_grid, dtype=float)
    if q.min() < 1.0 or q.max() > 4.0 or u.min() < 0.0 or u.max() > 3.0:
        raise UsageError("grid must lie in [1, 4] x [0, 3]")
    a = np.abs(d2q_phi_tilde(q[:, None], u[None, :]))
    b = np.abs(dudq_phi_tilde(q[:, None], u[None, :]))
    ia = np.unravel_index(np.argmax(a), a.shape)
    ib = np.unravel_index(np.argmax(b), b.shape)
    ok = a.max() <= bounds[0] and b.max() <= bounds[1]
    return Report(
        suite="certify",
        check="lipschitz_bounds",
        verdict=verdict_of(bool(ok)),
        inputs={"q_points": q.size, "u_points": u.size},
        values={
            "max_abs_d2q": float(a.max()),
            "argmax_d2q": (float(q[ia[0]]), float(u[ia[1]])),
            "max_abs_dudq": float(b.max()),
            "argmax_dudq": (float(q[ib[0]]), float(u[ib[1]])),
        },
        tolerances={"L_q": bounds[0], "L_u": bounds[1]},
        anchor="Lipschitz bounds 7 and 3 for the certified derivative",
    )


def certificate_report(cert: GridCertificate) -> Report:
    return Report(
        suite="certify",
        check=f"grid_certificate_{cert.function_id}",
        verdict=verdict_of(cert.passed),
        inputs={"rectangle": cert.rectangle, "steps": cert.steps, "params": cert.params},
        values=cert.to_dict(),
        tolerances={"pad": cert.eval_error_bound, "threshold": cert.node_threshold},
        anchor="Lipschitz-grid certificate",
    )
