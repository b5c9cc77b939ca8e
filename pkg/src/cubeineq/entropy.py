"""Shannon entropies on the cube, on the torus and of sums.

All entropies are in bits. For a probability mass function ``m`` on a finite
set, ``H(m) = -sum m log2 m`` with ``0 log2 0 = 0``. For ``f`` on ``{0,1}^d``
with ``||f||_2 = 1`` the Fourier side carries the density ``|f^|^2`` on the
torus, and ``H_T = -int |f^|^2 log2 |f^|^2``.

The torus entropy integrates the last coordinate in closed form: with
``rho(t) = |a + b e(t)|^2``, ``A = max(|a|, |b|)`` and ``B = min(|a|, |b|)``,

    int_0^1 rho ln rho dt = 2 (A^2 + B^2) ln A + 2 B^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .cube import CubeFunction, CubeSet, LatticeFunction, _slices_hat, convolve, fourier_eval
from .errors import DomainError, UsageError
from .integrate import IntegralEstimate, QuadratureSpec, integrate_circle, integrate_torus
from .report import Report, verdict_of
from .specfun import log_binom_gen

LN2 = math.log(2.0)
UNCERTAINTY_CONSTANT = 1.0 / LN2 - 1.0
NORMALIZATION_TOL = 1e-9
L2_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-10
TINY = 1e-300
MAX_BINOMIAL_N = 10**6


@dataclass
class PmfOnLattice:
    """Masses on ``{0, ..., side-1}^d`` stored flat, coordinate ``j`` at digit ``j``.

    ``counts`` optionally holds integer weights proportional to the masses; the
    entropy is then computed from the integers, which is exact whenever the
    counts are powers of two.
    """

    d: int
    masses: np.ndarray
    side: int = 2
    counts: np.ndarray | None = None

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float)
        if self.side not in (2, 3):
            raise UsageError("side must be 2 (cube) or 3 (sum lattice)")
        if m.shape != (self.side**self.d,):
            raise DomainError(f"expected {self.side**self.d} masses, got shape {m.shape}")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise DomainError("masses must be finite and nonnegative")
        total = math.fsum(m.tolist())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise UsageError(f"masses sum to {total!r}, not 1")
        self.masses = m

    @classmethod
    def from_counts(cls, d, counts, side=2):
        c = np.asarray(counts).astype(object)
        if any(int(x) < 0 for x in c):
            raise DomainError("counts must be nonnegative")
        total = int(sum(int(x) for x in c))
        if total == 0:
            raise DomainError("counts must not all vanish")
        masses = np.array([int(x) / total for x in c], dtype=float)
        return cls(d, masses, side, c)

    @classmethod
    def uniform(cls, d):
        return cls.from_counts(d, np.ones(2**d, dtype=np.int64))

    @classmethod
    def from_set(cls, A: CubeSet):
        return cls.from_counts(A.d, A.indicator().values)

    @classmethod
    def from_function(cls, f: CubeFunction):
        """``|f|^2`` normalized to total mass one."""
        w = np.abs(np.asarray(f.values, dtype=complex)) ** 2
        total = math.fsum(w.tolist())
        if total == 0.0:
            raise DomainError("f must be nonzero")
        return cls(f.d, w / total, 2)

    @classmethod
    def from_lattice(cls, h: LatticeFunction):
        v = np.asarray(h.values)
        if v.dtype == object or v.dtype.kind in "iu":
            return cls.from_counts(h.d, v, 3)
        total = math.fsum(v.astype(float).tolist())
        return cls(h.d, v.astype(float) / total, 3)

    def as_cube_function(self) -> CubeFunction:
        if self.side != 2:
            raise UsageError("only cube-supported masses convert to cube functions")
        vals = self.counts if self.counts is not None else self.masses
        return CubeFunction(self.d, np.asarray(vals))


def _xlog2x_sum(m) -> float:
    m = np.asarray(m, dtype=float)
    m = m[m >= TINY]
    return math.fsum((m * np.log2(m)).tolist())


def entropy_pmf(m: PmfOnLattice) -> float:
    """``-sum m log2 m`` in bits, nonnegative."""
    if m.counts is not None:
        counts = [int(x) for x in m.counts if int(x)]
        total = sum(counts)
        s = math.fsum(c * math.log2(c) for c in counts if c > 1)
        h = math.log2(total) - s / total
    else:
        h = -_xlog2x_sum(m.masses)
    return h if h > 0.0 else 0.0


def _rho_log_rho_line(a, b):
    """``int_0^1 |a + b e(t)|^2 ln |a + b e(t)|^2 dt`` for arrays of ``a, b``."""
    ma, mb = np.abs(a), np.abs(b)
    big = np.maximum(ma, mb)
    small = np.minimum(ma, mb)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 2.0 * (big * big + small * small) * np.log(big) + 2.0 * small * small
    return np.where(big > 0.0, out, 0.0)


def _check_l2(f: CubeFunction):
    norm2 = math.fsum((np.abs(np.asarray(f.values, dtype=complex)) ** 2).tolist())
    if abs(norm2 - 1.0) > L2_TOL:
        raise UsageError("f must be l2-normalized")


def _default_spec(d):
    return QuadratureSpec(method="tensor" if d <= 3 else "qmc", abs_tol=DEFAULT_ABS_TOL)


def entropy_hat(f: CubeFunction, spec: QuadratureSpec | None = None) -> IntegralEstimate:
    """``H_T(|f^|^2)`` in bits for an ``l2``-normalized ``f``; may be negative."""
    _check_l2(f)
    if f.d == 0:
        return IntegralEstimate(0.0, 0.0, "exact", 0)
    if f.d > 10:
        raise UsageError("torus entropy supports d <= 10")
    if f.d == 1:
        v = float(_rho_log_rho_line(np.array([f.values[0]]), np.array([f.values[1]]))[0])
        return IntegralEstimate(-v / LN2, 0.0, "closed_form", 1)
    spec = spec or _default_spec(f.d)

    def integrand(pts):
        a, b = _slices_hat(f, pts)
        return _rho_log_rho_line(a, b)

    est = integrate_torus(integrand, f.d - 1, spec)
    return IntegralEstimate(
        -est.value / LN2, est.error_bound / LN2, est.method_used, est.evaluations, est.statistical,
    )


def entropy_hat_direct(f: CubeFunction, spec: QuadratureSpec | None = None) -> IntegralEstimate:
    """Same quantity by quadrature over all ``d`` torus coordinates (``d <= 3``)."""
    _check_l2(f)
    if not 1 <= f.d <= 3:
        raise UsageError("direct torus entropy supports 1 <= d <= 3")
    spec = spec or QuadratureSpec(method="tensor", abs_tol=DEFAULT_ABS_TOL)

    def integrand(pts):
        rho = np.abs(fourier_eval(f, pts)) ** 2
        safe = np.where(rho < TINY, 1.0, rho)
        return np.where(rho < TINY, 0.0, -rho * np.log2(safe))

    return integrate_torus(integrand, f.d, spec)


def one_dim_constant(spec: QuadratureSpec | None = None) -> IntegralEstimate:
    """``int_0^1 cos^2(pi t) log2 cos^2(pi t) dt`` by adaptive quadrature.

    The closed form is ``1/(2 ln 2) - 1``.
    """
    def f(t):
        c = np.cos(np.pi * t) ** 2
        safe = np.where(c < TINY, 1.0, c)
        return np.where(c < TINY, 0.0, c * np.log2(safe))

    return integrate_circle(f, spec or QuadratureSpec(abs_tol=1e-12), even=True)


def uncertainty_check(f: CubeFunction, spec: QuadratureSpec | None = None) -> Report:
    """``H_T(|f^|^2) + (1/ln 2 - 1) H(|f|^2) >= 0`` and the classical ``H_T + H >= 0``."""
    _check_l2(f)
    ht = entropy_hat(f, spec)
    hz = entropy_pmf(PmfOnLattice.from_function(f))
    sharp = ht.value + UNCERTAINTY_CONSTANT * hz
    classical = ht.value + hz
    slack = max(1e-7, 3.0 * ht.error_bound)
    return Report(
        suite="entropy",
        check="uncertainty",
        verdict=verdict_of(sharp >= -slack),
        inputs={"d": f.d},
        values={
            "H_torus": ht.value, "H_cube": hz, "sharp_sum": sharp, "classical_sum": classical,
            "classical_holds": classical >= -slack, "estimate": ht,
        },
        tolerances={"slack": slack},
        anchor="entropic uncertainty H_T + (1/ln2 - 1) H_Z >= 0 on the binary cube",
    )


def _convolve_pmfs(f: PmfOnLattice, g: PmfOnLattice) -> PmfOnLattice:
    if f.side != 2 or g.side != 2 or f.d != g.d:
        raise UsageError("entropy of sums needs two pmfs on the same cube")
    return PmfOnLattice.from_lattice(convolve(f.as_cube_function(), g.as_cube_function()))


def entropy_sum_check(f: PmfOnLattice, g: PmfOnLattice, atol: float = 1e-10) -> Report:
    """``H(f * g) >= (3/4)(H(f) + H(g))`` with exact finite sums; reports the 1/2 margin."""
    if f.d > 12:
        raise UsageError("entropy of sums supports d <= 12")
    h = _convolve_pmfs(f, g)
    hf, hg, hs = entropy_pmf(f), entropy_pmf(g), entropy_pmf(h)
    m34 = hs - 0.75 * (hf + hg)
    m12 = hs - 0.5 * (hf + hg)
    return Report(
        suite="entropy",
        check="entropy_of_sums",
        verdict=verdict_of(m34 >= -atol),
        inputs={"d": f.d},
        values={
            "H_f": hf, "H_g": hg, "H_sum": hs,
            "margin_three_quarters": m34, "margin_half": m12,
            "max_entropy_monotone": hs >= max(hf, hg) - atol,
        },
        tolerances={"atol": atol},
        anchor="entropy of sums H(f*g) >= (3/4)(H(f) + H(g)) on the binary cube",
    )


def binomial_entropy(n: int) -> float:
    """Entropy in bits of the binomial distribution ``B(n, 1/2)`` by exact summation."""
    if not 1 <= n <= 2 * MAX_BINOMIAL_N:
        raise UsageError("n out of range")
    k = np.arange(n + 1)
    if n <= 1000:
        logs = np.array([log_binom_gen(n, int(j)) for j in k])
    else:
        logs = special.gammaln(n + 1.0) - special.gammaln(k + 1.0) - special.gammaln(n - k + 1.0)
    lp = logs - n * LN2
    p = np.exp(lp)
    return -math.fsum((p * lp).tolist()) / LN2


def binomial_entropy_row(n: int) -> tuple[int, float, float, float]:
    if not 1 <= n <= MAX_BINOMIAL_N:
        raise UsageError(f"n must lie in [1, {MAX_BINOMIAL_N}]")
    h1 = binomial_entropy(n)
    h2 = binomial_entropy(2 * n)
    return n, h1, h2, h2 / h1


def binomial_entropy_probe(n: int) -> Report:
    """Entropies of ``B(n, 1/2)`` and ``B(2n, 1/2)``: their ratio tends to one."""
    n, h1, h2, ratio = binomial_entropy_row(n)
    return Report(
        suite="entropy",
        check="binomial_probe",
        verdict="pass",
        inputs={"n": n},
        values={
            "H_n": h1, "H_2n": h2, "ratio": ratio,
            "gap_to_half_log2_n": h1 - 0.5 * math.log2(n),
        },
        anchor="sharpness of the constant 1/2 for entropy of sums on the integers",
    )
