"""Special functions: log-gamma, trigamma, generalized binomial coefficients
and the Legendre function of real degree.

Log-gamma and trigamma come from the standard library and SciPy; the
Legendre function is evaluated from its integral representation with the
package's own quadrature.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import DomainError
from .integrate import QuadratureSpec, integrate_circle


def _check_positive(z, name="z"):
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)) or np.any(z <= 0):
        raise DomainError(f"{name} must be positive and finite")
    return z


def log_gamma(z):
    """Natural logarithm of the gamma function for positive ``z``.

    Scalars use :func:`math.lgamma`, arrays use :func:`scipy.special.gammaln`.
    """
    if np.ndim(z) == 0:
        z = float(_check_positive(z))
        return math.lgamma(z)
    return special.gammaln(_check_positive(z))


def trigamma(z):
    """Trigamma function, the derivative of the digamma function."""
    zz = _check_positive(z)
    out = special.polygamma(1, zz)
    return float(out) if np.ndim(z) == 0 else out


def digamma(z):
    zz = _check_positive(z)
    out = special.digamma(zz)
    return float(out) if np.ndim(z) == 0 else out


def binom_gen(a, b):
    """Generalized binomial coefficient ``Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1))``.

    Requires ``min(a, b, a - b) > -1``. Evaluated through log-gamma, so large
    arguments do not overflow before the final exponential.
    """
    a = float(a)
    b = float(b)
    if a.is_integer() and b.is_integer() and 0 <= b <= a <= 1000:
        return float(math.comb(int(a), int(b)))
    return math.exp(log_binom_gen(a, b))


def log_binom_gen(a, b):
    """Natural log of :func:`binom_gen`; exact integer binomials are used when possible."""
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or min(a, b, a - b) <= -1:
        raise DomainError("binom_gen requires min(a, b, a - b) > -1")
    if a.is_integer() and b.is_integer() and 0 <= b <= a <= 1000:
        return math.log(math.comb(int(a), int(b)))
    return math.lgamma(a + 1.0) - math.lgamma(b + 1.0) - math.lgamma(a - b + 1.0)


def legendre_p(nu, z, rtol=1e-13):
    """Legendre function of degree ``nu >= 1`` at ``z > 1``.

    Uses ``P_nu(z) = int_0^1 (z + sqrt(z^2 - 1) cos 2 pi t)^nu dt``. The
    integrand is even about ``t = 1/2``, so half the period is integrated.
    """
    nu = float(nu)
    z = float(z)
    if not math.isfinite(z) or z <= 1.0:
        raise DomainError("legendre_p requires z > 1")
    if not math.isfinite(nu) or nu < 1.0:
        raise DomainError("legendre_p requires nu >= 1")
    w = math.sqrt((z - 1.0) * (z + 1.0))

    def f(t):
        return (z + w * np.cos(2.0 * np.pi * t)) ** nu

    # A coarse pass fixes the scale, then the tolerance is made relative.
    rough = integrate_circle(f, QuadratureSpec(abs_tol=1e-6 * (z + w) ** nu), even=True)
    spec = QuadratureSpec(abs_tol=rtol * rough.value)
    return integrate_circle(f, spec, even=True).value
