"""Backend selection for the hot kernels.

The compiled extension ``cubeineq._kernels`` is used when it imports cleanly;
otherwise (or when ``CUBEINEQ_PURE_PYTHON`` is set to a true value) the numpy
implementations from ``cubeineq._kernels_py`` are used.
"""

from __future__ import annotations

import os

from . import _kernels_py

_force_pure = os.environ.get("CUBEINEQ_PURE_PYTHON", "").lower() in {"1", "true", "yes"}

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

if _compiled is not None and not _force_pure:
    BACKEND = "compiled"
    cospow_moment = _compiled.cospow_moment
    dq_phi_tilde_grid_min = _compiled.dq_phi_tilde_grid_min
else:
    BACKEND = "python"
    cospow_moment = _kernels_py.cospow_moment
    dq_phi_tilde_grid_min = _kernels_py.dq_phi_tilde_grid_min


def backends():
    """Map backend name to kernel namespace for every available backend."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out
