from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubeineq import kernels
from cubeineq import _kernels_py as py
from cubeineq.integrate import QuadratureSpec, integrate_circle

BACKENDS = kernels.backends()


def test_backend_flag():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_cospow_known_values(name):
    k = BACKENDS[name]
    # |1 + e(t)|^4 integrates to 6; |1 + e(t)|^2 to 2.
    v, e = k.cospow_moment(0.0, 4.0, 2.0, 0, 1e-14, 0.0)
    assert float(v) == pytest.approx(6.0, abs=1e-12)
    v, _ = k.cospow_moment(0.0, 4.0, 1.0)
    assert float(v) == pytest.approx(2.0, abs=1e-13)
    # A pure constant.
    v, e = k.cospow_moment(2.0, 0.0, 1.5)
    assert float(v) == pytest.approx(2.0**1.5, rel=1e-14)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_cospow_against_generic_quadrature(name):
    k = BACKENDS[name]
    d, e, s, m = 0.04, 3.2, 1.7, 2
    ref = integrate_circle(
        lambda t: (d + e * np.sin(np.pi * t) ** 2) ** s * (2 * np.sin(np.pi * t) ** 2 - 1) ** m,
        QuadratureSpec(abs_tol=1e-13),
    ).value
    v, err = k.cospow_moment(d, e, s, m)
    assert float(v) == pytest.approx(ref, abs=1e-12)
    assert float(err) <= 1e-11


@given(
    st.lists(st.tuples(st.floats(0.0, 4.0), st.floats(0.0, 4.0)), min_size=1, max_size=6),
    st.floats(0.5, 6.0),
    st.integers(0, 2),
)
def test_backends_agree(pairs, s, m):
    d = np.array([a for a, _ in pairs])
    e = np.array([b for _, b in pairs])
    vals = {name: k.cospow_moment(d, e, s, m, 1e-13, 0.0)[0] for name, k in BACKENDS.items()}
    ref = vals["python"]
    scale = (d + e) ** s + 1e-300
    for v in vals.values():
        assert v.shape == d.shape
        assert np.all(np.abs(v - ref) <= 1e-11 * scale)


def test_cospow_broadcast_shape():
    v, e = kernels.cospow_moment(np.zeros((2, 3)), 1.0, 1.5)
    assert v.shape == (2, 3) and e.shape == (2, 3)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_grid_min_matches_dense_evaluation(name):
    k = BACKENDS[name]
    val, i, j, nan = k.dq_phi_tilde_grid_min(1.0, 0.01, 301, 0.0, 0.01, 301)
    qs = 1.0 + 0.01 * np.arange(301)
    us = 0.01 * np.arange(301)
    dense = py.dq_phi_tilde(qs[:, None], us[None, :])
    assert nan == 0
    assert val == pytest.approx(float(dense.min()), abs=1e-14)
    assert (i, j) == np.unravel_index(np.argmin(dense), dense.shape)


def test_grid_min_backends_identical_node():
    results = [k.dq_phi_tilde_grid_min(1.0, 1 / 70, 211, 0.0, 1 / 30, 91) for k in BACKENDS.values()]
    for r in results:
        assert r[1:] == results[0][1:]
        assert r[0] == pytest.approx(results[0][0], abs=1e-14)


def test_young_endpoint_helpers():
    assert py.young_endpoint_p(2.0) == pytest.approx(4.0 / math.log2(6.0), abs=1e-15)
    q = 2.3
    h = 1e-6
    fd = (py.young_endpoint_p(q + h) - py.young_endpoint_p(q - h)) / (2 * h)
    assert py.young_endpoint_dp(q, py.young_endpoint_p(q)) == pytest.approx(fd, rel=1e-8)
