from __future__ import annotations

import math

import numpy as np
import pytest

from cubeineq._kernels_py import NODES, WEIGHTS_G, WEIGHTS_K
from cubeineq.errors import NumericalFailure, UsageError
from cubeineq.integrate import QuadratureSpec, integrate_circle, integrate_torus, lattice_points


def _exact_monomial(k):
    return 0.0 if k % 2 else 2.0 / (k + 1)


def test_kronrod_exact_to_degree_22():
    for k in range(23):
        assert NODES**k @ WEIGHTS_K == pytest.approx(_exact_monomial(k), abs=1e-15)


def test_gauss_exact_to_degree_13():
    for k in range(14):
        assert NODES**k @ WEIGHTS_G == pytest.approx(_exact_monomial(k), abs=1e-15)
    assert abs(NODES**14 @ WEIGHTS_G - _exact_monomial(14)) > 1e-8


def test_circle_examples():
    one = integrate_circle(lambda t: np.ones_like(t))
    assert one.value == 1.0 and one.error_bound <= 1e-14
    assert abs(integrate_circle(lambda t: np.cos(2 * np.pi * t)).value) <= 1e-14
    six = integrate_circle(lambda t: np.abs(1 + np.exp(-2j * np.pi * t)) ** 4, QuadratureSpec(abs_tol=1e-12))
    assert six.value == pytest.approx(6.0, abs=1e-10)
    assert six.error_bound <= 1e-12


def test_circle_even_symmetry():
    f = lambda t: np.abs(np.cos(np.pi * t)) ** 3
    full = integrate_circle(f, QuadratureSpec(abs_tol=1e-12)).value
    half = integrate_circle(f, QuadratureSpec(abs_tol=1e-12), even=True).value
    assert full == pytest.approx(half, abs=1e-12)
    assert half == pytest.approx(4.0 / (3.0 * math.pi), abs=1e-12)


def test_circle_budget_failure():
    spec = QuadratureSpec(abs_tol=1e-15, max_evaluations=100)
    with pytest.raises(NumericalFailure) as info:
        integrate_circle(lambda t: np.abs(t - 0.3) ** 0.5, spec)
    assert info.value.estimate is not None


def test_torus_examples():
    assert integrate_torus(lambda x: np.ones(x.shape[0]), 2, QuadratureSpec(method="tensor")).value == pytest.approx(1.0)
    two = integrate_torus(lambda x: np.abs(1 + np.exp(-2j * np.pi * x[:, 0])) ** 2, 1, QuadratureSpec(method="tensor"))
    assert two.value == pytest.approx(2.0, abs=1e-10)

    def cube4(x):
        s = (1 + np.exp(-2j * np.pi * x[:, 0])) * (1 + np.exp(-2j * np.pi * x[:, 1]))
        return np.abs(s) ** 4

    est = integrate_torus(cube4, 2, QuadratureSpec(method="tensor", abs_tol=1e-10))
    assert est.value == pytest.approx(36.0, abs=1e-8)
    # Brute-force grid sum: exact for trigonometric polynomials of low degree.
    g = (np.arange(16) + 0.5) / 16
    pts = np.array(np.meshgrid(g, g)).reshape(2, -1).T
    assert float(np.mean(cube4(pts))) == pytest.approx(36.0, abs=1e-12)


def test_tensor_dimension_limit():
    with pytest.raises(UsageError):
        integrate_torus(lambda x: x[:, 0], 4, QuadratureSpec(method="tensor"))
    with pytest.raises(UsageError):
        integrate_torus(lambda x: x[:, 0], 11, QuadratureSpec(method="qmc"))


@pytest.mark.parametrize("kwargs", [
    {"method": "simpson"}, {"abs_tol": 0.0}, {"method": "tensor", "nodes_per_axis": 8},
    {"method": "qmc", "samples": 100}, {"seed": -1},
])
def test_spec_validation(kwargs):
    with pytest.raises(UsageError):
        QuadratureSpec(**kwargs)


def _battery():
    # Smooth periodic integrands with known integrals over T^2.
    yield lambda x: np.exp(np.cos(2 * np.pi * x[:, 0]) + np.sin(2 * np.pi * x[:, 1])), 1.6029228068079628
    yield lambda x: 1.0 / (1.5 + np.cos(2 * np.pi * x[:, 0]) * np.cos(2 * np.pi * x[:, 1])), None
    yield lambda x: np.abs(np.sin(np.pi * x[:, 0])) ** 3 * (2 + np.cos(2 * np.pi * x[:, 1])), 8.0 / (3 * np.pi)


def test_tensor_node_doubling_never_hurts():
    for f, ref in _battery():
        if ref is None:
            ref = integrate_torus(f, 2, QuadratureSpec(method="tensor", abs_tol=1e-13, nodes_per_axis=64)).value
        errs = []
        for n in (16, 32, 64):
            est = integrate_torus(f, 2, QuadratureSpec(method="tensor", abs_tol=1e-6, nodes_per_axis=n))
            errs.append(abs(est.value - ref))
        assert errs[1] <= errs[0] + 1e-13 and errs[2] <= errs[1] + 1e-13


def test_bessel_reference():
    # int exp(cos 2 pi t) dt = I_0(1); frozen value.
    v = integrate_circle(lambda t: np.exp(np.cos(2 * np.pi * t)), QuadratureSpec(abs_tol=1e-14)).value
    assert v == pytest.approx(1.2660658777520084, abs=1e-14)


def test_qmc_deterministic_and_seeds_agree():
    f = lambda x: np.prod(1.0 + 0.5 * np.cos(2 * np.pi * x), axis=1) + np.sin(2 * np.pi * x[:, 0]) ** 2
    spec = QuadratureSpec(method="qmc", samples=2**14, seed=3)
    a = integrate_torus(f, 5, spec)
    b = integrate_torus(f, 5, spec)
    assert a == b
    assert a.statistical and a.method_used == "qmc"
    c = integrate_torus(f, 5, spec.with_(seed=11))
    assert abs(a.value - c.value) <= a.error_bound + c.error_bound
    assert abs(a.value - 1.5) <= a.error_bound


def test_tensor_deterministic():
    f = lambda x: np.abs(np.cos(np.pi * x[:, 0]) + 0.3 * np.exp(2j * np.pi * x[:, 1])) ** 3
    spec = QuadratureSpec(method="tensor", abs_tol=1e-8)
    assert integrate_torus(f, 2, spec) == integrate_torus(f, 2, spec)


def test_lattice_points_shape_and_range():
    pts = lattice_points(1021, 4)
    assert pts.shape == (1021, 4)
    assert pts.min() >= 0.0 and pts.max() < 1.0
    assert np.all(pts[:, 0] == np.arange(1021) / 1021)
