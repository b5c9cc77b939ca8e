from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubeineq.cube import CubeFunction, CubeSet, convolve
from cubeineq.entropy import (
    UNCERTAINTY_CONSTANT, PmfOnLattice, binomial_entropy, binomial_entropy_probe, binomial_entropy_row,
    entropy_hat, entropy_hat_direct, entropy_pmf, entropy_sum_check, one_dim_constant, uncertainty_check,
)
from cubeineq.errors import DomainError, UsageError
from cubeineq.integrate import QuadratureSpec

FAST = QuadratureSpec(method="tensor", abs_tol=1e-9)


def _uniform_f(d):
    return CubeFunction(d, np.full(2**d, 2.0 ** (-d / 2)))


def test_pmf_validation():
    with pytest.raises(UsageError):
        PmfOnLattice(1, np.array([0.5, 0.6]))
    with pytest.raises(DomainError):
        PmfOnLattice(1, np.array([1.5, -0.5]))
    with pytest.raises(DomainError):
        PmfOnLattice(2, np.array([0.5, 0.5]))
    with pytest.raises(DomainError):
        PmfOnLattice.from_counts(1, [0, 0])


def test_entropy_pmf_examples():
    for d in (1, 4, 10):
        assert entropy_pmf(PmfOnLattice.uniform(d)) == d
    point = PmfOnLattice(2, np.array([0.0, 1.0, 0.0, 0.0]))
    assert entropy_pmf(point) == 0.0
    sum_pmf = PmfOnLattice(1, np.array([0.25, 0.5, 0.25]), side=3)
    assert entropy_pmf(sum_pmf) == pytest.approx(1.5, abs=1e-15)


@given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=2).filter(lambda v: sum(v) > 1e-6))
def test_entropy_pmf_range(w):
    w = np.array(w) / sum(w)
    w = w / math.fsum(w)
    h = entropy_pmf(PmfOnLattice(1, w))
    assert 0.0 <= h <= 1.0 + 1e-15


def test_sum_of_uniforms_exact():
    for d in (1, 2, 5, 10):
        one = CubeSet.full(d).indicator()
        h = PmfOnLattice.from_lattice(convolve(one, one))
        assert entropy_pmf(h) == 1.5 * d


def test_entropy_hat_examples():
    for d in (1, 2, 3):
        h = entropy_hat(_uniform_f(d))
        assert h.value == pytest.approx(-d * UNCERTAINTY_CONSTANT, abs=1e-7)
    for d in (1, 2, 3):
        assert entropy_hat(CubeFunction.delta(d, dtype=float), FAST).value == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(UsageError):
        entropy_hat(CubeFunction.full_cube(2))


def test_one_dim_constant():
    est = one_dim_constant()
    assert est.value == pytest.approx(1.0 / (2.0 * math.log(2.0)) - 1.0, abs=1e-9)


@pytest.mark.parametrize("d", [2, 3])
def test_closed_form_axis_matches_direct_quadrature(d):
    rng = np.random.default_rng(d)
    f = CubeFunction.random(d, rng).normalized()
    reduced = entropy_hat(f, QuadratureSpec(method="tensor", abs_tol=1e-8))
    direct = entropy_hat_direct(f, QuadratureSpec(method="tensor", abs_tol=1e-6 if d == 3 else 1e-8))
    assert abs(reduced.value - direct.value) <= 3 * (reduced.error_bound + direct.error_bound) + 1e-7


def test_uncertainty_examples():
    for d in (1, 2, 3):
        rep = uncertainty_check(_uniform_f(d))
        assert rep.passed
        assert abs(rep.values["sharp_sum"]) <= 1e-7
    rep = uncertainty_check(CubeFunction.delta(2, dtype=float), FAST)
    assert rep.passed and abs(rep.values["sharp_sum"]) <= 1e-9


def test_uncertainty_random_and_classical():
    rng = np.random.default_rng(11)
    for d in (1, 2, 3):
        for _ in range(5):
            f = CubeFunction.random(d, rng).normalized()
            rep = uncertainty_check(f, FAST)
            assert rep.passed and rep.values["classical_holds"]
            if rep.values["H_cube"] > 0:
                assert rep.values["classical_sum"] > rep.values["sharp_sum"]


def test_entropy_sum_examples():
    for d in (1, 4, 8):
        u = PmfOnLattice.uniform(d)
        rep = entropy_sum_check(u, u)
        assert rep.passed
        assert rep.values["margin_three_quarters"] == pytest.approx(0.0, abs=1e-12)
    pt = PmfOnLattice.from_counts(2, [0, 0, 1, 0])
    rep = entropy_sum_check(pt, pt)
    assert rep.passed and rep.values["H_sum"] == 0.0


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_entropy_sum_property(d, seed):
    rng = np.random.default_rng(seed)
    f = PmfOnLattice.from_function(CubeFunction.random(d, rng))
    g = PmfOnLattice.from_function(CubeFunction.random(d, rng))
    rep = entropy_sum_check(f, g)
    assert rep.passed
    assert rep.values["max_entropy_monotone"]
    # The 3/4 bound implies the 1/2 bound.
    assert rep.values["margin_half"] >= rep.values["margin_three_quarters"]


def test_binomial_examples():
    assert binomial_entropy(1) == pytest.approx(1.0, abs=1e-15)
    ratios = [binomial_entropy_row(n)[3] for n in (100, 1000, 10_000)]
    assert ratios[2] - 1 < 0.07
    assert ratios[0] > ratios[1] > ratios[2]
    n = 10_000
    assert binomial_entropy(n) == pytest.approx(0.5 * math.log2(math.pi * math.e * n / 2), abs=1e-4)
    rep = binomial_entropy_probe(1000)
    assert rep.values["ratio"] == ratios[1]
    with pytest.raises(UsageError):
        binomial_entropy_row(10**6 + 1)


def test_binomial_paths_agree():
    # The log-binomial path (n <= 1000) and the gammaln path agree at the switch.
    lo = binomial_entropy(1000)
    hi = binomial_entropy(1001)
    assert 0 < hi - lo < 1e-3
