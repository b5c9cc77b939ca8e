from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubeineq.errors import DomainError, UsageError
from cubeineq.regions import (
    ExponentPair, Regime, boundary_report, boundary_rows, boundary_samples, conjugate,
    hy_endpoint_p, in_range, log_central_binom2_dd, lower_inv_p, young_endpoint_dp, young_endpoint_p,
)

LOG2_6 = math.log2(6.0)


def test_hy_endpoint_examples():
    assert hy_endpoint_p(2.0) == pytest.approx(2.0, abs=1e-12)
    assert hy_endpoint_p(4.0) == pytest.approx(4.0 / LOG2_6, abs=1e-12)
    eps = 1e-5
    slope = (hy_endpoint_p(2.0 + eps) - 2.0) / eps
    assert slope == pytest.approx(-(1.0 / math.log(2.0) - 1.0), abs=1e-3)


def test_hy_endpoint_domain():
    for q in (1.5, math.inf, math.nan):
        with pytest.raises(DomainError):
            hy_endpoint_p(q)


def test_young_endpoint_examples():
    assert young_endpoint_p(1.0) == pytest.approx(1.0, abs=1e-15)
    assert young_endpoint_p(2.0) == pytest.approx(4.0 / LOG2_6, abs=1e-12)
    # In double precision 120/log2(2^60 + 2) rounds to 2; the exact value lies below.
    p60 = young_endpoint_p(60.0)
    assert 1.93 < p60 <= 2.0
    with mpmath.workdps(50):
        exact = 120 / mpmath.log(mpmath.mpf(2) ** 60 + 2, 2)
    assert 1.93 < exact < 2
    with pytest.raises(DomainError):
        young_endpoint_p(0.5)


def test_young_endpoint_vectorized_and_derivative():
    q = np.linspace(1.0, 6.0, 11)
    p = young_endpoint_p(q)
    assert p.shape == q.shape
    h = 1e-6
    fd = (young_endpoint_p(q[1:] + h) - young_endpoint_p(q[1:] - h)) / (2 * h)
    assert np.allclose(young_endpoint_dp(q[1:]), fd, rtol=1e-7)


def test_in_range_examples():
    assert in_range(ExponentPair(2.0, 1.5, Regime.HY_BINARY))
    assert not in_range(ExponentPair(1.9, 4.0, Regime.HY_BINARY))
    assert in_range(ExponentPair(1.0, math.inf, Regime.HY_BINARY))
    assert in_range(ExponentPair(4.0 / 3.0, 4.0, Regime.HY_CLASSICAL))
    assert not in_range(ExponentPair(1.5, 4.0, Regime.HY_CLASSICAL))
    assert in_range(ExponentPair(1.5, 4.0, Regime.HY_BINARY))
    # Young classical: 2/p >= 1 + 1/q.
    assert in_range(ExponentPair(4.0 / 3.0, 2.0, Regime.YOUNG_CLASSICAL))
    assert not in_range(ExponentPair(1.4, 2.0, Regime.YOUNG_CLASSICAL))
    assert in_range(ExponentPair(1.4, 2.0, Regime.YOUNG_BINARY))


def test_exponent_pair_validation_and_conjugates():
    with pytest.raises(DomainError):
        ExponentPair(0.5, 2.0)
    pair = ExponentPair(4.0, math.inf, "HY_binary")
    assert pair.regime is Regime.HY_BINARY
    assert pair.inv_q == 0.0 and pair.p_conj == pytest.approx(4.0 / 3.0)
    assert conjugate(1.0) == math.inf and conjugate(math.inf) == 1.0


@given(st.floats(1.0, 50.0), st.floats(1.0, 50.0), st.floats(1.0, 1.5), st.sampled_from(list(Regime)))
def test_in_range_monotone_in_p(p, q, shrink, regime):
    lower = max(1.0, p / shrink)
    if in_range(ExponentPair(p, q, regime)):
        assert in_range(ExponentPair(lower, q, regime))


def test_boundary_samples_examples():
    pts = boundary_samples(Regime.HY_BINARY, 9)
    assert any(abs(a - 0.5) < 1e-15 and abs(b - 0.5) < 1e-15 for a, b in pts)
    assert pts[0] == (0.5, 1.0) and pts[-1] == (1.0, 0.0)
    # The classical boundary point at q = 4 lies strictly inside the binary region.
    assert 1.0 - 0.25 > lower_inv_p(Regime.HY_BINARY, 4.0)
    young = boundary_samples(Regime.YOUNG_BINARY, 5)
    assert young[0] == pytest.approx((1.0, 1.0))
    with pytest.raises(UsageError):
        boundary_samples(Regime.HY_BINARY, 1)


def test_boundary_samples_monotone_in_q():
    for regime in Regime:
        pts = boundary_samples(regime, 64)
        inv_q = [b for _, b in pts]
        assert inv_q == sorted(inv_q, reverse=True)


def test_boundary_rows_regimes():
    rows = boundary_rows((Regime.HY_CLASSICAL,), 4)
    assert {r[0] for r in rows} == {"HY_classical"}
    assert len(rows) == 5  # the q = 2 corner is added to the grid


def test_boundary_report_passes_on_log_grid():
    rep = boundary_report(np.geomspace(2.0, 512.0, 64))
    assert rep.passed, rep.values["failures"]
    assert rep.values["p_first"] == pytest.approx(2.0)
    assert rep.values["p_last"] > 1.0


def test_boundary_report_domain():
    with pytest.raises(UsageError):
        boundary_report([1.5, 4.0])


def test_second_derivative_positive_at_three():
    assert log_central_binom2_dd(3.0) > 0


@given(st.floats(2.0, 512.0))
def test_hy_endpoint_bounds(q):
    p = hy_endpoint_p(q)
    assert 1.0 < p <= 2.0 + 1e-15
    if q > 2.0 + 1e-9:
        assert 1.0 / p < 1.0 - 1.0 / q


@given(st.floats(1.0 + 1e-6, 512.0))
def test_young_endpoint_bounds(q):
    p = young_endpoint_p(q)
    assert 1.0 < p < min(q, 2.0) + 1e-15
