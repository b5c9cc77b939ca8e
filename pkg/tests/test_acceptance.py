"""Acceptance suite: sixteen end-to-end criteria with tolerances and time limits.

Each criterion is a function returning ``(ok, detail)``. The pytest wrapper
times it, prints one ``PASS``/``FAIL`` line and asserts both correctness and
the time limit. Run this file as a script to get the summary without pytest.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from cubeineq import certify, cube, entropy, fourpoint, regions, twopoint
from cubeineq.cli import DEFAULT_TOLERANCES, SuiteConfig, run_suite
from cubeineq.integrate import QuadratureSpec

TWOPOINT_Q = (2.1, 2.5, 3.0, 4.0, 6.0, 10.0)
FOURPOINT_Q = (1.5, 2.0, 3.0, 5.0)
RESULTS: dict[int, str] = {}


def _all(reports):
    bad = [r.check for r in reports if not r.passed]
    return not bad, f"{len(reports)} reports, failing: {bad or 'none'}"


def c01_endpoints():
    errs = [
        abs(regions.hy_endpoint_p(2.0) - 2.0),
        abs(regions.hy_endpoint_p(4.0) - 4.0 / math.log2(6.0)),
        abs(regions.young_endpoint_p(2.0) - 4.0 / math.log2(6.0)),
    ]
    return max(errs) <= 1e-12, f"max error {max(errs):.3g}"


def c02_boundary():
    r = regions.boundary_report(np.geomspace(2.0, 512.0, 64))
    return r.passed, f"failures {r.values['failures']}"


def c03_F_max():
    reports = [twopoint.check_F_max(q, 1001, 1e-10, 1e-8) for q in TWOPOINT_Q]
    reports.append(twopoint.legendre_agreement(TWOPOINT_Q, tol=1e-9))
    worst = max(r.values["max"] for r in reports[:-1])
    ok, detail = _all(reports)
    return ok, f"max F {worst!r}, Legendre diff {reports[-1].values['max_abs_difference']:.3g}; {detail}"


def c04_ode():
    r = twopoint.ode_battery(TWOPOINT_Q, tol=1e-7)
    shape = (len(r.inputs["q"]), len(r.inputs["x"]))
    return r.passed and shape == (6, 9), f"{shape} battery, max residual {r.values['max_residual']:.3g}"


def c05_perturbative():
    reports = [twopoint.perturbative_check(q) for q in TWOPOINT_Q]
    return _all(reports)


def c06_phi_zero():
    reports = [twopoint.phi_zero_analysis(q) for q in TWOPOINT_Q]
    ok = all(
        r.passed and r.values["zero_count"] == 1 and abs(r.values["phi_at_1"]) <= 1e-12
        and r.values["phi_prime_at_1"] < 0.0
        for r in reports
    )
    worst = max(abs(r.values["phi_at_1"]) for r in reports)
    return ok, f"zero counts {[r.values['zero_count'] for r in reports]}, max |phi(1)| {worst:.3g}"


def c07_G_max():
    reports = [fourpoint.check_G_max(q, 201, 1e-10, 1e-8) for q in FOURPOINT_Q]
    worst = max(r.values["max"] for r in reports)
    ok, detail = _all(reports)
    return ok, f"max G {worst!r}; {detail}"


def c08_cosh():
    t = np.linspace(-50.0, 50.0, 10_000)
    reports = [fourpoint.cosh_check(regions.young_endpoint_p(q), q, t) for q in (1.2, 2.0, 3.0, 3.9)]
    # Each report also requires both sides of the first inequality to vanish at t = 0.
    eq = all(r.values["first_at_zero"] == (0.0, 0.0) for r in reports)
    ok, detail = _all(reports)
    return ok and eq, f"equality at 0: {eq}; {detail}"


def c09_certificate():
    cert = certify.certify_grid("dq_phi_tilde")
    lip = certify.lipschitz_bounds_check(np.linspace(1.0, 4.0, 601), np.linspace(0.0, 3.0, 601))
    minimum = cert.worst_node[2]
    ok = (
        cert.passed and cert.grid_shape == (2101, 901)
        and minimum - cert.eval_error_bound > 1.0 / 50.0
        and abs(minimum - 0.0293596409) <= 1e-6 and lip.passed
    )
    return ok, f"{cert.nodes_checked} nodes, minimum {minimum!r}, Lipschitz sweep {lip.verdict}"


def c10_pde():
    r = fourpoint.pde_battery(100, 0, tol=1e-9)
    return r.passed, f"max residual {r.values['max_residual']:.3g}"


def c11_hessian():
    r = fourpoint.hessian_report(grad_tol=1e-11, flip_tol=1e-9)
    flip = r.values["sign_flip_p"]
    ok = r.passed and r.values["max_abs_gradient"] <= 1e-11 and abs(flip - 4.0 / 3.0) <= 1e-9
    return ok, f"gradient {r.values['max_abs_gradient']!r}, flip at {flip!r}"


def c12_energies():
    exact = all(cube.energy_E(cube.CubeSet.full(d), 2) == 6**d for d in range(1, 9))
    rel = 0.0
    for kappa in (1.5, 2.0, 3.0):
        for d in range(1, 9):
            got = cube.energy_E_tilde(cube.CubeSet.full(d), kappa)
            rel = max(rel, abs(got / (2.0**kappa + 2.0) ** d - 1.0))
    code, reports = run_suite(SuiteConfig(suite="energy", grid=1000, dim=8))
    sweep = reports[-1]
    ok = exact and rel <= 1e-9 and code == 0 and sweep.passed and sweep.inputs["instances"] == 1000
    return ok, f"6^d exact {exact}, E_tilde rel error {rel:.3g}, random sets {sweep.verdict}"


def c13_ratio_sweeps():
    tol = dict(DEFAULT_TOLERANCES, quad_abs_tol=1e-9)
    code_hy, hy = run_suite(SuiteConfig(suite="hy", grid=1000, dim=3, tol=tol))
    code_y, young = run_suite(SuiteConfig(suite="young", grid=1000, dim=8))
    hy_full = [r for r in hy if r.check.startswith("full_cube")]
    y_full = [r for r in young if r.check.startswith("full_cube")]
    hy_eq = max(abs(r.values["ratio"] - 1.0) for r in hy_full)
    y_eq = max(abs(r.values["ratio"] - 1.0) for r in y_full)
    ok = code_hy == 0 and code_y == 0 and hy_eq <= 1e-7 and y_eq <= 1e-9
    hy_max = [r for r in hy if r.check == "random_functions"][0].values["max_ratio"]
    y_max = [r for r in young if r.check == "random_pairs"][0].values["max_ratio"]
    return ok, (f"HY max {hy_max!r} equality {hy_eq:.3g}; "
                f"Young max {y_max!r} equality {y_eq:.3g}")


def c14_entropy():
    defects = []
    for d in (1, 2, 3):
        f = cube.CubeFunction(d, np.full(2**d, 2.0 ** (-d / 2.0)))
        r = entropy.uncertainty_check(f, QuadratureSpec(method="tensor", abs_tol=1e-11))
        defects.append(abs(r.values["sharp_sum"]))
    c = entropy.one_dim_constant().value
    c_err = abs(c - (1.0 / (2.0 * math.log(2.0)) - 1.0))
    sums_exact = True
    for d in range(1, 11):
        u = entropy.PmfOnLattice.uniform(d)
        sums_exact &= entropy.entropy_sum_check(u, u).values["H_sum"] == 1.5 * d
    rng = np.random.default_rng(0)
    bad = 0
    for _ in range(1000):
        d = int(rng.integers(1, 9))
        a = entropy.PmfOnLattice.from_function(cube.CubeFunction.random(d, rng, "nonneg"))
        b = entropy.PmfOnLattice.from_function(cube.CubeFunction.random(d, rng, "nonneg"))
        bad += not entropy.entropy_sum_check(a, b).passed
    ok = max(defects) <= 1e-7 and c_err <= 1e-9 and sums_exact and bad == 0
    return ok, f"uniform defect {max(defects):.3g}, constant error {c_err:.3g}, sum failures {bad}"


def c15_triadic():
    p = cube.triadic_optimal_p(1e-10)
    return abs(p - 1.4702039297) <= 1e-8, f"p = {p!r}"


def c16_binomial():
    gaps = [entropy.binomial_entropy_probe(n).values["ratio"] - 1.0 for n in (100, 1000, 10_000)]
    ok = gaps[-1] < 0.07 and gaps[0] > gaps[1] > gaps[2]
    return ok, "ratio - 1: " + ", ".join(f"{g:.4f}" for g in gaps)


CRITERIA = [
    (1, "endpoint exponents", c01_endpoints, 1.0),
    (2, "boundary curve report", c02_boundary, 1.0),
    (3, "F maximum and Legendre route", c03_F_max, 30.0),
    (4, "ODE residual battery", c04_ode, 10.0),
    (5, "perturbative slope and curvature", c05_perturbative, 5.0),
    (6, "phi zero analysis", c06_phi_zero, 1.0),
    (7, "G maximum and equality points", c07_G_max, 10.0),
    (8, "cosh inequalities", c08_cosh, 5.0),
    (9, "Lipschitz-grid certificate", c09_certificate, 60.0),
    (10, "PDE residual battery", c10_pde, 5.0),
    (11, "Hessian at the centre", c11_hessian, 1.0),
    (12, "additive energies", c12_energies, 60.0),
    (13, "HY and Young ratio sweeps", c13_ratio_sweeps, 120.0),
    (14, "entropy checks", c14_entropy, 60.0),
    (15, "triadic optimal exponent", c15_triadic, 30.0),
    (16, "binomial entropy probe", c16_binomial, 10.0),
]


def run_criterion(num, name, func, limit):
    t0 = time.perf_counter()
    ok, detail = func()
    elapsed = time.perf_counter() - t0
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"criterion {num:2d} {status}: {name} ({detail}; {elapsed:.2f} s / {limit:g} s)"
    RESULTS[num] = line
    print(line)
    return ok, elapsed


@pytest.mark.parametrize("num,name,func,limit", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, name, func, limit):
    ok, elapsed = run_criterion(num, name, func, limit)
    assert ok, RESULTS[num]
    assert elapsed < limit, RESULTS[num]


if __name__ == "__main__":
    for row in CRITERIA:
        run_criterion(*row)
