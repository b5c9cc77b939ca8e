"""Command-line front end: one verification suite per invocation.

Exit codes: 0 all checks pass, 1 a check found a violation, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import certify, cube, entropy, fourpoint, regions, twopoint
from .errors import DomainError, NumericalFailure, UsageError
from .integrate import QuadratureSpec
from .report import FAILURE, PASS, Report, csv_text, document, dumps, worst_verdict, write_csv

SUITES = ("regions", "twopoint", "fourpoint", "certify", "energy", "hy", "young", "entropy", "triadic", "figures")
FIGURES = ("fig1", "fig2", "fig3", "fig5")
SEED_ENV = "CUBEINEQ_SEED"

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# Single source of default tolerances; every entry can be overridden with --tol.
DEFAULT_TOLERANCES = {
    "F_max": 1e-10,
    "F_equality": 1e-8,
    "legendre": 1e-9,
    "ode": 1e-7,
    "G_max": 1e-10,
    "G_equality": 1e-8,
    "pde": 1e-9,
    "gradient": 1e-11,
    "sign_flip": 1e-9,
    "cosh_rtol": 1e-12,
    "cert_threshold": certify.DEFAULT_THRESHOLD,
    "cert_pad": certify.DEFAULT_PAD,
    "young_rtol": 1e-10,
    "energy_rtol": 1e-12,
    "induction_rtol": 1e-9,
    "entropy_sum_atol": 1e-10,
    "quad_abs_tol": 1e-10,
    "qmc_samples": 2.0**14,
    "triadic_tol": 1e-10,
}

DEFAULT_Q = {
    "regions": [2.0, 3.0, 4.0, 8.0],
    "twopoint": [2.1, 2.5, 3.0, 4.0, 6.0, 10.0],
    "fourpoint": [1.5, 2.0, 3.0, 5.0],
    "hy": [2.5, 3.0, 4.0],
    "young": [1.5, 2.0, 3.0],
}


@dataclass
class SuiteConfig:
    suite: str
    q_list: list = field(default_factory=list)
    p_list: list = field(default_factory=list)
    kappa_list: list = field(default_factory=list)
    dim: int | None = None
    grid: int | None = None
    seed: int = 0
    tol: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    out_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if self.dim is not None and self.dim < 0:
            raise UsageError("dim must be nonnegative")
        if self.grid is not None and self.grid < 1:
            raise UsageError("grid must be positive")
        if self.suite == "figures" and self.out_path is None:
            raise UsageError("the figures suite needs --out DIRECTORY")

    def qs(self):
        return list(self.q_list) or list(DEFAULT_Q.get(self.suite, []))

    def quad_spec(self, d):
        if d <= 3:
            return QuadratureSpec(method="tensor", abs_tol=self.tol["quad_abs_tol"], seed=self.seed)
        return QuadratureSpec(
            method="qmc", abs_tol=self.tol["quad_abs_tol"],
            samples=int(self.tol["qmc_samples"]), seed=self.seed,
        )


# -- suites --------------------------------------------------------------------------


def _endpoint_report(q) -> Report:
    p_hy = regions.hy_endpoint_p(q)
    p_young = regions.young_endpoint_p(q)
    return Report(
        suite="regions",
        check=f"endpoints_q={q!r}",
        verdict=PASS,
        inputs={"q": q},
        values={
            "hy_endpoint_p": p_hy, "hy_inv_p": 1.0 / p_hy,
            "young_endpoint_p": p_young, "young_inv_p": 1.0 / p_young,
            "classical_hy_p": q / (q - 1.0),
        },
        anchor="endpoint exponents of the binary inequalities",
    )


def run_regions(cfg: SuiteConfig) -> list[Report]:
    reports = [_endpoint_report(q) for q in cfg.qs()]
    grid = cfg.grid or 64
    reports.append(regions.boundary_report(np.geomspace(2.0, 512.0, max(grid, 2))))
    return reports


def run_twopoint(cfg: SuiteConfig) -> list[Report]:
    t = cfg.tol
    qs = cfg.qs()
    for q in qs:
        if q <= 2.0:
            raise UsageError("the two-point suite needs q > 2")
    reports = []
    for q in qs:
        reports.append(twopoint.check_F_max(q, cfg.grid or 1001, t["F_max"], t["F_equality"]))
        reports.append(twopoint.perturbative_check(q))
        reports.append(twopoint.phi_zero_analysis(q))
    reports.append(twopoint.ode_battery(qs, tol=t["ode"]))
    reports.append(twopoint.legendre_agreement(qs, tol=t["legendre"]))
    for r in reports:
        if r.check in ("F_max", "perturbative", "phi_zero"):
            r.check = f"{r.check}_q={r.inputs['q']!r}"
    return reports


def run_fourpoint(cfg: SuiteConfig) -> list[Report]:
    t = cfg.tol
    qs = cfg.qs()
    reports = []
    for q in qs:
        if q < 1.0:
            raise UsageError("the four-point suite needs q >= 1")
        r = fourpoint.check_G_max(q, cfg.grid or 201, t["G_max"], t["G_equality"])
        r.check = f"G_max_q={q!r}"
        reports.append(r)
        r = fourpoint.cosh_check(regions.young_endpoint_p(q), q, np.linspace(0.0, 50.0, 2001), t["cosh_rtol"])
        r.check = f"cosh_q={q!r}"
        reports.append(r)
        r = fourpoint.antidiagonal_check(q)
        r.check = f"antidiagonal_q={q!r}"
        reports.append(r)
    reports.append(fourpoint.pprime_check(np.linspace(1.0, 4.0, 301)))
    reports.append(fourpoint.pde_battery(100, cfg.seed, tol=t["pde"]))
    reports.append(fourpoint.hessian_report(grad_tol=t["gradient"], flip_tol=t["sign_flip"]))
    return reports


def run_certify(cfg: SuiteConfig) -> list[Report]:
    cert = certify.certify_grid(
        "dq_phi_tilde", threshold=cfg.tol["cert_threshold"], pad=cfg.tol["cert_pad"], seed=cfg.seed,
    )
    lip = certify.lipschitz_bounds_check(np.linspace(1.0, 4.0, 601), np.linspace(0.0, 3.0, 601))
    return [certify.certificate_report(cert), lip]


def _instances(cfg, default):
    return cfg.grid or default


def run_energy(cfg: SuiteConfig) -> list[Report]:
    rng = np.random.default_rng(cfg.seed)
    kappas = list(cfg.kappa_list) or [1.5, 2.0, 3.0]
    dmax = cfg.dim if cfg.dim is not None else 6
    if not 1 <= dmax <= 8:
        raise UsageError("energy suite supports 1 <= dim <= 8")
    reports = []
    for kappa in kappas:
        if kappa < 1.0:
            raise UsageError("kappa must be at least 1")
        full = cube.CubeSet.full(dmax)
        r = cube.energy_bounds_check(full, kappa, cfg.quad_spec(dmax), cfg.tol["energy_rtol"])
        r.check = f"full_cube_kappa={kappa!r}"
        reports.append(r)
    worst = {}
    n = _instances(cfg, 64)
    bad = []
    for i in range(n):
        d = int(rng.integers(1, dmax + 1))
        kappa = kappas[i % len(kappas)]
        A = cube.CubeSet.random(d, rng)
        if len(A) == 0:
            continue
        r = cube.energy_bounds_check(A, kappa, cfg.quad_spec(d), cfg.tol["energy_rtol"])
        key = f"kappa={kappa!r}"
        worst[key] = max(worst.get(key, 0.0), r.values["E_ratio"], r.values["E_tilde_ratio"])
        if not r.passed:
            bad.append({"d": d, "kappa": kappa, "members": A.members})
    reports.append(_sweep_report("energy", "random_sets", n, bad, {"max_ratio": worst}, cfg.seed,
                                 "additive energy bounds on random subsets of the cube"))
    return reports


def _sweep_report(suite, check, n, bad, values, seed, anchor):
    return Report(
        suite=suite,
        check=check,
        verdict=PASS if not bad else "violation",
        inputs={"instances": n, "seed": seed},
        values={**values, "failures": bad[:10], "failure_count": len(bad)},
        anchor=anchor,
    )


def run_hy(cfg: SuiteConfig) -> list[Report]:
    rng = np.random.default_rng(cfg.seed)
    dmax = cfg.dim if cfg.dim is not None else 3
    if not 1 <= dmax <= 10:
        raise UsageError("hy suite supports 1 <= dim <= 10")
    qs = cfg.qs()
    ps = list(cfg.p_list)
    if ps and len(ps) != len(qs):
        raise UsageError("--p must be given once per --q")
    pairs = []
    for i, q in enumerate(qs):
        if q < 2.0:
            raise UsageError("the Hausdorff-Young suite needs q >= 2")
        pairs.append((ps[i] if ps else regions.hy_endpoint_p(q), q))
    reports = []
    for p, q in pairs:
        r = cube.hy_ratio(cube.CubeFunction.full_cube(dmax), p, q, cfg.quad_spec(dmax))
        r.check = f"full_cube_q={q!r}"
        reports.append(r)
    n = _instances(cfg, 64)
    bad = []
    worst = 0.0
    for i in range(n):
        d = int(rng.integers(1, dmax + 1))
        p, q = pairs[i % len(pairs)]
        f = cube.CubeFunction.random(d, rng)
        r = cube.hy_ratio(f, p, q, cfg.quad_spec(d))
        worst = max(worst, r.values["ratio"])
        if not r.passed:
            bad.append({"d": d, "p": p, "q": q, "index": i})
    reports.append(_sweep_report("hy", "random_functions", n, bad, {"max_ratio": worst}, cfg.seed,
                                 "binary Hausdorff-Young inequality on random complex functions"))
    if 2 <= dmax:
        f = cube.CubeFunction.random(min(dmax, 3), rng)
        p, q = pairs[0]
        r = cube.induction_step_check(f, p, q, cfg.quad_spec(3), cfg.tol["induction_rtol"])
        reports.append(r)
    return reports


def run_young(cfg: SuiteConfig) -> list[Report]:
    rng = np.random.default_rng(cfg.seed)
    dmax = cfg.dim if cfg.dim is not None else 6
    if not 1 <= dmax <= 12:
        raise UsageError("young suite supports 1 <= dim <= 12")
    qs = cfg.qs()
    ps = list(cfg.p_list)
    if ps and len(ps) != len(qs):
        raise UsageError("--p must be given once per --q")
    pairs = [(ps[i] if ps else regions.young_endpoint_p(q), q) for i, q in enumerate(qs)]
    rtol = cfg.tol["young_rtol"]
    reports = []
    for p, q in pairs:
        one = cube.CubeFunction.full_cube(dmax)
        r = cube.young_ratio(one, one, p, q, rtol)
        r.check = f"full_cube_q={q!r}"
        reports.append(r)
    n = _instances(cfg, 64)
    bad = []
    worst = 0.0
    for i in range(n):
        d = int(rng.integers(1, dmax + 1))
        p, q = pairs[i % len(pairs)]
        f = cube.CubeFunction.random(d, rng, "nonneg")
        g = cube.CubeFunction.random(d, rng, "nonneg")
        r = cube.young_ratio(f, g, p, q, rtol)
        worst = max(worst, r.values["ratio"])
        if not r.passed:
            bad.append({"d": d, "p": p, "q": q, "index": i})
    reports.append(_sweep_report("young", "random_pairs", n, bad, {"max_ratio": worst}, cfg.seed,
                                 "binary Young inequality on random nonnegative pairs"))
    return reports


def run_entropy(cfg: SuiteConfig) -> list[Report]:
    rng = np.random.default_rng(cfg.seed)
    dmax = cfg.dim if cfg.dim is not None else 3
    if not 1 <= dmax <= 10:
        raise UsageError("entropy suite supports 1 <= dim <= 10")
    reports = []
    uniform = cube.CubeFunction(dmax, np.full(2**dmax, 2.0 ** (-dmax / 2.0)))
    r = entropy.uncertainty_check(uniform, cfg.quad_spec(dmax))
    r.check = "uniform_uncertainty"
    reports.append(r)
    c = entropy.one_dim_constant()
    exact = 1.0 / (2.0 * math.log(2.0)) - 1.0
    reports.append(Report(
        suite="entropy",
        check="one_dim_constant",
        verdict=PASS if abs(c.value - exact) <= 1e-9 else "violation",
        values={"quadrature": c.value, "closed_form": exact, "error_bound": c.error_bound},
        tolerances={"abs": 1e-9},
        anchor="int cos^2(pi t) log2 cos^2(pi t) dt = 1/(2 ln 2) - 1",
    ))
    u = entropy.PmfOnLattice.uniform(dmax)
    r = entropy.entropy_sum_check(u, u, cfg.tol["entropy_sum_atol"])
    r.check = "uniform_sum"
    reports.append(r)

    n = _instances(cfg, 64)
    bad_u, bad_s = [], []
    for i in range(n):
        d = int(rng.integers(1, min(dmax, 3) + 1))
        f = cube.CubeFunction.random(d, rng).normalized()
        if not entropy.uncertainty_check(f, cfg.quad_spec(d)).passed:
            bad_u.append(i)
        d = int(rng.integers(1, dmax + 1))
        a = entropy.PmfOnLattice.from_function(cube.CubeFunction.random(d, rng, "nonneg"))
        b = entropy.PmfOnLattice.from_function(cube.CubeFunction.random(d, rng, "nonneg"))
        if not entropy.entropy_sum_check(a, b, cfg.tol["entropy_sum_atol"]).passed:
            bad_s.append(i)
    reports.append(_sweep_report("entropy", "random_uncertainty", n, bad_u, {}, cfg.seed,
                                 "entropic uncertainty on random functions"))
    reports.append(_sweep_report("entropy", "random_sums", n, bad_s, {}, cfg.seed,
                                 "entropy of sums on random pmfs"))
    for k in (2, 3, 4):
        r = entropy.binomial_entropy_probe(10**k)
        r.check = f"binomial_probe_n=1e{k}"
        reports.append(r)
    return reports


def run_triadic(cfg: SuiteConfig) -> list[Report]:
    tol = cfg.tol["triadic_tol"]
    p3 = cube.triadic_optimal_p(tol, seed=cfg.seed)
    p2 = cube.optimal_hy_exponent(2, (1.4, 1.7), tol, seed=cfg.seed)
    val, arg = cube.triadic_argmax(p3, seed=cfg.seed)
    exact2 = 4.0 / math.log2(6.0)
    reports = [
        Report(
            suite="triadic",
            check="optimal_exponent",
            verdict=PASS if abs(p2 - exact2) <= 1e-8 else "violation",
            inputs={"q": 4, "tol": tol},
            values={"p_three_points": p3, "p_two_points": p2, "p_two_points_exact": exact2,
                    "extremizer": arg, "log_ratio_at_extremizer": val},
            tolerances={"two_point_check": 1e-8},
            anchor="sharp q = 4 exponent for functions on {0,1,2}",
        ),
        cube.triadic_cross_check(p3, 2, 200, cfg.seed),
    ]
    return reports


def export_figures(which, out_dir, resolution=256) -> list[Path]:
    """Write CSV point clouds for the region plots and the two extremal functions."""
    if resolution < 64:
        raise UsageError("resolution must be at least 64")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in which:
        if name not in FIGURES:
            raise UsageError(f"unknown figure {name!r}")
        path = out / f"{name}.csv"
        if name in ("fig1", "fig3"):
            regs = (
                (regions.Regime.HY_CLASSICAL, regions.Regime.HY_BINARY) if name == "fig1"
                else (regions.Regime.YOUNG_CLASSICAL, regions.Regime.YOUNG_BINARY)
            )
            write_csv(path, ("regime", "inv_p", "inv_q"), regions.boundary_rows(regs, resolution))
        elif name == "fig2":
            xs, ys = twopoint.F_curve(4.0, max(resolution, 2) + 1)
            write_csv(path, ("x", "F4"), zip(xs.tolist(), ys.tolist()))
        else:
            xs, zs = fourpoint.G_surface(2.0, resolution + 1)
            rows = [(x, y, zs[i, j]) for i, x in enumerate(xs.tolist()) for j, y in enumerate(xs.tolist())]
            write_csv(path, ("x", "y", "G2"), rows)
        written.append(path)
    return written


def run_figures(cfg: SuiteConfig) -> list[Report]:
    res = cfg.grid or 256
    paths = export_figures(FIGURES, cfg.out_path, res)
    return [Report(
        suite="figures",
        check="export",
        verdict=PASS,
        inputs={"resolution": res},
        values={"files": [p.name for p in paths]},
        anchor="figure data for region plots, F_4 and G_2",
    )]


RUNNERS = {
    "regions": run_regions,
    "twopoint": run_twopoint,
    "fourpoint": run_fourpoint,
    "certify": run_certify,
    "energy": run_energy,
    "hy": run_hy,
    "young": run_young,
    "entropy": run_entropy,
    "triadic": run_triadic,
    "figures": run_figures,
}


def run_suite(cfg: SuiteConfig) -> tuple[int, list[Report]]:
    reports = RUNNERS[cfg.suite](cfg)
    verdict = worst_verdict(r.verdict for r in reports)
    code = {PASS: EXIT_PASS, FAILURE: EXIT_NUMERICAL}.get(verdict, EXIT_VIOLATION)
    return code, reports


def render(reports, fmt) -> str:
    if fmt == "json":
        return dumps(document(reports))
    rows = []
    for r in sorted(reports, key=lambda r: (r.suite, r.check)):
        d = r.to_dict()
        for key in sorted(d["values"]):
            v = d["values"][key]
            if isinstance(v, (dict, list)):
                v = dumps(v).strip()
            rows.append((r.suite, r.check, r.verdict, key, v))
    return csv_text(("suite", "check", "verdict", "field", "value"), rows)


# -- argument parsing ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _tol_pair(text):
    name, sep, value = text.partition("=")
    if not sep or name not in DEFAULT_TOLERANCES:
        raise UsageError(f"--tol expects NAME=VALUE with NAME in {sorted(DEFAULT_TOLERANCES)}")
    try:
        v = float(value)
    except ValueError:
        raise UsageError(f"bad tolerance value {value!r}") from None
    if not v > 0 or math.isinf(v):
        raise UsageError("tolerances must be positive and finite")
    return name, v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cubeineq", description="Numerical verification suites for binary cube inequalities.")
    ap.add_argument("suite_pos", nargs="?", choices=SUITES, metavar="SUITE", help="suite to run")
    ap.add_argument("--suite", choices=SUITES, help="suite to run (same as the positional argument)")
    ap.add_argument("--q", type=float, action="append", default=[], help="exponent q (repeatable)")
    ap.add_argument("--p", type=float, action="append", default=[], help="exponent p (repeatable)")
    ap.add_argument("--kappa", type=float, action="append", default=[], help="energy order (repeatable)")
    ap.add_argument("--dim", type=int, help="maximum cube dimension")
    ap.add_argument("--grid", type=int, help="grid size, instance count or figure resolution")
    ap.add_argument("--seed", type=int, help=f"random seed (default ${SEED_ENV} or 0)")
    ap.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE", help="override a tolerance")
    ap.add_argument("--out", help="output file (directory for figures); stdout if omitted")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


def parse_config(argv) -> SuiteConfig:
    args = build_parser().parse_args(argv)
    if args.suite_pos and args.suite and args.suite_pos != args.suite:
        raise UsageError("positional suite and --suite disagree")
    suite = args.suite or args.suite_pos
    if suite is None:
        raise UsageError("no suite given")
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV, "0")
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer") from None
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(_tol_pair(t) for t in args.tol)
    for v in args.q + args.p + args.kappa:
        if not math.isfinite(v):
            raise UsageError("exponents must be finite")
    return SuiteConfig(
        suite=suite, q_list=args.q, p_list=args.p, kappa_list=args.kappa, dim=args.dim,
        grid=args.grid, seed=seed, tol=tol, out_path=args.out, format=args.format,
    )


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        code, reports = run_suite(cfg)
    except (UsageError, DomainError) as exc:
        print(f"cubeineq: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"cubeineq: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = render(reports, cfg.format)
    if cfg.suite == "figures" or cfg.out_path is None:
        sys.stdout.write(text)
    else:
        Path(cfg.out_path).write_text(text, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
