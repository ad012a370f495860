"""Acceptance suite: each check pins one published figure of merit of the
cloning machines to an explicit tolerance.

Check 09 is a known expected failure and is kept faithful to its published
target anyway: the machine-clone negativity it asks for is incompatible
with the monogamy identity, as its detail string explains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .cloner import (
    clone,
    equatorial_state,
    fidelity_from_shrinking,
    haar_random_input,
    orbit_to_input,
    OrbitState,
    phase_covariant_params,
    random_equatorial,
    shrinking_factor,
    universal_params,
)
from .entangle import clone_ppt_spectrum, negativity, optimal_ppt_spectrum, tangle_closed_form, tangle_pure3
from .nosignal import nosignaling_report
from .pcopt import optimize_eta_b, qubit_optimal, symmetric_fidelity
from .qlinalg import hermitian_eigenvalues, partial_trace, partial_transpose
from . import sweeps

__all__ = ["CheckResult", "run_all", "CHECK_NAMES"]

SQ2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float | None
    target: float | None
    tolerance: float | None
    detail: str = ""


def _check_universal_symmetric(seed: int) -> CheckResult:
    out = clone(universal_params(2, math.pi / 4), haar_random_input(2, seed))
    dev = max(abs(out.f_a - 5.0 / 6.0), abs(out.f_b - 5.0 / 6.0))
    return CheckResult(
        name="01-universal-symmetric-fidelity",
        passed=dev <= 1e-12,
        value=out.f_a,
        target=5.0 / 6.0,
        tolerance=1e-12,
        detail=f"max |F - 5/6| over both clones = {dev:.3e}",
    )


def _check_tradeoff_ellipse(seed: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 4, 30):
        _, rows = sweeps.universal_sweep_rows(d, 100, seed)
        worst = max(worst, max(abs(r[5]) for r in rows))
    return CheckResult(
        name="02-universal-tradeoff-ellipse",
        passed=worst < 1e-8,
        value=worst,
        target=0.0,
        tolerance=1e-8,
        detail="max |ellipse residual| over 100-point grids, d in {2, 3, 4, 30}",
    )


def _check_universality_variance(seed: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 5):
        p = universal_params(d, 0.6)
        rng = np.random.default_rng(seed + d)
        fa, fb = [], []
        for _ in range(100):
            out = clone(p, haar_random_input(d, rng))
            fa.append(out.f_a)
            fb.append(out.f_b)
        worst = max(worst, float(np.var(fa)), float(np.var(fb)))
    nu, xi, _ = qubit_optimal(0.6)
    p = phase_covariant_params(2, nu, xi)
    rng = np.random.default_rng(seed + 101)
    fa = [clone(p, random_equatorial(2, rng)).f_a for _ in range(100)]
    worst = max(worst, float(np.var(fa)))
    return CheckResult(
        name="03-universality-variance",
        passed=worst < 1e-20,
        value=worst,
        target=0.0,
        tolerance=1e-20,
        detail="max fidelity variance over 100 seeded inputs per machine",
    )


def _check_pc_symmetric_optimum(seed: int) -> CheckResult:
    eta_sym = shrinking_factor(symmetric_fidelity(2), 2)
    _, _, eta_b = optimize_eta_b(2, eta_sym)
    f2 = fidelity_from_shrinking(eta_b, 2)
    dev2 = abs(f2 - 0.8535533906)
    worst = 0.0
    for d in range(2, 11):
        eta_d = shrinking_factor(symmetric_fidelity(d), d)
        _, _, eb = optimize_eta_b(d, eta_d)
        worst = max(worst, abs(fidelity_from_shrinking(eb, d) - symmetric_fidelity(d)))
    return CheckResult(
        name="04-pc-symmetric-optimum",
        passed=dev2 <= 1e-9 and worst <= 1e-6,
        value=f2,
        target=0.8535533906,
        tolerance=1e-9,
        detail=f"optimizer vs closed form over d = 2..10: max dev {worst:.3e} (tol 1e-6)",
    )


def _check_qubit_frontier(seed: int) -> CheckResult:
    worst_circle = 0.0
    worst_nu = 0.0
    for eta_a in np.linspace(0.02, 1.0, 50):
        nu, _, eta_b = optimize_eta_b(2, float(eta_a))
        worst_circle = max(worst_circle, abs(eta_a**2 + eta_b**2 - 1.0))
        worst_nu = max(worst_nu, abs(nu - eta_a / SQ2))
    return CheckResult(
        name="05-qubit-optimal-frontier",
        passed=worst_circle < 1e-6 and worst_nu < 1e-6,
        value=worst_circle,
        target=0.0,
        tolerance=1e-6,
        detail=f"50-point grid: max |circle residual| {worst_circle:.3e}, max |nu - eta_A/sqrt(2)| {worst_nu:.3e}",
    )


def _check_nosignaling_bound(seed: int) -> CheckResult:
    rep = nosignaling_report(grid=500, seed=seed, samples=10_000, scan_points=10_000)
    in_window = 1.0 - 3.0 / 500 <= rep["max_quality"] <= 1.0 + 1e-6
    passed = (
        in_window
        and rep["disc_certification_failures"] == 0
        and rep["inequality_crosscheck_mismatches"] == 0
    )
    return CheckResult(
        name="06-nosignaling-bound",
        passed=passed,
        value=rep["max_quality"],
        target=1.0,
        tolerance=3.0 / 500,
        detail=(
            f"disc certification failures {rep['disc_certification_failures']}, "
            f"crosscheck mismatches {rep['inequality_crosscheck_mismatches']}/10000"
        ),
    )


def _check_ppt_spectrum(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 7)
    worst = 0.0
    for _ in range(1000):
        while True:
            nu, xi = rng.uniform(0.0, 1.0, 2)
            if nu**2 + xi**2 <= 1.0:
                break
        phi = rng.uniform(0.0, 2.0 * math.pi)
        out = clone(phase_covariant_params(2, nu, xi), equatorial_state(2, (0.0, phi)))
        numeric = hermitian_eigenvalues(partial_transpose(out.rho_ab, (2, 2), 0))
        worst = max(worst, float(np.abs(numeric - clone_ppt_spectrum(nu, xi, phi)).max()))
    sym_dev = float(
        np.abs(clone_ppt_spectrum(0.5, 0.5) - np.array([0.0, 0.0, 0.25, 0.75])).max()
    )
    family_min = math.inf
    family_dev = 0.0
    for eta_a in np.linspace(0.0, 1.0, 100):
        nu, xi, _ = qubit_optimal(float(eta_a))
        eigs = clone_ppt_spectrum(nu, xi)
        family_min = min(family_min, float(eigs[0]))
        family_dev = max(family_dev, float(np.abs(eigs - optimal_ppt_spectrum(float(eta_a))).max()))
    passed = worst < 1e-10 and sym_dev < 1e-10 and family_min >= -1e-9 and family_dev < 1e-10
    return CheckResult(
        name="07-ppt-spectrum",
        passed=passed,
        value=worst,
        target=0.0,
        tolerance=1e-10,
        detail=(
            f"closed vs numeric on 1000 samples: {worst:.3e}; symmetric point dev {sym_dev:.3e}; "
            f"family min eig {family_min:.3e}; family closed-form dev {family_dev:.3e}"
        ),
    )


def _check_separability_uniqueness(seed: int) -> CheckResult:
    vals = np.linspace(0.0, 1.0, 200)
    nu, xi = np.meshgrid(vals, vals, indexing="ij")
    feasible = nu**2 + xi**2 <= 1.0
    p = nu * xi
    cube = 16.0 * p * (nu**2 + xi**2)
    quad = 4.0 * p * p
    lam = np.minimum(
        (1.0 + 2.0 * p - np.sqrt(np.clip(1.0 + 12.0 * p - cube + quad, 0.0, None))) / 4.0,
        (1.0 - 2.0 * p - np.sqrt(np.clip(1.0 - 12.0 * p + cube + quad, 0.0, None))) / 4.0,
    )
    near = (np.abs(nu**2 + xi**2 - 0.5) <= 1e-3) | (np.minimum(nu, xi) <= 1e-3)
    off_zone = feasible & ~near
    violations = int(np.count_nonzero(off_zone & (lam >= -1e-6)))
    worst_off = float(lam[off_zone].max())
    return CheckResult(
        name="08-separability-uniqueness",
        passed=violations == 0,
        value=worst_off,
        target=-1e-6,
        tolerance=0.0,
        detail=(
            f"200x200 grid: {violations} separable-ish points away from the optimal "
            f"family and the nu*xi = 0 edge; worst off-zone min eig {worst_off:.3e}"
        ),
    )


def _check_machine_clone_negativity(seed: int) -> CheckResult:
    out = clone(phase_covariant_params(2, 0.5, 0.5), equatorial_state(2, (0.0, 0.0)))
    rho = np.outer(out.psi_abx, out.psi_abx.conj())
    rho_ax = partial_trace(rho, (2, 2, 2), {0, 2})
    val = negativity(rho_ax, (2, 2), 0)
    return CheckResult(
        name="09-machine-clone-negativity",
        passed=abs(val - 0.0346) <= 5e-4,
        value=val,
        target=0.0346,
        tolerance=5e-4,
        detail=(
            "expected failure: the monogamy identity fixes C(rho_AX) = 1/2 here "
            "(4 det rho_A = 1/2, C_AB = 0, tau = 1/4), and a two-qubit state with "
            "concurrence 1/2 has negativity >= sqrt((1-C)^2 + C^2) - (1-C) "
            "= 0.2071, so no valid simulation can reach 0.0346; the computed "
            "value 0.465926 is the correct one"
        ),
    )


def _hyperdeterminant_tangle(psi: np.ndarray) -> float:
    """Independent tangle oracle: 4 |d1 - 2 d2 + 4 d3| over the amplitudes."""
    p = np.asarray(psi, dtype=complex).reshape(2, 2, 2)
    d1 = (
        p[0, 0, 0] ** 2 * p[1, 1, 1] ** 2
        + p[0, 0, 1] ** 2 * p[1, 1, 0] ** 2
        + p[0, 1, 0] ** 2 * p[1, 0, 1] ** 2
        + p[1, 0, 0] ** 2 * p[0, 1, 1] ** 2
    )
    d2 = (
        p[0, 0, 0] * p[1, 1, 1] * p[0, 1, 1] * p[1, 0, 0]
        + p[0, 0, 0] * p[1, 1, 1] * p[1, 0, 1] * p[0, 1, 0]
        + p[0, 0, 0] * p[1, 1, 1] * p[1, 1, 0] * p[0, 0, 1]
        + p[0, 1, 1] * p[1, 0, 0] * p[1, 0, 1] * p[0, 1, 0]
        + p[0, 1, 1] * p[1, 0, 0] * p[1, 1, 0] * p[0, 0, 1]
        + p[1, 0, 1] * p[0, 1, 0] * p[1, 1, 0] * p[0, 0, 1]
    )
    d3 = (
        p[0, 0, 0] * p[1, 1, 0] * p[1, 0, 1] * p[0, 1, 1]
        + p[1, 1, 1] * p[0, 0, 1] * p[0, 1, 0] * p[1, 0, 0]
    )
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def _check_tangle(seed: int) -> CheckResult:
    nus = np.sort(np.append(np.linspace(0.0, 1.0 / SQ2, 30), 0.5))
    thetas = np.linspace(0.0, math.pi, 21)
    worst_ckw = 0.0
    worst_mono = 0.0
    max_tau = -1.0
    max_at = (None, None)
    ghz_ok = True
    for nu in nus:
        xi = math.sqrt(max(0.0, 0.5 - float(nu) ** 2))
        p = phase_covariant_params(2, float(nu), xi)
        for theta in thetas:
            out = clone(p, orbit_to_input(OrbitState(float(theta), 0.9)))
            rep = tangle_pure3(out.psi_abx)
            closed = tangle_closed_form(float(nu), float(theta))
            worst_ckw = max(worst_ckw, abs(rep.tau_abx - closed))
            mono = abs(rep.tau_a_bc - rep.c2_ab - rep.c2_ax - _hyperdeterminant_tangle(out.psi_abx))
            worst_mono = max(worst_mono, mono)
            if rep.tau_abx > max_tau:
                max_tau = rep.tau_abx
                max_at = (float(nu), float(theta))
            if abs(theta - math.pi / 2) < 1e-12 and 0.02 < nu < 1.0 / SQ2 - 0.02:
                ghz_ok = ghz_ok and rep.classification == "GHZ-type"
    zeros_ok = (
        tangle_closed_form(0.0, 1.0) < 1e-12
        and tangle_closed_form(1.0 / SQ2, 1.0) < 1e-12
        and tangle_closed_form(0.4, 0.0) < 1e-12
        and tangle_closed_form(0.4, math.pi) < 1e-24
    )
    max_ok = (
        abs(max_tau - 0.25) < 1e-9
        and abs(max_at[0] - 0.5) < 1e-12
        and abs(max_at[1] - math.pi / 2) < 1e-12
    )
    passed = worst_ckw < 1e-9 and worst_mono < 1e-9 and zeros_ok and max_ok and ghz_ok
    return CheckResult(
        name="10-tangle",
        passed=passed,
        value=worst_ckw,
        target=0.0,
        tolerance=1e-9,
        detail=(
            f"max |CKW - closed form| {worst_ckw:.3e}; max monogamy residual {worst_mono:.3e}; "
            f"grid max {max_tau:.6f} at (nu, theta) = {max_at}"
        ),
    )


def _check_determinism(seed: int) -> CheckResult:
    def render_everything() -> str:
        parts = []
        parts.append(sweeps.render_csv(*sweeps.universal_sweep_rows(2, 25, seed)))
        parts.append(sweeps.render_csv(*sweeps.pc_sweep_rows(2, 25)))
        parts.append(sweeps.render_csv(*sweeps.entanglement_rows(10, math.pi / 2)))
        parts.append(
            sweeps.render_json(
                nosignaling_report(grid=120, seed=seed, samples=2000, scan_points=2000)
            )
        )
        return "".join(parts)

    first = render_everything()
    second = render_everything()
    return CheckResult(
        name="11-determinism",
        passed=first == second,
        value=None,
        target=None,
        tolerance=None,
        detail="two renders of the CSV/JSON artifacts compared byte for byte",
    )


_CHECKS = (
    _check_universal_symmetric,
    _check_tradeoff_ellipse,
    _check_universality_variance,
    _check_pc_symmetric_optimum,
    _check_qubit_frontier,
    _check_nosignaling_bound,
    _check_ppt_spectrum,
    _check_separability_uniqueness,
    _check_machine_clone_negativity,
    _check_tangle,
    _check_determinism,
)

CHECK_NAMES = (
    "01-universal-symmetric-fidelity",
    "02-universal-tradeoff-ellipse",
    "03-universality-variance",
    "04-pc-symmetric-optimum",
    "05-qubit-optimal-frontier",
    "06-nosignaling-bound",
    "07-ppt-spectrum",
    "08-separability-uniqueness",
    "09-machine-clone-negativity",
    "10-tangle",
    "11-determinism",
)


def run_all(seed: int = 0, inject_failure: bool = False) -> list[CheckResult]:
    """Run every acceptance check; deterministic for a fixed seed.

    ``inject_failure`` corrupts the first check's tolerance to an impossible
    value, for verifying that harnesses notice failures.
    """
    results = [f(seed) for f in _CHECKS]
    if inject_failure:
        results[0] = replace(
            results[0],
            tolerance=-1.0,
            passed=False,
            detail=results[0].detail + " [injected corrupted tolerance]",
        )
    return results
