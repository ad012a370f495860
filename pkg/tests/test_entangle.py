import math

import numpy as np
import pytest

from asymclone.cloner import (
    OrbitState,
    clone,
    equatorial_state,
    orbit_to_input,
    phase_covariant_params,
    universal_params,
)
from asymclone.entangle import (
    clone_ppt_spectrum,
    concurrence,
    negativity,
    optimal_ppt_spectrum,
    ppt_report,
    tangle_closed_form,
    tangle_general,
    tangle_pure3,
)
from asymclone.pcopt import qubit_optimal
from asymclone.qlinalg import partial_trace, partial_transpose

SQ2 = math.sqrt(2.0)

BELL = np.zeros(4, dtype=complex)
BELL[0] = BELL[3] = 1 / SQ2
BELL_RHO = np.outer(BELL, BELL.conj())

GHZ = np.zeros(8, dtype=complex)
GHZ[0] = GHZ[7] = 1 / SQ2

W = np.zeros(8, dtype=complex)
W[0b001] = W[0b010] = W[0b100] = 1 / math.sqrt(3)


def hyperdeterminant_tangle(psi):
    """Independent brute-force tangle oracle for pure three-qubit states:
    4 |d1 - 2 d2 + 4 d3| over the amplitude octet."""
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


def random_feasible_machine(rng):
    while True:
        nu, xi = rng.uniform(0, 1, 2)
        if nu**2 + xi**2 <= 1.0:
            return nu, xi


class TestPptSpectrum:
    def test_optimal_symmetric(self):
        np.testing.assert_allclose(
            clone_ppt_spectrum(0.5, 0.5), [0, 0, 0.25, 0.75], atol=1e-12
        )

    def test_universal_symmetric_is_entangled(self):
        eigs = clone_ppt_spectrum(1 / math.sqrt(6), 1 / math.sqrt(6))
        # smallest eigenvalue is (2 - sqrt(5))/6
        assert abs(eigs[0] - (2 - math.sqrt(5)) / 6) < 1e-12
        assert eigs[0] < -0.039

    def test_one_clone_blank_is_product(self):
        eigs = clone_ppt_spectrum(1 / SQ2, 0.0)
        assert np.all(eigs >= -1e-15)

    def test_matches_numeric_partial_transpose(self):
        rng = np.random.default_rng(12)
        worst = 0.0
        for _ in range(200):
            nu, xi = random_feasible_machine(rng)
            phi = rng.uniform(0, 2 * np.pi)
            out = clone(phase_covariant_params(2, nu, xi), equatorial_state(2, (0.0, phi)))
            numeric = np.linalg.eigvalsh(partial_transpose(out.rho_ab, (2, 2), 0))
            worst = max(worst, np.abs(numeric - clone_ppt_spectrum(nu, xi, phi)).max())
        assert worst < 1e-10

    def test_phase_never_matters(self):
        rng = np.random.default_rng(13)
        nu, xi = 0.37, 0.52
        spectra = []
        for phi in rng.uniform(0, 2 * np.pi, 12):
            out = clone(phase_covariant_params(2, nu, xi), equatorial_state(2, (0.0, phi)))
            spectra.append(np.linalg.eigvalsh(partial_transpose(out.rho_ab, (2, 2), 0)))
        spectra = np.array(spectra)
        assert np.abs(spectra - spectra[0]).max() < 1e-12

    def test_rejects_infeasible(self):
        with pytest.raises(ValueError):
            clone_ppt_spectrum(0.9, 0.9)


class TestOptimalPptSpectrum:
    def test_symmetric(self):
        np.testing.assert_allclose(
            optimal_ppt_spectrum(1 / SQ2), [0, 0, 0.25, 0.75], atol=1e-12
        )

    def test_endpoint(self):
        np.testing.assert_allclose(optimal_ppt_spectrum(1.0), [0, 0, 0.5, 0.5], atol=1e-15)

    def test_three_four_five(self):
        np.testing.assert_allclose(
            optimal_ppt_spectrum(0.6), [0, 0, 0.26, 0.74], atol=1e-12
        )

    def test_matches_clone_spectrum_on_family(self):
        for eta_a in np.linspace(0.0, 1.0, 41):
            nu, xi, _ = qubit_optimal(eta_a)
            np.testing.assert_allclose(
                clone_ppt_spectrum(nu, xi), optimal_ppt_spectrum(eta_a), atol=1e-10
            )
            assert clone_ppt_spectrum(nu, xi)[0] >= -1e-9


class TestSeparabilityUniqueness:
    def test_grid(self):
        # separable points live only near nu^2 + xi^2 = 1/2 or nu xi = 0
        vals = np.linspace(0.0, 1.0, 60)
        for nu in vals:
            for xi in vals:
                if nu**2 + xi**2 > 1.0:
                    continue
                lam = clone_ppt_spectrum(nu, xi)[0]
                near_family = abs(nu**2 + xi**2 - 0.5) <= 1e-3 or min(nu, xi) <= 1e-3
                if lam >= -1e-9:
                    assert near_family
                elif not near_family:
                    assert lam < -1e-6


class TestNegativity:
    def test_bell(self):
        assert abs(negativity(BELL_RHO, (2, 2), 0) - 1.0) < 1e-12

    def test_optimal_symmetric_clones_separable(self):
        out = clone(phase_covariant_params(2, 0.5, 0.5), equatorial_state(2, (0.0, 0.3)))
        assert negativity(out.rho_ab, (2, 2), 0) < 1e-9
        rep = ppt_report(out.rho_ab, (2, 2), 0)
        assert rep.separable
        np.testing.assert_allclose(rep.eigenvalues, [0, 0, 0.25, 0.75], atol=1e-10)

    def test_machine_clone_negativity_value(self):
        # forced by the monogamy identity: 4 det rho_A = 1/2, C_AB = 0 and
        # tau = 1/4 give C_AX = 1/2, so the negativity is far from zero
        out = clone(phase_covariant_params(2, 0.5, 0.5), equatorial_state(2, (0.0, 0.0)))
        rho = np.outer(out.psi_abx, out.psi_abx.conj())
        rho_ax = partial_trace(rho, (2, 2, 2), {0, 2})
        val = negativity(rho_ax, (2, 2), 0)
        assert abs(val - 0.4659258264) < 1e-9
        assert abs(concurrence(rho_ax) - 0.5) < 1e-9


class TestConcurrence:
    def test_bell(self):
        assert abs(concurrence(BELL_RHO) - 1.0) < 1e-10

    def test_product_pure(self):
        v = np.kron([1, 0], [1 / SQ2, 1 / SQ2]).astype(complex)
        assert concurrence(np.outer(v, v.conj())) < 1e-12

    def test_werner_half(self):
        rho = 0.5 * BELL_RHO + 0.5 * np.eye(4) / 4
        assert abs(concurrence(rho) - 0.25) < 1e-10

    def test_matches_direct_eigenvalue_route(self):
        rng = np.random.default_rng(14)
        yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
        for _ in range(20):
            g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            rho = g @ g.conj().T
            rho /= np.trace(rho).real
            lam = np.sqrt(np.abs(np.sort(np.linalg.eigvals(rho @ yy @ rho.conj() @ yy).real)[::-1]))
            direct = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
            assert abs(concurrence(rho) - direct) < 1e-7

    def test_rejects_non_state(self):
        with pytest.raises(ValueError):
            concurrence(np.eye(4))


class TestTanglePure3:
    def test_ghz(self):
        rep = tangle_pure3(GHZ)
        assert abs(rep.tau_abx - 1.0) < 1e-10
        assert rep.classification == "GHZ-type"

    def test_w(self):
        rep = tangle_pure3(W)
        assert rep.tau_abx < 1e-9
        assert rep.classification == "separable-ish"
        # two-party entanglement carries everything: C^2 = 4/9 per pair
        assert abs(rep.c2_ab - 4 / 9) < 1e-9
        assert abs(rep.c2_ax - 4 / 9) < 1e-9

    def test_product(self):
        v = np.zeros(8, dtype=complex)
        v[0] = 1.0
        rep = tangle_pure3(v)
        assert rep.tau_abx < 1e-12
        assert rep.c2_ab < 1e-12
        assert rep.c2_ax < 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            tangle_pure3(np.ones(8))

    def test_monogamy_against_hyperdeterminant(self):
        rng = np.random.default_rng(15)
        for _ in range(30):
            nu, xi = random_feasible_machine(rng)
            theta = rng.uniform(0, np.pi)
            phi = rng.uniform(0, 2 * np.pi)
            out = clone(
                phase_covariant_params(2, nu, xi), orbit_to_input(OrbitState(theta, phi))
            )
            rep = tangle_pure3(out.psi_abx)
            assert abs(rep.tau_abx - hyperdeterminant_tangle(out.psi_abx)) < 1e-9
            assert 0.0 <= rep.tau_abx <= 1.0
            rho = np.outer(out.psi_abx, out.psi_abx.conj())
            for keep in ({0, 1}, {0, 2}):
                n = negativity(partial_trace(rho, (2, 2, 2), keep), (2, 2), 0)
                assert 0.0 <= n <= 1.0


class TestTangleClosedForms:
    def test_maximum(self):
        assert abs(tangle_closed_form(0.5, np.pi / 2) - 0.25) < 1e-15

    def test_zeros(self):
        assert tangle_closed_form(0.0, 1.0) == 0.0
        assert abs(tangle_closed_form(1 / SQ2, 1.0)) < 1e-12
        assert abs(tangle_closed_form(0.3, 0.0)) < 1e-15

    def test_range_check(self):
        with pytest.raises(ValueError):
            tangle_closed_form(0.9, 1.0)

    def test_matches_simulation_on_family(self):
        for nu in np.linspace(0.0, 1 / SQ2, 15):
            xi = math.sqrt(max(0.0, 0.5 - nu**2))
            for theta in np.linspace(0.0, np.pi, 9):
                out = clone(
                    phase_covariant_params(2, nu, xi),
                    orbit_to_input(OrbitState(theta, 0.8)),
                )
                assert abs(tangle_pure3(out.psi_abx).tau_abx - tangle_closed_form(nu, theta)) < 1e-9

    def test_general_reduces_to_family_form(self):
        for nu in np.linspace(0.0, 1 / SQ2, 12):
            xi = math.sqrt(max(0.0, 0.5 - nu**2))
            p = phase_covariant_params(2, nu, xi)
            for theta in (0.0, 0.7, np.pi / 2):
                assert abs(tangle_general(p, theta) - tangle_closed_form(nu, theta)) < 1e-12

    def test_general_matches_simulation_everywhere(self):
        rng = np.random.default_rng(16)
        for _ in range(25):
            nu, xi = random_feasible_machine(rng)
            p = phase_covariant_params(2, nu, xi)
            theta = rng.uniform(0, np.pi)
            out = clone(p, orbit_to_input(OrbitState(theta, 1.9)))
            assert abs(tangle_pure3(out.psi_abx).tau_abx - tangle_general(p, theta)) < 1e-9

    def test_general_universal_machine(self):
        p = universal_params(2, np.pi / 4)
        out = clone(p, orbit_to_input(OrbitState(np.pi / 2, 0.0)))
        val = tangle_general(p, np.pi / 2)
        assert abs(val - tangle_pure3(out.psi_abx).tau_abx) < 1e-9
        assert abs(val - hyperdeterminant_tangle(out.psi_abx)) < 1e-9

    def test_blank_b_limit_algebra(self):
        # xi = 0: tangle reduces to sin^2(theta) (mu^2 - nu^2)^2
        rng = np.random.default_rng(17)
        for _ in range(10):
            nu = rng.uniform(0, 1)
            p = phase_covariant_params(2, nu, 0.0)
            theta = rng.uniform(0, np.pi)
            expected = math.sin(theta) ** 2 * (p.mu**2 - nu**2) ** 2
            assert abs(tangle_general(p, theta) - expected) < 1e-12
            out = clone(p, orbit_to_input(OrbitState(theta, 0.0)))
            assert abs(hyperdeterminant_tangle(out.psi_abx) - expected) < 1e-9

    def test_rejects_qudit_params(self):
        with pytest.raises(ValueError):
            tangle_general(universal_params(3, 0.5), 1.0)
