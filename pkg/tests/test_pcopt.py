import math

import numpy as np
import pytest

from asymclone.cloner import (
    clone,
    phase_covariant_params,
    random_equatorial,
    shrinking_factor,
)
from asymclone.pcopt import (
    eta_b_given,
    optimize_eta_b,
    pc_point,
    pc_shrinking,
    qubit_optimal,
    symmetric_fidelity,
    symmetric_nu_opt,
)

SQ2 = math.sqrt(2.0)


class TestPcShrinking:
    def test_qubit_symmetric_point(self):
        ea, eb = pc_shrinking(2, 0.5, 0.5)
        assert abs(ea - 1 / SQ2) < 1e-14
        assert abs(eb - 1 / SQ2) < 1e-14

    def test_perfect_blank_split(self):
        ea, eb = pc_shrinking(2, 1 / SQ2, 0.0)
        assert abs(ea - 1.0) < 1e-14
        assert eb == 0.0

    def test_symmetric_d3_matches_simulation(self):
        nu = symmetric_nu_opt(3)
        ea, eb = pc_shrinking(3, nu, nu)
        expected = nu**2 + 2 * nu * math.sqrt(1 - 4 * nu**2)
        assert abs(ea - expected) < 1e-14
        out = clone(phase_covariant_params(3, nu, nu), random_equatorial(3, 0))
        assert abs(out.eta_a - ea) < 1e-10
        assert abs(out.eta_b - eb) < 1e-10

    def test_infeasible_raises(self):
        with pytest.raises(ValueError):
            pc_shrinking(3, 0.9, 0.9)

    def test_pc_point_bundles_qualities(self):
        pt = pc_point(2, 0.5, 0.5)
        assert (pt.d, pt.nu, pt.xi) == (2, 0.5, 0.5)
        assert abs(pt.eta_a - 1 / SQ2) < 1e-14
        assert 0.0 <= pt.eta_a <= 1.0 and 0.0 <= pt.eta_b <= 1.0
        with pytest.raises(ValueError):
            pc_point(3, 0.9, 0.9)

    def test_agreement_with_simulation_random(self):
        rng = np.random.default_rng(6)
        for d in (2, 3, 4):
            for _ in range(10):
                while True:
                    nu, xi = rng.uniform(0, 1 / math.sqrt(d - 1), 2)
                    if nu**2 + xi**2 <= 1.0 / (d - 1):
                        break
                ea, eb = pc_shrinking(d, nu, xi)
                out = clone(phase_covariant_params(d, nu, xi), random_equatorial(d, rng))
                assert abs(ea - out.eta_a) < 1e-10
                assert abs(eb - out.eta_b) < 1e-10


class TestEtaBGiven:
    def test_three_four_five_point(self):
        assert abs(eta_b_given(2, 0.6, 0.6 / SQ2) - 0.8) < 1e-12

    def test_boundary(self):
        assert abs(eta_b_given(2, 1.0, 1 / SQ2)) < 1e-12

    def test_symmetric_fixed_point_d3(self):
        nu = symmetric_nu_opt(3)
        ea, _ = pc_shrinking(3, nu, nu)
        assert abs(eta_b_given(3, ea, nu) - ea) < 1e-10

    def test_infeasible_nu(self):
        with pytest.raises(ValueError):
            eta_b_given(2, 0.9, 0.05)


class TestOptimize:
    def test_qubit_three_four_five(self):
        # the objective is quadratically flat at the top, so nu localizes
        # only to ~sqrt(eps); the value converges much tighter
        nu, xi, eb = optimize_eta_b(2, 0.6)
        assert abs(nu - 0.6 / SQ2) < 1e-6
        assert abs(eb - 0.8) < 1e-9
        assert abs(xi - 0.8 / SQ2) < 1e-6

    def test_qubit_symmetric(self):
        _, _, eb = optimize_eta_b(2, 1 / SQ2)
        assert abs(eb - 1 / SQ2) < 1e-9

    def test_qubit_endpoint(self):
        nu, xi, eb = optimize_eta_b(2, 1.0)
        assert abs(nu - 1 / SQ2) < 1e-9
        assert abs(eb) < 1e-6

    def test_d3_symmetric_point(self):
        f = symmetric_fidelity(3)
        eta_sym = shrinking_factor(f, 3)
        _, _, eb = optimize_eta_b(3, eta_sym)
        assert abs(eb - eta_sym) < 1e-6

    def test_rejects_bad_eta(self):
        with pytest.raises(ValueError):
            optimize_eta_b(2, 0.0)
        with pytest.raises(ValueError):
            optimize_eta_b(2, 1.5)

    def test_frontier_monotone_decreasing(self):
        for d in (2, 3):
            etas = np.linspace(0.05, 0.99, 50)
            ebs = [optimize_eta_b(d, ea, grid=400)[2] for ea in etas]
            assert np.all(np.diff(ebs) < 0)

    def test_frontier_dominates_random_machines(self):
        rng = np.random.default_rng(9)
        for d in (2, 3, 4):
            for _ in range(1000):
                while True:
                    nu, xi = rng.uniform(0, 1 / math.sqrt(d - 1), 2)
                    if nu**2 + xi**2 <= 1.0 / (d - 1):
                        break
                ea, eb = pc_shrinking(d, nu, xi)
                if ea < 1e-3:
                    continue
                _, _, eb_star = optimize_eta_b(d, ea, grid=400)
                assert eb <= eb_star + 1e-9

    def test_qubit_circle(self):
        for ea in np.linspace(0.02, 1.0, 50):
            nu, _, eb = optimize_eta_b(2, ea)
            assert abs(ea**2 + eb**2 - 1.0) < 1e-8
            assert abs(nu - ea / SQ2) < 1e-6


class TestClosedForms:
    def test_nu_opt_d2(self):
        assert abs(symmetric_nu_opt(2) - 0.5) < 1e-15

    def test_nu_opt_d3_value(self):
        # (1/2) sqrt((17 + sqrt(17)) / 34), cross-checked by the optimizer
        expected = 0.5 * math.sqrt((17 + math.sqrt(17)) / 34)
        assert abs(symmetric_nu_opt(3) - expected) < 1e-15
        assert abs(expected - 0.3941027190080546) < 1e-12

    @pytest.mark.parametrize("d", range(2, 11))
    def test_nu_opt_matches_optimizer(self, d):
        eta_sym = shrinking_factor(symmetric_fidelity(d), d)
        nu_star, xi_star, _ = optimize_eta_b(d, eta_sym)
        assert abs(nu_star - symmetric_nu_opt(d)) < 1e-6
        assert abs(xi_star - symmetric_nu_opt(d)) < 1e-6

    def test_fidelity_d2(self):
        assert abs(symmetric_fidelity(2) - (0.5 + 1 / math.sqrt(8))) < 1e-15
        assert abs(symmetric_fidelity(2) - 0.8535533906) < 1e-9

    def test_fidelity_d3(self):
        assert abs(symmetric_fidelity(3) - (1 / 3 + (1 + math.sqrt(17)) / 12)) < 1e-15

    @pytest.mark.parametrize("d", range(2, 8))
    def test_fidelity_consistent_with_shrinking(self, d):
        nu = symmetric_nu_opt(d)
        ea, _ = pc_shrinking(d, nu, nu)
        f = (ea * (d - 1) + 1) / d
        assert abs(f - symmetric_fidelity(d)) < 1e-10


class TestQubitOptimal:
    def test_symmetric_point(self):
        nu, xi, eb = qubit_optimal(1 / SQ2)
        assert abs(nu - 0.5) < 1e-12
        assert abs(xi - 0.5) < 1e-12
        assert abs(eb - 1 / SQ2) < 1e-12

    def test_all_quality_to_b(self):
        nu, xi, eb = qubit_optimal(0.0)
        assert nu == 0.0
        assert abs(xi - 1 / SQ2) < 1e-15
        assert eb == 1.0

    def test_unit_circle(self):
        nu, xi, eb = qubit_optimal(0.6)
        assert abs(eb - 0.8) < 1e-15
        assert abs(nu**2 + xi**2 - 0.5) < 1e-15
