import math

import numpy as np
import pytest

from qident.errors import ConvergenceError, PhysicsDomainError
from qident.fock import BOSON, DISTINGUISHABLE, FERMION, quon
from qident.thermal import (
    K_B_SI,
    ThermalSystem,
    classical_limit_gap,
    condensate_fraction,
    mean_occupancy,
    occupancy_curve,
    parse_levels,
    solve_mu,
    total_occupancy,
)


class TestMeanOccupancy:
    def test_fermi_at_chemical_potential(self):
        assert mean_occupancy(FERMION, 1.0, 1.0, 2.0) == 0.5

    def test_bose_at_log_two(self):
        assert mean_occupancy(BOSON, math.log(2.0), 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_fermi_at_x_ten(self):
        # 1 / (e^10 + 1)
        assert mean_occupancy(FERMION, 10.0, 0.0, 1.0) == pytest.approx(
            4.539786870243442e-05, rel=1e-12
        )

    def test_boltzmann(self):
        assert mean_occupancy(DISTINGUISHABLE, 3.0, 1.0, 1.0) == pytest.approx(math.exp(-2.0))

    def test_bose_domain_error(self):
        with pytest.raises(PhysicsDomainError):
            mean_occupancy(BOSON, 1.0, 1.0, 1.0)
        with pytest.raises(PhysicsDomainError):
            mean_occupancy(BOSON, 1.0, 2.0, 1.0)

    def test_overflow_safe(self):
        assert mean_occupancy(FERMION, 1e6, 0.0, 1.0) == pytest.approx(0.0, abs=1e-300)
        assert mean_occupancy(BOSON, 1e6, 0.0, 1.0) >= 0.0
        assert mean_occupancy(FERMION, -1e6, 0.0, 1.0) == 1.0

    def test_particle_hole_symmetry(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            e, mu = rng.uniform(-5, 5, size=2)
            t = rng.uniform(0.1, 4.0)
            total = mean_occupancy(FERMION, e, mu, t) + mean_occupancy(
                FERMION, 2 * mu - e, mu, t
            )
            assert total == pytest.approx(1.0, abs=1e-14)

    def test_quon_has_no_law(self):
        with pytest.raises(PhysicsDomainError):
            mean_occupancy(quon(0.5), 1.0, 0.0, 1.0)


class TestSolveMu:
    def test_symmetric_two_level_pair(self):
        for t in (0.3, 1.0, 5.0):
            system = ThermalSystem(((0.0, 1), (1.0, 1)), t, FERMION)
            assert solve_mu(system, 1.0) == pytest.approx(0.5, abs=1e-6)

    def test_low_temperature_step_filling(self):
        system = ThermalSystem(tuple((float(e), 1) for e in range(6)), 1e-4, FERMION)
        mu = solve_mu(system, 3.0)
        occ = [n for _, n in occupancy_curve(system, mu)]
        np.testing.assert_allclose(occ, [1, 1, 1, 0, 0, 0], atol=1e-3)

    def test_bose_residual(self):
        system = ThermalSystem(((0.0, 1), (1.0, 1), (2.0, 1)), 0.5, BOSON)
        mu = solve_mu(system, 1.0)
        assert mu < 0.0
        assert abs(total_occupancy(system, mu) - 1.0) <= 1e-9

    def test_residual_on_degenerate_levels(self):
        system = ThermalSystem(((0.0, 2), (1.5, 3), (4.0, 1)), 2.0, FERMION)
        mu = solve_mu(system, 4.5)
        assert abs(total_occupancy(system, mu) - 4.5) <= 1e-9 * 4.5

    def test_fermi_range_errors(self):
        system = ThermalSystem(((0.0, 1), (1.0, 1)), 1.0, FERMION)
        with pytest.raises(PhysicsDomainError):
            solve_mu(system, 2.0)
        with pytest.raises(PhysicsDomainError):
            solve_mu(system, 0.0)

    def test_bose_range_error(self):
        system = ThermalSystem(((0.0, 1),), 1.0, BOSON)
        with pytest.raises(PhysicsDomainError):
            solve_mu(system, -1.0)

    def test_distinguishable_rejected(self):
        system = ThermalSystem(((0.0, 1),), 1.0, DISTINGUISHABLE)
        with pytest.raises(PhysicsDomainError):
            solve_mu(system, 1.0)


class TestOccupancyCurve:
    def test_fermi_bounded_and_decreasing(self):
        system = ThermalSystem(tuple((float(e), 1) for e in range(8)), 1.3, FERMION)
        curve = occupancy_curve(system, 3.1)
        values = [n for _, n in curve]
        assert all(0.0 < n < 1.0 for n in values)
        assert values == sorted(values, reverse=True)

    def test_bose_positive_and_decreasing(self):
        system = ThermalSystem(tuple((float(e), 1) for e in range(1, 8)), 1.3, BOSON)
        values = [n for _, n in occupancy_curve(system, 0.2)]
        assert all(n > 0 for n in values)
        assert values == sorted(values, reverse=True)

    def test_boltzmann_pointwise(self):
        system = ThermalSystem(((0.5, 1), (1.5, 2)), 2.0, DISTINGUISHABLE)
        for e, n in occupancy_curve(system, -0.3):
            assert n == pytest.approx(math.exp(-(e + 0.3) / 2.0))

    def test_sums_to_n_total(self):
        system = ThermalSystem(tuple((float(e), e + 1) for e in range(5)), 0.8, FERMION)
        mu = solve_mu(system, 6.0)
        total = sum(g * n for (_, g), (_, n) in zip(system.levels, occupancy_curve(system, mu)))
        assert abs(total - 6.0) <= 1e-8


class TestClassicalLimit:
    @pytest.mark.parametrize("x", [5.0, 10.0, 20.0])
    def test_gap_bound(self, x):
        fd, be, mb, gap_fd, gap_be = classical_limit_gap(x, 0.0, 1.0)
        assert gap_fd <= 2.0 * math.exp(-x)
        assert gap_be <= 2.0 * math.exp(-x)
        assert mb == pytest.approx(math.exp(-x))

    def test_gaps_shrink_with_x(self):
        gaps = [classical_limit_gap(x, 0.0, 1.0)[3:] for x in (1.0, 2.0, 5.0, 10.0, 20.0)]
        fd_gaps = [g[0] for g in gaps]
        be_gaps = [g[1] for g in gaps]
        assert fd_gaps == sorted(fd_gaps, reverse=True)
        assert be_gaps == sorted(be_gaps, reverse=True)

    def test_x_twenty_agreement(self):
        fd, be, mb, gap_fd, gap_be = classical_limit_gap(20.0, 0.0, 1.0)
        assert gap_fd == pytest.approx(math.exp(-20.0) / (1 + math.exp(-20.0)), rel=1e-6)
        assert max(gap_fd, gap_be) < 3e-9

    def test_domain(self):
        with pytest.raises(PhysicsDomainError):
            classical_limit_gap(0.5, 0.0, 1.0)


LEVELS_TEN = tuple((float(e), 1) for e in range(10))


class TestCondensate:
    def test_near_zero_temperature_saturates(self):
        system = ThermalSystem(LEVELS_TEN, 1e-3, BOSON)  # gap = 1, k_B T = 1e-3 gap
        assert condensate_fraction(system, 50.0) >= 0.999

    def test_fraction_in_unit_interval(self):
        for t in (0.5, 2.0, 10.0):
            system = ThermalSystem(LEVELS_TEN, t, BOSON)
            frac = condensate_fraction(system, 50.0)
            assert 0.0 <= frac <= 1.0

    def test_monotone_in_temperature(self):
        temps = np.linspace(0.05, 8.0, 20)
        fracs = [
            condensate_fraction(ThermalSystem(LEVELS_TEN, t, BOSON), 50.0) for t in temps
        ]
        assert all(a >= b - 1e-12 for a, b in zip(fracs, fracs[1:]))

    def test_needs_bose_statistics(self):
        with pytest.raises(PhysicsDomainError):
            condensate_fraction(ThermalSystem(LEVELS_TEN, 1.0, FERMION), 5.0)


class TestLevelFiles:
    def test_parse_with_comments(self):
        text = "# ground\n0.0 2\n1.5 1  # excited\n\n3.0 4\n"
        assert parse_levels(text) == ((0.0, 2), (1.5, 1), (3.0, 4))

    def test_bad_line(self):
        with pytest.raises(PhysicsDomainError):
            parse_levels("0.0 1 extra\n")

    def test_empty(self):
        with pytest.raises(PhysicsDomainError):
            parse_levels("# nothing\n")


class TestSystemValidation:
    def test_si_constant_value(self):
        assert K_B_SI == pytest.approx(1.380649e-23)

    def test_levels_sorted(self):
        system = ThermalSystem(((2.0, 1), (0.0, 1)), 1.0, FERMION)
        assert system.levels == ((0.0, 1), (2.0, 1))

    def test_bad_temperature(self):
        with pytest.raises(PhysicsDomainError):
            ThermalSystem(((0.0, 1),), 0.0, FERMION)

    def test_bad_degeneracy(self):
        with pytest.raises(PhysicsDomainError):
            ThermalSystem(((0.0, 0),), 1.0, FERMION)
