"""Thermal occupancy laws and chemical-potential solving.

Fermi-Dirac and Bose-Einstein occupancies share one evaluation kernel
``1 / (exp(x) + sign)`` and differ only in the sign of the denominator
offset; the Maxwell-Boltzmann law is the common large-x limit. Energies,
temperature, and the chemical potential are in caller-chosen consistent
units with k_B = 1 by default (the SI value is exported as K_B_SI).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, PhysicsDomainError
from .fock import BOSON, DISTINGUISHABLE, FERMION, Statistics

#: Boltzmann constant in SI units (J/K).
K_B_SI = 1.380649e-23

#: Above this reduced energy, exp(x) overflows a double; use e^(-x) forms.
_X_OVERFLOW = 700.0

_SOLVER_RESIDUAL = 1e-9
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class ThermalSystem:
    """Discrete energy levels with degeneracies at fixed temperature."""

    levels: tuple[tuple[float, int], ...]
    temperature: float
    statistics: Statistics
    k_b: float = 1.0

    def __post_init__(self) -> None:
        levels = tuple((float(e), int(g)) for e, g in self.levels)
        if not levels:
            raise PhysicsDomainError("a thermal system needs at least one level")
        if any(g < 1 for _, g in levels):
            raise PhysicsDomainError("degeneracies must be >= 1")
        if sorted(e for e, _ in levels) != [e for e, _ in levels]:
            levels = tuple(sorted(levels))
        object.__setattr__(self, "levels", levels)
        if self.temperature <= 0:
            raise PhysicsDomainError(f"temperature must be > 0, got {self.temperature}")
        if self.k_b <= 0:
            raise PhysicsDomainError(f"k_B must be > 0, got {self.k_b}")

    @property
    def ground_energy(self) -> float:
        return self.levels[0][0]

    @property
    def total_degeneracy(self) -> int:
        return sum(g for _, g in self.levels)

    @property
    def kt(self) -> float:
        return self.k_b * self.temperature


def _kernel(x: float, sign: int) -> float:
    """1 / (exp(x) + sign); sign = +1 Fermi-Dirac, -1 Bose-Einstein."""
    if x > _X_OVERFLOW:
        return math.exp(-x)
    if sign < 0:
        # expm1 keeps the x -> 0+ divergence finite-precision clean
        return 1.0 / math.expm1(x)
    return 1.0 / (math.exp(x) + sign)


def mean_occupancy(
    statistics: Statistics, energy: float, mu: float, temperature: float, k_b: float = 1.0
) -> float:
    """Mean particle number in a level of the given energy.

    Fermi-Dirac 1/(e^x + 1), Bose-Einstein 1/(e^x - 1), Boltzmann e^(-x),
    with x = (E - mu) / (k_B T). The bosonic law requires mu < E.
    """
    if temperature <= 0:
        raise PhysicsDomainError(f"temperature must be > 0, got {temperature}")
    x = (energy - mu) / (k_b * temperature)
    if statistics.kind == "fermion":
        if x < -_X_OVERFLOW:
            return 1.0
        return _kernel(x, +1)
    if statistics.kind == "boson":
        if x <= 0:
            raise PhysicsDomainError(
                f"bosonic occupancy needs mu < E, got mu = {mu}, E = {energy}"
            )
        return _kernel(x, -1)
    if statistics.kind == "distinguishable":
        return math.exp(-x)
    raise PhysicsDomainError(f"no thermal occupancy law for {statistics}")


def total_occupancy(system: ThermalSystem, mu: float) -> float:
    return sum(
        g * mean_occupancy(system.statistics, e, mu, system.temperature, system.k_b)
        for e, g in system.levels
    )


def occupancy_curve(system: ThermalSystem, mu: float) -> list[tuple[float, float]]:
    """Per-level (E, <n>) pairs at the given chemical potential."""
    return [
        (e, mean_occupancy(system.statistics, e, mu, system.temperature, system.k_b))
        for e, _ in system.levels
    ]


def solve_mu(system: ThermalSystem, n_total: float) -> float:
    """Chemical potential fixing the total particle number by bisection.

    Total occupancy is strictly increasing in mu, so the root is unique.
    Fermi systems bracket mu in [E_0 - 50 kT, E_max + 50 kT]; Bose
    systems bisect on s with mu = E_0 - e^s to respect mu < E_0.
    """
    kind = system.statistics.kind
    kt = system.kt
    if kind == "fermion":
        if not 0.0 < n_total < system.total_degeneracy:
            raise PhysicsDomainError(
                f"fermionic N must lie in (0, {system.total_degeneracy}), got {n_total}"
            )
        lo = system.ground_energy - 50.0 * kt
        hi = system.levels[-1][0] + 50.0 * kt
        value = lambda mu: total_occupancy(system, mu)
    elif kind == "boson":
        if n_total <= 0:
            raise PhysicsDomainError(f"bosonic N must be > 0, got {n_total}")
        e0 = system.ground_energy
        # mu = e0 - e^s: small s crowds mu against E_0 and grows N
        lo, hi = math.log(kt) - 60.0, math.log(kt) + 60.0
        value = lambda s: total_occupancy(system, e0 - math.exp(s))
        # occupancy decreases in s; flip by bisecting on -s
        lo, hi = -hi, -lo
        inner = value
        value = lambda t: inner(-t)
    else:
        raise PhysicsDomainError(f"no chemical potential for {system.statistics}")

    f_lo = value(lo) - n_total
    f_hi = value(hi) - n_total
    if f_lo > 0 or f_hi < 0:
        raise ConvergenceError(
            f"bisection bracket [{lo}, {hi}] does not enclose N = {n_total}"
        )
    tol = _SOLVER_RESIDUAL * max(1.0, abs(n_total))
    mid = 0.5 * (lo + hi)
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        f_mid = value(mid) - n_total
        if abs(f_mid) <= tol:
            break
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(
            f"residual {abs(value(mid) - n_total):.3e} above {tol:.3e} "
            f"after {_MAX_BISECTIONS} bisections"
        )
    if kind == "boson":
        return system.ground_energy - math.exp(-mid)
    return mid


def classical_limit_gap(
    energy: float, mu: float, temperature: float, k_b: float = 1.0
) -> tuple[float, float, float, float, float]:
    """(fd, be, mb, rel_gap_fd, rel_gap_be) at one reduced energy.

    Both relative gaps equal e^(-x) / (1 +- e^(-x)) <= 2 e^(-x) for
    x = (E - mu)/(k_B T) >= 1.
    """
    x = (energy - mu) / (k_b * temperature)
    if x < 1.0:
        raise PhysicsDomainError(f"classical-limit comparison needs x >= 1, got {x}")
    fd = mean_occupancy(FERMION, energy, mu, temperature, k_b)
    be = mean_occupancy(BOSON, energy, mu, temperature, k_b)
    mb = mean_occupancy(DISTINGUISHABLE, energy, mu, temperature, k_b)
    return fd, be, mb, abs(fd - mb) / mb, abs(be - mb) / mb


def condensate_fraction(system: ThermalSystem, n_total: float) -> float:
    """Ground-level share g_0 <n_0> / N at the solved chemical potential."""
    if system.statistics.kind != "boson":
        raise PhysicsDomainError("condensate fraction is a bosonic quantity")
    mu = solve_mu(system, n_total)
    e0, g0 = system.levels[0]
    n0 = g0 * mean_occupancy(BOSON, e0, mu, system.temperature, system.k_b)
    return min(1.0, n0 / n_total)


# ---------------------------------------------------------------------------
# Level-spec text files: one "E g" pair per line, '#' comments


def parse_levels(text: str) -> tuple[tuple[float, int], ...]:
    levels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PhysicsDomainError(
                f"level line {lineno}: expected 'E g', got {raw.strip()!r}"
            )
        levels.append((float(fields[0]), int(fields[1])))
    if not levels:
        raise PhysicsDomainError("level file contains no levels")
    return tuple(levels)


def load_levels(path: str) -> tuple[tuple[float, int], ...]:
    with open(path) as fh:
        return parse_levels(fh.read())
