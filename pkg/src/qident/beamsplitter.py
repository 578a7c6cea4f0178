"""Two-particle interference at a balanced beam splitter.

One particle enters each input arm carrying an internal state (spin,
polarization, ...). The splitter maps the input-arm creation operators to
(a_1 + a_2)/sqrt(2) and (a_1 - a_2)/sqrt(2); output probabilities are
grouped by spatial pattern. With s = |<phi_L|phi_R>|^2 the coincidence
probability is (1 - s)/2 for bosons, (1 + s)/2 for fermions, and exactly
1/2 for distinguishable particles. The s = 0, 1 extremes reproduce full
bunching (bosons) and full antibunching (fermions); intermediate values
are fixed by the Fock expansion itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import (
    DimensionMismatchError,
    UnsupportedStatisticsError,
)
from .fock import FockContext, FockVector, Statistics


@dataclass(frozen=True)
class InternalState:
    """Unit-norm internal ket carried by one input particle."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise DimensionMismatchError("internal state must be a nonempty 1-d array")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            raise DimensionMismatchError("internal state must have unit norm")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def overlap_sq(self, other: "InternalState") -> float:
        """s = |<self|other>|^2."""
        if self.dim != other.dim:
            raise DimensionMismatchError("internal states must share a dimension")
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True)
class OutputDistribution:
    """Spatial outcome probabilities behind the splitter."""

    p_both_left: float
    p_both_right: float
    p_coincidence: float

    def __post_init__(self) -> None:
        total = self.p_both_left + self.p_both_right + self.p_coincidence
        if abs(total - 1.0) > 1e-12:
            raise DimensionMismatchError(f"probabilities sum to {total}, expected 1")


def closed_form_distribution(s: float, statistics: Statistics) -> OutputDistribution:
    """Analytic distribution as a function of the internal overlap s."""
    if not 0.0 <= s <= 1.0 + 1e-12:
        raise DimensionMismatchError(f"overlap s must lie in [0, 1], got {s}")
    if statistics.kind == "boson":
        pc = (1.0 - s) / 2.0
    elif statistics.kind == "fermion":
        pc = (1.0 + s) / 2.0
    elif statistics.kind == "distinguishable":
        return OutputDistribution(0.25, 0.25, 0.5)
    else:
        raise UnsupportedStatisticsError(
            f"beam-splitter statistics undefined for {statistics}"
        )
    return OutputDistribution((1.0 - pc) / 2.0, (1.0 - pc) / 2.0, pc)


def _split_input(
    left: InternalState,
    right: InternalState,
    statistics: Statistics,
    right_phase: tuple[float, float] = (1.0, -1.0),
) -> FockVector:
    """Expand a_dag_{L,phiL} a_dag_{R,phiR} |0> through the splitter map.

    Output modes are indexed (arm, internal) -> arm * k + m with arms
    0 = left detector, 1 = right detector. ``right_phase`` carries the
    splitter convention for the right input arm.
    """
    k = left.dim
    ctx = FockContext(2 * k, statistics, n_max=1 if statistics.kind == "fermion" else 2)
    vac = FockVector(ctx, {(0,) * (2 * k): 1.0})
    rp0, rp1 = right_phase
    # rightmost operator acts first: build a_dag_R |0>, then a_dag_L
    after_right = FockVector(ctx, {})
    for m in range(k):
        amp = right.amplitudes[m] / np.sqrt(2.0)
        if amp == 0:
            continue
        after_right = after_right + fock.create(m, vac).scaled(amp * rp0)
        after_right = after_right + fock.create(k + m, vac).scaled(amp * rp1)
    state = FockVector(ctx, {})
    for m in range(k):
        amp = left.amplitudes[m] / np.sqrt(2.0)
        if amp == 0:
            continue
        state = state + fock.create(m, after_right).scaled(amp)
        state = state + fock.create(k + m, after_right).scaled(amp)
    return state


def output_distribution(
    left: InternalState,
    right: InternalState,
    statistics: Statistics,
    right_phase: tuple[float, float] = (1.0, -1.0),
) -> OutputDistribution:
    """Spatial outcome probabilities from the full Fock expansion."""
    if left.dim != right.dim:
        raise DimensionMismatchError("internal states must share a dimension")
    if statistics.kind == "distinguishable":
        # two independent classical 50/50 routings
        return OutputDistribution(0.25, 0.25, 0.5)
    if statistics.kind not in ("boson", "fermion"):
        raise UnsupportedStatisticsError(
            f"beam-splitter statistics undefined for {statistics}"
        )
    state = _split_input(left, right, statistics, right_phase)
    k = left.dim
    weights = {"left": 0.0, "right": 0.0, "coincidence": 0.0}
    for occ, amp in state.terms.items():
        n_left = sum(occ[:k])
        w = abs(amp) ** 2
        if n_left == 2:
            weights["left"] += w
        elif n_left == 0:
            weights["right"] += w
        else:
            weights["coincidence"] += w
    total = sum(weights.values())
    if total <= 1e-30:
        raise DimensionMismatchError("input state vanished; cannot normalize outcomes")
    return OutputDistribution(
        weights["left"] / total,
        weights["right"] / total,
        weights["coincidence"] / total,
    )


def coincidence_likelihood(
    observed: str, s_grid, statistics: Statistics
) -> list[tuple[float, float]]:
    """Likelihood of a spatial outcome for each hypothesized overlap s.

    ``observed`` is "coincident" (one particle per arm) or "bunched"
    (both in one arm). Path measurement alone thereby yields probabilistic
    information about the internal states.
    """
    if observed not in ("coincident", "bunched"):
        raise DimensionMismatchError(f"observed must be 'coincident' or 'bunched', got {observed!r}")
    out = []
    for s in s_grid:
        dist = closed_form_distribution(float(s), statistics)
        like = dist.p_coincidence if observed == "coincident" else 1.0 - dist.p_coincidence
        out.append((float(s), like))
    return out
