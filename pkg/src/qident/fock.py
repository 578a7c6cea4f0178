"""Occupation-number states and ladder operators for all statistics.

States are sparse maps from occupation tuples ``(n_1, ..., n_M)`` to
complex amplitudes. Fermionic operators carry the alternating phase
``(-1)^{p_i}`` with ``p_i = sum_{k < i} n_k``; bosonic ones the usual
``sqrt(n)`` weights; quons use q-integer weights ``[m]_q = 1 + q + ... +
q^{m-1}`` so that ``a a_dag - q a_dag a = 1`` holds identically on a
single mode. Multi-mode quon contexts are rejected: the q-mutator fixes
no relation between distinct modes.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    SizeLimitError,
    UnsupportedStatisticsError,
    ZeroVectorError,
)
from .first_quantization import (
    NBodyVector,
    SingleParticleVector,
    antisymmetrize,
    symmetrize,
    tensor_product,
)

#: Default pruning threshold for negligible amplitudes (0 disables).
PRUNE_THRESHOLD = 1e-15
#: Largest dense operator-matrix dimension for algebra verification.
MAX_MATRIX_DIM = 5000


@dataclass(frozen=True)
class Statistics:
    """Particle statistics tag: fermion, boson, quon(q), or distinguishable."""

    kind: str
    q: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("fermion", "boson", "quon", "distinguishable"):
            raise UnsupportedStatisticsError(f"unknown statistics kind {self.kind!r}")
        if self.kind == "quon":
            if self.q is None or not -1.0 <= self.q <= 1.0:
                raise UnsupportedStatisticsError(f"quon parameter must lie in [-1, 1], got {self.q}")
        elif self.q is not None:
            raise UnsupportedStatisticsError(f"{self.kind} statistics takes no q parameter")

    def __str__(self) -> str:
        return f"quon(q={self.q})" if self.kind == "quon" else self.kind


FERMION = Statistics("fermion")
BOSON = Statistics("boson")
DISTINGUISHABLE = Statistics("distinguishable")


def quon(q: float) -> Statistics:
    return Statistics("quon", float(q))


def q_integer(m: int, q: float) -> float:
    """[m]_q = 1 + q + ... + q^(m-1); [m]_1 = m, [m]_{-1} alternates 1, 0."""
    return float(sum(q**j for j in range(m)))


@dataclass(frozen=True)
class FockContext:
    """Mode count, statistics, and per-mode truncation for a Fock basis."""

    modes: int
    statistics: Statistics
    n_max: int = 1

    def __post_init__(self) -> None:
        if self.modes < 1:
            raise DimensionMismatchError(f"mode count must be >= 1, got {self.modes}")
        if self.statistics.kind == "fermion":
            object.__setattr__(self, "n_max", 1)
        elif self.statistics.kind == "quon":
            if self.modes > 1:
                raise UnsupportedStatisticsError(
                    "multi-mode quon algebra is undefined; use modes=1"
                )
            if self.n_max < 1:
                raise DimensionMismatchError("n_max must be >= 1")
        elif self.statistics.kind == "boson":
            if self.n_max < 1:
                raise DimensionMismatchError("n_max must be >= 1")
        else:
            raise UnsupportedStatisticsError(
                "Fock ladder operators are undefined for distinguishable particles"
            )

    def check_occupation(self, occ: tuple[int, ...]) -> tuple[int, ...]:
        occ = tuple(int(n) for n in occ)
        if len(occ) != self.modes:
            raise DimensionMismatchError(f"occupation has {len(occ)} modes, expected {self.modes}")
        if any(n < 0 or n > self.n_max for n in occ):
            raise DimensionMismatchError(
                f"occupation {occ} outside 0..{self.n_max} per mode"
            )
        return occ

    def basis(self) -> list[tuple[int, ...]]:
        """All occupation tuples, lexicographic; fermions via bitmasks."""
        if self.statistics.kind == "fermion":
            if self.modes > 63:
                raise SizeLimitError("fermionic bitmask basis supports at most 63 modes")
            return [
                tuple((mask >> (self.modes - 1 - k)) & 1 for k in range(self.modes))
                for mask in range(1 << self.modes)
            ]
        return [
            occ for occ in itertools.product(range(self.n_max + 1), repeat=self.modes)
        ]


class FockVector:
    """Sparse second-quantized state over a FockContext."""

    def __init__(
        self,
        context: FockContext,
        terms: dict[tuple[int, ...], complex] | None = None,
        truncated: bool = False,
        prune: float = PRUNE_THRESHOLD,
    ) -> None:
        self.context = context
        self.truncated = truncated
        clean: dict[tuple[int, ...], complex] = {}
        for occ, amp in (terms or {}).items():
            occ = context.check_occupation(occ)
            amp = complex(amp)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise DimensionMismatchError(f"non-finite amplitude at {occ}")
            if abs(amp) > prune:
                clean[occ] = clean.get(occ, 0.0) + amp
        self.terms = clean

    def __add__(self, other: "FockVector") -> "FockVector":
        if other.context != self.context:
            raise DimensionMismatchError("cannot add states from different Fock contexts")
        merged = dict(self.terms)
        for occ, amp in other.terms.items():
            merged[occ] = merged.get(occ, 0.0) + amp
        return FockVector(self.context, merged, self.truncated or other.truncated)

    def scaled(self, factor: complex) -> "FockVector":
        return FockVector(
            self.context,
            {occ: amp * factor for occ, amp in self.terms.items()},
            self.truncated,
        )

    def inner(self, other: "FockVector") -> complex:
        if other.context != self.context:
            raise DimensionMismatchError("inner product needs a shared Fock context")
        return sum(
            (self.terms[occ].conjugate() * amp for occ, amp in other.terms.items() if occ in self.terms),
            0.0 + 0.0j,
        )

    @property
    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.terms.values()))

    def normalized(self) -> "FockVector":
        nrm = self.norm
        if nrm <= 1e-15:
            raise ZeroVectorError("cannot normalize a zero Fock vector")
        return self.scaled(1.0 / nrm)

    def amplitude(self, occ: tuple[int, ...]) -> complex:
        return self.terms.get(self.context.check_occupation(occ), 0.0 + 0.0j)


def vacuum(modes: int, statistics: Statistics, n_max: int = 1) -> FockVector:
    """|0, ..., 0>: the single unpopulated basis state with amplitude 1."""
    ctx = FockContext(modes, statistics, n_max)
    return FockVector(ctx, {(0,) * modes: 1.0 + 0.0j})


def number_state(
    occ: tuple[int, ...], statistics: Statistics, n_max: int | None = None
) -> FockVector:
    """|n_1, ..., n_M> as a unit-amplitude FockVector."""
    if n_max is None:
        n_max = max(1, max(occ, default=0))
    ctx = FockContext(len(occ), statistics, n_max)
    return FockVector(ctx, {ctx.check_occupation(occ): 1.0 + 0.0j})


def _fermion_phase(occ: tuple[int, ...], i: int) -> int:
    return -1 if sum(occ[:i]) % 2 else 1


def create(i: int, v: FockVector) -> FockVector:
    """Apply the creation operator on mode i (0-based), linearly extended."""
    ctx = v.context
    if not 0 <= i < ctx.modes:
        raise DimensionMismatchError(f"mode {i} outside 0..{ctx.modes - 1}")
    kind = ctx.statistics.kind
    out: dict[tuple[int, ...], complex] = {}
    truncated = v.truncated
    for occ, amp in v.terms.items():
        n_i = occ[i]
        if kind == "fermion":
            if n_i == 1:
                continue
            weight = _fermion_phase(occ, i)
        elif kind == "boson":
            if n_i == ctx.n_max:
                truncated = True
                continue
            weight = math.sqrt(n_i + 1)
        else:  # quon
            if n_i == ctx.n_max:
                truncated = True
                continue
            weight = math.sqrt(q_integer(n_i + 1, ctx.statistics.q))
        new = occ[:i] + (n_i + 1,) + occ[i + 1 :]
        out[new] = out.get(new, 0.0) + amp * weight
    return FockVector(ctx, out, truncated)


def annihilate(i: int, v: FockVector) -> FockVector:
    """Apply the annihilation operator on mode i; kills empty-mode terms."""
    ctx = v.context
    if not 0 <= i < ctx.modes:
        raise DimensionMismatchError(f"mode {i} outside 0..{ctx.modes - 1}")
    kind = ctx.statistics.kind
    out: dict[tuple[int, ...], complex] = {}
    for occ, amp in v.terms.items():
        n_i = occ[i]
        if n_i == 0:
            continue
        if kind == "fermion":
            weight = _fermion_phase(occ, i)
        elif kind == "boson":
            weight = math.sqrt(n_i)
        else:  # quon
            weight = math.sqrt(q_integer(n_i, ctx.statistics.q))
        new = occ[:i] + (n_i - 1,) + occ[i + 1 :]
        out[new] = out.get(new, 0.0) + amp * weight
    return FockVector(ctx, out, v.truncated)


def number_expectation(i: int, v: FockVector) -> float:
    """<v| a_dag_i a_i |v> / <v|v>; in [0, 1] for fermions."""
    norm_sq = sum(abs(a) ** 2 for a in v.terms.values())
    if norm_sq <= 1e-30:
        raise ZeroVectorError("number expectation of a zero vector is undefined")
    if not 0 <= i < v.context.modes:
        raise DimensionMismatchError(f"mode {i} outside 0..{v.context.modes - 1}")
    weighted = sum(abs(a) ** 2 * occ[i] for occ, a in v.terms.items())
    return weighted / norm_sq


# ---------------------------------------------------------------------------
# Algebra verification


@dataclass(frozen=True)
class AlgebraReport:
    """Max elementwise deviations of the defining operator relations."""

    statistics: Statistics
    modes: int
    n_max: int
    deviations: dict[str, float] = field(default_factory=dict)

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values())

    def passed(self, tol: float = 1e-12) -> bool:
        return self.max_deviation <= tol


def operator_matrices(ctx: FockContext) -> tuple[list[np.ndarray], list[tuple[int, ...]]]:
    """Dense matrices of every annihilation operator a_i over ctx.basis()."""
    basis = ctx.basis()
    dim = len(basis)
    if dim > MAX_MATRIX_DIM:
        raise SizeLimitError(f"basis dimension {dim} exceeds matrix cap {MAX_MATRIX_DIM}")
    index = {occ: j for j, occ in enumerate(basis)}
    mats = []
    for i in range(ctx.modes):
        mat = np.zeros((dim, dim), dtype=complex)
        for j, occ in enumerate(basis):
            result = annihilate(i, FockVector(ctx, {occ: 1.0}))
            for out_occ, amp in result.terms.items():
                mat[index[out_occ], j] = amp
        mats.append(mat)
    return mats, basis


def verify_algebra(statistics: Statistics, modes: int, n_max: int = 1) -> AlgebraReport:
    """Check the defining (anti)commutation relations on dense matrices.

    Fermions: {a_i, a_dag_j} = delta_ij, {a_i, a_j} = 0, a_dag_i^2 = 0 on
    the full 2^M space. Bosons and quons: a_i a_dag_j - q a_dag_j a_i =
    delta_ij (q = 1 bosonic) restricted to basis columns with every
    occupation below n_max, where truncation cannot leak.
    """
    ctx = FockContext(modes, statistics, n_max)
    ann, basis = operator_matrices(ctx)
    eye = np.eye(len(basis))
    deviations: dict[str, float] = {}
    if statistics.kind == "fermion":
        for i in range(modes):
            for j in range(modes):
                anti = ann[i] @ ann[j].conj().T + ann[j].conj().T @ ann[i]
                deviations[f"{{a_{i},adag_{j}}}-delta"] = float(
                    np.max(np.abs(anti - (eye if i == j else 0.0)))
                )
                anti2 = ann[i] @ ann[j] + ann[j] @ ann[i]
                deviations[f"{{a_{i},a_{j}}}"] = float(np.max(np.abs(anti2)))
            sq = ann[i].conj().T @ ann[i].conj().T
            deviations[f"adag_{i}^2"] = float(np.max(np.abs(sq)))
    else:
        q = 1.0 if statistics.kind == "boson" else statistics.q
        interior = np.array([all(n < ctx.n_max for n in occ) for occ in basis])
        for i in range(modes):
            for j in range(modes):
                comm = ann[i] @ ann[j].conj().T - q * ann[j].conj().T @ ann[i]
                dev = comm - (eye if i == j else 0.0)
                deviations[f"a_{i}adag_{j}-q*adag_{j}a_{i}-delta"] = float(
                    np.max(np.abs(dev[:, interior])) if interior.any() else 0.0
                )
    return AlgebraReport(statistics, modes, ctx.n_max, deviations)


# ---------------------------------------------------------------------------
# Parastatistics admissibility


def para_admissible(kind: str, order: int, occ: tuple[int, ...]) -> bool:
    """Occupation-pattern admissibility for order-n parastatistics.

    Parafermions of order n allow at most n particles per mode; order 1
    recovers ordinary fermions. For parabosons the source material caps
    antisymmetric arrangements at n particles without fixing a per-mode
    predicate; we read that as: at most n modes may be occupied by a
    mutually antisymmetric (all-distinct-mode) selection, i.e. the number
    of distinct occupied modes is unconstrained but any strictly
    antisymmetric sub-pattern uses at most n modes. Since every selection
    of k distinct occupied modes yields an antisymmetric arrangement of k
    particles, this caps the count of occupied modes at n.
    """
    if order < 1:
        raise DimensionMismatchError(f"parastatistics order must be >= 1, got {order}")
    if any(n < 0 for n in occ):
        raise DimensionMismatchError("occupations must be non-negative")
    if kind == "parafermion":
        return all(n <= order for n in occ)
    if kind == "paraboson":
        return sum(1 for n in occ if n > 0) <= order
    raise UnsupportedStatisticsError(f"unknown parastatistics kind {kind!r}")


# ---------------------------------------------------------------------------
# Bridge to first quantization


def _occupation_parts(occ: tuple[int, ...]) -> list[SingleParticleVector]:
    d = len(occ)
    parts = []
    for mode, count in enumerate(occ):
        parts.extend(SingleParticleVector.basis_state(d, mode) for _ in range(count))
    return parts


def occupation_to_first_quantization(
    occ: tuple[int, ...], statistics: Statistics
) -> NBodyVector:
    """Unit-normalized (anti)symmetrized product over modes in increasing order."""
    total = sum(occ)
    if total < 1:
        raise DimensionMismatchError("need at least one particle to build an N-body vector")
    parts = _occupation_parts(occ)
    if statistics.kind == "fermion":
        if any(n > 1 for n in occ):
            raise DimensionMismatchError(f"fermionic occupation {occ} has a doubly filled mode")
        v = antisymmetrize(tensor_product(parts))
    elif statistics.kind == "boson":
        v = symmetrize(tensor_product(parts))
    else:
        raise UnsupportedStatisticsError(
            f"first-quantization bridge needs fermion or boson statistics, got {statistics}"
        )
    return v.normalized()


def to_first_quantization(v: FockVector) -> NBodyVector:
    """Linear extension of the occupation-to-N-body map; fixed particle number."""
    stats = v.context.statistics
    if not v.terms:
        raise ZeroVectorError("cannot convert a zero Fock vector")
    totals = {sum(occ) for occ in v.terms}
    if len(totals) != 1:
        raise DimensionMismatchError(
            f"mixed particle numbers {sorted(totals)} have no single N-body space"
        )
    acc: NBodyVector | None = None
    for occ, amp in v.terms.items():
        basis_vec = occupation_to_first_quantization(occ, stats).scaled(amp)
        acc = basis_vec if acc is None else NBodyVector(
            acc.d, acc.n, acc.amplitudes + basis_vec.amplitudes
        )
    return acc


def from_first_quantization(
    v: NBodyVector, statistics: Statistics, tol: float = 1e-10
) -> FockVector:
    """Inverse bridge on the (anti)symmetric subspace.

    Projects v onto every normalized occupation basis state with N = v.n
    particles over M = v.d modes; rejects vectors carrying weight outside
    the symmetry class of the statistics.
    """
    modes, n = v.d, v.n
    n_max = 1 if statistics.kind == "fermion" else n
    ctx = FockContext(modes, statistics, n_max)
    terms: dict[tuple[int, ...], complex] = {}
    residual = np.array(v.amplitudes, dtype=complex)
    for occ in _occupations_with_total(modes, n, ctx.n_max):
        basis_vec = occupation_to_first_quantization(occ, statistics)
        coeff = basis_vec.inner(v)
        if abs(coeff) > PRUNE_THRESHOLD:
            terms[occ] = coeff
        residual -= coeff * basis_vec.amplitudes
    if float(np.linalg.norm(residual)) > tol * max(v.norm, 1e-30):
        raise DimensionMismatchError(
            f"vector has components outside the {statistics} symmetry class"
        )
    return FockVector(ctx, terms)


def _occupations_with_total(modes: int, total: int, n_max: int):
    if modes == 1:
        if total <= n_max:
            yield (total,)
        return
    for head in range(min(total, n_max) + 1):
        for rest in _occupations_with_total(modes - 1, total - head, n_max):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# JSON Fock state files


def statistics_to_json(statistics: Statistics):
    return {"quon": statistics.q} if statistics.kind == "quon" else statistics.kind


def statistics_from_json(data) -> Statistics:
    if isinstance(data, dict):
        return quon(float(data["quon"]))
    return Statistics(str(data))


def fock_to_json(v: FockVector) -> dict:
    return {
        "modes": v.context.modes,
        "statistics": statistics_to_json(v.context.statistics),
        "n_max": v.context.n_max,
        "terms": [
            {"occ": list(occ), "amp": [amp.real, amp.imag]}
            for occ, amp in sorted(v.terms.items())
        ],
    }


def fock_from_json(data: dict) -> FockVector:
    ctx = FockContext(
        int(data["modes"]),
        statistics_from_json(data["statistics"]),
        int(data.get("n_max", 1)),
    )
    terms = {
        tuple(t["occ"]): complex(t["amp"][0], t["amp"][1]) for t in data["terms"]
    }
    return FockVector(ctx, terms)


def load_fock(path: str) -> FockVector:
    with open(path) as fh:
        return fock_from_json(json.load(fh))
