"""Tensor-product N-body states and exchange-symmetry projectors.

Amplitudes of an N-body vector live on a dense complex array of shape
(d, ..., d) with one axis per particle; the flat layout is row-major with
the leftmost particle label slowest. The symmetrizer and antisymmetrizer
carry the 1/N! projector prefactor, so idempotence is exact and the
Slater construction inherits the 1/N! determinant prefactor.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    ExclusionError,
    SizeLimitError,
    ZeroVectorError,
)
from .permanent import permanent
from .permutations import Permutation, enumerate_permutations

#: Largest dense amplitude array we will materialize (d^N entries).
MAX_AMPLITUDES = 10**7
#: Largest d^N for which dense projector matrices may be built.
MAX_PROJECTOR_DIM = 4096

DEFAULT_CLASSIFY_TOL = 1e-10


@dataclass(frozen=True)
class SingleParticleVector:
    """A ket in a d-dimensional single-particle space."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise DimensionMismatchError("single-particle amplitudes must be a nonempty 1-d array")
        if not np.all(np.isfinite(amps.view(float))):
            raise DimensionMismatchError("single-particle amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def basis_state(cls, dim: int, index: int) -> "SingleParticleVector":
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps)


@dataclass(frozen=True)
class NBodyVector:
    """Dense N-body amplitude array over d^N basis multi-indices."""

    d: int
    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        expected = self.d**self.n
        if amps.size != expected:
            raise DimensionMismatchError(
                f"expected {self.d}^{self.n} = {expected} amplitudes, got {amps.size}"
            )
        amps = amps.reshape((self.d,) * self.n)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def flat(self) -> np.ndarray:
        """Row-major flat amplitude view, leftmost particle slowest."""
        return self.amplitudes.reshape(-1)

    def amplitude(self, idx: tuple[int, ...]) -> complex:
        return complex(self.amplitudes[idx])

    def permuted(self, p: Permutation) -> "NBodyVector":
        """Apply the label permutation: result[i] = self[i o p]."""
        if p.n != self.n:
            raise DimensionMismatchError(f"permutation size {p.n} != particle count {self.n}")
        # result[idx] = self[idx o p]  <=>  transpose by the inverse mapping
        return NBodyVector(self.d, self.n, self.amplitudes.transpose(p.inverse().mapping))

    def scaled(self, factor: complex) -> "NBodyVector":
        return NBodyVector(self.d, self.n, self.amplitudes * factor)

    def normalized(self) -> "NBodyVector":
        nrm = self.norm
        if nrm <= 1e-15:
            raise ZeroVectorError("cannot normalize a zero vector")
        return self.scaled(1.0 / nrm)

    def inner(self, other: "NBodyVector") -> complex:
        if (self.d, self.n) != (other.d, other.n):
            raise DimensionMismatchError("inner product needs matching (d, n)")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


class SymmetryClass(enum.Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    MIXED = "mixed"


def _check_size(d: int, n: int) -> None:
    if d**n > MAX_AMPLITUDES:
        raise SizeLimitError(f"{d}^{n} = {d**n} amplitudes exceed cap {MAX_AMPLITUDES}")


def tensor_product(parts: list[SingleParticleVector]) -> NBodyVector:
    """Product state with amplitude prod_k parts[k][i_k] at (i_1, ..., i_N)."""
    if not parts:
        raise DimensionMismatchError("need at least one particle")
    d = parts[0].dim
    for k, part in enumerate(parts):
        if part.dim != d:
            raise DimensionMismatchError(
                f"part {k} has dim {part.dim}, expected {d}"
            )
    n = len(parts)
    _check_size(d, n)
    amps = parts[0].amplitudes
    for part in parts[1:]:
        amps = np.multiply.outer(amps, part.amplitudes)
    return NBodyVector(d, n, amps)


def _projected(v: NBodyVector, signed: bool) -> NBodyVector:
    perms = enumerate_permutations(v.n)
    acc = np.zeros_like(v.amplitudes)
    for p in perms:
        term = v.amplitudes.transpose(p.inverse().mapping)
        acc = acc + (p.parity * term if signed else term)
    return NBodyVector(v.d, v.n, acc / math.factorial(v.n))


def symmetrize(v: NBodyVector) -> NBodyVector:
    """Projector onto the fully symmetric subspace: (1/N!) sum_P P."""
    return _projected(v, signed=False)


def antisymmetrize(v: NBodyVector) -> NBodyVector:
    """Projector onto the fully antisymmetric subspace: (1/N!) sum_P eps_P P."""
    return _projected(v, signed=True)


def slater(parts: list[SingleParticleVector], normalized: bool = False) -> NBodyVector:
    """Alternating-sign determinant state with the 1/N! projector prefactor.

    Identical to antisymmetrize(tensor_product(parts)). With
    ``normalized=True`` the result is rescaled to unit norm; a zero result
    (two coinciding single-particle states) raises ExclusionError.
    """
    v = antisymmetrize(tensor_product(parts))
    if not normalized:
        return v
    if v.norm <= 1e-12:
        raise ExclusionError(
            "antisymmetrized state vanished: two particles share a single-particle state"
        )
    return v.normalized()


def basis_amplitude(
    parts: list[SingleParticleVector],
    idx: tuple[int, ...],
    symmetry: SymmetryClass,
) -> complex:
    """Single projected amplitude without expanding the d^N array.

    Builds the N x N overlap array M[j, k] = parts[k][idx[j]] and returns
    det(M)/N! (antisymmetric) or perm(M)/N! (symmetric).
    """
    n = len(parts)
    if len(idx) != n:
        raise DimensionMismatchError(f"multi-index length {len(idx)} != particle count {n}")
    d = parts[0].dim
    for part in parts:
        if part.dim != d:
            raise DimensionMismatchError("parts must share a single-particle dimension")
    m = np.empty((n, n), dtype=complex)
    for j, i in enumerate(idx):
        if not 0 <= i < d:
            raise DimensionMismatchError(f"multi-index entry {i} outside 0..{d - 1}")
        for k in range(n):
            m[j, k] = parts[k].amplitudes[i]
    if symmetry is SymmetryClass.ANTISYMMETRIC:
        value = np.linalg.det(m)
    elif symmetry is SymmetryClass.SYMMETRIC:
        value = permanent(m)
    else:
        raise DimensionMismatchError("basis_amplitude needs SYMMETRIC or ANTISYMMETRIC")
    return complex(value) / math.factorial(n)


def projector_matrix(d: int, n: int, signed: bool) -> np.ndarray:
    """Dense d^N x d^N matrix of the (anti)symmetrizer."""
    dim = d**n
    if dim > MAX_PROJECTOR_DIM:
        raise SizeLimitError(f"projector dimension {dim} exceeds cap {MAX_PROJECTOR_DIM}")
    # flat index of each multi-index after permutation, built vectorized
    digits = np.indices((d,) * n).reshape(n, dim)
    weights = d ** np.arange(n - 1, -1, -1)
    mat = np.zeros((dim, dim), dtype=float)
    cols = np.arange(dim)
    for p in enumerate_permutations(n):
        inv = p.inverse().mapping
        rows = weights @ digits[list(inv), :]
        mat[rows, cols] += p.parity if signed else 1.0
    return mat / math.factorial(n)


def subspace_dimensions(d: int, n: int) -> tuple[int, int, int]:
    """(dim_S, dim_A, dim_mixed) from projector ranks.

    Ranks are eigenvalue counts >= 1/2 of the Hermitian projector
    matrices; the mixed dimension is the remainder of d^n.
    """
    dim_s = int(np.sum(np.linalg.eigvalsh(projector_matrix(d, n, signed=False)) >= 0.5))
    dim_a = int(np.sum(np.linalg.eigvalsh(projector_matrix(d, n, signed=True)) >= 0.5))
    return dim_s, dim_a, d**n - dim_s - dim_a


def classify(v: NBodyVector, tol: float = DEFAULT_CLASSIFY_TOL) -> SymmetryClass:
    """Decide whether v is symmetric, antisymmetric, or of mixed symmetry.

    Relative tolerance: v is symmetric when max_P |Pv - v| <= tol * |v|,
    antisymmetric when max_P |Pv - eps_P v| <= tol * |v|.
    """
    nrm = v.norm
    if nrm <= tol:
        raise ZeroVectorError("symmetry class of the zero vector is undefined")
    max_sym = 0.0
    max_anti = 0.0
    for p in enumerate_permutations(v.n):
        pv = v.permuted(p).amplitudes
        max_sym = max(max_sym, float(np.linalg.norm(pv - v.amplitudes)))
        max_anti = max(max_anti, float(np.linalg.norm(pv - p.parity * v.amplitudes)))
    if max_sym <= tol * nrm:
        return SymmetryClass.SYMMETRIC
    if max_anti <= tol * nrm:
        return SymmetryClass.ANTISYMMETRIC
    return SymmetryClass.MIXED


def projector_deviations(
    max_d: int = 4,
    max_n: int = 4,
    vectors_per_case: int = 100,
    seed: int = 0,
) -> dict[str, float]:
    """Max deviations of the projector identities over random vectors.

    For every (d, n) with 2 <= d <= max_d, 2 <= n <= max_n checks
    idempotence of both projectors, their mutual annihilation, and
    Hermiticity on random complex vector pairs.
    """
    rng = np.random.default_rng(seed)
    dev = {
        "S^2-S": 0.0,
        "A^2-A": 0.0,
        "S.A": 0.0,
        "A.S": 0.0,
        "hermiticity-S": 0.0,
        "hermiticity-A": 0.0,
    }
    for d in range(2, max_d + 1):
        for n in range(2, max_n + 1):
            shape = (d,) * n
            for _ in range(vectors_per_case):
                u = NBodyVector(d, n, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
                v = NBodyVector(d, n, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
                sv, av = symmetrize(v), antisymmetrize(v)
                su, au = symmetrize(u), antisymmetrize(u)
                dev["S^2-S"] = max(
                    dev["S^2-S"], float(np.max(np.abs(symmetrize(sv).amplitudes - sv.amplitudes)))
                )
                dev["A^2-A"] = max(
                    dev["A^2-A"], float(np.max(np.abs(antisymmetrize(av).amplitudes - av.amplitudes)))
                )
                dev["S.A"] = max(dev["S.A"], float(np.max(np.abs(symmetrize(av).amplitudes))))
                dev["A.S"] = max(dev["A.S"], float(np.max(np.abs(antisymmetrize(sv).amplitudes))))
                dev["hermiticity-S"] = max(
                    dev["hermiticity-S"], abs(u.inner(sv) - su.inner(v))
                )
                dev["hermiticity-A"] = max(
                    dev["hermiticity-A"], abs(u.inner(av) - au.inner(v))
                )
    return dev


# ---------------------------------------------------------------------------
# JSON state files


def _complex_pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def parts_to_json(parts: list[SingleParticleVector]) -> dict:
    return {
        "d": parts[0].dim,
        "parts": [_complex_pairs(p.amplitudes) for p in parts],
    }


def parts_from_json(data: dict) -> list[SingleParticleVector]:
    d = int(data["d"])
    parts = []
    for row in data["parts"]:
        if len(row) != d:
            raise DimensionMismatchError(f"part has {len(row)} entries, expected d = {d}")
        parts.append(SingleParticleVector(np.array([complex(re, im) for re, im in row])))
    return parts


def nbody_to_json(v: NBodyVector) -> dict:
    return {"d": v.d, "n": v.n, "amplitudes": _complex_pairs(v.flat())}


def nbody_from_json(data: dict) -> NBodyVector:
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    return NBodyVector(int(data["d"]), int(data["n"]), amps)


def load_state(path: str) -> list[SingleParticleVector] | NBodyVector:
    """Load either a product-spec or a raw N-body JSON state file."""
    with open(path) as fh:
        data = json.load(fh)
    if "parts" in data:
        return parts_from_json(data)
    return nbody_from_json(data)
