"""Permutations of particle labels with cached parity.

A permutation ``p`` acts on an N-body basis multi-index by relocating
tensor factors: the image index satisfies ``result[p(k)] = idx[k]``.
Equivalently, an amplitude array ``v`` transforms as
``(p . v)[i_1, ..., i_N] = v[i_{p(1)}, ..., i_{p(N)}]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import DimensionMismatchError, SizeLimitError

#: Largest particle count we are willing to enumerate (10! = 3,628,800).
MAX_PARTICLES = 10


def _inversion_parity(mapping: tuple[int, ...]) -> int:
    inversions = 0
    for i in range(len(mapping)):
        for j in range(i + 1, len(mapping)):
            if mapping[i] > mapping[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0, ..., n-1}`` with its sign.

    ``mapping[k]`` is the image of label ``k``; ``parity`` is ``(-1)`` to
    the number of inversions of the mapping.
    """

    mapping: tuple[int, ...]
    parity: int = field(init=False)

    def __post_init__(self) -> None:
        mapping = tuple(int(x) for x in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise DimensionMismatchError(
                f"mapping {mapping!r} is not a bijection on 0..{len(mapping) - 1}"
            )
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "parity", _inversion_parity(mapping))

    @property
    def n(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, label: int) -> int:
        return self.mapping[label]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, image in enumerate(self.mapping):
            inv[image] = k
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self o other`` (apply ``other`` first)."""
        if self.n != other.n:
            raise DimensionMismatchError(
                f"cannot compose permutations of sizes {self.n} and {other.n}"
            )
        return Permutation(tuple(self.mapping[other.mapping[k]] for k in range(self.n)))

    def apply(self, idx: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a basis multi-index under this permutation.

        Satisfies ``apply(identity, idx) == idx`` and
        ``compose(p, q).apply(idx) == p.apply(q.apply(idx))``.
        """
        if len(idx) != self.n:
            raise DimensionMismatchError(
                f"multi-index length {len(idx)} != particle count {self.n}"
            )
        out = [0] * self.n
        for k in range(self.n):
            out[self.mapping[k]] = idx[k]
        return tuple(out)


def enumerate_permutations(n: int) -> list[Permutation]:
    """All n! permutations of n labels, lexicographic by mapping.

    The first element is always the identity. Raises SizeLimitError above
    the hard cap of 10 labels.
    """
    if n < 1:
        raise DimensionMismatchError(f"particle count must be >= 1, got {n}")
    if n > MAX_PARTICLES:
        raise SizeLimitError(
            f"enumerating {n}! = {math.factorial(n)} permutations exceeds the "
            f"cap of {MAX_PARTICLES}! = {math.factorial(MAX_PARTICLES)}"
        )
    return [Permutation(m) for m in itertools.permutations(range(n))]
