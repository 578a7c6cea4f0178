import itertools
import json
import math

import numpy as np
import pytest

from qident.errors import (
    DimensionMismatchError,
    ExclusionError,
    SizeLimitError,
    ZeroVectorError,
)
from qident.first_quantization import (
    NBodyVector,
    SingleParticleVector,
    SymmetryClass,
    antisymmetrize,
    basis_amplitude,
    classify,
    nbody_from_json,
    nbody_to_json,
    parts_from_json,
    parts_to_json,
    projector_matrix,
    slater,
    subspace_dimensions,
    symmetrize,
    tensor_product,
)
from qident.permanent import permanent


def rand_parts(rng, d, n):
    return [
        SingleParticleVector(rng.standard_normal(d) + 1j * rng.standard_normal(d))
        for _ in range(n)
    ]


def rand_vector(rng, d, n):
    shape = (d,) * n
    return NBodyVector(d, n, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def naive_permanent(matrix):
    n = matrix.shape[0]
    return sum(
        math.prod(matrix[i, p[i]] for i in range(n))
        for p in itertools.permutations(range(n))
    )


UP = SingleParticleVector(np.array([1.0, 0.0]))
DOWN = SingleParticleVector(np.array([0.0, 1.0]))


class TestTensorProduct:
    def test_single_particle_passthrough(self):
        v = tensor_product([UP])
        assert v.n == 1
        np.testing.assert_allclose(v.flat(), UP.amplitudes)

    def test_basis_product(self):
        v = tensor_product([UP, DOWN])
        np.testing.assert_allclose(v.flat(), [0, 1, 0, 0])

    def test_norm_multiplicative(self):
        rng = np.random.default_rng(0)
        parts = rand_parts(rng, 3, 3)
        v = tensor_product(parts)
        assert v.norm == pytest.approx(math.prod(p.norm for p in parts))

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            tensor_product([UP, SingleParticleVector(np.ones(3))])

    def test_size_cap(self):
        big = SingleParticleVector(np.ones(100))
        with pytest.raises(SizeLimitError):
            tensor_product([big] * 4)


class TestProjectors:
    def test_symmetrize_fixed_point(self):
        rng = np.random.default_rng(1)
        v = symmetrize(rand_vector(rng, 2, 3))
        w = symmetrize(v)
        np.testing.assert_allclose(w.amplitudes, v.amplitudes, atol=1e-12)

    def test_symmetrize_two_particle_example(self):
        v = symmetrize(tensor_product([UP, DOWN]))
        np.testing.assert_allclose(v.flat(), [0, 0.5, 0.5, 0])

    def test_symmetrizer_idempotent(self):
        rng = np.random.default_rng(2)
        v = rand_vector(rng, 3, 3)
        sv = symmetrize(v)
        np.testing.assert_allclose(symmetrize(sv).amplitudes, sv.amplitudes, atol=1e-12)

    def test_antisymmetrize_singlet(self):
        v = antisymmetrize(tensor_product([UP, DOWN]))
        np.testing.assert_allclose(v.flat(), [0, 0.5, -0.5, 0])
        np.testing.assert_allclose(
            v.normalized().flat(), [0, 1 / math.sqrt(2), -1 / math.sqrt(2), 0]
        )

    def test_antisymmetrize_repeated_state(self):
        v = antisymmetrize(tensor_product([UP, UP]))
        assert v.norm == 0.0

    def test_projector_orthogonality(self):
        rng = np.random.default_rng(3)
        v = rand_vector(rng, 3, 3)
        np.testing.assert_allclose(
            symmetrize(antisymmetrize(v)).amplitudes, 0.0, atol=1e-12
        )
        np.testing.assert_allclose(
            antisymmetrize(symmetrize(v)).amplitudes, 0.0, atol=1e-12
        )

    def test_hermiticity(self):
        rng = np.random.default_rng(4)
        for d, n in [(2, 2), (3, 2), (2, 3), (4, 3)]:
            u, v = rand_vector(rng, d, n), rand_vector(rng, d, n)
            assert u.inner(symmetrize(v)) == pytest.approx(symmetrize(u).inner(v), abs=1e-12)
            assert u.inner(antisymmetrize(v)) == pytest.approx(
                antisymmetrize(u).inner(v), abs=1e-12
            )

    def test_both_permutation_conventions_give_same_projectors(self):
        # transposing by the mapping instead of its inverse flips the
        # convention; the permutation sums are convention-blind
        rng = np.random.default_rng(5)
        v = rand_vector(rng, 2, 3)
        from qident.permutations import enumerate_permutations

        for signed in (False, True):
            ours = (antisymmetrize if signed else symmetrize)(v).amplitudes
            acc = np.zeros_like(v.amplitudes)
            for p in enumerate_permutations(3):
                term = v.amplitudes.transpose(p.mapping)
                acc += p.parity * term if signed else term
            np.testing.assert_allclose(acc / 6.0, ours, atol=1e-13)


class TestSlater:
    def test_repeated_parts_vanish(self):
        assert slater([UP, UP]).norm <= 1e-12
        with pytest.raises(ExclusionError):
            slater([UP, UP], normalized=True)

    def test_singlet(self):
        v = slater([UP, DOWN], normalized=True)
        np.testing.assert_allclose(
            v.flat(), [0, 1 / math.sqrt(2), -1 / math.sqrt(2), 0], atol=1e-15
        )

    def test_three_orthonormal_parts_norm(self):
        parts = [SingleParticleVector(row) for row in np.eye(3)]
        assert slater(parts).norm == pytest.approx(1 / math.sqrt(6), abs=1e-13)

    def test_matches_antisymmetrized_product(self):
        rng = np.random.default_rng(6)
        parts = rand_parts(rng, 3, 3)
        direct = slater(parts)
        via_projector = antisymmetrize(tensor_product(parts))
        np.testing.assert_allclose(direct.amplitudes, via_projector.amplitudes, atol=1e-13)

    def test_scalar_multiple_repetition_vanishes(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 4):
            parts = rand_parts(rng, 4, n)
            parts[-1] = SingleParticleVector(parts[0].amplitudes * (0.3 - 1.2j))
            assert slater(parts).norm <= 1e-12


class TestBasisAmplitude:
    def test_two_particle_antisymmetric(self):
        assert basis_amplitude([UP, DOWN], (0, 1), SymmetryClass.ANTISYMMETRIC) == pytest.approx(
            0.5
        )

    def test_all_ones_permanent(self):
        assert permanent(np.ones((2, 2))) == pytest.approx(2.0)

    def test_agrees_with_expanded_vector(self):
        rng = np.random.default_rng(8)
        for d, n in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4), (3, 4)]:
            parts = rand_parts(rng, d, n)
            sym = symmetrize(tensor_product(parts))
            anti = antisymmetrize(tensor_product(parts))
            for idx in itertools.product(range(d), repeat=n):
                assert basis_amplitude(parts, idx, SymmetryClass.SYMMETRIC) == pytest.approx(
                    sym.amplitude(idx), abs=1e-10
                )
                assert basis_amplitude(
                    parts, idx, SymmetryClass.ANTISYMMETRIC
                ) == pytest.approx(anti.amplitude(idx), abs=1e-10)

    def test_permanent_matches_naive_sum(self):
        rng = np.random.default_rng(9)
        for n in range(1, 7):
            m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            naive = naive_permanent(m)
            assert permanent(m) == pytest.approx(naive, rel=1e-10)


class TestSubspaceDimensions:
    @pytest.mark.parametrize(
        "d,n,expected",
        [(2, 2, (3, 1, 0)), (2, 3, (4, 0, 4)), (3, 2, (6, 3, 0)), (3, 3, (10, 1, 16))],
    )
    def test_known_dimensions(self, d, n, expected):
        assert subspace_dimensions(d, n) == expected

    @pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4)])
    def test_binomial_cross_check(self, d, n):
        dim_s, dim_a, dim_m = subspace_dimensions(d, n)
        assert dim_s == math.comb(d + n - 1, n)
        assert dim_a == math.comb(d, n)
        assert dim_m == d**n - dim_s - dim_a
        assert min(dim_s, dim_a, dim_m) >= 0

    def test_projector_matrix_is_projection(self):
        for signed in (False, True):
            p = projector_matrix(2, 3, signed)
            np.testing.assert_allclose(p @ p, p, atol=1e-12)
            np.testing.assert_allclose(p, p.T, atol=1e-13)

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            subspace_dimensions(10, 5)


class TestClassify:
    def test_symmetrized_output(self):
        rng = np.random.default_rng(10)
        assert classify(symmetrize(rand_vector(rng, 2, 3))) is SymmetryClass.SYMMETRIC

    def test_singlet_antisymmetric(self):
        assert classify(slater([UP, DOWN], normalized=True)) is SymmetryClass.ANTISYMMETRIC

    def test_product_state_mixed(self):
        assert classify(tensor_product([UP, DOWN])) is SymmetryClass.MIXED

    def test_stable_under_phase_and_scale(self):
        rng = np.random.default_rng(11)
        v = symmetrize(rand_vector(rng, 3, 2))
        scaled = v.scaled(4.2 * np.exp(1j * 0.7))
        assert classify(scaled) is SymmetryClass.SYMMETRIC

    def test_zero_vector_rejected(self):
        with pytest.raises(ZeroVectorError):
            classify(NBodyVector(2, 2, np.zeros(4)))


class TestJsonRoundTrip:
    def test_parts(self):
        rng = np.random.default_rng(12)
        parts = rand_parts(rng, 3, 2)
        data = json.loads(json.dumps(parts_to_json(parts)))
        back = parts_from_json(data)
        for a, b in zip(parts, back):
            np.testing.assert_allclose(a.amplitudes, b.amplitudes)

    def test_nbody(self):
        rng = np.random.default_rng(13)
        v = rand_vector(rng, 2, 3)
        back = nbody_from_json(json.loads(json.dumps(nbody_to_json(v))))
        np.testing.assert_allclose(back.amplitudes, v.amplitudes)
        assert (back.d, back.n) == (2, 3)
