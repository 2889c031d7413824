import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.exceptions import DimensionMismatchError, IllPosedLFTError
from app.linalg.dense import eig_dense, sigma_max, solve_complex, top_singular_triple


def _random_complex(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


class TestEigDense:
    """
    Eigendecomposition:
    - ordering and known spectra
    - residuals of right and left eigenvectors
    - biorthogonality of left and right eigenvectors
    """

    def test_rotation_has_imaginary_pair(self):
        triples = eig_dense(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        values = [t.value for t in triples]
        # equal real parts: larger imaginary part first
        assert values[0] == pytest.approx(1j, abs=1e-12)
        assert values[1] == pytest.approx(-1j, abs=1e-12)

    def test_diagonal_has_canonical_eigenvectors(self):
        triples = eig_dense(np.diag([-2.0, -1.0]))
        assert [t.value.real for t in triples] == pytest.approx([-1.0, -2.0])
        np.testing.assert_allclose(np.abs(triples[0].right), [0.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(np.abs(triples[1].right), [1.0, 0.0], atol=1e-12)

    def test_companion_matrix_roots(self):
        # (lambda + 1)^2 (lambda - 0.5) = lambda^3 + 1.5 lambda^2 - 0.5
        companion = np.array([[-1.5, 0.0, 0.5], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        values = [t.value for t in eig_dense(companion)]
        assert values[0] == pytest.approx(0.5, abs=1e-8)
        # a double root is only resolved to about sqrt(eps)
        assert values[1] == pytest.approx(-1.0, abs=1e-7)
        assert values[2] == pytest.approx(-1.0, abs=1e-7)

    @pytest.mark.parametrize("seed", range(5))
    def test_residuals_and_ordering(self, seed):
        rng = np.random.Generator(np.random.Philox(seed))
        A = rng.standard_normal((8, 8))
        scale = np.linalg.norm(A, 2)
        triples = eig_dense(A)
        reals = [t.value.real for t in triples]
        assert reals == sorted(reals, reverse=True)
        for t in triples:
            assert np.linalg.norm(t.right) == pytest.approx(1.0)
            assert np.linalg.norm(t.left) == pytest.approx(1.0)
            assert np.linalg.norm(A @ t.right - t.value * t.right) <= 1e-10 * scale
            assert np.linalg.norm(t.left.conj() @ A - t.value * t.left.conj()) <= 1e-10 * scale

    @pytest.mark.parametrize("seed", range(5))
    def test_left_and_right_vectors_are_biorthogonal(self, seed):
        rng = np.random.Generator(np.random.Philox(seed))
        # well-separated real spectrum -1, -2, ..., -6 under a random similarity
        T = rng.standard_normal((6, 6)) + 3.0 * np.eye(6)
        A = T @ np.diag(-np.arange(1.0, 7.0)) @ np.linalg.inv(T)
        triples = eig_dense(A)
        for i, ti in enumerate(triples):
            for j, tj in enumerate(triples):
                pairing = abs(ti.left.conj() @ tj.right)
                if i == j:
                    assert pairing > 1e-6
                else:
                    assert pairing <= 1e-8

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatchError):
            eig_dense(np.ones((2, 3)))
        with pytest.raises(DimensionMismatchError):
            eig_dense(np.array([[np.nan]]))


class TestSolveComplex:
    """Guarded linear solves"""

    def test_identity_returns_right_hand_side(self):
        B = np.array([[1.0 + 2.0j], [3.0 - 1.0j]])
        np.testing.assert_allclose(solve_complex(np.eye(2), B), B)

    def test_scalar(self):
        assert solve_complex(np.array([[0.5]]), np.array([1.0])) == pytest.approx([2.0])

    def test_known_inverse(self):
        rng = np.random.Generator(np.random.Philox(3))
        A = np.array([[2.0, 1.0], [1.0, 1.0]])
        inverse = np.array([[1.0, -1.0], [-1.0, 2.0]])
        B = _random_complex(rng, 2, 3)
        np.testing.assert_allclose(solve_complex(A, B), inverse @ B, atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_residual_bound(self, seed):
        rng = np.random.Generator(np.random.Philox(seed))
        A = _random_complex(rng, 6, 6)
        B = _random_complex(rng, 6, 2)
        X = solve_complex(A, B)
        assert np.linalg.norm(A @ X - B) <= 1e-10 * np.linalg.norm(A) * np.linalg.norm(X)

    def test_singular_matrix_is_ill_posed(self):
        with pytest.raises(IllPosedLFTError):
            solve_complex(np.array([[1.0, 2.0], [2.0, 4.0]]), np.ones(2))

    def test_row_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            solve_complex(np.eye(2), np.ones(3))


class TestSigmaMax:
    """Largest singular value and its invariants"""

    @pytest.mark.parametrize("G, expected", [
        (np.eye(2), 1.0),
        (np.diag([3.0, 1.0]), 3.0),
        (np.array([[0.0, 2.0], [0.0, 0.0]]), 2.0),
    ])
    def test_examples(self, G, expected):
        assert sigma_max(G) == pytest.approx(expected, rel=1e-12)

    def test_empty_matrix(self):
        assert sigma_max(np.zeros((0, 3))) == 0.0

    @pytest.mark.parametrize("seed", range(5))
    def test_invariants(self, seed):
        rng = np.random.Generator(np.random.Philox(seed))
        G = _random_complex(rng, 4, 3)
        value = sigma_max(G)
        assert value == pytest.approx(np.linalg.norm(G, 2), rel=1e-10)
        assert sigma_max(G.conj().T) == pytest.approx(value, rel=1e-10)
        c = -1.5 + 2.0j
        assert sigma_max(c * G) == pytest.approx(abs(c) * value, rel=1e-10)
        Q, _ = np.linalg.qr(_random_complex(rng, 4, 4))
        assert sigma_max(Q @ G) == pytest.approx(value, rel=1e-10)

    @pytest.mark.parametrize("seed", range(3))
    def test_top_singular_triple(self, seed):
        rng = np.random.Generator(np.random.Philox(seed))
        G = _random_complex(rng, 3, 5)
        sigma, u, v = top_singular_triple(G)
        assert sigma == pytest.approx(sigma_max(G), rel=1e-12)
        np.testing.assert_allclose(G @ v, sigma * u, atol=1e-10)
        assert abs(u.conj() @ G @ v) == pytest.approx(sigma, rel=1e-10)
