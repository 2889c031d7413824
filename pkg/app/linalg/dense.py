"""
Nonsymmetric eigendecomposition, guarded complex solves and largest singular values.

Thin contracts over LAPACK (via scipy.linalg): deterministic eigenvalue ordering,
left eigenvectors normalized against right ones, and ill-posedness detection.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
import scipy.linalg

from app.core.exceptions import DimensionMismatchError, EigenDecompositionError, IllPosedLFTError

logger = logging.getLogger("linalg.dense")

EIG_RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class EigenTriple:
    """Eigenvalue with unit right eigenvector v and left eigenvector u (u^H A = lambda u^H)."""

    value: complex
    right: np.ndarray
    left: np.ndarray


def _square(A: np.ndarray, name: str) -> np.ndarray:
    A = np.atleast_2d(np.asarray(A))
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise DimensionMismatchError(f"{name} must be a nonempty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DimensionMismatchError(f"{name} has non-finite entries")
    return A


def eig_dense(A: np.ndarray) -> List[EigenTriple]:
    """
    Eigenvalues with right and left eigenvectors of a dense real matrix.

    Args:
        A: Square real matrix

    Returns:
        List[EigenTriple]: Sorted by descending real part, ties by descending imaginary part

    Raises:
        EigenDecompositionError: If LAPACK fails to converge
    """
    A = _square(np.asarray(A, dtype=float), "A")
    try:
        w, vl, vr = scipy.linalg.eig(A, left=True, right=True)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise EigenDecompositionError(f"eigendecomposition failed: {str(e)}") from e
    if not np.all(np.isfinite(w)):
        raise EigenDecompositionError("eigendecomposition produced non-finite eigenvalues")

    scale = max(float(np.linalg.norm(A, 2)), 1.0)
    order = sorted(range(w.shape[0]), key=lambda i: (-w[i].real, -w[i].imag))
    triples = []
    for i in order:
        v = vr[:, i] / np.linalg.norm(vr[:, i])
        u = vl[:, i] / np.linalg.norm(vl[:, i])
        residual = max(np.linalg.norm(A @ v - w[i] * v), np.linalg.norm(u.conj() @ A - w[i] * u.conj()))
        if residual > EIG_RESIDUAL_RTOL * scale:
            logger.warning(f"Eigenpair residual {residual:.3e} for lambda={w[i]:.6g}")
        triples.append(EigenTriple(value=complex(w[i]), right=v, left=u))
    return triples


def solve_complex(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """
    Solve A X = B with partial pivoting.

    Args:
        A: Square real or complex matrix
        B: Right-hand side (vector or matrix)

    Returns:
        np.ndarray: Solution X

    Raises:
        IllPosedLFTError: If A is singular to working precision
    """
    A = _square(A, "A")
    B = np.asarray(B)
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatchError(f"right-hand side has {B.shape[0]} rows, matrix has {A.shape[0]}")
    if np.linalg.cond(A) * np.finfo(float).eps >= 1.0:
        raise IllPosedLFTError("matrix is singular to working precision (LFT not well-posed)")
    try:
        return scipy.linalg.solve(A, B)
    except np.linalg.LinAlgError as e:
        raise IllPosedLFTError(f"singular matrix: {str(e)}") from e


def sigma_max(G: np.ndarray) -> float:
    """Largest singular value (0 for empty matrices)."""
    G = np.atleast_2d(np.asarray(G))
    if G.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(G)[0])


def top_singular_triple(G: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Largest singular value with its left and right singular vectors, G v = sigma u.

    Returns:
        Tuple[float, np.ndarray, np.ndarray]: (sigma, u, v)
    """
    U, s, Vh = scipy.linalg.svd(np.atleast_2d(np.asarray(G)))
    return float(s[0]), U[:, 0], Vh[0].conj()
