"""
Spectral abscissa of A(delta) and its gradient in delta.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from app.control.plant import LftPlant, closed_loop_A, dA_ddelta
from app.linalg.dense import EigenTriple, eig_dense

logger = logging.getLogger("control.spectral")

ACTIVE_EIG_RTOL = 1e-8
# |u^H v| below this marks a (numerically) non-simple eigenvalue
SIMPLICITY_TOL = 1e-8


def spectral_abscissa(A: np.ndarray) -> Tuple[float, List[EigenTriple]]:
    """
    alpha(A) = max Re(lambda) and the active eigen-triples.

    An eigenvalue is active when Re(lambda) >= alpha - 1e-8 (1 + |alpha|).

    Returns:
        Tuple[float, List[EigenTriple]]: (alpha, active triples in eig_dense order)
    """
    triples = eig_dense(A)
    alpha = triples[0].value.real
    threshold = alpha - ACTIVE_EIG_RTOL * (1.0 + abs(alpha))
    return alpha, [t for t in triples if t.value.real >= threshold]


def _eigen_gradient(plant: LftPlant, delta: Sequence[float], triple: EigenTriple) -> Tuple[np.ndarray, bool]:
    u, v = triple.left, triple.right
    denom = u.conj() @ v
    degenerate = abs(denom) < SIMPLICITY_TOL
    if degenerate:
        denom = SIMPLICITY_TOL if denom == 0 else denom
    grad = np.array([(u.conj() @ dA_ddelta(plant, delta, i) @ v / denom).real for i in range(plant.m)])
    return grad, degenerate


def _distinct_members(active: List[EigenTriple]) -> List[EigenTriple]:
    """One member per conjugate pair (the one with Im >= 0)."""
    return [t for t in active if t.value.imag >= 0.0] or active[:1]


def alpha_gradient(plant: LftPlant, delta: Sequence[float]) -> Tuple[np.ndarray, bool]:
    """
    Gradient of alpha(A(delta)) through the leading eigenvalue.

    d alpha / d delta_i = Re(u^H dA_i v / (u^H v)).

    Returns:
        Tuple[np.ndarray, bool]: (gradient, degenerate) where degenerate flags a
        leading eigenvalue that is not simple (coalescing eigenvalues or |u^H v| ~ 0)
    """
    _, active = spectral_abscissa(closed_loop_A(plant, delta))
    members = _distinct_members(active)
    grad, degenerate = _eigen_gradient(plant, delta, members[0])
    values = [t.value for t in members]
    for a_idx in range(len(values)):
        for b_idx in range(a_idx + 1, len(values)):
            if abs(values[a_idx] - values[b_idx]) <= ACTIVE_EIG_RTOL * (1.0 + abs(values[a_idx])):
                degenerate = True
    if degenerate:
        logger.warning(f"Leading eigenvalue of A(delta) is not simple at delta={np.asarray(delta).tolist()}")
    return grad, degenerate


def alpha_active_gradients(plant: LftPlant, delta: Sequence[float]) -> List[np.ndarray]:
    """Gradients of all active eigenvalues, one per conjugate pair."""
    _, active = spectral_abscissa(closed_loop_A(plant, delta))
    return [_eigen_gradient(plant, delta, t)[0] for t in _distinct_members(active)]
