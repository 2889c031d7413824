"""
H-infinity norm of a stable state-space system and its gradient along an LFT.

The norm is computed by the Hamiltonian level-set iteration: starting from a lower bound
gamma taken on a logarithmic frequency grid, the imaginary eigenvalues of the Hamiltonian
at gamma (1 + tol) give the frequencies where sigma_max(T(j w)) crosses the level; the
midpoints of consecutive crossings raise the lower bound until no crossing remains.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.optimize import minimize_scalar

from app.control.plant import LftPlant, closed_loop_ss, transfer_derivative, transfer_eval
from app.core.exceptions import UnstableSystemError
from app.linalg.dense import sigma_max, solve_complex, top_singular_triple

logger = logging.getLogger("control.hinf")

GRID_POINTS = 200
GRID_RANGE = (1e-4, 1e4)
IMAG_AXIS_TOL = 1e-8
MAX_LEVEL_ITERATIONS = 50
# peaks within this relative distance of the norm count as tied
PEAK_RTOL = 1e-6


def frequency_response_sigma(A, B, C, D, omega: float) -> float:
    """sigma_max(C (j w I - A)^-1 B + D)."""
    n = A.shape[0]
    return sigma_max(C @ solve_complex(1j * omega * np.eye(n) - A, B.astype(complex)) + D)


def hamiltonian_crossings(A, B, C, D, gamma: float) -> np.ndarray:
    """
    Frequencies w >= 0 where sigma_max(T(j w)) = gamma, from the imaginary eigenvalues
    of the Hamiltonian matrix at level gamma (gamma > sigma_max(D)).

    Returns:
        np.ndarray: Sorted unique crossing frequencies (empty when gamma exceeds the norm)
    """
    p, m = D.shape
    R = D.T @ D - gamma ** 2 * np.eye(m)
    S = D @ D.T - gamma ** 2 * np.eye(p)
    Ak = A - B @ scipy.linalg.solve(R, D.T @ C)
    H = np.block([
        [Ak, -gamma * B @ scipy.linalg.solve(R, B.T)],
        [gamma * C.T @ scipy.linalg.solve(S, C), -Ak.T],
    ])
    eigs = scipy.linalg.eigvals(H)
    on_axis = eigs[np.abs(eigs.real) <= IMAG_AXIS_TOL * np.maximum(1.0, np.abs(eigs))]
    return np.unique(np.round(np.abs(on_axis.imag), 12))


def _refine_peak(sigma, lo: float, hi: float, omega: float, value: float) -> Tuple[float, float]:
    if hi <= lo:
        return omega, value
    res = minimize_scalar(lambda w: -sigma(w), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-10 * max(1.0, omega)})
    if -res.fun > value:
        return float(res.x), float(-res.fun)
    return omega, value


def hinf_peaks(A, B, C, D, tol: float = 1e-9) -> Tuple[float, List[float]]:
    """
    H-infinity norm with every (near-)maximizing frequency.

    Args:
        A, B, C, D: State-space data, A Hurwitz
        tol: Relative accuracy of the level-set iteration

    Returns:
        Tuple[float, List[float]]: (norm, peak frequencies, best first)

    Raises:
        UnstableSystemError: If A is not Hurwitz
    """
    A, B, C, D = (np.atleast_2d(np.asarray(M, dtype=float)) for M in (A, B, C, D))
    poles = scipy.linalg.eigvals(A)
    if np.max(poles.real) >= 0.0:
        raise UnstableSystemError(f"A is not Hurwitz (spectral abscissa {np.max(poles.real):.6e}); norm is infinite")
    d_norm = sigma_max(D)
    if not np.any(B) or not np.any(C):
        return d_norm, [float("inf") if d_norm > 0 else 0.0]

    sigma = lambda w: frequency_response_sigma(A, B, C, D, w)
    pole_freqs = [abs(p.imag) for p in poles if GRID_RANGE[0] <= abs(p.imag) <= GRID_RANGE[1]]
    grid = np.unique(np.concatenate([[0.0], np.logspace(np.log10(GRID_RANGE[0]), np.log10(GRID_RANGE[1]),
                                                         GRID_POINTS), pole_freqs]))
    values = np.array([sigma(w) for w in grid])
    best = int(np.argmax(values))
    lb, omega = float(values[best]), float(grid[best])
    if d_norm > lb:
        lb, omega = d_norm, float("inf")

    for _ in range(MAX_LEVEL_ITERATIONS):
        crossings = hamiltonian_crossings(A, B, C, D, lb * (1.0 + tol))
        if crossings.size == 0:
            break
        mids = (crossings[1:] + crossings[:-1]) / 2.0 if crossings.size > 1 else crossings
        mid_values = [sigma(w) for w in mids]
        k = int(np.argmax(mid_values))
        if mid_values[k] <= lb:
            logger.debug("Level-set iteration made no progress; keeping lower bound")
            break
        lb, omega = float(mid_values[k]), float(mids[k])
        grid = np.unique(np.concatenate([grid, crossings, mids]))
        values = np.array([sigma(w) for w in grid])

    # local maxima of the sampled response, refined by golden section
    peaks = []
    for i in range(grid.size):
        left = values[i - 1] if i > 0 else -np.inf
        right = values[i + 1] if i + 1 < grid.size else -np.inf
        if values[i] >= left and values[i] >= right and values[i] >= lb * (1.0 - 1e-3):
            lo = grid[i - 1] if i > 0 else grid[i]
            hi = grid[i + 1] if i + 1 < grid.size else grid[i]
            peaks.append(_refine_peak(sigma, lo, hi, float(grid[i]), float(values[i])))
    if peaks:
        top = max(v for _, v in peaks)
        if top > lb:
            lb = top
    if np.isfinite(omega):
        peaks.append((omega, sigma(omega)))
    ranked = sorted({round(w, 12): (w, v) for w, v in peaks if v >= lb * (1.0 - PEAK_RTOL)}.values(),
                    key=lambda item: -item[1])
    freqs = [w for w, _ in ranked] or [omega]
    return lb, freqs


def hinf_norm(A, B, C, D, tol: float = 1e-9) -> Tuple[float, float]:
    """
    ||C (sI - A)^-1 B + D||_inf and a maximizing frequency.

    Raises:
        UnstableSystemError: If A is not Hurwitz
    """
    value, freqs = hinf_peaks(A, B, C, D, tol)
    return value, freqs[0]


def _sigma_gradient(plant: LftPlant, delta: Sequence[float], omega: float) -> np.ndarray:
    T = transfer_eval(plant, delta, omega)
    _, u, v = top_singular_triple(T)
    return np.array([(u.conj() @ transfer_derivative(plant, delta, omega, i) @ v).real
                     for i in range(plant.m)])


def hinf_gradient(plant: LftPlant, delta: Sequence[float]) -> np.ndarray:
    """
    Gradient of delta -> ||T_wz(delta)||_inf at the peak frequency:
    Re(u^H dT/d delta_i v) with u, v the top singular vectors of T(delta, j w*).

    Raises:
        UnstableSystemError: If the closed loop is unstable at delta
    """
    _, omega = hinf_norm(*closed_loop_ss(plant, delta))
    return _sigma_gradient(plant, delta, omega)


def hinf_active_gradients(plant: LftPlant, delta: Sequence[float]) -> List[np.ndarray]:
    """Gradients at every tied peak frequency."""
    _, freqs = hinf_peaks(*closed_loop_ss(plant, delta))
    return [_sigma_gradient(plant, delta, w) for w in freqs]
