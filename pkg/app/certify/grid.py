"""
Exhaustive grid oracle for small parameter boxes.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from app.core.exceptions import CertificationError

logger = logging.getLogger("certify.grid")

MAX_GRID_DIM = 3


@dataclass
class GridResult:
    max_value: float
    argmax: np.ndarray
    evaluations: int


def grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    """Points lo, lo + step, ... up to hi, with hi always included."""
    count = int(np.floor((hi - lo) / step + 1e-9))
    axis = lo + step * np.arange(count + 1)
    if hi - axis[-1] > 1e-12 * max(1.0, abs(hi)):
        axis = np.append(axis, hi)
    else:
        axis[-1] = hi
    return axis


def _scan(objective: Callable[[np.ndarray], float], lo: np.ndarray, hi: np.ndarray, step: float) -> GridResult:
    axes = [grid_axis(a, b, step) for a, b in zip(lo, hi)]
    best_value, argmax, count = -np.inf, None, 0
    for point in itertools.product(*axes):
        x = np.array(point)
        value = float(objective(x))
        count += 1
        # strict comparison keeps the first maximizer in lexicographic grid order
        if value > best_value:
            best_value, argmax = value, x
    return GridResult(max_value=best_value, argmax=argmax, evaluations=count)


def grid_certify(objective: Callable[[np.ndarray], float], lower: Sequence[float], upper: Sequence[float],
                 step: float, refine_step: Optional[float] = None) -> GridResult:
    """
    Maximize f over the regular grid of a box, corners included.

    With ``refine_step`` the grid maximizer is refined on a finer grid over the box of
    half-width ``step`` around it (clipped to the original box).

    Args:
        objective: f, called with a grid point
        lower: Lower box corner
        upper: Upper box corner
        step: Grid spacing
        refine_step: Optional spacing of the refinement grid

    Returns:
        GridResult: Exact grid maximum, its location and the number of evaluations

    Raises:
        CertificationError: If the box has more than three dimensions or the step is not positive
    """
    lo = np.asarray(lower, dtype=float).reshape(-1)
    hi = np.asarray(upper, dtype=float).reshape(-1)
    if lo.size > MAX_GRID_DIM:
        raise CertificationError(f"grid oracle is limited to m <= {MAX_GRID_DIM}, got m = {lo.size}")
    if lo.shape != hi.shape or np.any(lo > hi):
        raise CertificationError("grid box needs matching bounds with lower <= upper")
    if step <= 0.0 or (refine_step is not None and refine_step <= 0.0):
        raise CertificationError("grid steps must be positive")

    result = _scan(objective, lo, hi, step)
    if refine_step is not None:
        fine = _scan(objective, np.maximum(result.argmax - step, lo), np.minimum(result.argmax + step, hi),
                     refine_step)
        evaluations = result.evaluations + fine.evaluations
        if fine.max_value > result.max_value:
            result = GridResult(fine.max_value, fine.argmax, evaluations)
        else:
            result = GridResult(result.max_value, result.argmax, evaluations)
    logger.info(f"Grid maximum {result.max_value:.10g} at {np.round(result.argmax, 6).tolist()} "
                f"({result.evaluations} evaluations)")
    return result
