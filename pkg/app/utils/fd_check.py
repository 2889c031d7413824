"""
Central finite-difference checks of analytic derivatives.
"""

import logging
from typing import Callable, Sequence

import numpy as np

logger = logging.getLogger("utils.fd_check")

DEFAULT_STEPS = (1e-4, 1e-5, 1e-6)


def central_difference(func: Callable[[np.ndarray], object], x: Sequence[float], i: int, h: float) -> np.ndarray:
    """(func(x + h e_i) - func(x - h e_i)) / 2h; func may return a scalar or an array."""
    x = np.asarray(x, dtype=float)
    e = np.zeros_like(x)
    e[i] = h
    return (np.asarray(func(x + e), dtype=float) - np.asarray(func(x - e), dtype=float)) / (2.0 * h)


def fd_gradient(func: Callable[[np.ndarray], float], x: Sequence[float], h: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.array([float(central_difference(func, x, i, h)) for i in range(x.size)])


def relative_error(approx: np.ndarray, exact: np.ndarray, floor: float = 1e-8) -> float:
    approx, exact = np.asarray(approx, dtype=float), np.asarray(exact, dtype=float)
    return float(np.linalg.norm(approx - exact) / max(np.linalg.norm(exact), floor))


def min_relative_error(fd: Callable[[float], np.ndarray], exact: np.ndarray,
                       steps: Sequence[float] = DEFAULT_STEPS) -> float:
    """
    Smallest relative error of the finite-difference estimates over a step sweep.

    Args:
        fd: Callable mapping a step h to the finite-difference estimate
        exact: Analytic value
        steps: Step sizes to try

    Returns:
        float: min over h of ||fd(h) - exact|| / ||exact||
    """
    errors = [relative_error(fd(h), exact) for h in steps]
    logger.debug(f"finite-difference errors {dict(zip(steps, errors))}")
    return min(errors)


def check_gradient(func: Callable[[np.ndarray], float], grad: Callable[[np.ndarray], np.ndarray],
                   x: Sequence[float], steps: Sequence[float] = DEFAULT_STEPS) -> float:
    """Minimum relative error between grad(x) and central differences of func at x."""
    x = np.asarray(x, dtype=float)
    return min_relative_error(lambda h: fd_gradient(func, x, h), grad(x), steps)


def check_partial(func: Callable[[np.ndarray], object], partial: np.ndarray, x: Sequence[float], i: int,
                  steps: Sequence[float] = DEFAULT_STEPS) -> float:
    """Minimum relative error of an analytic partial derivative (scalar or matrix) along e_i."""
    return min_relative_error(lambda h: central_difference(func, x, i, h), partial, steps)
