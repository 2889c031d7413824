"""
Vectors and simply structured closed convex feasible sets.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from app.core.exceptions import DimensionMismatchError

FEASIBILITY_TOL = 1e-12


def as_vector(values: Sequence[float], n: Optional[int] = None, name: str = "vector",
              finite: bool = True) -> np.ndarray:
    """
    Convert input to a 1-D float array.

    Args:
        values: Coordinates
        n: Expected dimension, if known
        name: Name used in error messages
        finite: Reject infinite entries; bounds pass False. NaN is always rejected

    Returns:
        np.ndarray: Read-only copy of the coordinates

    Raises:
        DimensionMismatchError: On wrong shape, wrong dimension, NaN or (if ``finite``) infinite entries
    """
    vec = np.array(values, dtype=float).reshape(-1) if np.ndim(values) <= 1 else None
    if vec is None:
        raise DimensionMismatchError(f"{name} must be one-dimensional, got shape {np.shape(values)}")
    if n is not None and vec.shape[0] != n:
        raise DimensionMismatchError(f"{name} has dimension {vec.shape[0]}, expected {n}")
    if np.any(np.isnan(vec)):
        raise DimensionMismatchError(f"{name} has NaN entries")
    if finite and not np.all(np.isfinite(vec)):
        raise DimensionMismatchError(f"{name} has non-finite entries")
    vec.setflags(write=False)
    return vec


def _check_bounds(lo: np.ndarray, hi: np.ndarray) -> None:
    if np.any(lo > hi):
        raise DimensionMismatchError("box requires lower <= upper componentwise")
    if np.any(lo == np.inf) or np.any(hi == -np.inf):
        raise DimensionMismatchError("lower bounds must be below +inf and upper bounds above -inf")


@dataclass(frozen=True)
class FeasibleSet:
    """
    Feasible set C: the whole space, a box, or a polyhedron {y: A y <= b}.

    A polyhedron may carry a box as well (``lower``/``upper``); the LP layer turns the
    box into variable bounds and the rows into inequality constraints.
    """

    n: int
    kind: str = "all_space"
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    A: Optional[np.ndarray] = field(default=None, repr=False)
    b: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def all_space(cls, n: int) -> "FeasibleSet":
        return cls(n=n)

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float]) -> "FeasibleSet":
        lo = as_vector(lower, name="lower", finite=False)
        hi = as_vector(upper, lo.shape[0], name="upper", finite=False)
        _check_bounds(lo, hi)
        return cls(n=lo.shape[0], kind="box", lower=lo, upper=hi)

    @classmethod
    def polyhedron(cls, A_rows: Sequence[Sequence[float]], b: Sequence[float],
                   lower: Optional[Sequence[float]] = None,
                   upper: Optional[Sequence[float]] = None) -> "FeasibleSet":
        A = np.atleast_2d(np.array(A_rows, dtype=float))
        rhs = as_vector(b, A.shape[0], name="b")
        n = A.shape[1]
        lo = as_vector(lower, n, name="lower", finite=False) if lower is not None else None
        hi = as_vector(upper, n, name="upper", finite=False) if upper is not None else None
        _check_bounds(lo if lo is not None else np.full(n, -np.inf), hi if hi is not None else np.full(n, np.inf))
        A.setflags(write=False)
        return cls(n=n, kind="polyhedron", lower=lo, upper=hi, A=A, b=rhs)

    def bounds(self) -> tuple:
        """Componentwise bounds (lower, upper) with infinities where C is unbounded."""
        lo = self.lower if self.lower is not None else np.full(self.n, -np.inf)
        hi = self.upper if self.upper is not None else np.full(self.n, np.inf)
        return lo, hi

    def contains(self, y: np.ndarray, tol: float = FEASIBILITY_TOL) -> bool:
        """
        Membership test with absolute tolerance.

        Args:
            y: Point
            tol: Feasibility tolerance

        Returns:
            bool: True if y lies in C up to tol
        """
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise DimensionMismatchError(f"point has shape {y.shape}, feasible set dimension is {self.n}")
        lo, hi = self.bounds()
        if np.any(y < lo - tol) or np.any(y > hi + tol):
            return False
        if self.A is not None and np.any(self.A @ y > self.b + tol * (1.0 + np.abs(self.b))):
            return False
        return True
