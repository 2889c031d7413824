"""
Objective oracle interface.
"""

from abc import ABC, abstractmethod
from typing import List

import numpy as np

# piece i is active at x if f_i(x) >= f(x) - ACTIVE_RTOL * (1 + |f(x)|)
ACTIVE_RTOL = 1e-10


def activity_threshold(value: float) -> float:
    """Lower value bound for a piece to count as active at a point where f = value."""
    return value - ACTIVE_RTOL * (1.0 + abs(value))


class Oracle(ABC):
    """
    Locally Lipschitz objective f: R^n -> R with first-order information.

    Oracles must be pure: the same input always gives the same output and no hidden
    state is mutated, so one oracle may serve several solver runs at once.
    """

    n: int

    @abstractmethod
    def f(self, x: np.ndarray) -> float:
        """Objective value."""

    @abstractmethod
    def subgrad(self, x: np.ndarray) -> np.ndarray:
        """One Clarke subgradient at x."""

    def active_gradients(self, x: np.ndarray) -> List[np.ndarray]:
        """
        Gradients of the active pieces at x (max-type oracles).

        The convex hull of the returned list is the Clarke subdifferential for
        max-of-smooth functions; smooth oracles return the single gradient.
        """
        return [self.subgrad(x)]

    def dir_deriv(self, x: np.ndarray, d: np.ndarray) -> float:
        """Clarke directional derivative f°(x, d) = max over active gradients of g^T d."""
        d = np.asarray(d, dtype=float)
        return float(max(g @ d for g in self.active_gradients(x)))
