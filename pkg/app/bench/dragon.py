"""
The dragon function: a convex piecewise-affine counterexample on which the classical
Cauchy-point trust-region scheme converges to a non-critical point.

    f(x) = max{-100, +-2 x1 + 3 x2, +-5 x1 + 2 x2}

Iterates start on the upper right branch of a level set [f = a],
x = (x1, -2/3 x1 + a/3) with 0 < x1 <= a/11.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.components.models.oracles import MaxAffineOracle
from app.core.exceptions import ConfigurationError
from app.core.feasible import FeasibleSet
from app.core.problem import ProblemInstance

FLOOR = -100.0
# piece order: floor, f_{1+}, f_{1-}, f_{2+}, f_{2-}
DRAGON_OFFSETS = (FLOOR, 0.0, 0.0, 0.0, 0.0)
DRAGON_SLOPES = ((0.0, 0.0), (2.0, 3.0), (-2.0, 3.0), (5.0, 2.0), (-5.0, 2.0))

# rho at r_B as x1 -> 0 and at x1 = a/11
RHO_B_LIMIT_LOW = 5.0 / 13.0
RHO_B_LIMIT_HIGH = 198.0 / 234.0


@dataclass(frozen=True)
class DragonState:
    """Level a and position x1 of a point on the upper right branch of [f = a]."""

    a: float
    x1: float

    def __post_init__(self):
        if not 0.0 < self.x1 <= self.a / 11.0 * (1.0 + 1e-12):
            raise ConfigurationError(f"need 0 < x1 <= a/11, got x1={self.x1}, a={self.a}")

    @property
    def point(self) -> np.ndarray:
        return np.array([self.x1, -2.0 / 3.0 * self.x1 + self.a / 3.0])


def dragon_oracle() -> MaxAffineOracle:
    return MaxAffineOracle(DRAGON_OFFSETS, DRAGON_SLOPES)


def dragon_f(x) -> float:
    x = np.asarray(x, dtype=float)
    return max(FLOOR, 2 * x[0] + 3 * x[1], -2 * x[0] + 3 * x[1], 5 * x[0] + 2 * x[1], -5 * x[0] + 2 * x[1])


def dragon_quantities(a: float, x1: float, gamma: float) -> dict:
    """
    Breakpoints and values along the steepest-descent ray y = x + r (-2, -3).

    r_A is where the ray crosses the x2 axis, r_B where it leaves the dragon through
    x2 = -3 x1, r_gamma where rho drops to gamma.

    Args:
        a: Level f(x)
        x1: Position on the level set
        gamma: Acceptance parameter, must lie in (5/13, 1)

    Returns:
        dict: r_A, r_B, r_gamma, f_A, f_B

    Raises:
        ConfigurationError: If gamma <= 5/13 (r_gamma undefined) or x1 is out of range
    """
    DragonState(a, x1)
    if not 5.0 / 13.0 < gamma < 1.0:
        raise ConfigurationError(f"gamma must lie in (5/13, 1), got {gamma}")
    return {
        "r_A": x1 / 2.0,
        "r_B": 7.0 / 27.0 * x1 + a / 27.0,
        "r_gamma": 4.0 * x1 / (13.0 * gamma - 5.0),
        # f_{1+}(A) = a - 13 r_A; matches rho = 1 on [0, r_A]
        "f_A": a - 13.0 / 2.0 * x1,
        # f_{1-}(B); coefficient 22/27 agrees with r_B and the rho limits
        "f_B": -143.0 / 27.0 * x1 + 22.0 / 27.0 * a,
    }


def dragon_rho(a: float, x1: float, r: float) -> float:
    """Acceptance ratio of the trial point x + r (-2, -3) under the standard model."""
    if r <= 0.0:
        raise ConfigurationError(f"step parameter must be positive, got {r}")
    r_A = x1 / 2.0
    r_B = 7.0 / 27.0 * x1 + a / 27.0
    if r <= r_A:
        return 1.0
    if r <= r_B:
        return (4.0 * x1 + 5.0 * r) / (13.0 * r)
    return (a - 12.0 * r + 19.0 * x1) / (39.0 * r)


def dragon_polygon(a: float) -> np.ndarray:
    """The five vertices of the level curve [f = a] in the upper half plane, left to right."""
    return np.array([
        [-a / 5.0, 0.0],
        [-a / 11.0, 3.0 * a / 11.0],
        [0.0, a / 3.0],
        [a / 11.0, 3.0 * a / 11.0],
        [a / 5.0, 0.0],
    ])


def dragon_start(a: float = 11.0, x1: Optional[float] = None) -> np.ndarray:
    """Start on the upper right branch; the default x1 = (a/11)/sqrt(2) keeps iterates off the kinks."""
    if x1 is None:
        x1 = a / 11.0 / math.sqrt(2.0)
    return DragonState(a, x1).point


def dragon_problem(a: float = 11.0, x1: Optional[float] = None) -> ProblemInstance:
    return ProblemInstance(name="dragon", oracle=dragon_oracle(), feasible=FeasibleSet.all_space(2),
                           x0=dragon_start(a, x1), default_model="standard", convex=True,
                           metadata={"a": a, "x1": float(dragon_start(a, x1)[0])})
