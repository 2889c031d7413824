"""
Convex polyhedral test problems: f(x) = max_i (c_i + g_i^T x) over a box.
"""

from typing import Optional, Sequence

import numpy as np

from app.components.models.oracles import MaxAffineOracle
from app.core.exceptions import ConfigurationError
from app.core.feasible import FeasibleSet
from app.core.problem import ProblemInstance

# |x1| + 2|x2| as a max of four affine pieces
L1BOX_SLOPES = ((1.0, 2.0), (1.0, -2.0), (-1.0, 2.0), (-1.0, -2.0))
L1BOX_START = (1.5, 1.0)
L1BOX_RADIUS = 2.0


def polyhedral_problem(pieces: Sequence[Sequence[float]], box: Optional[Sequence[Sequence[float]]],
                       x0: Sequence[float], name: str = "polyhedral") -> ProblemInstance:
    """
    Problem from rows [c, g_1, ..., g_n] of a max-of-affine function.

    Args:
        pieces: One row per affine piece: offset followed by slope
        box: [lower, upper] corners, or None for the whole space
        x0: Start point
        name: Problem name

    Returns:
        ProblemInstance: Convex problem (convex_self model available)

    Raises:
        ConfigurationError: If the piece rows are ragged or too short
    """
    try:
        rows = np.atleast_2d(np.array(pieces, dtype=float))
    except ValueError as e:
        raise ConfigurationError(f"pieces of problem {name} must be rows of equal length: {str(e)}") from e
    if rows.ndim != 2 or rows.shape[1] < 2:
        raise ConfigurationError(f"pieces of problem {name} must be rows [c, g_1, ..., g_n] with n >= 1")
    oracle = MaxAffineOracle(rows[:, 0], rows[:, 1:])
    if box is None:
        feasible = FeasibleSet.all_space(oracle.n)
    else:
        if len(box) != 2:
            raise ConfigurationError(f"box of problem {name} must be [lower, upper]")
        feasible = FeasibleSet.box(box[0], box[1])
    return ProblemInstance(name=name, oracle=oracle, feasible=feasible, x0=x0, convex=True)


def l1box_problem() -> ProblemInstance:
    """f(x) = |x1| + 2|x2| over [-2, 2]^2 from (1.5, 1); minimum 0 at the origin."""
    pieces = [[0.0, *g] for g in L1BOX_SLOPES]
    box = [[-L1BOX_RADIUS] * 2, [L1BOX_RADIUS] * 2]
    return polyhedral_problem(pieces, box, L1BOX_START, name="l1box")


def random_polyhedral_problem(n: int = 2, n_pieces: int = 6, seed: int = 0, radius: float = 2.0) -> ProblemInstance:
    """
    Random max-of-affine problem over [-radius, radius]^n with a random start.

    Slopes are drawn around the sphere so that f is bounded below on the box.

    Args:
        n: Dimension
        n_pieces: Number of affine pieces
        seed: Generator seed
        radius: Half-width of the box

    Returns:
        ProblemInstance: Convex polyhedral problem
    """
    if n < 1 or n_pieces < 1 or radius <= 0.0:
        raise ConfigurationError(f"need n >= 1, n_pieces >= 1 and radius > 0, got {n}, {n_pieces}, {radius}")
    rng = np.random.Generator(np.random.Philox(seed))
    slopes = rng.standard_normal((n_pieces, n))
    offsets = rng.uniform(-1.0, 1.0, n_pieces)
    x0 = rng.uniform(-radius, radius, n)
    pieces = np.column_stack([offsets, slopes])
    return polyhedral_problem(pieces, [[-radius] * n, [radius] * n], x0, name=f"polyhedral-{seed}")
