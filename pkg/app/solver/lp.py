"""
Dense LP engine behind the tangent program.

min c^T v  s.t.  A_ub v <= b_ub,  lower <= v <= upper

Solved with the HiGHS dual simplex through ``scipy.optimize.linprog``. Duals are
returned in the nonnegative convention so that

    c = -A_ub^T row_duals + lower_duals - upper_duals.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from app.core.exceptions import TangentProgramError

logger = logging.getLogger("solver.lp")

CS_TOL = 1e-10
GAP_RTOL = 1e-9

HIGHS_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}

Bound = Tuple[Optional[float], Optional[float]]


@dataclass(frozen=True)
class LPSolution:
    """Primal-dual pair of a bounded-variable LP."""

    x: np.ndarray
    value: float
    row_duals: np.ndarray
    lower_duals: np.ndarray
    upper_duals: np.ndarray
    duality_gap: float
    cs_residual: float
    iterations: int


def _finite(values: np.ndarray) -> np.ndarray:
    return np.where(np.isfinite(values), values, 0.0)


def simplex_lp(costs: Sequence[float], bounds: List[Bound],
               rows: Optional[np.ndarray] = None, rhs: Optional[Sequence[float]] = None,
               options: Optional[Dict[str, Any]] = None) -> LPSolution:
    """
    Solve a bounded-variable LP and certify the primal-dual pair.

    Args:
        costs: Objective vector c
        bounds: (lower, upper) per variable, None for unbounded sides
        rows: Inequality matrix A_ub, shape (p, len(c)), or None
        rhs: Right-hand side b_ub
        options: HiGHS options passed through to linprog (tolerances, limits)

    Returns:
        LPSolution: Optimal vertex with duals, duality gap and complementary-slackness residual

    Raises:
        TangentProgramError: If the LP is infeasible, unbounded or the solver fails
    """
    c = np.asarray(costs, dtype=float)
    A = None if rows is None or len(rows) == 0 else np.atleast_2d(np.asarray(rows, dtype=float))
    b = None if A is None else np.asarray(rhs, dtype=float)

    res = linprog(c, A_ub=A, b_ub=b, bounds=bounds, method="highs-ds", options=options)
    if res.status == 2:
        raise TangentProgramError(f"LP infeasible: {res.message}")
    if res.status == 3:
        raise TangentProgramError(f"LP unbounded (invalid tangent program): {res.message}")
    if res.status != 0:
        raise TangentProgramError(f"LP solver failed with status {res.status}: {res.message}")

    x = np.asarray(res.x, dtype=float)
    row_duals = -np.asarray(res.ineqlin.marginals, dtype=float) if A is not None else np.zeros(0)
    lower_duals = np.asarray(res.lower.marginals, dtype=float)
    upper_duals = -np.asarray(res.upper.marginals, dtype=float)

    lo = np.array([-np.inf if l is None else l for l, _ in bounds], dtype=float)
    hi = np.array([np.inf if u is None else u for _, u in bounds], dtype=float)

    # dual objective of the nonnegative-dual formulation
    dual_value = float(lower_duals @ _finite(lo) - upper_duals @ _finite(hi))
    cs_terms = [np.abs(lower_duals * _finite(x - lo)), np.abs(upper_duals * _finite(hi - x))]
    if A is not None:
        dual_value -= float(row_duals @ b)
        cs_terms.append(np.abs(row_duals * (b - A @ x)))
    cs_residual = float(max((t.max() for t in cs_terms if t.size), default=0.0))
    gap = abs(float(res.fun) - dual_value)

    scale = 1.0 + abs(float(res.fun))
    if gap > GAP_RTOL * scale:
        logger.warning(f"LP duality gap {gap:.3e} above tolerance at value {res.fun:.6e}")
    if cs_residual > CS_TOL * scale:
        logger.debug(f"LP complementary slackness residual {cs_residual:.3e}")

    return LPSolution(x=x, value=float(res.fun), row_duals=row_duals, lower_duals=lower_duals,
                      upper_duals=upper_duals, duality_gap=gap, cs_residual=cs_residual,
                      iterations=int(getattr(res, "nit", 0)))
