"""
Robustness problems over the normalized uncertainty box [-1, 1]^m.

- worst-case spectral abscissa: minimize -alpha(A(delta))
- worst-case H-infinity norm: minimize -||T_wz(delta)||_inf
- distance to instability: minimize t + c max{0, -alpha(A(delta))} over -t <= delta_i <= t
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from app.components.models.penalty_model import PenaltyMaxModel, PenaltyOracle
from app.components.models.standard_model import StandardModel
from app.control.hinf import hinf_active_gradients, hinf_gradient, hinf_norm
from app.control.plant import LftPlant, closed_loop_A, closed_loop_ss
from app.control.spectral import alpha_active_gradients, alpha_gradient, spectral_abscissa
from app.core.exceptions import ConfigurationError, UnstableSystemError
from app.core.feasible import FeasibleSet
from app.core.problem import ProblemInstance
from app.core.settings import SolverConfig
from app.interfaces.oracle import Oracle
from app.solver.trust_region import SolveResult, outer_solve
from app.utils.logging_setup import CROSS_ICON, TICK_ICON

logger = logging.getLogger("control.problems")

# constraint alpha(A(delta)) >= -CONSTRAINT_TOL counts as satisfied
CONSTRAINT_TOL = 1e-7
MAX_ESCALATIONS = 3


class WorstCaseAlphaOracle(Oracle):
    """f(delta) = -alpha(A(delta)), the negated spectral abscissa."""

    def __init__(self, plant: LftPlant):
        self.plant = plant
        self.n = plant.m

    def alpha(self, delta: np.ndarray) -> float:
        return spectral_abscissa(closed_loop_A(self.plant, delta))[0]

    def f(self, delta: np.ndarray) -> float:
        return -self.alpha(delta)

    def subgrad(self, delta: np.ndarray) -> np.ndarray:
        return -alpha_gradient(self.plant, delta)[0]

    def active_gradients(self, delta: np.ndarray) -> List[np.ndarray]:
        return [-g for g in alpha_active_gradients(self.plant, delta)]


class WorstCaseHinfOracle(Oracle):
    """f(delta) = -||T_wz(delta)||_inf."""

    def __init__(self, plant: LftPlant):
        self.plant = plant
        self.n = plant.m

    def f(self, delta: np.ndarray) -> float:
        return -hinf_norm(*closed_loop_ss(self.plant, delta))[0]

    def subgrad(self, delta: np.ndarray) -> np.ndarray:
        return -hinf_gradient(self.plant, delta)

    def active_gradients(self, delta: np.ndarray) -> List[np.ndarray]:
        return [-g for g in hinf_active_gradients(self.plant, delta)]


def _unit_box(m: int) -> FeasibleSet:
    return FeasibleSet.box(-np.ones(m), np.ones(m))


def worst_case_alpha_problem(plant: LftPlant, name: str = "wc-alpha") -> ProblemInstance:
    """Maximize alpha(A(delta)) over [-1, 1]^m, posed as minimization of -alpha."""
    return ProblemInstance(name=name, oracle=WorstCaseAlphaOracle(plant), feasible=_unit_box(plant.m),
                           x0=np.zeros(plant.m), task="wc-alpha",
                           metadata={"m": plant.m, "n_states": plant.n})


def worst_case_hinf_problem(plant: LftPlant, name: str = "wc-hinf") -> ProblemInstance:
    """
    Maximize ||T_wz(delta)||_inf over [-1, 1]^m, posed as minimization of -||.||_inf.

    Raises:
        UnstableSystemError: If the nominal closed loop is unstable
    """
    alpha0 = spectral_abscissa(plant.A)[0]
    if alpha0 >= 0.0:
        raise UnstableSystemError(f"nominal system is unstable (alpha = {alpha0:.6e})")
    return ProblemInstance(name=name, oracle=WorstCaseHinfOracle(plant), feasible=_unit_box(plant.m),
                           x0=np.zeros(plant.m), task="wc-hinf",
                           metadata={"m": plant.m, "n_states": plant.n})


def default_penalty_constant(plant: LftPlant) -> float:
    """c = 100 (1 + 1 / |alpha(A(0))|)."""
    alpha0 = spectral_abscissa(plant.A)[0]
    return 100.0 * (1.0 + 1.0 / abs(alpha0))


def distance_to_instability_problem(plant: LftPlant, c: Optional[float] = None, t_max: Optional[float] = 1.0,
                                    name: str = "distance") -> ProblemInstance:
    """
    Structured distance to instability as an exact penalty program in u = (t, delta).

    Args:
        plant: Nominally stable plant
        c: Penalty constant (default 100 (1 + 1/|alpha(A(0))|))
        t_max: Upper bound on the box radius t; None leaves t unbounded
        name: Problem name

    Returns:
        ProblemInstance: Penalty problem with the ``penalty_max`` model as default

    Raises:
        UnstableSystemError: If alpha(A(0)) >= 0
        ConfigurationError: If c <= 0
    """
    alpha0 = spectral_abscissa(plant.A)[0]
    if alpha0 >= 0.0:
        raise UnstableSystemError(f"nominal system is unstable (alpha = {alpha0:.6e}); distance is 0")
    c = default_penalty_constant(plant) if c is None else float(c)
    if c <= 0.0:
        raise ConfigurationError(f"penalty constant must be positive, got {c}")

    m = plant.m
    # rows: delta_i - t <= 0 and -delta_i - t <= 0
    rows = np.zeros((2 * m, m + 1))
    rows[:, 0] = -1.0
    rows[:m, 1:] = np.eye(m)
    rows[m:, 1:] = -np.eye(m)
    lower = np.concatenate([[0.0], np.full(m, -np.inf)])
    upper = np.concatenate([[np.inf if t_max is None else t_max], np.full(m, np.inf)])
    C = FeasibleSet.polyhedron(rows, np.zeros(2 * m), lower=lower, upper=upper)

    inner = WorstCaseAlphaOracle(plant)
    inner_model = StandardModel("standard", oracle=inner)
    return ProblemInstance(
        name=name, oracle=PenaltyOracle(inner, c), feasible=C, x0=np.zeros(m + 1),
        default_model="penalty_max",
        model_hooks={"penalty_max": {"inner": inner_model, "c": c}},
        task="distance", metadata={"m": m, "c": c, "t_max": t_max, "alpha0": alpha0})


@dataclass
class DistanceResult:
    """
    Distance-to-instability outcome.

    ``verdict`` is ``unstable_at_boundary`` when alpha reaches 0 at the returned point,
    ``robustly_stable_on_box`` when t sits at t_max with the constraint still violated, and
    ``constraint_violated`` when penalty escalation ran out.
    """

    d_star: float
    delta: np.ndarray
    alpha: float
    c: float
    verdict: str
    solve: SolveResult
    escalations: int = 0


def solve_distance_to_instability(plant: LftPlant, cfg: SolverConfig, c: Optional[float] = None,
                                  t_max: Optional[float] = 1.0, model_factory=None) -> DistanceResult:
    """
    Solve the penalty program, escalating c tenfold while the instability constraint
    is violated at the returned point.

    Args:
        plant: Nominally stable plant
        cfg: Solver configuration
        c: Initial penalty constant
        t_max: Upper bound on t
        model_factory: Optional callable (problem) -> model; defaults to PenaltyMaxModel

    Returns:
        DistanceResult: Estimated d* with verdict
    """
    escalations = 0
    while True:
        problem = distance_to_instability_problem(plant, c=c, t_max=t_max)
        if model_factory is not None:
            model = model_factory(problem)
        else:
            model = PenaltyMaxModel("penalty_max", **problem.model_kwargs("penalty_max"))
        result = outer_solve(problem, model, cfg)
        t, delta = float(result.x_final[0]), result.x_final[1:]
        alpha = problem.oracle.inner.alpha(delta)
        c = problem.metadata["c"]
        if alpha >= -CONSTRAINT_TOL:
            logger.info(f"{TICK_ICON} distance to instability d*={t:.10f} (alpha={alpha:.3e}, c={c:.3e})")
            return DistanceResult(d_star=t, delta=delta, alpha=alpha, c=c, verdict="unstable_at_boundary",
                                  solve=result, escalations=escalations)
        if t_max is not None and t >= t_max - CONSTRAINT_TOL:
            logger.info(f"{TICK_ICON} robustly stable on the box of radius {t_max} (alpha <= {alpha:.6e})")
            return DistanceResult(d_star=t, delta=delta, alpha=alpha, c=c, verdict="robustly_stable_on_box",
                                  solve=result, escalations=escalations)
        if escalations >= MAX_ESCALATIONS:
            logger.warning(f"{CROSS_ICON} instability constraint still violated after {escalations} escalations")
            return DistanceResult(d_star=t, delta=delta, alpha=alpha, c=c, verdict="constraint_violated",
                                  solve=result, escalations=escalations)
        escalations += 1
        c = 10.0 * c
        logger.warning(f"Constraint violated (alpha={alpha:.3e}); escalating penalty to c={c:.3e}")
