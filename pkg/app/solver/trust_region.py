"""
Outer/inner loop of the nonsmooth trust-region bundle method.

The inner loop solves tangent programs over the working model, accepts a trial step when
the ratio rho of actual to predicted decrease reaches gamma, and otherwise adds a cutting
plane and possibly halves the radius. The outer loop manages the memory radius and the
stopping tests. In classical mode the working model is the single exactness plane and
the radius is halved on every null step.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from app.core.bundle import Bundle, add_plane, new_bundle, recycle_planes, working_model_eval
from app.core.exceptions import (ConfigurationError, CoreException, DegenerateStepError, OracleError,
                                 TangentProgramError)
from app.core.feasible import FeasibleSet
from app.core.problem import ProblemInstance
from app.core.settings import SolverConfig
from app.core.trace import NULL, SERIOUS, SolverTrace, TraceRecord
from app.interfaces.model import FirstOrderModel
from app.solver.stopping import InnerCounters, stopping_inner, stopping_serious
from app.solver.tangent import (TangentSolution, norm_value, shift_off_kinks, solve_tangent_euclid_single,
                                solve_tangent_lp, trial_step)
from app.utils.logging_setup import CROSS_ICON, TICK_ICON

logger = logging.getLogger("solver.trust_region")

ZERO_DECREASE_RTOL = 1e-15

CRITICAL = "critical"
INNER_STALL = "inner_stall"
BUDGET_EXHAUSTED = "budget_exhausted"

# inner-loop stall reasons
CRITICALITY = "criticality"
K_MAX = "k_max"
ZERO_DECREASE = "zero_decrease"


def _guard(f_x: float, predicted: float) -> None:
    if predicted <= ZERO_DECREASE_RTOL * (1.0 + abs(f_x)):
        raise DegenerateStepError(f"predicted decrease {predicted:.3e} below resolution at f={f_x:.6e}")


def compute_rho(f_x: float, f_z: float, model_z: float) -> float:
    """
    Acceptance ratio (f(x) - f(z)) / (f(x) - phi_k(z, x)).

    Raises:
        DegenerateStepError: If the predicted decrease is below 1e-15 (1 + |f(x)|)
    """
    _guard(f_x, f_x - model_z)
    return (f_x - f_z) / (f_x - model_z)


def compute_rho_tilde(f_x: float, ideal_z: float, model_z: float) -> float:
    """
    Secondary ratio (f(x) - phi(z, x)) / (f(x) - phi_k(z, x)) of ideal against working model.

    Raises:
        DegenerateStepError: As compute_rho
    """
    _guard(f_x, f_x - model_z)
    return (f_x - ideal_z) / (f_x - model_z)


def update_radius(R: float, rho_tilde: float, cfg: SolverConfig) -> float:
    """Halve R when rho_tilde >= gamma_tilde, keep it otherwise."""
    return 0.5 * R if rho_tilde >= cfg.gamma_tilde else R


def update_memory_radius(R_accept: float, rho: float, cfg: SolverConfig) -> float:
    """Double the accepting radius on very successful steps (rho >= Gamma)."""
    return 2.0 * R_accept if rho >= cfg.Gamma else R_accept


@dataclass
class InnerOutcome:
    """
    Result of one inner loop.

    ``accepted`` carries (z, f_z, R_accept, rho); otherwise ``reason`` tells why the loop
    stalled at x. ``g_crit_norm`` is the aggregate norm of the last tangent program and
    ``g_reduced_norm`` the one at the last radius reduction in this loop (None if none).
    """

    accepted: bool
    x: np.ndarray
    bundle: Bundle
    z: Optional[np.ndarray] = None
    f_z: Optional[float] = None
    R_accept: Optional[float] = None
    rho: Optional[float] = None
    reason: Optional[str] = None
    predicted: float = 0.0
    g_crit_norm: float = 0.0
    g_reduced_norm: Optional[float] = None
    null_steps: int = 0


@dataclass
class SolveResult:
    """Outcome of outer_solve; ``status`` is critical, inner_stall or budget_exhausted."""

    x_final: np.ndarray
    f_final: float
    status: str
    serious_steps: int
    null_steps: int = 0
    trace: SolverTrace = field(default_factory=SolverTrace)
    message: str = ""


def _evaluate(model: FirstOrderModel, z: np.ndarray) -> float:
    try:
        value = model.f(z)
    except OracleError:
        raise
    except (CoreException, ArithmeticError, ValueError, np.linalg.LinAlgError) as e:
        raise OracleError(f"objective evaluation failed at {np.asarray(z).tolist()}: {str(e)}") from e
    if not np.isfinite(value):
        raise OracleError(f"objective is not finite at {np.asarray(z).tolist()}")
    return float(value)


def _on_kink(model: FirstOrderModel, y: np.ndarray) -> bool:
    """True where f has two or more distinct active gradients."""
    grads = model.oracle.active_gradients(y)
    return len(grads) > 1 and np.unique(np.vstack(grads), axis=0).shape[0] > 1


def _tangent(b: Bundle, C: FeasibleSet, R: float, cfg: SolverConfig) -> TangentSolution:
    if cfg.norm == "l2_single_plane":
        if len(b.planes) != 1:
            raise TangentProgramError("Euclidean tangent step needs a single-plane bundle")
        plane = b.planes[0]
        return solve_tangent_euclid_single(plane.g, b.anchor, R, a=plane.a)
    return solve_tangent_lp(b, C, R, cfg.norm)


def inner_loop(x: np.ndarray, f_x: float, model: FirstOrderModel, C: FeasibleSet, cfg: SolverConfig,
               R_init: float, j: int = 1, bundle: Optional[Bundle] = None,
               trace: Optional[SolverTrace] = None,
               rng: Optional[np.random.Generator] = None) -> InnerOutcome:
    """
    Run the inner loop at the serious iterate x.

    Args:
        x: Serious iterate, in C
        f_x: f(x)
        model: First-order model supplying exactness planes and cuts
        C: Feasible set
        cfg: Solver configuration
        R_init: First trust-region radius (the memory radius)
        j: Outer counter, for the trace
        bundle: Initial bundle anchored at x (recycled planes); a fresh one otherwise
        trace: Trace to append to
        rng: Generator for randomized trial steps

    Returns:
        InnerOutcome: Acceptance or stall

    Raises:
        OracleError: If the objective cannot be evaluated at a trial point
    """
    x = np.asarray(x, dtype=float)
    trace = trace if trace is not None else SolverTrace()
    classical = cfg.mode == "classical"
    if bundle is None:
        bundle = new_bundle(model.exactness_plane(x, f_x), f_x, cfg.max_bundle)
    R = R_init
    counters = InnerCounters()
    scale_x = 1.0 + norm_value(x, cfg.norm)
    scale_f = 1.0 + abs(f_x)
    g_reduced = None
    nulls = 0

    while True:
        k = counters.k
        try:
            ts = _tangent(bundle, C, R, cfg)
        except TangentProgramError:
            if cfg.norm == "l2_single_plane" and not np.any(bundle.planes[0].g):
                return InnerOutcome(accepted=False, x=x, bundle=bundle, reason=CRITICALITY,
                                    null_steps=nulls, g_reduced_norm=g_reduced)
            raise
        bundle.last_active = set(ts.active_planes)
        predicted = f_x - ts.model_value
        g_norm = float(np.linalg.norm(ts.g_crit))
        g_rel = g_norm / scale_f
        if predicted <= ZERO_DECREASE_RTOL * scale_f:
            reason = CRITICALITY if g_rel < cfg.tol3 else ZERO_DECREASE
            logger.debug(f"j={j} k={k}: zero predicted decrease, |g_crit|={g_norm:.3e} -> {reason}")
            return InnerOutcome(accepted=False, x=x, bundle=bundle, reason=reason, predicted=predicted,
                                g_crit_norm=g_norm, g_reduced_norm=g_reduced, null_steps=nulls)

        z = trial_step(ts, bundle, C, cfg, rng)
        if classical:
            # trial points stay off the kinks of f
            z = shift_off_kinks(z, ts, bundle, C, cfg, lambda y: _on_kink(model, y))
        model_z = ts.model_value if z is ts.y_star else working_model_eval(bundle, z)
        f_z = _evaluate(model, z)
        try:
            rho = compute_rho(f_x, f_z, model_z)
        except DegenerateStepError:
            return InnerOutcome(accepted=False, x=x, bundle=bundle, reason=ZERO_DECREASE, predicted=predicted,
                                g_crit_norm=g_norm, g_reduced_norm=g_reduced, null_steps=nulls)
        step_rel = norm_value(z - x, cfg.norm) / scale_x
        dec_rel = (f_x - f_z) / scale_f
        g_agg_norm = float(np.linalg.norm(ts.g_agg))

        if rho >= cfg.gamma:
            trace.append(TraceRecord(j=j, k=k, kind=SERIOUS, x=z, f=f_z, rho=rho, rho_tilde=float("nan"),
                                     R=R, g_agg_norm=g_agg_norm))
            logger.debug(f"j={j} k={k}: serious step rho={rho:.6f} R={R:.3e} f={f_z:.12e}")
            return InnerOutcome(accepted=True, x=x, bundle=bundle, z=z, f_z=f_z, R_accept=R, rho=rho,
                                predicted=predicted, g_crit_norm=g_norm, g_reduced_norm=g_reduced,
                                null_steps=nulls)

        nulls += 1
        if classical:
            rho_tilde = float("nan")
            R_next = 0.5 * R
        else:
            rho_tilde = compute_rho_tilde(f_x, model.model_eval(z, x), model_z)
            add_plane(bundle, model.model_cut(x, z, birth=k))
            R_next = update_radius(R, rho_tilde, cfg)
        trace.append(TraceRecord(j=j, k=k, kind=NULL, x=z, f=f_z, rho=rho, rho_tilde=rho_tilde,
                                 R=R, g_agg_norm=g_agg_norm))
        logger.debug(f"j={j} k={k}: null step rho={rho:.6f} rho~={rho_tilde:.6f} R={R:.3e}")
        if R_next < R:
            g_reduced = g_norm
        R = R_next

        counters.k += 1
        if stopping_inner(step_rel, dec_rel, g_rel, counters, cfg):
            reason = CRITICALITY if counters.consecutive >= cfg.nu_max else K_MAX
            return InnerOutcome(accepted=False, x=x, bundle=bundle, reason=reason, predicted=predicted,
                                g_crit_norm=g_norm, g_reduced_norm=g_reduced, null_steps=nulls)


def _check_setup(problem: ProblemInstance, cfg: SolverConfig) -> None:
    if cfg.norm == "l2_single_plane":
        if cfg.mode != "classical":
            raise ConfigurationError("norm l2_single_plane is only available in classical mode")
        if problem.feasible.kind != "all_space":
            raise ConfigurationError("norm l2_single_plane needs an unconstrained problem")


def _next_bundle(prev: Bundle, model: FirstOrderModel, x_new: np.ndarray, f_new: float,
                 cfg: SolverConfig) -> Bundle:
    bundle = new_bundle(model.exactness_plane(x_new, f_new), f_new, cfg.max_bundle)
    for plane in recycle_planes(prev, x_new, f_new).planes:
        add_plane(bundle, plane)
    return bundle


def outer_solve(problem: ProblemInstance, model: FirstOrderModel, cfg: SolverConfig) -> SolveResult:
    """
    Minimize the problem's objective over its feasible set.

    Args:
        problem: Objective oracle, feasible set and start point
        model: First-order model of the objective
        cfg: Solver configuration

    Returns:
        SolveResult: Final point, status and trace; the best point so far when the
        serious-step budget runs out

    Raises:
        ConfigurationError: On an invalid norm/mode/feasible-set combination
        OracleError: If the objective fails; the error carries the partial trace as ``trace``
    """
    _check_setup(problem, cfg)
    C = problem.feasible
    x = problem.x0
    trace = SolverTrace()
    rng = np.random.Generator(np.random.Philox(cfg.seed)) if cfg.trial_mode == "randomized" else None
    recycle = cfg.recycle and cfg.mode == "bundle" and model.global_minorants
    if cfg.recycle and not recycle:
        logger.warning("Plane recycling requested but the model's planes are not global minorants; ignored")

    try:
        f_x = _evaluate(model, x)
        R_mem = cfg.R_init
        g_prev = None
        serious = 0
        nulls = 0
        bundle = None
        status = BUDGET_EXHAUSTED
        message = f"serious-step budget {cfg.max_serious} exhausted"
        logger.info(f"Starting {cfg.mode} solve of {problem.name}: n={problem.n} norm={cfg.norm} f0={f_x:.12e}")

        while serious < cfg.max_serious:
            j = serious + 1
            out = inner_loop(x, f_x, model, C, cfg, R_mem, j=j, bundle=bundle, trace=trace, rng=rng)
            nulls += out.null_steps
            if not out.accepted:
                status = CRITICAL if out.reason == CRITICALITY else INNER_STALL
                message = f"inner loop stopped at j={j}: {out.reason}"
                break

            step_rel = norm_value(out.z - x, cfg.norm) / (1.0 + norm_value(x, cfg.norm))
            dec_rel = (f_x - out.f_z) / (1.0 + abs(f_x))
            if out.g_reduced_norm is not None:
                g_min = out.g_crit_norm
                g_prev = out.g_reduced_norm
            else:
                g_min = out.g_crit_norm if g_prev is None else min(out.g_crit_norm, g_prev)
            stop = stopping_serious(step_rel, dec_rel, g_min / (1.0 + abs(f_x)), cfg)

            R_mem = update_memory_radius(out.R_accept, out.rho, cfg)
            bundle = _next_bundle(out.bundle, model, out.z, out.f_z, cfg) if recycle else None
            x, f_x = out.z, out.f_z
            serious += 1
            if stop:
                status = CRITICAL
                message = f"stopping tests passed after {serious} serious steps"
                break
    except OracleError as e:
        e.trace = trace
        logger.error(f"{CROSS_ICON} Oracle failure after {len(trace)} trace records: {str(e)}")
        raise

    icon = TICK_ICON if status == CRITICAL else CROSS_ICON
    logger.info(f"{icon} {problem.name}: {status} f={f_x:.12e} serious={serious} null={nulls} ({message})")
    return SolveResult(x_final=np.array(x, dtype=float), f_final=f_x, status=status, serious_steps=serious,
                       null_steps=nulls, trace=trace, message=message)
