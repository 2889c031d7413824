"""
Tangent program: minimize the working model over C intersected with the trust region.

Polyhedral norms (inf, l1) go through an epigraph LP; the Euclidean norm is supported for
single-plane bundles through the closed-form steepest-descent step.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from app.core.bundle import Bundle, working_model_eval
from app.core.exceptions import TangentProgramError
from app.core.feasible import FEASIBILITY_TOL, FeasibleSet
from app.core.settings import SolverConfig
from app.solver.lp import HIGHS_OPTIONS, simplex_lp

logger = logging.getLogger("solver.tangent")

# plane i is active at y_star if its value is within this relative slack of the model value
ACTIVE_PLANE_RTOL = 1e-9
MAX_TRIAL_DRAWS = 20
TR_ACTIVE_RTOL = 1e-6


@dataclass(frozen=True)
class TangentSolution:
    """
    Solution of one tangent program.

    Attributes:
        y_star: Minimizer of the working model over C and the ball
        model_value: phi_k(y_star, x)
        multipliers: Simplex weights over the bundle planes
        g_agg: Aggregate subgradient sum(lambda_i g_i)
        g_crit: g_agg plus the normal-cone part of C, i.e. minus the ball's normal vector;
            zero when the trust region is inactive
        active_planes: Planes attaining the model value at y_star
        tr_active: True when y_star lies on the trust-region boundary
    """

    y_star: np.ndarray
    model_value: float
    multipliers: np.ndarray
    g_agg: np.ndarray
    g_crit: np.ndarray
    active_planes: List[int]
    tr_active: bool


def norm_value(d: np.ndarray, norm: str) -> float:
    """Trust-region norm of a displacement."""
    if norm == "inf":
        return float(np.max(np.abs(d))) if d.size else 0.0
    if norm == "l1":
        return float(np.sum(np.abs(d)))
    return float(np.linalg.norm(d))


def _build_lp(b: Bundle, C: FeasibleSet, R: float, norm: str, motion: bool,
              tau_cap: Optional[float] = None):
    """
    Variables (u, tau[, s]) with y = x + R u and t = c0 + R tau, c0 the largest plane
    value at x. The scaling keeps the program well conditioned for tiny radii and makes
    u = 0 the exact anchor. s bounds |u| componentwise; it is needed for the l1 ball and
    for the least-motion objective.
    """
    n, k = b.n, len(b.planes)
    x = b.anchor
    G, a = b.slopes(), b.offsets()
    c0 = float(a.max())
    with_s = norm == "l1" or motion
    nv = n + 1 + (n if with_s else 0)

    blocks, rhs = [], []

    plane_rows = np.zeros((k, nv))
    plane_rows[:, :n] = G
    plane_rows[:, n] = -1.0
    blocks.append(plane_rows)
    rhs.append((c0 - a) / R)

    p = 0
    if C.A is not None:
        p = C.A.shape[0]
        c_rows = np.zeros((p, nv))
        c_rows[:, :n] = C.A
        blocks.append(c_rows)
        rhs.append((np.asarray(C.b, dtype=float) - C.A @ x) / R)

    if with_s:
        eye = np.eye(n)
        up = np.zeros((n, nv))
        up[:, :n] = eye
        up[:, n + 1:] = -eye
        down = np.zeros((n, nv))
        down[:, :n] = -eye
        down[:, n + 1:] = -eye
        blocks.extend([up, down])
        rhs.extend([np.zeros(n), np.zeros(n)])
    if norm == "l1":
        ball = np.zeros((1, nv))
        ball[0, n + 1:] = 1.0
        blocks.append(ball)
        rhs.append(np.ones(1))
    if tau_cap is not None:
        cap = np.zeros((1, nv))
        cap[0, n] = 1.0
        blocks.append(cap)
        rhs.append(np.array([tau_cap]))

    c_lo, c_hi = C.bounds()
    lo, hi = (c_lo - x) / R, (c_hi - x) / R
    if norm == "inf":
        lo, hi = np.maximum(lo, -1.0), np.minimum(hi, 1.0)
    if np.any((lo - hi) * R > FEASIBILITY_TOL):
        raise TangentProgramError("feasible set does not meet the trust region (corrupt C?)")
    hi = np.maximum(hi, lo)
    bounds = [(None if not np.isfinite(l) else float(l), None if not np.isfinite(u) else float(u))
              for l, u in zip(lo, hi)]
    bounds.append((None, None))
    if with_s:
        bounds.extend([(0.0, None)] * n)

    return np.vstack(blocks), np.concatenate(rhs), bounds, p, lo, hi, c0


def solve_tangent_lp(b: Bundle, C: FeasibleSet, R: float, norm: str = "inf") -> TangentSolution:
    """
    Solve the tangent program over a polyhedral trust region.

    A first LP finds the optimal model value and its dual certificate; a second LP keeps
    the model value at that optimum and picks the optimal point closest to x in the l1
    sense, so coordinates with zero aggregate slope stay at x.

    Args:
        b: Bundle anchored at x
        C: Feasible set, must contain x
        R: Trust-region radius
        norm: ``inf`` or ``l1``

    Returns:
        TangentSolution: Minimizer, model value and aggregate subgradients

    Raises:
        TangentProgramError: On invalid radius or norm, or LP failure
    """
    if R <= 0.0:
        raise TangentProgramError(f"trust-region radius must be positive, got {R}")
    if norm not in ("inf", "l1"):
        raise TangentProgramError(f"LP tangent program needs a polyhedral norm, got {norm}")
    n, k = b.n, len(b.planes)
    x = b.anchor

    rows, rhs, bounds, p, lo, hi, _ = _build_lp(b, C, R, norm, motion=False)
    cost = np.zeros(len(bounds))
    cost[n] = 1.0
    first = simplex_lp(cost, bounds, rows, rhs, options=HIGHS_OPTIONS)
    tau_star = first.x[n]

    lam = np.clip(first.row_duals[:k], 0.0, None)
    total = lam.sum()
    lam = lam / total if total > 0 else np.full(k, 1.0 / k)
    G = b.slopes()
    g_agg = lam @ G

    # C part of the certificate: polyhedron rows plus box bounds of C that are at
    # least as tight as the ball's
    mu = first.row_duals[k:k + p]
    normal_C = C.A.T @ mu if p else np.zeros(n)
    c_lo, c_hi = C.bounds()
    if norm == "inf":
        lower_from_C = c_lo >= x - R
        upper_from_C = c_hi <= x + R
    else:
        lower_from_C = np.ones(n, dtype=bool)
        upper_from_C = np.ones(n, dtype=bool)
    normal_C = normal_C + np.where(upper_from_C, first.upper_duals[:n], 0.0) \
        - np.where(lower_from_C, first.lower_duals[:n], 0.0)
    g_crit = g_agg + normal_C

    u = first.x[:n]
    try:
        rows2, rhs2, bounds2, _, _, _, _ = _build_lp(b, C, R, norm, motion=True, tau_cap=tau_star)
        cost2 = np.zeros(len(bounds2))
        cost2[n + 1:] = 1.0
        u = simplex_lp(cost2, bounds2, rows2, rhs2, options=HIGHS_OPTIONS).x[:n]
    except TangentProgramError as e:
        logger.warning(f"Least-motion stage failed, keeping first-stage point: {str(e)}")

    # displacements at solver resolution are exact zeros of the least-motion objective
    u = np.where(np.abs(u) <= HIGHS_OPTIONS["primal_feasibility_tolerance"], 0.0, u)
    u = np.clip(u, lo, hi)
    y_star = np.clip(x + R * u, c_lo, c_hi)
    model_value = working_model_eval(b, y_star)
    values = b.offsets() + G @ (y_star - x)
    threshold = model_value - ACTIVE_PLANE_RTOL * (1.0 + abs(model_value))
    active = [i for i, v in enumerate(values) if v >= threshold]
    tr_active = norm_value(u, norm) >= 1.0 - TR_ACTIVE_RTOL

    logger.debug(f"Tangent LP: R={R:.3e} value={model_value:.12e} active={active} tr_active={tr_active}")
    return TangentSolution(y_star=y_star, model_value=model_value, multipliers=lam, g_agg=g_agg,
                           g_crit=g_crit, active_planes=active, tr_active=tr_active)


def solve_tangent_euclid_single(g: np.ndarray, x: np.ndarray, R: float, a: float = 0.0) -> TangentSolution:
    """
    Closed-form Euclidean tangent step for a single plane (a, g) on the whole space.

    Args:
        g: Plane slope
        x: Anchor
        R: Trust-region radius
        a: Plane value at the anchor (f(x) for an exactness plane)

    Returns:
        TangentSolution: y = x - R g / ||g||, model value a - R ||g||

    Raises:
        TangentProgramError: If g = 0 (x is critical)
    """
    g = np.asarray(g, dtype=float)
    x = np.asarray(x, dtype=float)
    g_norm = float(np.linalg.norm(g))
    if g_norm == 0.0:
        raise TangentProgramError("zero slope: anchor is critical, no steepest-descent step")
    y = x - R * g / g_norm
    return TangentSolution(y_star=y, model_value=float(a) - R * g_norm, multipliers=np.ones(1),
                           g_agg=g.copy(), g_crit=g.copy(), active_planes=[0], tr_active=True)


def _ball_draw(rng: np.random.Generator, n: int, radius: float, norm: str) -> np.ndarray:
    """Uniform draw from the trust-region ball of the given norm around the origin."""
    if norm == "inf":
        return rng.uniform(-radius, radius, size=n)
    if norm == "l1":
        # uniform on the simplex with a slack coordinate, then random signs
        e = rng.exponential(size=n + 1)
        return radius * rng.choice([-1.0, 1.0], size=n) * e[:n] / e.sum()
    d = rng.standard_normal(n)
    return radius * rng.uniform() ** (1.0 / n) * d / np.linalg.norm(d)


def _step_conditions(z: np.ndarray, b: Bundle, C: FeasibleSet, cfg: SolverConfig, step: float,
                     predicted: float) -> bool:
    x, f_x = b.anchor, b.f_anchor
    return (C.contains(z) and norm_value(z - x, cfg.norm) <= cfg.M * step
            and f_x - working_model_eval(b, z) >= cfg.theta * predicted)


def trial_step(ts: TangentSolution, b: Bundle, C: FeasibleSet, cfg: SolverConfig,
               rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Choose a trial step z from a tangent solution.

    z must satisfy z in C, ||z - x|| <= M ||x - y_star|| and
    f(x) - phi_k(z, x) >= theta (f(x) - phi_k(y_star, x)).

    Args:
        ts: Tangent solution
        b: Bundle anchored at x
        C: Feasible set
        cfg: Solver configuration (trial_mode, theta, M, norm)
        rng: Generator for the randomized mode

    Returns:
        np.ndarray: Trial step; y_star in deterministic mode or after 20 failed draws
    """
    if cfg.trial_mode == "deterministic":
        return ts.y_star
    rng = rng or np.random.Generator(np.random.Philox(cfg.seed))
    x = b.anchor
    step = norm_value(ts.y_star - x, cfg.norm)
    predicted = b.f_anchor - ts.model_value
    if step == 0.0 or predicted <= 0.0:
        return ts.y_star
    radius = max(cfg.M - 1.0, 0.5) * step
    for _ in range(MAX_TRIAL_DRAWS):
        z = ts.y_star + _ball_draw(rng, x.shape[0], radius, cfg.norm)
        if _step_conditions(z, b, C, cfg, step, predicted):
            return z
        radius *= 0.5
    return ts.y_star


def shift_off_kinks(z: np.ndarray, ts: TangentSolution, b: Bundle, C: FeasibleSet, cfg: SolverConfig,
                    on_kink: Callable[[np.ndarray], bool]) -> np.ndarray:
    """
    Pull a trial step that lies on a kink of f back along [x, z].

    Candidates x + eta (z - x) run from eta = (1 + theta) / 2 down towards theta; by
    convexity of phi_k each keeps the trial-step conditions, which are still checked.

    Args:
        z: Trial step
        ts: Tangent solution z was drawn from
        b: Bundle anchored at x
        C: Feasible set
        cfg: Solver configuration
        on_kink: True where f has more than one active gradient

    Returns:
        np.ndarray: z itself when it is off the kinks or no candidate is, else the first
        candidate off the kinks
    """
    if not on_kink(z):
        return z
    x = b.anchor
    step = norm_value(ts.y_star - x, cfg.norm)
    predicted = b.f_anchor - ts.model_value
    for m in range(1, MAX_TRIAL_DRAWS + 1):
        eta = 1.0 - (1.0 - cfg.theta) * (1.0 - 0.5 ** m)
        w = x + eta * (z - x)
        if _step_conditions(w, b, C, cfg, step, predicted) and not on_kink(w):
            logger.debug(f"Trial step moved off a kink with eta={eta:.6f}")
            return w
    logger.debug("No trial step off the kinks along [x, z]; keeping z")
    return z
