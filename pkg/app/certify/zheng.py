"""
Integral global optimization (Zheng's level-set mean iteration).

alpha_{k+1} is the mean of f over the superlevel set {f >= alpha_k}; the sequence is
nondecreasing and converges to max f. Two estimators of the mean are available:

- ``quadrature_1d``: exact superlevel intervals (brentq) and adaptive quadrature, m = 1 only
- ``monte_carlo``: rejection sampling of the superlevel set from the whole box on
  every sweep (superlevel sets need not be connected), counter-based Philox streams
  keyed by (seed, sweep, chunk) so the result does not depend on the thread count
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from app.core.exceptions import CertificationError
from app.utils.logging_setup import CROSS_ICON, TICK_ICON

logger = logging.getLogger("certify.zheng")

MONTE_CARLO = "monte_carlo"
QUADRATURE_1D = "quadrature_1d"

CHUNK_SIZE = 256
# rejection gives up after this many chunks per requested chunk of accepted samples
MAX_CHUNK_FACTOR = 50
QUADRATURE_GRID = 2001
MIN_MEASURE = 1e-14

Objective = Callable[[np.ndarray], float]


@dataclass
class ZhengResult:
    """
    Outcome of a Zheng run.

    Attributes:
        alpha: Last level alpha_k (the estimate of max f)
        best_value: Largest f value seen at any sample
        argbest: Point where ``best_value`` was attained
        iterations: Number of sweeps
        history: alpha_0, alpha_1, ..., alpha_k
        std_errors: Estimated standard error of each history entry (0 for alpha_0 and
            in quadrature mode)
        converged: False when the run ended on an empty superlevel set or the sweep cap
    """

    alpha: float
    best_value: float
    argbest: np.ndarray
    iterations: int
    history: List[float] = field(default_factory=list)
    std_errors: List[float] = field(default_factory=list)
    converged: bool = True


def _box(lower: Sequence[float], upper: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    lo = np.asarray(lower, dtype=float).reshape(-1)
    hi = np.asarray(upper, dtype=float).reshape(-1)
    if lo.shape != hi.shape or lo.size == 0:
        raise CertificationError(f"box bounds must be nonempty vectors of equal length, got {lo.shape} and {hi.shape}")
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))) or np.any(lo > hi):
        raise CertificationError("box bounds must be finite with lower <= upper")
    return lo, hi


def _chunk(objective: Objective, lo: np.ndarray, hi: np.ndarray, seed: int, sweep: int,
           index: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, sweep, index])))
    X = rng.uniform(lo, hi, size=(CHUNK_SIZE, lo.size))
    F = np.fromiter((objective(x) for x in X), dtype=float, count=CHUNK_SIZE)
    return X, F


class _Sampler:
    """Draws the accepted samples of one sweep, chunk by chunk, in chunk order."""

    def __init__(self, objective: Objective, seed: int, n_samples: int, threads: int):
        self.objective = objective
        self.seed = seed
        self.n_samples = n_samples
        self.threads = max(1, int(threads))
        self.max_chunks = MAX_CHUNK_FACTOR * math.ceil(n_samples / CHUNK_SIZE)
        # best over every consumed candidate, rejected ones included
        self.best_value = -np.inf
        self.argbest: Optional[np.ndarray] = None

    def _track(self, X: np.ndarray, F: np.ndarray) -> None:
        i = int(np.argmax(F))
        if F[i] > self.best_value:
            self.best_value, self.argbest = float(F[i]), X[i].copy()

    def draw(self, executor: Optional[ThreadPoolExecutor], lo: np.ndarray, hi: np.ndarray,
             level: Optional[float], sweep: int) -> Tuple[np.ndarray, np.ndarray]:
        kept_X, kept_F = [], []
        accepted = 0
        index = 0
        while accepted < self.n_samples and index < self.max_chunks:
            batch = range(index, min(index + self.threads, self.max_chunks))
            if executor is None:
                results = [_chunk(self.objective, lo, hi, self.seed, sweep, i) for i in batch]
            else:
                results = list(executor.map(lambda i: _chunk(self.objective, lo, hi, self.seed, sweep, i), batch))
            # chunks are consumed in index order and the tail is discarded, so the thread
            # count only changes how many chunks are evaluated, never which are used
            for X, F in results:
                if accepted >= self.n_samples:
                    break
                self._track(X, F)
                mask = np.ones(F.size, dtype=bool) if level is None else F >= level
                kept_X.append(X[mask])
                kept_F.append(F[mask])
                accepted += int(mask.sum())
            index = batch.stop
        if not kept_F:
            return np.empty((0, lo.size)), np.empty(0)
        return np.vstack(kept_X)[:self.n_samples], np.concatenate(kept_F)[:self.n_samples]


def _monte_carlo(objective: Objective, lo: np.ndarray, hi: np.ndarray, samples_per_dim: int, var_tol: float,
                 seed: int, alpha0: Optional[float], threads: int, max_sweeps: int) -> ZhengResult:
    sampler = _Sampler(objective, seed, samples_per_dim * lo.size, threads)
    # a warm-start level is alpha_0 itself
    history = [] if alpha0 is None else [float(alpha0)]
    std_errors = [0.0] * len(history)
    alpha = alpha0
    converged = False

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        sweep = 0
        while sweep < max_sweeps:
            _, F = sampler.draw(executor, lo, hi, alpha, sweep)
            if F.size == 0:
                logger.warning(f"{CROSS_ICON} Empty superlevel set estimate at level {alpha!r}, sweep {sweep}; "
                               f"stopping at the last level")
                break
            if alpha is None:
                alpha = float(F.min())
            if not history:
                history.append(float(alpha))
                std_errors.append(0.0)

            alpha = float(F.mean())
            variance = float(F.var(ddof=1)) if F.size > 1 else 0.0
            history.append(alpha)
            std_errors.append(math.sqrt(variance / F.size))
            sweep += 1
            logger.debug(f"sweep {sweep}: alpha={alpha:.10g} var={variance:.3e} n={F.size}")
            if variance < var_tol:
                converged = True
                break
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    best_value, argbest = sampler.best_value, sampler.argbest
    if not history:
        return ZhengResult(alpha=best_value, best_value=best_value, argbest=argbest, iterations=0,
                           history=[], std_errors=[], converged=False)
    return ZhengResult(alpha=history[-1], best_value=best_value, argbest=argbest, iterations=len(history) - 1,
                       history=history, std_errors=std_errors, converged=converged)


def _superlevel_intervals(g: Callable[[float], float], grid: np.ndarray) -> List[Tuple[float, float]]:
    """Intervals of the grid's span where g >= 0, with endpoints refined by brentq."""
    inside = np.array([g(s) >= 0.0 for s in grid])
    intervals = []
    start = None
    for i, s in enumerate(grid):
        if inside[i] and start is None:
            start = float(s) if i == 0 else brentq(g, grid[i - 1], s)
        elif not inside[i] and start is not None:
            intervals.append((start, brentq(g, grid[i - 1], s)))
            start = None
    if start is not None:
        intervals.append((start, float(grid[-1])))
    return intervals


def _quadrature_1d(objective: Objective, lo: np.ndarray, hi: np.ndarray, var_tol: float,
                   alpha0: Optional[float], max_sweeps: int) -> ZhengResult:
    if lo.size != 1:
        raise CertificationError(f"quadrature mode needs a 1-D box, got dimension {lo.size}")

    def f(s: float) -> float:
        return float(objective(np.array([s])))

    grid = np.linspace(lo[0], hi[0], QUADRATURE_GRID)
    values = np.array([f(s) for s in grid])
    i_best = int(np.argmax(values))
    best_value, argbest = float(values[i_best]), np.array([grid[i_best]])

    alpha = float(values.min()) if alpha0 is None else float(alpha0)
    history, std_errors = [alpha], [0.0]
    converged = False
    for _ in range(max_sweeps):
        level = alpha
        intervals = _superlevel_intervals(lambda s: f(s) - level, grid)
        measure = sum(b - a for a, b in intervals)
        if measure < MIN_MEASURE:
            logger.warning(f"{CROSS_ICON} Superlevel set at level {alpha!r} has measure {measure:.3e}; "
                           f"returning the best grid point")
            break
        mass = sum(quad(f, a, b)[0] for a, b in intervals)
        alpha = mass / measure
        variance = sum(quad(lambda s: (f(s) - alpha) ** 2, a, b)[0] for a, b in intervals) / measure
        history.append(alpha)
        std_errors.append(0.0)
        logger.debug(f"sweep {len(history) - 1}: alpha={alpha:.12g} var={variance:.3e} measure={measure:.6g}")
        if variance < var_tol:
            converged = True
            break

    return ZhengResult(alpha=history[-1], best_value=max(best_value, history[-1]), argbest=argbest,
                       iterations=len(history) - 1, history=history, std_errors=std_errors, converged=converged)


def zheng_maximize(objective: Objective, lower: Sequence[float], upper: Sequence[float],
                   samples_per_dim: int = 2000, var_tol: float = 1e-7, seed: int = 0,
                   mode: str = MONTE_CARLO, alpha0: Optional[float] = None, threads: int = 1,
                   max_sweeps: int = 100) -> ZhengResult:
    """
    Estimate max f over a box by iterating the mean of f over its superlevel set.

    Args:
        objective: f, called with a point of the box
        lower: Lower box corner
        upper: Upper box corner
        samples_per_dim: Monte-Carlo samples per sweep and per dimension
        var_tol: Stop when the variance of f over the superlevel set falls below this
        seed: Seed of the counter-based generator
        mode: ``monte_carlo`` or ``quadrature_1d``
        alpha0: Initial level; defaults to the smallest initial sample, so the first
            sweep returns the mean of f over the box. A solver lower bound here warm-starts
            the iteration.
        threads: Worker threads for Monte-Carlo sampling
        max_sweeps: Sweep cap

    Returns:
        ZhengResult: Level sequence, best sample and standard errors

    Raises:
        CertificationError: On invalid box, seed or mode
    """
    lo, hi = _box(lower, upper)
    if seed < 0:
        raise CertificationError(f"seed must be nonnegative, got {seed}")
    if samples_per_dim < 2 or var_tol <= 0.0 or max_sweeps < 1:
        raise CertificationError("need samples_per_dim >= 2, var_tol > 0 and max_sweeps >= 1")

    if mode == QUADRATURE_1D:
        result = _quadrature_1d(objective, lo, hi, var_tol, alpha0, max_sweeps)
    elif mode == MONTE_CARLO:
        result = _monte_carlo(objective, lo, hi, samples_per_dim, var_tol, seed, alpha0, threads, max_sweeps)
    else:
        raise CertificationError(f"unknown Zheng mode '{mode}'; use {MONTE_CARLO} or {QUADRATURE_1D}")

    icon = TICK_ICON if result.converged else CROSS_ICON
    logger.info(f"{icon} Zheng ({mode}) alpha={result.alpha:.10g} best={result.best_value:.10g} "
                f"after {result.iterations} sweeps")
    return result
