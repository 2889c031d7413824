"""
Certification of a distance-to-instability estimate.

d* is certified when the worst-case spectral abscissa is negative on the box shrunk to
(1 - gamma) d* and positive on the box grown to (1 + gamma) d*.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.certify.grid import grid_certify
from app.certify.zheng import MONTE_CARLO, zheng_maximize
from app.control.plant import LftPlant, closed_loop_A
from app.control.spectral import spectral_abscissa
from app.core.exceptions import CertificationError
from app.utils.logging_setup import CROSS_ICON, TICK_ICON

logger = logging.getLogger("certify.decision")

CERTIFIED = "certified"
REFUTED = "refuted"


@dataclass
class StabilityDecision:
    """``side`` names the failing test of a refuted estimate: ``under`` or ``over``."""

    verdict: str
    side: Optional[str]
    d_star: float
    gamma_conf: float
    alpha_under: float
    alpha_over: float

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def describe(self) -> str:
        if self.certified:
            return CERTIFIED
        return f"{REFUTED}({self.side})"


def worst_alpha_on_box(plant: LftPlant, radius: float, method: str = "zheng", seed: int = 0,
                       samples_per_dim: int = 2000, var_tol: float = 1e-7, threads: int = 1,
                       grid_step: float = 0.01) -> float:
    """
    Estimate max alpha(A(delta)) over [-radius, radius]^m.

    The Zheng estimate is the best sample seen, which never exceeds the true maximum.
    """
    m = plant.m

    def alpha(delta: np.ndarray) -> float:
        return spectral_abscissa(closed_loop_A(plant, delta))[0]

    lower, upper = -radius * np.ones(m), radius * np.ones(m)
    if method == "grid":
        return grid_certify(alpha, lower, upper, step=grid_step * max(radius, 1e-12)).max_value
    if method != "zheng":
        raise CertificationError(f"unknown certification method '{method}'")
    return zheng_maximize(alpha, lower, upper, samples_per_dim=samples_per_dim, var_tol=var_tol,
                          seed=seed, mode=MONTE_CARLO, threads=threads).best_value


def stability_decision(plant: LftPlant, d_star: float, gamma_conf: float = 0.05, method: str = "zheng",
                       seed: int = 0, samples_per_dim: int = 2000, var_tol: float = 1e-7,
                       threads: int = 1) -> StabilityDecision:
    """
    Certify or refute d* with confidence margin gamma_conf.

    Args:
        plant: Plant whose distance to instability was estimated
        d_star: Estimated distance
        gamma_conf: Relative margin of the shrunk and grown boxes
        method: ``zheng`` (Monte-Carlo) or ``grid`` (m <= 3)
        seed: Seed for the Monte-Carlo certifier
        samples_per_dim: Monte-Carlo samples per dimension
        var_tol: Zheng variance tolerance
        threads: Sampling threads

    Returns:
        StabilityDecision: Verdict with both worst-case abscissas

    Raises:
        CertificationError: If d_star <= 0 or gamma_conf is outside (0, 1)
    """
    if not d_star > 0.0:
        raise CertificationError(f"d_star must be positive, got {d_star}")
    if not 0.0 < gamma_conf < 1.0:
        raise CertificationError(f"gamma_conf must lie in (0, 1), got {gamma_conf}")

    options = dict(method=method, seed=seed, samples_per_dim=samples_per_dim, var_tol=var_tol, threads=threads)
    alpha_under = worst_alpha_on_box(plant, (1.0 - gamma_conf) * d_star, **options)
    alpha_over = worst_alpha_on_box(plant, (1.0 + gamma_conf) * d_star, **options)

    if alpha_under >= 0.0:
        verdict, side = REFUTED, "under"
    elif alpha_over <= 0.0:
        verdict, side = REFUTED, "over"
    else:
        verdict, side = CERTIFIED, None
    decision = StabilityDecision(verdict=verdict, side=side, d_star=float(d_star), gamma_conf=gamma_conf,
                                 alpha_under=alpha_under, alpha_over=alpha_over)
    icon = TICK_ICON if decision.certified else CROSS_ICON
    logger.info(f"{icon} d*={d_star:.10g}: {decision.describe()} "
                f"(alpha_under={alpha_under:.6g}, alpha_over={alpha_over:.6g})")
    return decision
