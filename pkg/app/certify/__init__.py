"""
Global certification: Zheng's integral method, the stability decision test and a grid oracle.
"""

from app.certify.decision import CERTIFIED, REFUTED, StabilityDecision, stability_decision, worst_alpha_on_box
from app.certify.grid import GridResult, grid_axis, grid_certify
from app.certify.zheng import MONTE_CARLO, QUADRATURE_1D, ZhengResult, zheng_maximize

__all__ = [
    "CERTIFIED",
    "GridResult",
    "MONTE_CARLO",
    "QUADRATURE_1D",
    "REFUTED",
    "StabilityDecision",
    "ZhengResult",
    "grid_axis",
    "grid_certify",
    "stability_decision",
    "worst_alpha_on_box",
    "zheng_maximize",
]
