"""
Parametric robustness: LFT plants, spectral abscissa, H-infinity norm and the
optimization problems built on them.
"""

from app.control.hinf import hinf_active_gradients, hinf_gradient, hinf_norm, hinf_peaks
from app.control.plant import (LftPlant, build_delta_matrix, closed_loop_A, closed_loop_ss, dA_ddelta,
                               dump_plant, load_plant, plant_from_dict, transfer_derivative, transfer_eval)
from app.control.problems import (DistanceResult, WorstCaseAlphaOracle, WorstCaseHinfOracle,
                                  default_penalty_constant, distance_to_instability_problem,
                                  solve_distance_to_instability, worst_case_alpha_problem,
                                  worst_case_hinf_problem)
from app.control.spectral import alpha_active_gradients, alpha_gradient, spectral_abscissa

__all__ = [
    "DistanceResult",
    "LftPlant",
    "WorstCaseAlphaOracle",
    "WorstCaseHinfOracle",
    "alpha_active_gradients",
    "alpha_gradient",
    "build_delta_matrix",
    "closed_loop_A",
    "closed_loop_ss",
    "dA_ddelta",
    "default_penalty_constant",
    "distance_to_instability_problem",
    "dump_plant",
    "hinf_active_gradients",
    "hinf_gradient",
    "hinf_norm",
    "hinf_peaks",
    "load_plant",
    "plant_from_dict",
    "solve_distance_to_instability",
    "spectral_abscissa",
    "transfer_derivative",
    "transfer_eval",
    "worst_case_alpha_problem",
    "worst_case_hinf_problem",
]
