"""
Trust-region bundle solver: LP engine, tangent program, stopping tests and the
outer/inner loop driver.
"""

from app.solver.lp import LPSolution, simplex_lp
from app.solver.stopping import InnerCounters, stopping_inner, stopping_serious
from app.solver.tangent import (TangentSolution, shift_off_kinks, solve_tangent_euclid_single,
                                solve_tangent_lp, trial_step)
from app.solver.trust_region import (BUDGET_EXHAUSTED, CRITICAL, INNER_STALL, InnerOutcome, SolveResult,
                                     compute_rho, compute_rho_tilde, inner_loop, outer_solve,
                                     update_memory_radius, update_radius)

__all__ = [
    'BUDGET_EXHAUSTED',
    'CRITICAL',
    'INNER_STALL',
    'InnerCounters',
    'InnerOutcome',
    'LPSolution',
    'SolveResult',
    'TangentSolution',
    'compute_rho',
    'compute_rho_tilde',
    'inner_loop',
    'outer_solve',
    'simplex_lp',
    'shift_off_kinks',
    'solve_tangent_euclid_single',
    'solve_tangent_lp',
    'stopping_inner',
    'stopping_serious',
    'trial_step',
    'update_memory_radius',
    'update_radius',
]
