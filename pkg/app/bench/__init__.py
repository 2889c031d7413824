"""
Built-in benchmark problems.
"""

from app.bench.dragon import (DragonState, dragon_f, dragon_oracle, dragon_polygon, dragon_problem,
                              dragon_quantities, dragon_rho, dragon_start)
from app.bench.polyhedral import l1box_problem, polyhedral_problem, random_polyhedral_problem
from app.bench.random_lft import random_lft_instance

__all__ = [
    "DragonState",
    "dragon_f",
    "dragon_oracle",
    "dragon_polygon",
    "dragon_problem",
    "dragon_quantities",
    "dragon_rho",
    "dragon_start",
    "l1box_problem",
    "polyhedral_problem",
    "random_lft_instance",
    "random_polyhedral_problem",
]
