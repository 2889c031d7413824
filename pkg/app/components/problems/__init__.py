"""
Built-in problem components and problem-file parsing.
"""

from app.components.problems.dragon_problem import DragonProblem
from app.components.problems.l1box_problem import L1BoxProblem
from app.components.problems.plant_problem import PlantProblem, resolve_plant
from app.components.problems.polyhedral_problem import PolyhedralProblem
from app.components.problems.problem_file import ProblemSpec, load_problem_spec, parse_problem_spec

__all__ = [
    "DragonProblem",
    "L1BoxProblem",
    "PlantProblem",
    "PolyhedralProblem",
    "ProblemSpec",
    "load_problem_spec",
    "parse_problem_spec",
    "resolve_plant",
]
