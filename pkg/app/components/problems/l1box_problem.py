"""
Weighted l1 norm over a box.
"""

from typing import Any, Dict

from app.bench.polyhedral import l1box_problem
from app.components.base_component import BaseComponent
from app.core.problem import ProblemInstance


class L1BoxProblem(BaseComponent):
    """f(x) = |x1| + 2|x2| over [-2, 2]^2, started at (1.5, 1). Takes no parameters."""

    def execute(self, context: Dict[str, Any]) -> ProblemInstance:
        return l1box_problem()
