"""
Dragon problem component.
"""

from typing import Any, Dict, Optional

from app.bench.dragon import dragon_problem
from app.components.base_component import BaseComponent
from app.core.problem import ProblemInstance
from app.utils.logging_setup import TICK_ICON


class DragonProblem(BaseComponent):
    """
    Builds the dragon counterexample.

    Config/context keys: ``a`` (level of the start point, default 11) and ``x1``
    (position on the level set, default (a/11)/sqrt(2)).
    """

    def __init__(self, component_id: str = "dragon", config: Optional[Dict[str, Any]] = None):
        super().__init__(component_id, config)

    def execute(self, context: Dict[str, Any]) -> ProblemInstance:
        a = float(context.get("a", self.get_config_value("a", 11.0)))
        x1 = context.get("x1", self.get_config_value("x1"))
        problem = dragon_problem(a, None if x1 is None else float(x1))
        self.logger.info(f"{TICK_ICON} Built dragon problem at level a={a}, start {problem.x0.tolist()}")
        return problem
