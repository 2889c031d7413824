"""
Max-of-affine problem component: inline pieces or a seeded random instance.
"""

from typing import Any, Dict

from app.bench.polyhedral import polyhedral_problem, random_polyhedral_problem
from app.components.base_component import BaseComponent
from app.core.exceptions import ConfigurationError
from app.core.problem import ProblemInstance
from app.utils.logging_setup import TICK_ICON


class PolyhedralProblem(BaseComponent):
    """
    Polyhedral problem builder.

    With ``pieces`` in the context (rows [c, g...]) the problem is built inline from
    ``pieces``, ``box`` and ``x0``; otherwise a random instance is drawn from ``n``,
    ``n_pieces``, ``seed`` and ``radius``.
    """

    def execute(self, context: Dict[str, Any]) -> ProblemInstance:
        if "pieces" in context:
            if "x0" not in context:
                raise ConfigurationError("inline polyhedral problem needs an 'x0' field")
            problem = polyhedral_problem(context["pieces"], context.get("box"), context["x0"],
                                         name=context.get("name", self.component_id))
        else:
            def option(key, default):
                return context.get(key, self.get_config_value(key, default))

            problem = random_polyhedral_problem(n=int(option("n", 2)), n_pieces=int(option("n_pieces", 6)),
                                                seed=int(option("seed", 0)), radius=float(option("radius", 2.0)))
        self.logger.info(f"{TICK_ICON} Built polyhedral problem {problem.name} with "
                         f"{problem.oracle.offsets.size} pieces in dimension {problem.n}")
        return problem
