"""
Robustness problems over an LFT plant given as JSON.
"""

from pathlib import Path
from typing import Any, Dict

from app.components.base_component import BaseComponent
from app.control.plant import LftPlant, load_plant, plant_from_dict
from app.control.problems import (distance_to_instability_problem, worst_case_alpha_problem,
                                  worst_case_hinf_problem)
from app.core.exceptions import ConfigurationError
from app.core.problem import ProblemInstance
from app.utils.logging_setup import TICK_ICON

PLANT_TASKS = ("wc-alpha", "wc-hinf", "distance")


def resolve_plant(value: Any, base_dir: str = ".") -> LftPlant:
    """Plant from an LftPlant, a plant dict or a JSON path (relative to base_dir)."""
    if isinstance(value, LftPlant):
        return value
    if isinstance(value, dict):
        return plant_from_dict(value)
    if isinstance(value, (str, Path)):
        path = Path(value)
        return load_plant(str(path if path.is_absolute() else Path(base_dir) / path))
    raise ConfigurationError(f"cannot build a plant from {type(value).__name__}")


class PlantProblem(BaseComponent):
    """
    Builds wc-alpha, wc-hinf or distance problems.

    Context keys: ``plant`` (required), ``task`` (default from config), ``c`` and
    ``t_max`` for the distance task, ``base_dir`` for relative plant paths.
    """

    def execute(self, context: Dict[str, Any]) -> ProblemInstance:
        if "plant" not in context:
            raise ConfigurationError("plant problem needs a 'plant' field (file path or inline plant)")
        plant = resolve_plant(context["plant"], context.get("base_dir", "."))
        task = context.get("task") or self.get_config_value("task", "wc-alpha")
        if task not in PLANT_TASKS:
            raise ConfigurationError(f"task '{task}' does not apply to a plant; choose one of {list(PLANT_TASKS)}")

        if task == "wc-alpha":
            problem = worst_case_alpha_problem(plant)
        elif task == "wc-hinf":
            problem = worst_case_hinf_problem(plant)
        else:
            t_max = context.get("t_max", self.get_config_value("t_max", 1.0))
            problem = distance_to_instability_problem(plant, c=context.get("c", self.get_config_value("c")),
                                                      t_max=None if t_max is None else float(t_max))
        self.logger.info(f"{TICK_ICON} Built {task} problem for a plant with n={plant.n}, m={plant.m}")
        return problem
