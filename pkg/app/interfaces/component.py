"""
Component interface.

Components are the pluggable, registry-instantiated building blocks of nsTrust:
first-order models and built-in problem builders.
"""

from abc import ABC
from typing import Any, Dict, Optional


class Component(ABC):
    """
    A registry entry made concrete.

    ``component_id`` is the id under ``component_registry`` in main.yaml; ``config`` is the
    descriptor's ``default_config`` merged with caller overrides.
    """

    def __init__(self, component_id: str, config: Optional[Dict[str, Any]] = None):
        self.component_id = component_id
        self.config = dict(config or {})

    def execute(self, context: Dict[str, Any]) -> Any:
        """
        Build what this component stands for (a model, a problem instance) from ``context``.

        Args:
            context: Keyword values that take precedence over ``config``

        Returns:
            Any: Component-specific result
        """
        raise NotImplementedError(f"component {self.component_id} cannot be executed")
