"""
Shared plumbing of registry components.
"""

import logging
from typing import Any, Dict, Optional

from app.interfaces.component import Component
from app.utils.logging_setup import TICK_ICON


class BaseComponent(Component):
    """Component with a per-class logger and descriptor-backed defaults."""

    def __init__(self, component_id: str, config: Optional[Dict[str, Any]] = None):
        super().__init__(component_id, config)
        self.logger = logging.getLogger(f"components.{component_id}")
        self.logger.debug(f"{TICK_ICON} {self.__class__.__name__} '{component_id}' ready, config={self.config}")

    def get_config_value(self, key: str, default: Any = None) -> Any:
        """
        Value of ``key`` from the merged component config.

        Args:
            key: Config key
            default: Returned when the key is absent or null

        Returns:
            Any: Configured value or ``default``
        """
        value = self.config.get(key)
        return default if value is None else value
