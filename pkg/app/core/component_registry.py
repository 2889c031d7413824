"""
Component registry.

Maps ``(type, id)`` pairs such as ``("models", "penalty_max")`` or
``("problems", "dragon")`` to classes and their descriptor defaults.
"""

import importlib
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from app.core.exceptions import ComponentRegistryError
from app.utils.logging_setup import CROSS_ICON, TICK_ICON


class ComponentRegistry:
    """
    Registry of first-order models and built-in problems.

    Class paths come from the ``component_registry`` section of ``main.yaml``; descriptors
    under ``components/<type>/*.yaml`` add ``default_config`` values and may register
    further classes. Every ``create_component`` call returns a new instance, since models
    hold per-problem state.
    """

    def __init__(self, config_dir: Optional[str] = None):
        """
        Args:
            config_dir: Directory holding ``main.yaml`` and ``components/``
        """
        self.logger = logging.getLogger("core.component_registry")
        self.config_dir = config_dir

        # type -> id -> dotted class path
        self._classes: Dict[str, Dict[str, str]] = {}
        # type -> id -> descriptor
        self._descriptors: Dict[str, Dict[str, Dict[str, Any]]] = {}

        if config_dir:
            self._load()

    def _read_yaml(self, path: Path) -> Dict[str, Any]:
        with open(path, 'r') as file:
            return yaml.safe_load(file) or {}

    def _load(self) -> None:
        """
        Read class paths and descriptors.

        Raises:
            ComponentRegistryError: If the directory is missing or a file cannot be parsed
        """
        root = Path(self.config_dir)
        if not root.exists():
            raise ComponentRegistryError(f"Configuration directory not found: {self.config_dir}")
        try:
            main_path = root / "main.yaml"
            if main_path.exists():
                registry = self._read_yaml(main_path).get('component_registry') or {}
                for component_type, entries in registry.items():
                    self._classes.setdefault(component_type, {}).update(entries or {})

            for descriptor_path in sorted((root / "components").glob("*/*.yaml")):
                component_type = descriptor_path.parent.name
                descriptor = self._read_yaml(descriptor_path)
                component = descriptor.get('component') or {}
                if 'id' not in component:
                    self.logger.warning(f"{CROSS_ICON} Skipping descriptor {descriptor_path}: no component id")
                    continue
                self._descriptors.setdefault(component_type, {})[component['id']] = descriptor
                if 'class' in component:
                    self._classes.setdefault(component_type, {})[component['id']] = component['class']
        except (OSError, yaml.YAMLError) as e:
            self.logger.error(f"{CROSS_ICON} Cannot read component registry in {self.config_dir}: {str(e)}")
            raise ComponentRegistryError(f"Cannot read component registry: {str(e)}") from e

        count = sum(len(entries) for entries in self._classes.values())
        self.logger.debug(f"{TICK_ICON} Registry has {count} classes over types {self.list_component_types()}")

    def resolve_class(self, component_type: str, component_id: str) -> type:
        """
        Import the class registered for ``component_type/component_id``.

        Raises:
            ComponentRegistryError: If the id is unknown or the class path does not import
        """
        try:
            class_path = self._classes[component_type][component_id]
        except KeyError:
            raise ComponentRegistryError(
                f"Unknown component {component_type}/{component_id}; "
                f"known: {self.list_components(component_type)}") from None
        module_path, class_name = class_path.rsplit('.', 1)
        try:
            return getattr(importlib.import_module(module_path), class_name)
        except (ImportError, AttributeError) as e:
            raise ComponentRegistryError(f"Cannot import {class_path}: {str(e)}") from e

    def get_default_config(self, component_type: str, component_id: str) -> Dict[str, Any]:
        """Copy of the descriptor's ``default_config`` (empty when there is no descriptor)."""
        descriptor = self._descriptors.get(component_type, {}).get(component_id, {})
        return dict(descriptor.get('default_config') or {})

    def create_component(self, component_type: str, component_id: str,
                         config_overrides: Optional[Dict[str, Any]] = None, **kwargs: Any) -> Any:
        """
        Build a new component.

        Args:
            component_type: ``models`` or ``problems``
            component_id: Registered id
            config_overrides: Values layered over ``default_config``; None values are ignored
            **kwargs: Constructor keyword arguments (oracle, inner model, ...)

        Returns:
            Any: New component instance

        Raises:
            ComponentRegistryError: If the component is unknown or rejects the arguments
        """
        component_class = self.resolve_class(component_type, component_id)
        config = self.get_default_config(component_type, component_id)
        config.update({k: v for k, v in (config_overrides or {}).items() if v is not None})
        try:
            component = component_class(component_id, config, **kwargs)
        except TypeError as e:
            self.logger.error(f"{CROSS_ICON} {component_type}/{component_id} rejected its arguments: {str(e)}")
            raise ComponentRegistryError(
                f"Failed to instantiate component {component_type}/{component_id}: {str(e)}") from e
        self.logger.debug(f"{TICK_ICON} Built {component_type}/{component_id}")
        return component

    def list_component_types(self) -> List[str]:
        return sorted(self._classes)

    def list_components(self, component_type: str) -> List[str]:
        return sorted(self._classes.get(component_type, {}))
