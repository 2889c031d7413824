"""
Loading of ``main.yaml`` and of problem/plant documents.
"""

import json
import logging
import os
from typing import Any, Dict, Optional

import yaml

from app.core.exceptions import ConfigurationError


class ConfigLoader:
    """
    Read-only view of ``main.yaml``: logging, ``solver`` and ``certify`` defaults,
    ``init_options`` and the component registry. ``load_document`` also reads the
    problem and plant files named on the command line.
    """

    def __init__(self, config_dir: Optional[str] = None, main_config_path: Optional[str] = None):
        """
        Args:
            config_dir: Directory holding ``main.yaml``
            main_config_path: Explicit path, overriding ``config_dir/main.yaml``
        """
        self.logger = logging.getLogger("core.config_loader")
        self.config_dir = config_dir
        self.main_config_path = main_config_path or (os.path.join(config_dir, "main.yaml") if config_dir else None)
        self._config: Dict[str, Any] = {}
        if self.main_config_path:
            self._config = self._read_main()

    def _read_main(self) -> Dict[str, Any]:
        if not os.path.exists(self.main_config_path):
            raise ConfigurationError(f"Main configuration file not found: {self.main_config_path}")
        try:
            with open(self.main_config_path, 'r') as file:
                config = yaml.safe_load(file) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Failed to parse {self.main_config_path}: {e}") from e
        if not isinstance(config, dict):
            raise ConfigurationError(f"Top level of {self.main_config_path} must be a mapping")
        self.logger.debug(f"Read {self.main_config_path}: sections {sorted(config)}")
        return config

    def get_section(self, name: str) -> Dict[str, Any]:
        """Copy of top-level section ``name`` (empty when absent)."""
        section = self._config.get(name) or {}
        if not isinstance(section, dict):
            raise ConfigurationError(f"Configuration section '{name}' must be a mapping")
        return dict(section)

    def get_value(self, key_path: str, default: Any = None) -> Any:
        """
        Value at a dotted path such as ``"solver.norm"``.

        Args:
            key_path: Dotted path
            default: Returned when any segment is missing

        Returns:
            Any: Configured value or ``default``
        """
        node: Any = self._config
        for key in key_path.split('.'):
            if not isinstance(node, dict) or key not in node:
                return default
            node = node[key]
        return node

    @staticmethod
    def load_document(path: str) -> Dict[str, Any]:
        """
        Load a JSON or YAML document (problem or plant file).

        ``.yaml``/``.yml`` files go through the YAML parser, everything else through
        the JSON parser; parse errors carry the reported line/column.

        Args:
            path: File path

        Returns:
            Dict[str, Any]: Parsed mapping

        Raises:
            ConfigurationError: If the file is missing, malformed or not a mapping
        """
        if not os.path.isfile(path):
            raise ConfigurationError(f"File not found: {path}")
        try:
            with open(path, 'r') as file:
                text = file.read()
        except OSError as e:
            raise ConfigurationError(f"Cannot read {path}: {e}") from e
        if os.path.splitext(path)[1].lower() in (".yaml", ".yml"):
            try:
                document = yaml.safe_load(text)
            except yaml.YAMLError as e:
                mark = getattr(e, "problem_mark", None)
                where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
                raise ConfigurationError(f"Malformed file {path}{where}: {e}") from e
        else:
            try:
                document = json.loads(text)
            except json.JSONDecodeError as e:
                raise ConfigurationError(f"Malformed file {path} at line {e.lineno}, column {e.colno}: {e.msg}") from e
        if not isinstance(document, dict):
            raise ConfigurationError(f"Top level of {path} must be an object")
        return document
