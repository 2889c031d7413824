"""
Problem files (JSON or YAML).

A file either names a built-in (``builtin: dragon`` plus overrides), defines a
polyhedral problem inline (``pieces``, ``box``, ``x0``) or is a plant JSON itself.
An optional ``solver`` section overrides solver defaults and ``model`` picks the model.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from app.control.plant import MATRIX_KEYS
from app.core.config_loader import ConfigLoader
from app.core.exceptions import ConfigurationError

logger = logging.getLogger("components.problem_file")


@dataclass
class ProblemSpec:
    """Parsed problem file: which built-in builds it and with what context."""

    builtin: str
    params: Dict[str, Any] = field(default_factory=dict)
    solver: Dict[str, Any] = field(default_factory=dict)
    model: Optional[str] = None
    source: str = "<inline>"


def parse_problem_spec(data: Any, source: str = "<inline>") -> ProblemSpec:
    """
    Interpret the content of a problem file.

    Raises:
        ConfigurationError: If the content is not an object or names no problem
    """
    if not isinstance(data, dict):
        raise ConfigurationError(f"{source}: problem file must contain an object")
    data = dict(data)
    solver = data.pop("solver", None) or {}
    if not isinstance(solver, dict):
        raise ConfigurationError(f"{source}: field 'solver' must be an object")
    model = data.pop("model", None)

    if all(key in data for key in MATRIX_KEYS):
        return ProblemSpec(builtin="plant", params={"plant": data}, solver=solver, model=model, source=source)
    builtin = data.pop("builtin", None)
    if builtin is None:
        if "pieces" not in data:
            raise ConfigurationError(f"{source}: expected a 'builtin' field, inline 'pieces' or plant matrices")
        builtin = "polyhedral"
    return ProblemSpec(builtin=str(builtin), params=data, solver=solver, model=model, source=source)


def load_problem_spec(path: str) -> ProblemSpec:
    """
    Load a problem file; relative plant paths inside it resolve against its directory.

    Args:
        path: JSON or YAML file

    Returns:
        ProblemSpec: Parsed specification

    Raises:
        ConfigurationError: If the file is missing or malformed (with line/column when known)
    """
    file_path = Path(path)
    spec = parse_problem_spec(ConfigLoader.load_document(str(file_path)), source=str(file_path))
    spec.params.setdefault("base_dir", str(file_path.parent))
    spec.params.setdefault("name", file_path.stem)
    logger.debug(f"Loaded problem file {path} -> builtin {spec.builtin}")
    return spec
