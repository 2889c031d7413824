"""
Problem instances: an objective oracle, a feasible set, a start point and the hooks
needed to build first-order models of the objective.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from app.core.exceptions import ConfigurationError, DimensionMismatchError
from app.core.feasible import FeasibleSet, as_vector
from app.interfaces.oracle import Oracle

# models that need nothing but the oracle
ORACLE_ONLY_MODELS = ("standard", "convex_self")


@dataclass(frozen=True)
class ProblemInstance:
    """
    Minimize ``oracle.f`` over ``feasible`` starting from ``x0``.

    Attributes:
        name: Problem id (built-in name or file stem)
        oracle: Objective oracle
        feasible: Feasible set C
        x0: Start point, must lie in C
        default_model: Model id used when the caller does not choose one
        model_hooks: Constructor keyword arguments per model id, for models that need
            more than the oracle (natural, splitting, penalty_max)
        convex: True when f is convex, so ``convex_self`` is a valid model
        task: ``min``, ``wc-alpha``, ``wc-hinf`` or ``distance``
        metadata: Extra facts reported alongside the run
    """

    name: str
    oracle: Oracle
    feasible: FeasibleSet
    x0: np.ndarray
    default_model: str = "standard"
    model_hooks: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    convex: bool = False
    task: str = "min"
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        x0 = as_vector(self.x0, self.oracle.n, name="x0")
        if self.feasible.n != self.oracle.n:
            raise DimensionMismatchError(
                f"feasible set has dimension {self.feasible.n}, oracle {self.oracle.n}")
        if not self.feasible.contains(x0):
            raise ConfigurationError(f"start point {x0.tolist()} of problem {self.name} is not in C")
        object.__setattr__(self, "x0", x0)

    @property
    def n(self) -> int:
        return self.oracle.n

    def supported_models(self) -> List[str]:
        ids = list(self.model_hooks)
        ids.append("standard")
        if self.convex:
            ids.append("convex_self")
        return sorted(set(ids))

    def model_kwargs(self, kind: str) -> Dict[str, Any]:
        """
        Keyword arguments for building model ``kind`` of this problem.

        Args:
            kind: Model id

        Returns:
            Dict[str, Any]: Constructor arguments

        Raises:
            ConfigurationError: If the model does not apply to this problem
        """
        if kind in self.model_hooks:
            return dict(self.model_hooks[kind])
        if kind in ORACLE_ONLY_MODELS and kind in self.supported_models():
            return {"oracle": self.oracle}
        raise ConfigurationError(
            f"model '{kind}' is not available for problem {self.name}; "
            f"choose one of {self.supported_models()}")
