"""
Convex objective used as its own model: phi(y, x) = f(y).
"""

from typing import Any, Dict, Optional

import numpy as np

from app.components.base_component import BaseComponent
from app.core.bundle import NULL_STEP, CuttingPlane
from app.interfaces.model import FirstOrderModel
from app.interfaces.oracle import Oracle


class ConvexSelfModel(BaseComponent, FirstOrderModel):
    """Full model of a convex f; its cutting planes are tangents of f itself."""

    global_minorants = True

    def __init__(self, component_id: str = "convex_self", config: Optional[Dict[str, Any]] = None,
                 *, oracle: Oracle):
        super().__init__(component_id, config)
        self.oracle = oracle

    def model_eval(self, y: np.ndarray, x: np.ndarray) -> float:
        return self.oracle.f(np.asarray(y, dtype=float))

    def model_cut(self, x: np.ndarray, z: np.ndarray, birth: int = 0) -> CuttingPlane:
        """Tangent f(z) + g^T (. - z), g in the subdifferential at z, re-anchored at x."""
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        g = self.oracle.subgrad(z)
        a = self.oracle.f(z) + float(g @ (x - z))
        return CuttingPlane(a=a, g=g, anchor=x, origin=NULL_STEP, z=z, birth=birth)
