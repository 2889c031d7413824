"""
Standard model phi#(y, x) = f(x) + f°(x, y - x).
"""

from typing import Any, Dict, Optional

import numpy as np

from app.components.base_component import BaseComponent
from app.core.bundle import NULL_STEP, CuttingPlane
from app.interfaces.model import FirstOrderModel
from app.interfaces.oracle import Oracle


class StandardModel(BaseComponent, FirstOrderModel):
    """
    Standard model built from the Clarke directional derivative.

    Every cutting plane of the standard model is also an exactness plane: its value at
    the anchor is f(x) and its slope is one of the active gradients at x.
    """

    def __init__(self, component_id: str = "standard", config: Optional[Dict[str, Any]] = None,
                 *, oracle: Oracle):
        super().__init__(component_id, config)
        self.oracle = oracle

    def model_eval(self, y: np.ndarray, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        return self.oracle.f(x) + self.oracle.dir_deriv(x, np.asarray(y, dtype=float) - x)

    def model_cut(self, x: np.ndarray, z: np.ndarray, birth: int = 0) -> CuttingPlane:
        """
        Plane (f(x), g_z) with g_z maximizing g^T (z - x) over the active gradients at x.

        Ties go to the lowest piece index.
        """
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        grads = np.vstack(self.oracle.active_gradients(x))
        g = grads[int(np.argmax(grads @ (z - x)))]
        return CuttingPlane(a=self.oracle.f(x), g=g, anchor=x, origin=NULL_STEP, z=z, birth=birth)
