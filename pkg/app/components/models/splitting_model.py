"""
Splitting model for f = g + h, g smooth and h convex.

phi(y, x) = g(x) + grad g(x)^T (y - x) + h(y).
"""

from typing import Any, Dict, Optional

import numpy as np

from app.components.base_component import BaseComponent
from app.components.models.oracles import MaxAffineOracle, SumOracle
from app.core.bundle import NULL_STEP, CuttingPlane
from app.interfaces.model import FirstOrderModel
from app.interfaces.oracle import Oracle


class SplittingModel(BaseComponent, FirstOrderModel):
    """First-order Taylor expansion of the smooth part plus the convex part itself."""

    def __init__(self, component_id: str = "splitting", config: Optional[Dict[str, Any]] = None,
                 *, g: Oracle, h: MaxAffineOracle):
        super().__init__(component_id, config)
        self.g = g
        self.h = h
        self.oracle = SumOracle(g, h)

    def model_eval(self, y: np.ndarray, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.g.f(x) + float(self.g.subgrad(x) @ (y - x)) + self.h.f(y)

    def model_cut(self, x: np.ndarray, z: np.ndarray, birth: int = 0) -> CuttingPlane:
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        s = self.h.subgrad(z)
        a = self.g.f(x) + self.h.f(z) + float(s @ (x - z))
        return CuttingPlane(a=a, g=self.g.subgrad(x) + s, anchor=x, origin=NULL_STEP, z=z, birth=birth)
