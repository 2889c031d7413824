"""
Natural model of a composite function f = h o F.

phi(y, x) = h(F(x) + F'(x)(y - x)) with h convex piecewise max-affine.
"""

from typing import Any, Dict, Optional

import numpy as np

from app.components.base_component import BaseComponent
from app.components.models.oracles import CompositeOracle, MaxAffineOracle, SmoothMap
from app.core.bundle import NULL_STEP, CuttingPlane
from app.interfaces.model import FirstOrderModel


class NaturalModel(BaseComponent, FirstOrderModel):
    """Linearize the smooth inner map, keep the convex outer function exact."""

    def __init__(self, component_id: str = "natural", config: Optional[Dict[str, Any]] = None,
                 *, h: MaxAffineOracle, F: SmoothMap):
        super().__init__(component_id, config)
        self.h = h
        self.F = F
        self.oracle = CompositeOracle(h, F)

    def _linearization(self, y: np.ndarray, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.F.value(x) + self.F.jacobian(x) @ (np.asarray(y, dtype=float) - x)

    def model_eval(self, y: np.ndarray, x: np.ndarray) -> float:
        return self.h.f(self._linearization(y, x))

    def model_cut(self, x: np.ndarray, z: np.ndarray, birth: int = 0) -> CuttingPlane:
        """
        Pick the piece i of h active at F(x) + F'(x)(z - x); the plane is
        a = c_i + w_i^T F(x), g = F'(x)^T w_i.
        """
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        i = int(np.argmax(self.h.pieces(self._linearization(z, x))))
        w = self.h.slopes[i]
        a = self.h.offsets[i] + float(w @ self.F.value(x))
        g = self.F.jacobian(x).T @ w
        return CuttingPlane(a=a, g=g, anchor=x, origin=NULL_STEP, z=z, birth=birth)
