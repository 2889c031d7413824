"""
First-order model interface.

A first-order model phi(., x) of f at x is convex in its first argument, exact at x
(phi(x, x) = f(x)) and a one-sided Taylor approximation of f near x. Cutting planes
are affine minorants of phi(., x) tangent at a trial point.
"""

from abc import ABC, abstractmethod

import numpy as np

from app.core.bundle import EXACTNESS, CuttingPlane
from app.interfaces.oracle import Oracle


class FirstOrderModel(ABC):
    """Ideal model phi(y, x) together with its cutting-plane generator."""

    oracle: Oracle

    # True when every cutting plane is a global minorant of f, so planes may be
    # re-anchored at the next serious iterate.
    global_minorants: bool = False

    @property
    def n(self) -> int:
        return self.oracle.n

    def f(self, x: np.ndarray) -> float:
        return self.oracle.f(x)

    @abstractmethod
    def model_eval(self, y: np.ndarray, x: np.ndarray) -> float:
        """Ideal model value phi(y, x)."""

    @abstractmethod
    def model_cut(self, x: np.ndarray, z: np.ndarray, birth: int = 0) -> CuttingPlane:
        """
        Cutting plane (a, g) of phi(., x) at the trial point z.

        g is a subgradient of phi(., x) at z and a = phi(z, x) + g^T (x - z), so the
        plane touches the model at z.
        """

    def exactness_plane(self, x: np.ndarray, f_x: float) -> CuttingPlane:
        """
        Plane (f(x), g0) with g0 a subgradient of f at x.

        Args:
            x: Serious iterate
            f_x: f(x)

        Returns:
            CuttingPlane: Exactness plane anchored at x
        """
        return CuttingPlane(a=f_x, g=self.oracle.subgrad(x), anchor=x, origin=EXACTNESS, birth=0)
