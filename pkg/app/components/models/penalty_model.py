"""
Exact max-penalty model over the variable u = (t, delta).

The objective is t + c * max{0, v(delta)} with v the inner function (for instance
-alpha(A(delta))), and the model is t' + c * max{0, phi_inner(delta', delta)}.
"""

from typing import Any, Dict, List, Optional

import numpy as np

from app.components.base_component import BaseComponent
from app.core.bundle import NULL_STEP, CuttingPlane
from app.core.exceptions import ConfigurationError, DimensionMismatchError
from app.interfaces.model import FirstOrderModel
from app.interfaces.oracle import Oracle, activity_threshold


def _split(u: np.ndarray, n_inner: int):
    u = np.asarray(u, dtype=float)
    if u.shape != (n_inner + 1,):
        raise DimensionMismatchError(f"penalty variable has shape {u.shape}, expected ({n_inner + 1},)")
    return float(u[0]), u[1:]


class PenaltyOracle(Oracle):
    """f(t, delta) = t + c * max{0, v(delta)}; the zero piece wins ties."""

    def __init__(self, inner: Oracle, c: float):
        if c <= 0.0:
            raise ConfigurationError(f"penalty constant must be positive, got {c}")
        self.inner = inner
        self.c = float(c)
        self.n = inner.n + 1

    def f(self, u: np.ndarray) -> float:
        t, delta = _split(u, self.inner.n)
        return t + self.c * max(0.0, self.inner.f(delta))

    def _lift(self, g_inner: Optional[np.ndarray]) -> np.ndarray:
        g = np.zeros(self.n)
        g[0] = 1.0
        if g_inner is not None:
            g[1:] = self.c * g_inner
        return g

    def subgrad(self, u: np.ndarray) -> np.ndarray:
        _, delta = _split(u, self.inner.n)
        if self.inner.f(delta) > 0.0:
            return self._lift(self.inner.subgrad(delta))
        return self._lift(None)

    def active_gradients(self, u: np.ndarray) -> List[np.ndarray]:
        _, delta = _split(u, self.inner.n)
        v = self.inner.f(delta)
        threshold = activity_threshold(max(0.0, v))
        grads = []
        if 0.0 >= threshold:
            grads.append(self._lift(None))
        if v >= threshold:
            grads.extend(self._lift(g) for g in self.inner.active_gradients(delta))
        return grads


class PenaltyMaxModel(BaseComponent, FirstOrderModel):
    """
    Max of the two models t' and t' + c * phi_inner(delta', delta).

    Args:
        inner: First-order model of the constraint function v
        c: Penalty constant; falls back to the component's ``c`` config value
    """

    def __init__(self, component_id: str = "penalty_max", config: Optional[Dict[str, Any]] = None,
                 *, inner: FirstOrderModel, c: Optional[float] = None):
        super().__init__(component_id, config)
        self.inner = inner
        self.c = float(c if c is not None else self.get_config_value("c", 100.0))
        self.oracle = PenaltyOracle(inner.oracle, self.c)

    def inner_model_value(self, y: np.ndarray, x: np.ndarray) -> float:
        _, d_y = _split(y, self.inner.n)
        _, d_x = _split(x, self.inner.n)
        return self.inner.model_eval(d_y, d_x)

    def model_eval(self, y: np.ndarray, x: np.ndarray) -> float:
        t_y, _ = _split(y, self.inner.n)
        return t_y + self.c * max(0.0, self.inner_model_value(y, x))

    def model_cut(self, x: np.ndarray, z: np.ndarray, birth: int = 0) -> CuttingPlane:
        """
        Cut of whichever piece is larger at z: the zero piece (t, (1, 0)) or the lifted
        inner cut (t + c a_in, (1, c g_in)). The zero piece wins ties.
        """
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        t_x, d_x = _split(x, self.inner.n)
        _, d_z = _split(z, self.inner.n)
        g = np.zeros(self.n)
        g[0] = 1.0
        if self.inner.model_eval(d_z, d_x) <= 0.0:
            return CuttingPlane(a=t_x, g=g, anchor=x, origin=NULL_STEP, z=z, birth=birth)
        cut = self.inner.model_cut(d_x, d_z, birth)
        g[1:] = self.c * cut.g
        return CuttingPlane(a=t_x + self.c * cut.a, g=g, anchor=x, origin=NULL_STEP, z=z, birth=birth)


def penalty_eval(model: PenaltyMaxModel, y: np.ndarray) -> float:
    """
    Exact penalty objective t + c * max{0, v(delta)} at y = (t, delta).

    Args:
        model: Penalty model
        y: Point (t, delta)

    Returns:
        float: Penalized value
    """
    return model.oracle.f(y)
