"""
Concrete objective oracles: max-of-affine, smooth, composite h(F(x)) and smooth + convex sums.
"""

from typing import Callable, List, Sequence

import numpy as np

from app.core.exceptions import DimensionMismatchError, OracleError
from app.interfaces.oracle import Oracle, activity_threshold


class MaxAffineOracle(Oracle):
    """
    f(x) = max_i (c_i + g_i^T x).

    Also serves as the convex piecewise-max function h of natural and splitting models.
    Ties are broken by the lowest piece index everywhere.
    """

    def __init__(self, offsets: Sequence[float], slopes: Sequence[Sequence[float]]):
        self.offsets = np.array(offsets, dtype=float).reshape(-1)
        self.slopes = np.atleast_2d(np.array(slopes, dtype=float))
        if self.slopes.shape[0] != self.offsets.shape[0]:
            raise DimensionMismatchError(
                f"{self.offsets.shape[0]} offsets but {self.slopes.shape[0]} slope rows")
        self.n = self.slopes.shape[1]

    def pieces(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionMismatchError(f"point has shape {x.shape}, oracle dimension is {self.n}")
        return self.offsets + self.slopes @ x

    def active_indices(self, x: np.ndarray) -> List[int]:
        values = self.pieces(x)
        threshold = activity_threshold(float(values.max()))
        return [i for i, v in enumerate(values) if v >= threshold]

    def f(self, x: np.ndarray) -> float:
        return float(self.pieces(x).max())

    def subgrad(self, x: np.ndarray) -> np.ndarray:
        return self.slopes[int(np.argmax(self.pieces(x)))].copy()

    def active_gradients(self, x: np.ndarray) -> List[np.ndarray]:
        return [self.slopes[i].copy() for i in self.active_indices(x)]


class SmoothOracle(Oracle):
    """Continuously differentiable f with user-supplied gradient."""

    def __init__(self, n: int, fun: Callable[[np.ndarray], float],
                 grad: Callable[[np.ndarray], np.ndarray]):
        self.n = n
        self._fun = fun
        self._grad = grad

    def f(self, x: np.ndarray) -> float:
        value = float(self._fun(np.asarray(x, dtype=float)))
        if not np.isfinite(value):
            raise OracleError(f"objective is not finite at {x}")
        return value

    def subgrad(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._grad(np.asarray(x, dtype=float)), dtype=float).reshape(self.n)


class SmoothMap:
    """C^1 map F: R^n -> R^p given by value and Jacobian callables."""

    def __init__(self, n: int, p: int, value: Callable[[np.ndarray], np.ndarray],
                 jacobian: Callable[[np.ndarray], np.ndarray]):
        self.n = n
        self.p = p
        self._value = value
        self._jacobian = jacobian

    def value(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._value(np.asarray(x, dtype=float)), dtype=float).reshape(self.p)

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._jacobian(np.asarray(x, dtype=float)), dtype=float).reshape(self.p, self.n)


class CompositeOracle(Oracle):
    """f = h o F with h convex piecewise max-affine on R^p and F a C^1 map."""

    def __init__(self, h: MaxAffineOracle, F: SmoothMap):
        if h.n != F.p:
            raise DimensionMismatchError(f"h acts on R^{h.n} but F maps into R^{F.p}")
        self.h = h
        self.F = F
        self.n = F.n

    def f(self, x: np.ndarray) -> float:
        return self.h.f(self.F.value(x))

    def subgrad(self, x: np.ndarray) -> np.ndarray:
        return self.F.jacobian(x).T @ self.h.subgrad(self.F.value(x))

    def active_gradients(self, x: np.ndarray) -> List[np.ndarray]:
        J = self.F.jacobian(x)
        return [J.T @ w for w in self.h.active_gradients(self.F.value(x))]


class SumOracle(Oracle):
    """f = g + h with g smooth and h convex piecewise max-affine on R^n."""

    def __init__(self, g: Oracle, h: MaxAffineOracle):
        if g.n != h.n:
            raise DimensionMismatchError(f"g has dimension {g.n}, h has {h.n}")
        self.g = g
        self.h = h
        self.n = g.n

    def f(self, x: np.ndarray) -> float:
        return self.g.f(x) + self.h.f(x)

    def subgrad(self, x: np.ndarray) -> np.ndarray:
        return self.g.subgrad(x) + self.h.subgrad(x)

    def active_gradients(self, x: np.ndarray) -> List[np.ndarray]:
        grad = self.g.subgrad(x)
        return [grad + s for s in self.h.active_gradients(x)]
