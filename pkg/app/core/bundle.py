"""
Cutting planes and bundles: the working model phi_k(., x) of the trust-region solver.

A bundle is owned and mutated by the single solver run that builds it; cutting planes
themselves are immutable.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Set

import numpy as np

from app.core.exceptions import BundleError, DimensionMismatchError

logger = logging.getLogger("core.bundle")

EXACTNESS = "exactness"
NULL_STEP = "null_step"


@dataclass(frozen=True)
class CuttingPlane:
    """
    Affine minorant m(y) = a + g^T (y - anchor) of a model anchored at the serious iterate.

    Attributes:
        a: Value at the anchor
        g: Slope
        anchor: Serious iterate the plane is anchored at
        origin: ``"exactness"`` or ``"null_step"``
        z: Null step the plane was generated at (None for exactness planes)
        birth: Inner iteration index at creation
    """

    a: float
    g: np.ndarray
    anchor: np.ndarray
    origin: str = NULL_STEP
    z: Optional[np.ndarray] = None
    birth: int = 0

    def __post_init__(self):
        g = np.array(self.g, dtype=float).reshape(-1)
        anchor = np.array(self.anchor, dtype=float).reshape(-1)
        if g.shape != anchor.shape:
            raise DimensionMismatchError(f"plane slope has dimension {g.size}, anchor {anchor.size}")
        g.setflags(write=False)
        anchor.setflags(write=False)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "a", float(self.a))
        if self.z is not None:
            z = np.array(self.z, dtype=float).reshape(-1)
            z.setflags(write=False)
            object.__setattr__(self, "z", z)

    @property
    def is_exactness(self) -> bool:
        return self.origin == EXACTNESS

    def same_cut(self, other: "CuttingPlane") -> bool:
        """Exact (a, g) equality."""
        return self.a == other.a and np.array_equal(self.g, other.g)


def plane_eval(p: CuttingPlane, y: np.ndarray, x: np.ndarray) -> float:
    """
    Evaluate a + g^T (y - x).

    Args:
        p: Cutting plane
        y: Evaluation point
        x: Anchor

    Returns:
        float: Plane value at y

    Raises:
        DimensionMismatchError: If dimensions disagree
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != p.g.shape or x.shape != p.g.shape:
        raise DimensionMismatchError(
            f"plane_eval dimensions differ: g {p.g.shape}, y {y.shape}, x {x.shape}")
    return float(p.a + p.g @ (y - x))


@dataclass
class Bundle:
    """
    Ordered set of cutting planes anchored at ``anchor`` defining phi_k.

    ``last_active`` holds the indices of planes active at the latest tangent-program
    solution; pruning consults it.
    """

    anchor: np.ndarray
    f_anchor: float
    planes: List[CuttingPlane] = field(default_factory=list)
    max_bundle: int = 50
    last_active: Set[int] = field(default_factory=set)

    def __post_init__(self):
        self.anchor = np.array(self.anchor, dtype=float).reshape(-1)
        self.anchor.setflags(write=False)
        self.f_anchor = float(self.f_anchor)

    def __len__(self) -> int:
        return len(self.planes)

    @property
    def n(self) -> int:
        return self.anchor.shape[0]

    def slopes(self) -> np.ndarray:
        """Plane slopes stacked row-wise, shape (k, n)."""
        return np.vstack([p.g for p in self.planes])

    def offsets(self) -> np.ndarray:
        """Plane values at the anchor, shape (k,)."""
        return np.array([p.a for p in self.planes])

    def has_exactness_plane(self) -> bool:
        return any(p.is_exactness for p in self.planes)


def new_bundle(exactness_plane: CuttingPlane, f_anchor: float, max_bundle: int = 50) -> Bundle:
    """
    Start a bundle at the exactness plane's anchor.

    Args:
        exactness_plane: Plane with a = f(anchor)
        f_anchor: Objective value at the anchor
        max_bundle: Plane budget

    Returns:
        Bundle: One-plane bundle
    """
    if not exactness_plane.is_exactness:
        raise BundleError("a bundle must be started from an exactness plane")
    return Bundle(anchor=exactness_plane.anchor, f_anchor=f_anchor,
                  planes=[exactness_plane], max_bundle=max_bundle)


def working_model_eval(b: Bundle, y: np.ndarray) -> float:
    """
    phi_k(y, x) = max over planes of a + g^T (y - x).

    Args:
        b: Bundle
        y: Evaluation point

    Returns:
        float: Working-model value

    Raises:
        BundleError: If the bundle is empty
    """
    if not b.planes:
        raise BundleError("working model of an empty bundle is undefined")
    y = np.asarray(y, dtype=float)
    if y.shape != b.anchor.shape:
        raise DimensionMismatchError(f"point has shape {y.shape}, bundle dimension is {b.n}")
    return float(np.max(b.offsets() + b.slopes() @ (y - b.anchor)))


def add_plane(b: Bundle, p: CuttingPlane) -> Bundle:
    """
    Add a cutting plane, skipping exact duplicates, and prune when over budget.

    Args:
        b: Bundle (mutated)
        p: Plane anchored at b.anchor

    Returns:
        Bundle: The same bundle

    Raises:
        BundleError: If the plane is anchored elsewhere
    """
    if p.anchor.shape != b.anchor.shape or not np.array_equal(p.anchor, b.anchor):
        raise BundleError("cutting plane anchored away from the bundle's serious iterate")
    for existing in b.planes:
        if existing.same_cut(p):
            logger.debug("Duplicate cutting plane skipped")
            return b
    b.planes.append(p)
    if len(b.planes) > b.max_bundle:
        prune_planes(b)
    return b


def prune_planes(b: Bundle) -> Bundle:
    """
    Drop planes oldest-first until the bundle fits ``max_bundle``.

    Exactness planes and the newest null-step plane always survive. Planes inactive
    at the last tangent-program solution go first; if the bundle is still too large,
    active planes follow in age order.

    Args:
        b: Bundle (mutated)

    Returns:
        Bundle: The same bundle
    """
    excess = len(b.planes) - b.max_bundle
    if excess <= 0:
        return b

    null_indices = [i for i, p in enumerate(b.planes) if not p.is_exactness]
    newest_null = null_indices[-1] if null_indices else None
    protected = {i for i, p in enumerate(b.planes) if p.is_exactness}
    if newest_null is not None:
        protected.add(newest_null)

    # list order is age order
    candidates = [i for i in range(len(b.planes)) if i not in protected]
    inactive = [i for i in candidates if i not in b.last_active]
    active = [i for i in candidates if i in b.last_active]
    doomed = set((inactive + active)[:excess])

    b.planes = [p for i, p in enumerate(b.planes) if i not in doomed]
    b.last_active = set()
    logger.debug(f"Pruned {len(doomed)} planes, {len(b.planes)} remain")
    return b


def recycle_planes(b: Bundle, new_anchor: np.ndarray, f_new: float) -> Bundle:
    """
    Re-anchor every plane of a bundle at a new serious iterate.

    Only valid when the planes are global minorants of f (convex objective used as its
    own model); the new value at the anchor is a+ = a + g^T (x+ - x).

    Args:
        b: Bundle anchored at the previous serious iterate
        new_anchor: New serious iterate
        f_new: Objective value at the new serious iterate

    Returns:
        Bundle: New bundle without exactness plane (the caller adds one)
    """
    new_anchor = np.asarray(new_anchor, dtype=float)
    planes = [
        CuttingPlane(a=plane_eval(p, new_anchor, b.anchor), g=p.g, anchor=new_anchor,
                     origin=NULL_STEP, z=p.z, birth=0)
        for p in b.planes
    ]
    return Bundle(anchor=new_anchor, f_anchor=f_new, planes=planes, max_bundle=b.max_bundle)
