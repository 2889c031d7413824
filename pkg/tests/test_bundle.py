import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.bundle import (EXACTNESS, NULL_STEP, Bundle, CuttingPlane, add_plane, new_bundle,
                             plane_eval, prune_planes, recycle_planes, working_model_eval)
from app.core.exceptions import BundleError, DimensionMismatchError
from app.core.feasible import FeasibleSet, as_vector


class TestFeasibleSet:
    """Feasible sets and vector validation"""

    def test_box_membership(self):
        C = FeasibleSet.box([-1.0, -1.0], [1.0, 2.0])
        assert C.contains(np.array([1.0, 2.0]))
        assert not C.contains(np.array([1.1, 0.0]))

    def test_polyhedron_membership(self):
        # x1 + x2 <= 1 with x >= 0
        C = FeasibleSet.polyhedron([[1.0, 1.0]], [1.0], lower=[0.0, 0.0])
        assert C.contains(np.array([0.5, 0.5]))
        assert not C.contains(np.array([0.8, 0.5]))
        assert not C.contains(np.array([-0.1, 0.5]))

    def test_all_space_bounds_are_infinite(self):
        lo, hi = FeasibleSet.all_space(3).bounds()
        assert np.all(np.isneginf(lo)) and np.all(np.isposinf(hi))

    def test_inverted_box_rejected(self):
        with pytest.raises(DimensionMismatchError):
            FeasibleSet.box([1.0], [0.0])

    def test_as_vector_rejects_nan_and_wrong_dimension(self):
        with pytest.raises(DimensionMismatchError):
            as_vector([1.0, float("nan")])
        with pytest.raises(DimensionMismatchError):
            as_vector([1.0, 2.0], 3)

    def test_as_vector_rejects_infinity_unless_allowed(self):
        with pytest.raises(DimensionMismatchError):
            as_vector([1.0, np.inf])
        assert np.isposinf(as_vector([1.0, np.inf], finite=False)[1])
        with pytest.raises(DimensionMismatchError):
            as_vector([np.nan], finite=False)

    def test_polyhedron_with_infinite_bounds(self):
        # t >= 0, delta free, t + delta_1 <= 3
        C = FeasibleSet.polyhedron([[1.0, 1.0, 0.0]], [3.0], lower=[0.0, -np.inf, -np.inf],
                                   upper=[np.inf, np.inf, np.inf])
        lo, hi = C.bounds()
        assert lo[0] == 0.0 and np.isneginf(lo[1]) and np.all(np.isposinf(hi))
        assert C.contains(np.array([1.0, -50.0, 1e6]))
        assert not C.contains(np.array([-0.5, 0.0, 0.0]))
        assert not C.contains(np.array([2.0, 2.0, 0.0]))

    def test_box_with_half_infinite_sides(self):
        C = FeasibleSet.box([0.0, -np.inf], [np.inf, 1.0])
        assert C.contains(np.array([1e9, -1e9]))
        with pytest.raises(DimensionMismatchError):
            FeasibleSet.box([np.inf], [np.inf])


class TestBundle:
    """
    Cutting planes and the working model:
    - plane evaluation
    - exactness planes and duplicates
    - pruning rules
    - recycling at a new anchor
    """

    @pytest.fixture
    def x(self):
        return np.array([1.0, 0.0])

    @pytest.fixture
    def bundle(self, x):
        exact = CuttingPlane(a=1.0, g=[1.0, 2.0], anchor=x, origin=EXACTNESS)
        return new_bundle(exact, 1.0, max_bundle=3)

    def test_plane_eval(self, x):
        p = CuttingPlane(a=2.0, g=[1.0, -1.0], anchor=x)
        assert plane_eval(p, np.array([2.0, 1.0]), x) == pytest.approx(2.0)

    def test_plane_eval_dimension_mismatch(self, x):
        p = CuttingPlane(a=0.0, g=[1.0, 0.0], anchor=x)
        with pytest.raises(DimensionMismatchError):
            plane_eval(p, np.array([1.0, 2.0, 3.0]), x)

    def test_exactness_plane_is_exact_at_anchor(self, bundle, x):
        assert working_model_eval(bundle, x) == pytest.approx(bundle.f_anchor)

    def test_bundle_must_start_from_exactness_plane(self, x):
        with pytest.raises(BundleError):
            new_bundle(CuttingPlane(a=0.0, g=[0.0, 0.0], anchor=x), 0.0)

    def test_working_model_is_max_of_planes(self, bundle, x):
        add_plane(bundle, CuttingPlane(a=0.5, g=[-1.0, 0.0], anchor=x))
        y = np.array([-1.0, 0.0])
        # exactness plane: 1 - 2 = -1, new plane: 0.5 + 2 = 2.5
        assert working_model_eval(bundle, y) == pytest.approx(2.5)

    def test_empty_bundle_model_undefined(self, x):
        with pytest.raises(BundleError):
            working_model_eval(Bundle(anchor=x, f_anchor=0.0), x)

    def test_duplicate_plane_skipped(self, bundle, x):
        add_plane(bundle, CuttingPlane(a=1.0, g=[1.0, 2.0], anchor=x, origin=NULL_STEP))
        assert len(bundle) == 1

    def test_plane_anchored_elsewhere_rejected(self, bundle):
        with pytest.raises(BundleError):
            add_plane(bundle, CuttingPlane(a=0.0, g=[0.0, 1.0], anchor=[0.0, 0.0]))

    def test_pruning_keeps_exactness_and_newest_plane(self, bundle, x):
        for i in range(4):
            add_plane(bundle, CuttingPlane(a=-float(i), g=[0.0, float(i + 1)], anchor=x, birth=i + 1))
        assert len(bundle) <= bundle.max_bundle
        assert bundle.has_exactness_plane()
        assert bundle.planes[-1].birth == 4

    def test_pruning_drops_inactive_planes_first(self, x):
        exact = CuttingPlane(a=0.0, g=[0.0, 0.0], anchor=x, origin=EXACTNESS)
        b = new_bundle(exact, 0.0, max_bundle=10)
        for i in range(1, 5):
            add_plane(b, CuttingPlane(a=-float(i), g=[float(i), 0.0], anchor=x, birth=i))
        b.max_bundle = 3
        # plane at index 1 (birth 1) was active, index 2 (birth 2) was not
        b.last_active = {1}
        prune_planes(b)
        births = [p.birth for p in b.planes]
        assert births == [0, 1, 4]

    def test_recycled_planes_keep_their_values(self, x):
        exact = CuttingPlane(a=1.0, g=[1.0, 2.0], anchor=x, origin=EXACTNESS)
        b = new_bundle(exact, 1.0)
        add_plane(b, CuttingPlane(a=0.0, g=[-1.0, 1.0], anchor=x))
        x_new = np.array([0.0, 1.0])
        moved = recycle_planes(b, x_new, 2.0)
        y = np.array([0.5, -0.5])
        for old, new in zip(b.planes, moved.planes):
            assert plane_eval(new, y, x_new) == pytest.approx(plane_eval(old, y, x))
        assert not moved.has_exactness_plane()
