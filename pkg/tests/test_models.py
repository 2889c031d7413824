import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.components.models import (CompositeOracle, ConvexSelfModel, MaxAffineOracle, NaturalModel,
                                   PenaltyMaxModel, PenaltyOracle, SmoothMap, SmoothOracle,
                                   SplittingModel, StandardModel, penalty_eval)
from app.bench.random_lft import random_lft_instance
from app.control.plant import closed_loop_A
from app.control.problems import WorstCaseAlphaOracle
from app.control.spectral import spectral_abscissa
from app.core.bundle import EXACTNESS, add_plane, new_bundle, plane_eval, working_model_eval
from app.core.exceptions import ConfigurationError, DimensionMismatchError
from app.utils.fd_check import check_gradient


def _abs_oracle():
    """|y| on R as a max of two pieces"""
    return MaxAffineOracle([0.0, 0.0], [[1.0], [-1.0]])


def _l1_oracle():
    return MaxAffineOracle([0.0] * 4, [[1.0, 2.0], [1.0, -2.0], [-1.0, 2.0], [-1.0, -2.0]])


def _square_oracle():
    return SmoothOracle(1, lambda x: float(x[0] ** 2), lambda x: np.array([2.0 * x[0]]))


def _touches(model, x, z):
    plane = model.model_cut(x, z)
    return plane_eval(plane, z, x) == pytest.approx(model.model_eval(z, x))


class TestOracles:
    """Objective oracles"""

    def test_max_affine_ties_and_directional_derivative(self):
        oracle = _abs_oracle()
        x = np.zeros(1)
        assert oracle.active_indices(x) == [0, 1]
        assert oracle.subgrad(x) == pytest.approx([1.0])
        assert oracle.dir_deriv(x, np.array([-2.0])) == pytest.approx(2.0)

    def test_max_affine_dimension_checks(self):
        with pytest.raises(DimensionMismatchError):
            MaxAffineOracle([0.0], [[1.0], [2.0]])
        with pytest.raises(DimensionMismatchError):
            _l1_oracle().f(np.zeros(3))

    def test_composite_oracle(self):
        F = SmoothMap(1, 1, lambda x: np.array([x[0] ** 2 - 1.0]), lambda x: np.array([[2.0 * x[0]]]))
        oracle = CompositeOracle(_abs_oracle(), F)
        assert oracle.f(np.array([0.5])) == pytest.approx(0.75)
        # F < 0 there, so the second piece is active and the chain rule flips the sign
        assert oracle.subgrad(np.array([0.5])) == pytest.approx([-1.0])

    def test_composite_dimension_mismatch(self):
        F = SmoothMap(1, 2, lambda x: np.zeros(2), lambda x: np.zeros((2, 1)))
        with pytest.raises(DimensionMismatchError):
            CompositeOracle(_abs_oracle(), F)

    def test_smooth_gradient_matches_finite_differences(self):
        oracle = SmoothOracle(2, lambda x: float(np.sin(x[0]) * x[1] ** 2),
                              lambda x: np.array([np.cos(x[0]) * x[1] ** 2, 2.0 * np.sin(x[0]) * x[1]]))
        assert check_gradient(oracle.f, oracle.subgrad, [0.3, -1.2]) < 1e-6

    def test_sum_oracle(self):
        oracle = SplittingModel(g=_square_oracle(), h=_abs_oracle()).oracle
        assert oracle.f(np.array([-2.0])) == pytest.approx(6.0)
        assert oracle.subgrad(np.array([-2.0])) == pytest.approx([-5.0])


class TestStandardModel:
    """Standard model from the Clarke directional derivative"""

    def test_exact_at_anchor(self):
        model = StandardModel(oracle=_l1_oracle())
        x = np.array([0.3, -0.7])
        assert model.model_eval(x, x) == pytest.approx(model.f(x))

    def test_cut_picks_steepest_active_gradient(self):
        model = StandardModel(oracle=_l1_oracle())
        plane = model.model_cut(np.zeros(2), np.array([1.0, 1.0]))
        assert plane.a == pytest.approx(0.0)
        assert plane.g == pytest.approx([1.0, 2.0])

    def test_cut_touches_model(self):
        model = StandardModel(oracle=_l1_oracle())
        assert _touches(model, np.zeros(2), np.array([-0.5, 0.25]))

    def test_exactness_plane(self):
        model = StandardModel(oracle=_l1_oracle())
        x = np.array([1.0, 1.0])
        plane = model.exactness_plane(x, model.f(x))
        assert plane.origin == EXACTNESS
        assert plane.a == pytest.approx(3.0)
        assert plane.g == pytest.approx([1.0, 2.0])


class TestConvexSelfModel:
    """Convex objective as its own model"""

    def test_planes_are_global_minorants(self):
        oracle = _l1_oracle()
        model = ConvexSelfModel(oracle=oracle)
        x = np.array([0.5, 0.5])
        plane = model.model_cut(x, np.array([-1.0, 0.2]))
        rng = np.random.Generator(np.random.Philox(7))
        for y in rng.uniform(-3.0, 3.0, (50, 2)):
            assert plane_eval(plane, y, x) <= oracle.f(y) + 1e-12

    def test_cut_touches_model(self):
        model = ConvexSelfModel(oracle=_l1_oracle())
        assert _touches(model, np.array([0.5, 0.5]), np.array([-1.0, 0.2]))
        assert model.global_minorants


class TestNaturalModel:
    """h(F(x) + F'(x)(y - x)) with h = |.| and F(x) = x^2 - 1"""

    @pytest.fixture
    def model(self):
        F = SmoothMap(1, 1, lambda x: np.array([x[0] ** 2 - 1.0]), lambda x: np.array([[2.0 * x[0]]]))
        return NaturalModel(h=_abs_oracle(), F=F)

    def test_exact_at_anchor(self, model):
        x = np.array([2.0])
        assert model.model_eval(x, x) == pytest.approx(3.0)

    def test_cut(self, model):
        x = np.array([2.0])
        plane = model.model_cut(x, np.array([0.0]))
        # linearization at 0 is 3 + 4 (0 - 2) = -5, so the piece -u is active
        assert plane.a == pytest.approx(-3.0)
        assert plane.g == pytest.approx([-4.0])
        assert _touches(model, x, np.array([0.0]))


class TestSplittingModel:
    """x^2 linearized plus |x| kept exact"""

    def test_model_value(self):
        model = SplittingModel(g=_square_oracle(), h=_abs_oracle())
        assert model.model_eval(np.array([-1.0]), np.array([1.0])) == pytest.approx(-2.0)

    def test_cut(self):
        model = SplittingModel(g=_square_oracle(), h=_abs_oracle())
        x, z = np.array([1.0]), np.array([-1.0])
        plane = model.model_cut(x, z)
        assert plane.a == pytest.approx(0.0)
        assert plane.g == pytest.approx([1.0])
        assert _touches(model, x, z)


class TestPenaltyModel:
    """t + c max{0, v(delta)} with v(delta) = delta - 1"""

    @pytest.fixture
    def inner(self):
        return SmoothOracle(1, lambda d: float(d[0] - 1.0), lambda d: np.array([1.0]))

    @pytest.fixture
    def model(self, inner):
        return PenaltyMaxModel(inner=StandardModel(oracle=inner), c=10.0)

    def test_oracle_value_and_subgradients(self, inner):
        oracle = PenaltyOracle(inner, 10.0)
        assert oracle.f(np.array([0.5, 2.0])) == pytest.approx(10.5)
        assert oracle.subgrad(np.array([0.0, 2.0])) == pytest.approx([1.0, 10.0])
        assert oracle.subgrad(np.array([0.0, 0.0])) == pytest.approx([1.0, 0.0])
        # on the constraint boundary both pieces are active
        assert len(oracle.active_gradients(np.array([0.0, 1.0]))) == 2

    def test_nonpositive_constant_rejected(self, inner):
        with pytest.raises(ConfigurationError):
            PenaltyOracle(inner, 0.0)

    def test_config_supplies_constant(self, inner):
        model = PenaltyMaxModel(config={"c": 3.0}, inner=StandardModel(oracle=inner))
        assert model.c == 3.0
        assert model.n == 2

    def test_lifted_cut(self, model):
        x, z = np.zeros(2), np.array([0.0, 2.0])
        plane = model.model_cut(x, z)
        assert plane.a == pytest.approx(-10.0)
        assert plane.g == pytest.approx([1.0, 10.0])
        assert _touches(model, x, z)

    def test_zero_piece_cut(self, model):
        plane = model.model_cut(np.zeros(2), np.array([0.0, 0.5]))
        assert plane.a == pytest.approx(0.0)
        assert plane.g == pytest.approx([1.0, 0.0])

    def test_penalty_eval(self, model):
        assert penalty_eval(model, np.array([1.0, 1.5])) == pytest.approx(6.0)

    def test_wrong_variable_length(self, model):
        with pytest.raises(DimensionMismatchError):
            model.model_eval(np.zeros(3), np.zeros(2))


def _natural_model():
    # |x1^2 + sin(x2) - 1|
    F = SmoothMap(2, 1, lambda x: np.array([x[0] ** 2 + np.sin(x[1]) - 1.0]),
                  lambda x: np.array([[2.0 * x[0], np.cos(x[1])]]))
    return NaturalModel(h=_abs_oracle(), F=F)


def _splitting_model():
    g = SmoothOracle(2, lambda x: float(np.sin(x[0]) + x[1] ** 2), lambda x: np.array([np.cos(x[0]), 2.0 * x[1]]))
    return SplittingModel(g=g, h=_l1_oracle())


def _penalty_model():
    inner = SmoothOracle(1, lambda d: float(d[0] ** 2 - 0.5), lambda d: np.array([2.0 * d[0]]))
    return PenaltyMaxModel(inner=StandardModel(oracle=inner), c=10.0)


MODEL_BUILDERS = {
    "standard": lambda: StandardModel(oracle=_l1_oracle()),
    "convex_self": lambda: ConvexSelfModel(oracle=_l1_oracle()),
    "natural": _natural_model,
    "splitting": _splitting_model,
    "penalty_max": _penalty_model,
}


class TestModelAxioms:
    """
    Properties every first-order model must have, on random points:
    - exact at the anchor
    - first-order agreement with f along shrinking steps
    - cutting planes below the model and touching it at the trial point
    - working models below the model, exact at the newest trial point
    """

    @pytest.fixture(params=sorted(MODEL_BUILDERS))
    def model(self, request):
        return MODEL_BUILDERS[request.param]()

    @pytest.fixture
    def rng(self):
        return np.random.Generator(np.random.Philox(2024))

    def test_exact_at_anchor(self, model, rng):
        for x in rng.uniform(-2.0, 2.0, (100, model.n)):
            f_x = model.f(x)
            assert abs(model.model_eval(x, x) - f_x) <= 1e-12 * (1.0 + abs(f_x))

    def test_first_order_agreement(self, model, rng):
        steps = [10.0 ** -k for k in range(1, 7)]
        for _ in range(20):
            x = rng.uniform(-2.0, 2.0, model.n)
            d = rng.standard_normal(model.n)
            d /= np.linalg.norm(d)
            ratios = [(model.f(x + t * d) - model.model_eval(x + t * d, x)) / t for t in steps]
            # the remainder is second order, so the ratio shrinks like t
            assert ratios[-1] <= 1e-6 + 20.0 * steps[-1]

    def test_cut_is_a_minorant_of_the_model(self, model, rng):
        for _ in range(5):
            x = rng.uniform(-2.0, 2.0, model.n)
            z = x + rng.uniform(-1.0, 1.0, model.n)
            plane = model.model_cut(x, z)
            assert _touches(model, x, z)
            for y in x + rng.uniform(-3.0, 3.0, (200, model.n)):
                phi = model.model_eval(y, x)
                assert plane_eval(plane, y, x) <= phi + 1e-10 * (1.0 + abs(phi))

    def test_working_model_below_model(self, model, rng):
        x = rng.uniform(-1.0, 1.0, model.n)
        f_x = model.f(x)
        bundle = new_bundle(model.exactness_plane(x, f_x), f_x)
        for k, z in enumerate(x + rng.uniform(-1.0, 1.0, (5, model.n)), start=1):
            add_plane(bundle, model.model_cut(x, z, birth=k))
        for y in x + rng.uniform(-1.5, 1.5, (1000, model.n)):
            phi = model.model_eval(y, x)
            assert working_model_eval(bundle, y) <= phi + 1e-10 * (1.0 + abs(phi))

    def test_working_model_exact_at_newest_trial_point(self, model, rng):
        x = rng.uniform(-1.0, 1.0, model.n)
        f_x = model.f(x)
        bundle = new_bundle(model.exactness_plane(x, f_x), f_x)
        for k, z in enumerate(x + rng.uniform(-1.0, 1.0, (10, model.n)), start=1):
            add_plane(bundle, model.model_cut(x, z, birth=k))
            phi = model.model_eval(z, x)
            assert working_model_eval(bundle, z) == pytest.approx(phi, abs=1e-10 * (1.0 + abs(phi)))

    def test_exactness_plane_is_below_model(self, model, rng):
        for x in rng.uniform(-2.0, 2.0, (20, model.n)):
            plane = model.exactness_plane(x, model.f(x))
            for y in x + rng.uniform(-1.0, 1.0, (50, model.n)):
                phi = model.model_eval(y, x)
                assert plane_eval(plane, y, x) <= phi + 1e-10 * (1.0 + abs(phi))


class TestPenaltyGradients:
    """Subgradients of the penalty objective against central differences away from kinks"""

    def test_smooth_inner_function(self):
        oracle = _penalty_model().oracle
        rng = np.random.Generator(np.random.Philox(5))
        checked = 0
        for u in rng.uniform(-2.0, 2.0, (50, 2)):
            # stay away from the kink v(delta) = 0
            if abs(u[1] ** 2 - 0.5) < 1e-2:
                continue
            assert check_gradient(oracle.f, oracle.subgrad, u) <= 1e-6
            checked += 1
        assert checked >= 40

    @pytest.mark.parametrize("seed", range(5))
    def test_negated_spectral_abscissa_inner_function(self, seed):
        plant = random_lft_instance(2, 4, seed, affine=False)
        oracle = PenaltyOracle(WorstCaseAlphaOracle(plant), 5.0)
        rng = np.random.Generator(np.random.Philox(100 + seed))
        for delta in rng.uniform(-0.3, 0.3, (10, 2)):
            A = closed_loop_A(plant, delta)
            # skip the penalty kink alpha = 0 and eigenvalue collisions
            if abs(spectral_abscissa(A)[0]) < 1e-3 or not _simple_abscissa(A):
                continue
            u = np.concatenate([[0.5], delta])
            assert check_gradient(oracle.f, oracle.subgrad, u) <= 1e-5


def _simple_abscissa(A, gap: float = 1e-3) -> bool:
    """True when the rightmost eigenvalue is real and simple or one simple conjugate pair."""
    values = np.linalg.eigvals(A)
    top = values.real.max()
    near = values[values.real >= top - gap]
    if near.size == 1:
        return abs(near[0].imag) < gap
    return near.size == 2 and abs(near[0].imag + near[1].imag) < gap and abs(near[0].imag) >= gap
