import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.bundle import EXACTNESS, CuttingPlane, add_plane, new_bundle, working_model_eval
from app.core.exceptions import TangentProgramError
from app.core.feasible import FeasibleSet
from app.core.settings import SolverConfig
from app.solver.lp import simplex_lp
from app.solver.tangent import (norm_value, solve_tangent_euclid_single, solve_tangent_lp,
                                trial_step)


class TestSimplexLP:
    """HiGHS-backed LP with certified duals"""

    def test_bounded_lp_with_duals(self):
        # min -x1 - x2  s.t.  x1 + 2 x2 <= 4,  0 <= x <= 3
        sol = simplex_lp([-1.0, -1.0], [(0.0, 3.0), (0.0, 3.0)], np.array([[1.0, 2.0]]), [4.0])
        assert sol.x == pytest.approx([3.0, 0.5])
        assert sol.value == pytest.approx(-3.5)
        assert sol.duality_gap < 1e-9
        # stationarity in the nonnegative dual convention
        c = np.array([-1.0, -1.0])
        recon = -np.array([[1.0, 2.0]]).T @ sol.row_duals + sol.lower_duals - sol.upper_duals
        assert recon == pytest.approx(c, abs=1e-9)
        assert np.all(sol.row_duals >= -1e-12)

    def test_unbounded_lp_raises(self):
        with pytest.raises(TangentProgramError):
            simplex_lp([-1.0], [(0.0, None)])

    def test_infeasible_lp_raises(self):
        with pytest.raises(TangentProgramError):
            simplex_lp([1.0], [(0.0, 1.0)], np.array([[-1.0]]), [-2.0])


class TestTangentProgram:
    """
    Tangent program over C and the trust region:
    - polyhedral norms through the LP
    - the Euclidean single-plane closed form
    - trial-step conditions
    """

    @pytest.fixture
    def x(self):
        return np.array([1.0, 0.0])

    @pytest.fixture
    def single_plane(self, x):
        return new_bundle(CuttingPlane(a=1.0, g=[1.0, 0.0], anchor=x, origin=EXACTNESS), 1.0)

    def test_norm_values(self):
        d = np.array([3.0, -4.0])
        assert norm_value(d, "inf") == 4.0
        assert norm_value(d, "l1") == 7.0
        assert norm_value(d, "l2_single_plane") == 5.0

    def test_inf_ball_single_plane(self, single_plane, x):
        ts = solve_tangent_lp(single_plane, FeasibleSet.all_space(2), 0.5, "inf")
        # least motion keeps the coordinate with zero slope at x
        assert ts.y_star == pytest.approx([0.5, 0.0])
        assert ts.model_value == pytest.approx(0.5)
        assert ts.g_agg == pytest.approx([1.0, 0.0])
        assert ts.tr_active

    def test_l1_ball_single_plane(self, x):
        b = new_bundle(CuttingPlane(a=0.0, g=[1.0, 2.0], anchor=x, origin=EXACTNESS), 0.0)
        ts = solve_tangent_lp(b, FeasibleSet.all_space(2), 1.0, "l1")
        # the whole l1 budget goes into the steepest coordinate
        assert ts.y_star == pytest.approx([1.0, -1.0])
        assert ts.model_value == pytest.approx(-2.0)

    def test_feasible_set_cuts_the_ball(self, single_plane):
        C = FeasibleSet.box([0.8, -1.0], [2.0, 1.0])
        ts = solve_tangent_lp(single_plane, C, 0.5, "inf")
        assert ts.y_star[0] == pytest.approx(0.8)
        assert C.contains(ts.y_star)
        assert not ts.tr_active

    def test_model_value_matches_working_model(self, single_plane, x):
        add_plane(single_plane, CuttingPlane(a=0.5, g=[-1.0, 1.0], anchor=x))
        ts = solve_tangent_lp(single_plane, FeasibleSet.all_space(2), 1.0, "inf")
        assert ts.model_value == pytest.approx(working_model_eval(single_plane, ts.y_star))
        assert sum(ts.multipliers) == pytest.approx(1.0)

    def test_critical_anchor_has_zero_aggregate(self):
        x = np.zeros(1)
        b = new_bundle(CuttingPlane(a=0.0, g=[1.0], anchor=x, origin=EXACTNESS), 0.0)
        add_plane(b, CuttingPlane(a=0.0, g=[-1.0], anchor=x))
        ts = solve_tangent_lp(b, FeasibleSet.all_space(1), 1.0, "inf")
        assert ts.model_value == pytest.approx(0.0, abs=1e-12)
        assert np.linalg.norm(ts.g_crit) < 1e-9

    @pytest.mark.parametrize("norm", ["inf", "l1"])
    def test_zero_slope_coordinate_held_at_tiny_radius(self, norm):
        x = np.zeros(2)
        b = new_bundle(CuttingPlane(a=0.0, g=[1.0, 0.0], anchor=x, origin=EXACTNESS), 0.0)
        ts = solve_tangent_lp(b, FeasibleSet.all_space(2), 1e-10, norm)
        assert ts.y_star[1] == x[1]
        assert ts.y_star[0] == pytest.approx(-1e-10, rel=1e-9)
        assert ts.model_value == pytest.approx(-1e-10, rel=1e-9)

    def test_optimal_value_is_not_relaxed_by_least_motion(self):
        # model of |y1| + 2|y2| at an anchor on the x2 = 0 kink
        x = np.array([0.5, 0.0])
        b = new_bundle(CuttingPlane(a=0.5, g=[1.0, 2.0], anchor=x, origin=EXACTNESS), 0.5)
        add_plane(b, CuttingPlane(a=0.5, g=[1.0, -2.0], anchor=x))
        C = FeasibleSet.box([-2.0, -2.0], [2.0, 2.0])
        ts = solve_tangent_lp(b, C, 0.5, "inf")
        assert ts.model_value == pytest.approx(0.0, abs=1e-14)
        assert ts.y_star == pytest.approx([0.0, 0.0], abs=1e-14)

    def test_invalid_radius_and_norm(self, single_plane):
        with pytest.raises(TangentProgramError):
            solve_tangent_lp(single_plane, FeasibleSet.all_space(2), 0.0)
        with pytest.raises(TangentProgramError):
            solve_tangent_lp(single_plane, FeasibleSet.all_space(2), 1.0, "l2_single_plane")

    def test_euclidean_single_plane_step(self):
        ts = solve_tangent_euclid_single(np.array([3.0, 4.0]), np.zeros(2), 1.0, a=2.0)
        assert ts.y_star == pytest.approx([-0.6, -0.8])
        assert ts.model_value == pytest.approx(-3.0)
        # decrease equals ||g|| * ||x - y||
        assert 2.0 - ts.model_value == pytest.approx(5.0 * np.linalg.norm(ts.y_star))

    def test_euclidean_step_needs_nonzero_slope(self):
        with pytest.raises(TangentProgramError):
            solve_tangent_euclid_single(np.zeros(2), np.zeros(2), 1.0)

    def test_deterministic_trial_is_tangent_solution(self, single_plane):
        ts = solve_tangent_lp(single_plane, FeasibleSet.all_space(2), 0.5)
        z = trial_step(ts, single_plane, FeasibleSet.all_space(2), SolverConfig())
        assert z is ts.y_star

    @pytest.mark.parametrize("norm", ["inf", "l1"])
    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_randomized_trial_satisfies_step_conditions(self, x, seed, norm):
        b = new_bundle(CuttingPlane(a=1.0, g=[1.0, 0.5], anchor=x, origin=EXACTNESS), 1.0)
        C = FeasibleSet.box([-1.0, -1.0], [2.0, 2.0])
        cfg = SolverConfig(trial_mode="randomized", seed=seed, norm=norm)
        ts = solve_tangent_lp(b, C, 0.5, norm)
        z = trial_step(ts, b, C, cfg, np.random.Generator(np.random.Philox(seed)))
        predicted = b.f_anchor - ts.model_value
        assert C.contains(z)
        assert norm_value(z - x, cfg.norm) <= cfg.M * norm_value(ts.y_star - x, cfg.norm) + 1e-12
        assert b.f_anchor - working_model_eval(b, z) >= cfg.theta * predicted - 1e-12
