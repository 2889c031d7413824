import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.bench.dragon import (FLOOR, RHO_B_LIMIT_HIGH, RHO_B_LIMIT_LOW, DragonState, dragon_f, dragon_oracle,
                              dragon_polygon, dragon_problem, dragon_quantities, dragon_rho, dragon_start)
from app.bench.polyhedral import l1box_problem, polyhedral_problem, random_polyhedral_problem
from app.bench.random_lft import random_lft_instance
from app.components.models.standard_model import StandardModel
from app.core.exceptions import ConfigurationError
from app.solver.tangent import solve_tangent_euclid_single
from app.solver.trust_region import compute_rho

DESCENT = np.array([-2.0, -3.0])


class TestDragon:
    """
    Dragon counterexample:
    - closed-form breakpoints against direct evaluation
    - the piecewise acceptance ratio
    - level polygons
    """

    def test_oracle_matches_closed_form(self):
        oracle = dragon_oracle()
        rng = np.random.Generator(np.random.Philox(0))
        for x in rng.uniform(-30.0, 30.0, (20, 2)):
            assert oracle.f(x) == pytest.approx(dragon_f(x))
        assert dragon_f([0.0, -100.0]) == FLOOR

    def test_start_lies_on_level_set(self):
        x = dragon_start(11.0, 1.0)
        assert x == pytest.approx([1.0, 3.0])
        assert dragon_f(x) == pytest.approx(11.0)

    def test_start_out_of_range(self):
        with pytest.raises(ConfigurationError):
            DragonState(11.0, 2.0)
        with pytest.raises(ConfigurationError):
            dragon_start(11.0, 0.0)

    @pytest.mark.parametrize("r, expected", [
        (0.25, 1.0),
        (0.5, 1.0),
        (2.0 / 3.0, 11.0 / 13.0),
        (1.0, 6.0 / 13.0),
    ])
    def test_rho_values(self, r, expected):
        assert dragon_rho(11.0, 1.0, r) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.6, 2.0 / 3.0, 0.9, 1.5])
    def test_rho_matches_solver_step(self, r):
        x = dragon_start(11.0, 1.0)
        model = StandardModel(oracle=dragon_oracle())
        f_x = model.f(x)
        g = -DESCENT
        assert any(np.allclose(g, s) for s in model.oracle.active_gradients(x))
        # a Euclidean step of radius r |(2, 3)| lands on x + r (-2, -3)
        ts = solve_tangent_euclid_single(g, x, r * np.sqrt(13.0), a=f_x)
        assert ts.y_star == pytest.approx(x + r * DESCENT)
        model_z = model.model_eval(ts.y_star, x)
        assert model_z == pytest.approx(ts.model_value)
        rho = compute_rho(f_x, model.f(ts.y_star), model_z)
        assert dragon_rho(11.0, 1.0, r) == pytest.approx(rho, abs=1e-12)

    def test_rho_limits(self):
        a = 11.0
        assert dragon_rho(a, a / 11.0, dragon_quantities(a, a / 11.0, 0.9)["r_B"]) == pytest.approx(RHO_B_LIMIT_HIGH)
        x1 = 1e-9
        assert dragon_rho(a, x1, dragon_quantities(a, x1, 0.9)["r_B"]) == pytest.approx(RHO_B_LIMIT_LOW, abs=1e-6)

    def test_breakpoint_values(self):
        q = dragon_quantities(11.0, 1.0, 0.9)
        x = dragon_start(11.0, 1.0)
        assert q["r_A"] == pytest.approx(0.5)
        assert q["r_B"] == pytest.approx(2.0 / 3.0)
        assert q["f_A"] == pytest.approx(dragon_f(x + q["r_A"] * DESCENT))
        assert q["f_B"] == pytest.approx(dragon_f(x + q["r_B"] * DESCENT))
        # rho falls to gamma at r_gamma
        assert dragon_rho(11.0, 1.0, q["r_gamma"]) == pytest.approx(0.9)

    def test_gamma_range(self):
        with pytest.raises(ConfigurationError):
            dragon_quantities(11.0, 1.0, 0.3)

    def test_nonpositive_step(self):
        with pytest.raises(ConfigurationError):
            dragon_rho(11.0, 1.0, 0.0)

    def test_polygon_vertices_on_level(self):
        vertices = dragon_polygon(11.0)
        assert vertices.shape == (5, 2)
        for v in vertices:
            assert dragon_f(v) == pytest.approx(11.0)

    def test_problem_metadata(self):
        problem = dragon_problem(11.0)
        assert problem.convex
        assert problem.metadata["x1"] == pytest.approx(1.0 / np.sqrt(2.0))


class TestPolyhedral:
    """Convex polyhedral test problems"""

    def test_l1box(self):
        problem = l1box_problem()
        assert problem.oracle.f(problem.x0) == pytest.approx(3.5)
        assert problem.oracle.f(np.zeros(2)) == 0.0
        assert problem.supported_models() == ["convex_self", "standard"]

    def test_ragged_pieces(self):
        with pytest.raises(ConfigurationError):
            polyhedral_problem([[0.0, 1.0], [0.0]], None, [0.0])

    def test_start_outside_box(self):
        with pytest.raises(ConfigurationError):
            polyhedral_problem([[0.0, 1.0]], [[-1.0], [1.0]], [2.0])

    def test_random_instances(self):
        first = random_polyhedral_problem(n=3, n_pieces=5, seed=4)
        second = random_polyhedral_problem(n=3, n_pieces=5, seed=4)
        assert np.array_equal(first.oracle.slopes, second.oracle.slopes)
        assert first.feasible.contains(first.x0)
        with pytest.raises(ConfigurationError):
            random_polyhedral_problem(n=0)


class TestRandomLft:
    """Seeded random plants"""

    def test_nominal_abscissa(self):
        from app.control.spectral import spectral_abscissa

        plant = random_lft_instance(m=3, n=8, seed=2, affine=False)
        assert spectral_abscissa(plant.A)[0] == pytest.approx(-0.5)
        assert not plant.affine

    def test_size_limits(self):
        with pytest.raises(ConfigurationError):
            random_lft_instance(m=5, n=3, seed=0)
        with pytest.raises(ConfigurationError):
            random_lft_instance(m=1, n=21, seed=0)
