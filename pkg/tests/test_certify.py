import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.certify import (CERTIFIED, MONTE_CARLO, QUADRATURE_1D, grid_axis, grid_certify, stability_decision,
                         worst_alpha_on_box, zheng_maximize)
from app.certify import zheng
from app.core.exceptions import CertificationError


def neg_square(x):
    return -float(x[0] ** 2)


class TestZheng:
    """
    Level-set mean iteration:
    - exact quadrature on a 1-D parabola
    - Monte-Carlo estimates and their standard errors
    - thread-count independence
    """

    def test_quadrature_levels(self):
        result = zheng_maximize(neg_square, [-1.0], [1.0], mode=QUADRATURE_1D, max_sweeps=2)
        # mean of -x^2 over [-1, 1] is -1/3, over |x| <= 1/sqrt(3) it is -1/9
        assert result.history == pytest.approx([-1.0, -1.0 / 3.0, -1.0 / 9.0], abs=1e-6)
        assert not result.converged

    def test_quadrature_converges_to_maximum(self):
        result = zheng_maximize(neg_square, [-1.0], [1.0], mode=QUADRATURE_1D, var_tol=1e-10)
        assert result.converged
        assert result.alpha == pytest.approx(0.0, abs=1e-4)
        assert result.alpha <= 0.0

    def test_quadrature_needs_one_dimension(self):
        with pytest.raises(CertificationError):
            zheng_maximize(lambda x: 0.0, [0.0, 0.0], [1.0, 1.0], mode=QUADRATURE_1D)

    def test_monte_carlo_levels_within_standard_error(self):
        result = zheng_maximize(neg_square, [-1.0], [1.0], samples_per_dim=4000, seed=3,
                                mode=MONTE_CARLO, max_sweeps=2)
        h, se = result.history, result.std_errors
        assert abs(h[1] + 1.0 / 3.0) <= 4.0 * se[1]
        assert abs(h[2] - h[1] / 3.0) <= 4.0 * se[2]

    def test_monte_carlo_history_is_nondecreasing(self):
        result = zheng_maximize(neg_square, [-1.0], [1.0], samples_per_dim=2000, seed=1)
        assert all(b >= a for a, b in zip(result.history, result.history[1:]))
        assert result.best_value >= result.history[-1]
        assert result.best_value <= 0.0

    def test_thread_count_does_not_change_result(self):
        def objective(x):
            return -float(np.sum((x - 0.3) ** 2))

        single = zheng_maximize(objective, [-1.0, -1.0], [1.0, 1.0], samples_per_dim=500, seed=7, threads=1)
        pooled = zheng_maximize(objective, [-1.0, -1.0], [1.0, 1.0], samples_per_dim=500, seed=7, threads=3)
        assert single.history == pooled.history
        assert single.best_value == pooled.best_value

    def test_warm_start_level(self):
        result = zheng_maximize(neg_square, [-1.0], [1.0], samples_per_dim=1000, alpha0=-0.25, max_sweeps=1)
        assert result.history[0] == -0.25
        # every accepted sample lies in |x| <= 1/2
        assert result.history[1] >= -0.25

    def test_warm_start_above_every_sample_keeps_the_level(self):
        # {-x^2 >= 0} has measure zero, so the first sweep accepts nothing
        result = zheng_maximize(neg_square, [-1.0], [1.0], samples_per_dim=200, alpha0=0.0, max_sweeps=3)
        assert result.alpha == 0.0
        assert result.history == [0.0]
        assert not result.converged

    def test_every_sweep_samples_the_whole_box(self, monkeypatch):
        boxes = []
        original = zheng._chunk

        def recording_chunk(objective, lo, hi, seed, sweep, index):
            boxes.append((lo.copy(), hi.copy()))
            return original(objective, lo, hi, seed, sweep, index)

        monkeypatch.setattr(zheng, "_chunk", recording_chunk)
        zheng_maximize(neg_square, [-1.0], [2.0], samples_per_dim=300, seed=2, max_sweeps=4)
        assert boxes
        for lo, hi in boxes:
            assert lo.tolist() == [-1.0] and hi.tolist() == [2.0]

    def test_disconnected_superlevel_set_reaches_narrow_peak(self):
        def two_peaks(x):
            # wide bump of height 0.5 at -0.5, narrow spike of height 1 at 0.7
            return max(0.5 - abs(x[0] + 0.5), 1.0 - 10.0 * abs(x[0] - 0.7))

        result = zheng_maximize(two_peaks, [-1.0], [1.0], samples_per_dim=2000, var_tol=1e-6, seed=4,
                                max_sweeps=40)
        assert all(b >= a for a, b in zip(result.history, result.history[1:]))
        assert 0.95 <= result.alpha <= 1.0
        assert result.argbest == pytest.approx([0.7], abs=0.05)

    def test_invalid_requests(self):
        with pytest.raises(CertificationError):
            zheng_maximize(neg_square, [1.0], [-1.0])
        with pytest.raises(CertificationError):
            zheng_maximize(neg_square, [-1.0], [1.0], seed=-1)
        with pytest.raises(CertificationError):
            zheng_maximize(neg_square, [-1.0], [1.0], mode="simplex")


class TestGrid:
    """Exhaustive grid oracle"""

    def test_axis_includes_upper_corner(self):
        assert grid_axis(0.0, 1.0, 0.3) == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])
        assert grid_axis(0.0, 1.0, 0.25) == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])

    def test_refinement(self):
        result = grid_certify(lambda x: -float((x[0] - 0.33) ** 2), [0.0], [1.0], step=0.1, refine_step=0.01)
        assert result.argmax == pytest.approx([0.33])
        assert result.evaluations == 11 + 21

    def test_first_maximizer_wins_ties(self):
        result = grid_certify(lambda x: 1.0, [0.0, 0.0], [1.0, 1.0], step=0.5)
        assert result.argmax == pytest.approx([0.0, 0.0])
        assert result.evaluations == 9

    def test_dimension_limit(self):
        with pytest.raises(CertificationError):
            grid_certify(lambda x: 0.0, np.zeros(4), np.ones(4), step=0.5)


class TestStabilityDecision:
    """Certify or refute d* on A(delta) = -1 + delta, true distance 1"""

    @pytest.mark.parametrize("d_star, expected", [
        (1.0, CERTIFIED),
        (1.2, "refuted(under)"),
        (0.5, "refuted(over)"),
    ])
    def test_verdicts(self, scalar_plant, d_star, expected):
        decision = stability_decision(scalar_plant, d_star, gamma_conf=0.05, samples_per_dim=500)
        assert decision.describe() == expected

    def test_grid_method(self, scalar_plant):
        decision = stability_decision(scalar_plant, 1.0, method="grid")
        assert decision.certified
        assert decision.alpha_under == pytest.approx(-0.05)
        assert decision.alpha_over == pytest.approx(0.05)

    def test_worst_alpha_never_exceeds_true_maximum(self, scalar_plant):
        assert worst_alpha_on_box(scalar_plant, 0.8, samples_per_dim=500) <= -0.2 + 1e-12

    def test_invalid_arguments(self, scalar_plant):
        with pytest.raises(CertificationError):
            stability_decision(scalar_plant, 0.0)
        with pytest.raises(CertificationError):
            stability_decision(scalar_plant, 1.0, gamma_conf=1.5)
        with pytest.raises(CertificationError):
            worst_alpha_on_box(scalar_plant, 1.0, method="bisection")
