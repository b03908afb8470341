import math

import numpy as np
import pytest

from src.analytic.small_alpha import (
    field_xi_min_n_small_alpha,
    field_xi_n2_small_alpha,
    field_xi_n_small_alpha,
    xi_min_n2_small_alpha,
    xi_n2_small_alpha,
    xi_n2_squeezed_vacuum_small_r,
    xi_n_large_limit,
    xi_n_small_alpha,
)

LONG_WINDOW = np.linspace(0.0, 2000.0, 1_000_001)


class TestTwoAtoms:
    def test_unsqueezed_at_start(self):
        assert xi_n2_small_alpha(0.3, 0.0) == pytest.approx((1.0, 1.0))
        assert field_xi_n2_small_alpha(0.3, 0.0) == pytest.approx((1.0, 1.0))

    def test_mirror_images(self):
        gts = np.linspace(0.0, 50.0, 501)
        xi_x, xi_y = xi_n2_small_alpha(0.1, gts)
        assert np.allclose(xi_x + xi_y, 2.0, atol=1e-15)

    def test_minimum_formula(self):
        assert xi_min_n2_small_alpha(0.0) == 1.0
        assert xi_min_n2_small_alpha(0.4) == pytest.approx(0.8933333333, abs=1e-9)

    def test_minimum_approached_over_long_times(self):
        alpha = 0.2
        xi_x, _ = xi_n2_small_alpha(alpha, LONG_WINDOW)
        bound = xi_min_n2_small_alpha(alpha)
        assert xi_x.min() >= bound - 1e-12
        assert xi_x.min() <= bound + 0.01 * alpha ** 2

    def test_field_minima(self):
        alpha = 0.2
        xi_q, xi_p = field_xi_n2_small_alpha(alpha, LONG_WINDOW)
        assert xi_q.min() == pytest.approx(1.0 - 4.0 / 3.0 * alpha ** 2, abs=0.01 * alpha ** 2)
        assert xi_p.min() == pytest.approx(1.0 - alpha ** 2, abs=0.01 * alpha ** 2)
        assert xi_q.min() >= 1.0 - 4.0 / 3.0 * alpha ** 2 - 1e-12


class TestSqueezedVacuum:
    def test_unsqueezed_at_start(self):
        assert xi_n2_squeezed_vacuum_small_r(0.05, 0.0) == pytest.approx((1.0, 1.0))
        assert xi_n2_squeezed_vacuum_small_r(0.0, 3.0) == pytest.approx((1.0, 1.0))

    def test_minimum(self):
        r = 0.05
        gt = math.pi / (2.0 * math.sqrt(1.5))
        _, xi_y = xi_n2_squeezed_vacuum_small_r(r, gt)
        assert xi_y == pytest.approx(1.0 - 4.0 * r / 3.0, abs=1e-14)
        assert xi_y == pytest.approx(0.9333, abs=1e-4)

    def test_minimum_uncertainty_product(self):
        r = 0.05
        xi_x, xi_y = xi_n2_squeezed_vacuum_small_r(r, np.linspace(0.0, 20.0, 201))
        assert np.all(np.abs(xi_x * xi_y - 1.0) <= (4.0 * r / 3.0) ** 2 + 1e-15)


class TestManyAtoms:
    def test_reduces_to_two_atoms(self):
        gts = np.linspace(0.0, 40.0, 801)
        assert np.allclose(xi_n_small_alpha(2, 0.1, gts), xi_n2_small_alpha(0.1, gts)[0], atol=1e-14)

    def test_field_reduces_to_two_atoms(self):
        gts = np.linspace(0.0, 40.0, 801)
        many = field_xi_n_small_alpha(2, 0.1, gts)
        two = field_xi_n2_small_alpha(0.1, gts)
        assert np.allclose(many[0], two[0], atol=1e-14)
        assert np.allclose(many[1], two[1], atol=1e-14)

    def test_unsqueezed_at_start(self):
        assert xi_n_small_alpha(20, 0.1, 0.0) == pytest.approx(1.0)
        assert xi_n_large_limit(20, 0.1, 0.0) == pytest.approx(1.0)
        assert field_xi_n_small_alpha(20, 0.1, 0.0) == pytest.approx((1.0, 1.0))

    def test_large_limit_close_to_full_formula(self):
        n_atoms, alpha = 100, 0.1
        gts = np.linspace(0.0, 4.0 * math.pi * math.sqrt(n_atoms), 20001)
        gap = np.abs(xi_n_large_limit(n_atoms, alpha, gts) - xi_n_small_alpha(n_atoms, alpha, gts))
        assert gap.max() <= 10.0 * alpha ** 2 / n_atoms

    def test_large_limit_minimum_near_half_modulation(self):
        n_atoms, alpha = 400, 0.1
        gts = np.linspace(0.0, 4.0 * math.pi * math.sqrt(n_atoms), 200001)
        values = xi_n_large_limit(n_atoms, alpha, gts)
        assert values.min() == pytest.approx(1.0 - alpha ** 2, abs=0.05 * alpha ** 2)
        gt_min = gts[np.argmin(values)]
        assert abs(gt_min - 2.0 * math.pi * math.sqrt(n_atoms)) < 0.1 * 2.0 * math.pi * math.sqrt(n_atoms)

    def test_field_minimum_formulas(self):
        alpha = 0.1
        assert field_xi_min_n_small_alpha(2, alpha) == pytest.approx((1.0 - 4.0 / 3.0 * alpha ** 2, 1.0 - alpha ** 2))
        xi_q_min, _ = field_xi_min_n_small_alpha(10_000, alpha)
        assert xi_q_min == pytest.approx(1.0 - alpha ** 2, abs=1e-5)
