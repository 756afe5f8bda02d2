import numpy as np
import pytest
from scipy.integrate import quad

from ltft.windows import hann_eval, hann_ft, hann_window, window_from_table


def hann_ft_quadrature(z: float) -> float:
    """Independent oracle: numerically integrate h(t) exp(-2 pi i z t) dt."""
    re, _ = quad(lambda t: 0.5 * (1 + np.cos(2 * np.pi * t)) * np.cos(2 * np.pi * z * t), -0.5, 0.5)
    im, _ = quad(lambda t: 0.5 * (1 + np.cos(2 * np.pi * t)) * np.sin(2 * np.pi * z * t), -0.5, 0.5)
    assert abs(im) < 1e-12  # even window: transform is real
    return re


class TestHann:
    def test_peak_value(self):
        assert hann_eval(0.0) == pytest.approx(1.0)

    def test_zero_outside_support(self):
        t = np.array([-0.75, -0.5001, 0.5001, 3.0])
        assert np.all(hann_eval(t) == 0.0)

    def test_nonnegative_inside(self):
        t = np.linspace(-0.5, 0.5, 1001)
        assert np.all(hann_eval(t) >= 0.0)

    def test_ft_at_zero_is_half(self):
        assert hann_ft(0.0) == pytest.approx(0.5)

    def test_ft_at_one_is_quarter(self):
        # Cross-checked against the defining integral below.
        assert hann_ft(1.0) == pytest.approx(0.25)

    @pytest.mark.parametrize("z", [0.0, 0.5, -0.5, 1.0, -1.0, 2.5, -2.5])
    def test_ft_matches_quadrature(self, z):
        assert hann_ft(z) == pytest.approx(hann_ft_quadrature(z), abs=1e-9)

    def test_ft_real_even_smooth(self):
        z = np.linspace(-6, 6, 241)
        v = hann_ft(z)
        assert np.allclose(v, hann_ft(-z))
        assert np.all(np.abs(np.diff(v, 2)) < 0.1)  # no jumps on a fine grid


class TestWindowObject:
    def test_l2sq_closed_form(self):
        w = hann_window()
        assert w.l2sq == pytest.approx(3.0 / 8.0)

    def test_ft_sq_total_matches_parseval(self):
        # integral of ft^2 over the line equals the window's squared L2 norm.
        w = hann_window()
        assert w.ft_sq_total == pytest.approx(w.l2sq, rel=1e-6)

    def test_cdf_monotone_and_symmetric(self):
        w = hann_window()
        u = np.linspace(-10, 10, 401)
        c = w.ft_sq_cdf(u)
        assert np.all(np.diff(c) >= -1e-15)
        # symmetry of ft^2: cdf(u) + cdf(-u) = total
        assert np.allclose(c + c[::-1], w.ft_sq_total, atol=1e-8)

    def test_cdf_tail_values(self):
        w = hann_window()
        assert w.ft_sq_cdf(-100.0) == 0.0
        assert w.ft_sq_cdf(100.0) == pytest.approx(w.ft_sq_total)

    def test_custom_table_window_matches_hann(self):
        t = np.linspace(-0.5, 0.5, 4097)
        w = window_from_table("hann-table", 0.5 * (1 + np.cos(2 * np.pi * t)))
        z = np.linspace(-8, 8, 161)
        assert np.allclose(w.ft(z), hann_ft(z), atol=5e-6)
        assert w.l2sq == pytest.approx(3.0 / 8.0, rel=1e-6)
