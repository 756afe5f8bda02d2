"""Window functions on the fixed support [-1/2, 1/2].

The Hann window is the default everywhere and has a closed-form Fourier
transform, which matters because the frame filter integrates the squared
transform many times. Custom windows supply a sample table; their transforms
are built numerically once and interpolated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidParameterError

__all__ = ["hann_eval", "hann_ft", "Window", "hann_window"]

SUPPORT_HALFWIDTH = 0.5


def hann_eval(t) -> np.ndarray:
    """Hann window (1 + cos 2 pi t)/2 on [-1/2, 1/2], zero outside."""
    t = np.asarray(t, dtype=np.float64)
    inside = np.abs(t) <= SUPPORT_HALFWIDTH
    return np.where(inside, 0.5 * (1.0 + np.cos(2.0 * np.pi * t)), 0.0)


def hann_ft(z) -> np.ndarray:
    """Fourier transform of the Hann window:
    sinc(z)/2 + sinc(z-1)/4 + sinc(z+1)/4 with sinc(z) = sin(pi z)/(pi z)."""
    z = np.asarray(z, dtype=np.float64)
    return 0.5 * np.sinc(z) + 0.25 * np.sinc(z - 1.0) + 0.25 * np.sinc(z + 1.0)


def _cumulative_table(fn: Callable[[np.ndarray], np.ndarray], cut: float, step: float):
    """Cumulative trapezoid table of fn(u)^2 on [-cut, cut]."""
    n = int(round(2 * cut / step)) + 1
    u = np.linspace(-cut, cut, n)
    v = np.asarray(fn(u), dtype=np.float64) ** 2
    inc = 0.5 * (v[1:] + v[:-1]) * (u[1] - u[0])
    cdf = np.concatenate(([0.0], np.cumsum(inc)))
    return u, cdf


@dataclass(frozen=True, eq=False)
class Window:
    """Non-negative window supported in [-1/2, 1/2] with its transform.

    ``ft_sq_cdf`` integrates the squared transform from -inf to u, which is
    the building block for the closed-interval band integrals of the frame
    filter; ``ft_sq_total`` is its limit and equals the squared L2 norm of
    the window.
    """

    name: str
    eval_fn: Callable[[np.ndarray], np.ndarray]
    ft_fn: Callable[[np.ndarray], np.ndarray]
    l2sq: float
    _cdf_u: np.ndarray = field(repr=False)
    _cdf_v: np.ndarray = field(repr=False)

    def eval(self, t) -> np.ndarray:
        return self.eval_fn(np.asarray(t, dtype=np.float64))

    def ft(self, z) -> np.ndarray:
        return self.ft_fn(np.asarray(z, dtype=np.float64))

    @property
    def ft_sq_total(self) -> float:
        return float(self._cdf_v[-1])

    def ft_sq_cdf(self, u) -> np.ndarray:
        """integral_{-inf}^{u} ft(v)^2 dv, clamped at the tabulated tails."""
        u = np.asarray(u, dtype=np.float64)
        return np.interp(u, self._cdf_u, self._cdf_v, left=0.0, right=self.ft_sq_total)

    def l2norm(self) -> float:
        return float(np.sqrt(self.l2sq))


def _make_window(name, eval_fn, ft_fn, l2sq, cut=64.0, step=1.0 / 1024.0) -> Window:
    u, cdf = _cumulative_table(ft_fn, cut, step)
    return Window(name, eval_fn, ft_fn, float(l2sq), u, cdf)


_HANN: Optional[Window] = None


def hann_window() -> Window:
    """The default window; l2sq = 3/8 in closed form."""
    global _HANN
    if _HANN is None:
        _HANN = _make_window("hann", hann_eval, hann_ft, 3.0 / 8.0)
    return _HANN


def window_from_table(name: str, samples: np.ndarray) -> Window:
    """Window from uniformly spaced samples over [-1/2, 1/2].

    The transform is computed once on a dense zero-padded grid and then
    interpolated; good to a few 1e-6 absolute for smooth tables.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 1 or samples.size < 8:
        raise InvalidParameterError("window table needs at least 8 samples")
    if np.any(samples < 0):
        raise InvalidParameterError("window must be non-negative")
    m = samples.size
    t = np.linspace(-0.5, 0.5, m)
    dt = t[1] - t[0]

    def eval_fn(x):
        return np.where(np.abs(x) <= SUPPORT_HALFWIDTH, np.interp(x, t, samples), 0.0)

    # Dense FT table via zero-padded FFT of the sampled window.
    pad = 1 << 20
    spec = np.fft.fftshift(np.fft.fft(samples, n=pad)) * dt
    freqs = np.fft.fftshift(np.fft.fftfreq(pad, d=dt))
    # Remove the phase from the table starting at t = -1/2.
    spec = spec * np.exp(-2j * np.pi * freqs * t[0])

    def ft_fn(z):
        return np.interp(z, freqs, spec.real, left=0.0, right=0.0)

    l2sq = float(np.trapezoid(samples**2, t))
    return _make_window(name, eval_fn, ft_fn, l2sq)
