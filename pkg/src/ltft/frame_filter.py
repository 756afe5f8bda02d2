"""The frame filter: the frequency response of the localizing family's frame
operator, built once per configuration by quadrature and applied (or
inverted) as a frequency-domain multiplier.

For each output frequency z the filter accumulates, per band,

    integral over tau, omega of (tau/c) wft((tau/c)(z - omega))^2

where c is the band's dilation scale. The wide and narrow bands have a fixed
scale, so their omega integrals reduce to differences of the cumulative
integral of wft^2; the middle band is integrated directly on an omega grid.
The tau axis carries the uniform probability measure. Results are refined by
doubling the grids until the values stabilize.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .atoms import LTFTParams
from .errors import (
    FrameDegeneracyError,
    IllConditionedFilterError,
    InvalidParameterError,
    QuadratureError,
)
from .signals import Signal, Spectrum, dft, idft

__all__ = [
    "QuadratureConfig",
    "FrameFilter",
    "build_frame_filter",
    "default_freq_grid",
    "apply_frame_op",
    "apply_inverse_frame_op",
    "save_frame_filter",
    "load_frame_filter",
    "LTFTFrame",
]

_FORMAT_TAG = "ltft-frame-filter v1"


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for the filter quadrature and its refinement loop.

    ``omega_oversample`` is the number of quadrature nodes per natural
    feature width of the middle-band integrand (which lives on a log
    frequency scale); ``n_tau`` is the trapezoid node count on the
    oscillation axis. Both are doubled per refinement round.
    """

    omega_oversample: float = 2.0
    n_tau: int = 12
    rel_tol: float = 1e-4
    max_refine: int = 5
    degeneracy_floor: float = 1e-9


def _tau_nodes(params: LTFTParams, n_tau: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and probability weights on [tau_min, tau_max]."""
    if params.tau_min == params.tau_max:
        return np.array([params.tau_min]), np.array([1.0])
    xg, wg = np.polynomial.legendre.leggauss(max(2, n_tau))
    center = 0.5 * (params.tau_min + params.tau_max)
    half = 0.5 * (params.tau_max - params.tau_min)
    return center + half * xg, wg / 2.0


def _clip_pieces(pieces, window):
    """Intersect signed omega intervals with an optional omega window.

    ``window`` is None (no restriction) or (lo, hi, two_sided); two_sided
    means the symmetric set [-hi, -lo] union [lo, hi].
    """
    if window is None:
        return pieces
    lo, hi, two_sided = window
    allowed = [(lo, hi)]
    if two_sided:
        allowed.append((-hi, -lo))
    out = []
    for p_lo, p_hi in pieces:
        for a_lo, a_hi in allowed:
            c_lo, c_hi = max(p_lo, a_lo), min(p_hi, a_hi)
            if c_hi > c_lo:
                out.append((c_lo, c_hi))
    return out


_GL8 = np.polynomial.legendre.leggauss(8)


def _mid_piece(window, z: np.ndarray, tau: float, lo: float, hi: float, oversample: float) -> np.ndarray:
    """integral_lo^hi (tau/omega) wft((tau/omega)(z-omega))^2 domega for
    0 < lo < hi, vectorized over z.

    Substituting v = log omega turns the integrand into
    tau * wft(tau (z e^{-v} - 1))^2, whose features have width about 1/tau
    in v wherever the value is non-negligible. Gauss-Legendre panels of
    roughly ``8 / (tau * oversample)`` width resolve it for every z at once.
    """
    span = np.log(hi) - np.log(lo)
    xg, wg = _GL8
    n_panel = max(2, int(np.ceil(span * tau * oversample / 8.0)))
    edges = np.linspace(np.log(lo), np.log(hi), n_panel + 1)
    centers = 0.5 * (edges[1:] + edges[:-1])
    halves = 0.5 * np.diff(edges)
    v = (centers[:, None] + halves[:, None] * xg[None, :]).ravel()
    wts = (halves[:, None] * wg[None, :]).ravel()
    arg = tau * (z[:, None] * np.exp(-v)[None, :] - 1.0)
    integ = tau * window.ft(arg) ** 2
    return integ @ wts


def _band_components(
    params: LTFTParams,
    z: np.ndarray,
    oversample: float,
    n_tau: int,
    omega_window=None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Low/mid/high filter components on the frequency grid ``z``."""
    w = params.window
    taus, tau_w = _tau_nodes(params, n_tau)
    low = np.zeros_like(z)
    mid = np.zeros_like(z)
    high = np.zeros_like(z)
    big = 1e12  # stands in for an unbounded endpoint; the cdf saturates

    for tau, wt in zip(taus, tau_w):
        a = float(params.a_tau(tau))
        b = float(params.b_tau(tau))

        def cdf_piece(scale, pieces):
            acc = np.zeros_like(z)
            for lo, hi in pieces:
                u_hi = (tau / scale) * (z - lo)
                u_lo = (tau / scale) * (z - hi)
                acc += w.ft_sq_cdf(u_hi) - w.ft_sq_cdf(u_lo)
            return acc

        low += wt * cdf_piece(a, _clip_pieces([(-a, a)], omega_window))
        high += wt * cdf_piece(b, _clip_pieces([(b, big), (-big, -b)], omega_window))

        for lo, hi in _clip_pieces([(a, b), (-b, -a)], omega_window):
            if lo > 0:
                mid += wt * _mid_piece(w, z, tau, lo, hi, oversample)
            else:
                # Mirrored negative piece: same integral at -z over (-hi, -lo).
                mid += wt * _mid_piece(w, -z, tau, -hi, -lo, oversample)
    # Guard against negative round-off in the cdf differences.
    np.maximum(low, 0.0, out=low)
    np.maximum(high, 0.0, out=high)
    return low, mid, high


@dataclass(frozen=True, eq=False)
class FrameFilter:
    """Sampled frequency response with per-band components and bound estimates."""

    freqs: np.ndarray
    low: np.ndarray
    mid: np.ndarray
    high: np.ndarray
    params_key: str = ""

    @property
    def values(self) -> np.ndarray:
        return self.low + self.mid + self.high

    @property
    def bounds(self) -> Tuple[float, float]:
        v = self.values
        return float(np.min(v)), float(np.max(v))

    def gain_at(self, z) -> np.ndarray:
        """Linear interpolation onto arbitrary frequencies (edge-clamped)."""
        return np.interp(np.asarray(z, dtype=float), self.freqs, self.values)


def default_freq_grid(rate: float, n: int = 2049) -> np.ndarray:
    """Symmetric grid covering the representable band [-rate/2, rate/2]."""
    return np.linspace(-rate / 2.0, rate / 2.0, n)


def params_fingerprint(params: LTFTParams, freqs: np.ndarray) -> str:
    spec = {
        "params": params.describe(),
        "grid": {
            "n": int(freqs.size),
            "z_min": round(float(freqs[0]), 9),
            "z_max": round(float(freqs[-1]), 9),
        },
    }
    blob = json.dumps(spec, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def build_frame_filter(
    params: LTFTParams,
    freqs: np.ndarray,
    quad: QuadratureConfig = QuadratureConfig(),
    omega_window=None,
) -> FrameFilter:
    """Build the filter on ``freqs``, refining the internal grids until the
    values move by less than ``quad.rel_tol`` (relative to the peak) under a
    doubling, or raising QuadratureError after ``quad.max_refine`` rounds.

    ``omega_window`` restricts the contributing atom frequencies (used for
    truncated-domain energies); None means the full axis.
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    if freqs.ndim != 1 or freqs.size < 2:
        raise InvalidParameterError("frequency grid needs at least two points")
    oversample, n_tau = quad.omega_oversample, quad.n_tau
    prev = _band_components(params, freqs, oversample, n_tau, omega_window)
    for _ in range(quad.max_refine):
        oversample *= 2
        n_tau *= 2
        cur = _band_components(params, freqs, oversample, n_tau, omega_window)
        scale = max(np.max(sum(cur)), 1e-300)
        change = np.max(np.abs(sum(cur) - sum(prev))) / scale
        if change < quad.rel_tol:
            ff = FrameFilter(freqs, *cur, params_key=params_fingerprint(params, freqs))
            _check_bounds(ff, quad, omega_window)
            return ff
        prev = cur
    raise QuadratureError(
        f"filter quadrature did not stabilize below {quad.rel_tol} "
        f"after {quad.max_refine} refinements"
    )


def _check_bounds(ff: FrameFilter, quad: QuadratureConfig, omega_window):
    if omega_window is not None:
        return  # restricted filters are energy weights, not frame bounds
    a_est, b_est = ff.bounds
    if a_est <= quad.degeneracy_floor * max(b_est, 1.0):
        raise FrameDegeneracyError(
            f"estimated lower frame bound {a_est:.3e} at or below the floor; "
            "the configuration does not give a usable frame"
        )


# ---------------------------------------------------------------------------
# Applying the frame operator and its inverse
# ---------------------------------------------------------------------------


def _auto_pad(n: int) -> int:
    return min(4096, max(256, n // 2))


def _apply_gain(s: Signal, ff: FrameFilter, pad: Optional[int], invert: bool, floor_ratio: float) -> Signal:
    pad_n = _auto_pad(s.n) if pad is None else int(pad)
    padded = s.pad(pad_n, pad_n)
    sp = dft(padded)
    gain = ff.gain_at(sp.freqs)
    if invert:
        floor = floor_ratio * float(np.max(ff.values))
        if np.any(gain <= floor):
            raise IllConditionedFilterError(
                "frame filter falls below the inversion floor at a needed bin"
            )
        bins = sp.bins / gain
    else:
        bins = sp.bins * gain
    out = idft(Spectrum(bins, sp.rate, sp.origin))
    samples = out.samples.real if s.is_real() else out.samples
    return Signal(samples[pad_n : pad_n + s.n], s.rate, s.origin)


def apply_frame_op(s: Signal, ff: FrameFilter, pad: Optional[int] = None) -> Signal:
    """Multiply by the filter in the frequency domain (the frame operator)."""
    return _apply_gain(s, ff, pad, invert=False, floor_ratio=0.0)


def apply_inverse_frame_op(
    s: Signal, ff: FrameFilter, pad: Optional[int] = None, floor_ratio: float = 1e-8
) -> Signal:
    """Divide by the filter in the frequency domain (the inverse frame
    operator); raises IllConditionedFilterError if the filter is too small
    at any needed bin."""
    return _apply_gain(s, ff, pad, invert=True, floor_ratio=floor_ratio)


# ---------------------------------------------------------------------------
# Persistence: a small versioned CSV so a configuration is integrated once
# ---------------------------------------------------------------------------


def save_frame_filter(path: str, ff: FrameFilter, params: Optional[LTFTParams] = None) -> None:
    header = {
        "key": ff.params_key,
        "params": params.describe() if params is not None else None,
        "n": int(ff.freqs.size),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {_FORMAT_TAG}\n")
        fh.write(f"# {json.dumps(header, sort_keys=True)}\n")
        fh.write("z,low,mid,high\n")
        for z, lo, mi, hi in zip(ff.freqs, ff.low, ff.mid, ff.high):
            fh.write(f"{float(z)!r},{float(lo)!r},{float(mi)!r},{float(hi)!r}\n")


def load_frame_filter(path: str) -> FrameFilter:
    with open(path, "r", encoding="utf-8") as fh:
        tag = fh.readline().strip()
        if tag != f"# {_FORMAT_TAG}":
            raise InvalidParameterError(f"not a frame-filter file: {path}")
        header = json.loads(fh.readline().lstrip("# ").strip())
        cols = fh.readline().strip()
        if cols != "z,low,mid,high":
            raise InvalidParameterError(f"unexpected column header in {path}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape[0] != header.get("n"):
        raise InvalidParameterError(f"row count mismatch in {path}")
    return FrameFilter(
        data[:, 0].copy(), data[:, 1].copy(), data[:, 2].copy(), data[:, 3].copy(),
        params_key=str(header.get("key", "")),
    )


@dataclass(frozen=True, eq=False)
class LTFTFrame:
    """A ready-to-use transform: atom parameters plus the built filter."""

    params: LTFTParams
    filter: FrameFilter

    @classmethod
    def build(
        cls,
        params: LTFTParams,
        rate: float,
        n_grid: int = 2049,
        quad: QuadratureConfig = QuadratureConfig(),
        cache_dir: Optional[str] = None,
    ) -> "LTFTFrame":
        freqs = default_freq_grid(rate, n_grid)
        if cache_dir is not None:
            key = params_fingerprint(params, freqs)
            path = os.path.join(cache_dir, f"frame_filter_{key}.csv")
            if os.path.exists(path):
                ff = load_frame_filter(path)
                if ff.params_key == key:
                    return cls(params, ff)
            ff = build_frame_filter(params, freqs, quad)
            os.makedirs(cache_dir, exist_ok=True)
            save_frame_filter(path, ff, params)
            return cls(params, ff)
        return cls(params, build_frame_filter(params, freqs, quad))

    def inverse_apply(self, s: Signal, pad: Optional[int] = None) -> Signal:
        return apply_inverse_frame_op(s, self.filter, pad)

    def forward_apply(self, s: Signal, pad: Optional[int] = None) -> Signal:
        return apply_frame_op(s, self.filter, pad)
