"""Finite-measure phase-space domains, uniform samplers over them, and
linear-volume truncation diagnostics.

A sampling domain plays two roles: it is the region Monte Carlo points are
drawn from, and its indicator is the envelope that truncates coefficient
space. The linear-volume property says the measure needed for a given
truncation error grows linearly with the signal resolution M; the report
produced here carries the measured ingredients (measure, measure/M, and the
relative truncation error).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .atoms import LTFTParams, MotherWavelet
from .errors import InvalidParameterError, ReferenceDomainError
from .frame_filter import _band_components
from .signals import Signal, dft
from .windows import Window, hann_window

__all__ = [
    "BoxDomain",
    "CwtDomain",
    "PhaseSample",
    "ltft_domain",
    "cwt_domain",
    "sample_uniform",
    "LVDReport",
    "LVD_CSV_HEADER",
    "CWTClassParams",
    "enveloped_trig_poly",
    "rc_membership",
    "RcMembership",
    "ltft_truncation_ratio",
    "cwt_truncation_ratio",
    "closed_form_spectrum",
]


@dataclass(frozen=True)
class PhaseSample:
    """Struct-of-arrays batch of phase-space points."""

    x: np.ndarray
    omega: np.ndarray
    tau: np.ndarray

    def __len__(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class BoxDomain:
    """Product domain: an x interval, an omega interval (optionally mirrored
    to negative frequencies), and the tau interval carrying the uniform
    probability measure."""

    x_range: Tuple[float, float]
    omega_range: Tuple[float, float]
    tau_range: Tuple[float, float]
    two_sided: bool = False

    def __post_init__(self):
        if not self.x_range[1] > self.x_range[0]:
            raise InvalidParameterError("empty x range")
        if not (0 <= self.omega_range[0] < self.omega_range[1]):
            raise InvalidParameterError("omega range must satisfy 0 <= lo < hi")
        if not (0 < self.tau_range[0] <= self.tau_range[1]):
            raise InvalidParameterError("tau range must satisfy 0 < lo <= hi")

    @property
    def omega_length(self) -> float:
        lo, hi = self.omega_range
        return (hi - lo) * (2.0 if self.two_sided else 1.0)

    @property
    def measure(self) -> float:
        """Lebesgue area in the (x, omega) plane; tau contributes measure 1."""
        return (self.x_range[1] - self.x_range[0]) * self.omega_length

    def contains(self, x, omega, tau) -> np.ndarray:
        x = np.asarray(x)
        omega = np.asarray(omega)
        tau = np.asarray(tau)
        w = np.abs(omega) if self.two_sided else omega
        ok_x = (x >= self.x_range[0]) & (x <= self.x_range[1])
        ok_w = (w > self.omega_range[0]) & (w <= self.omega_range[1])
        ok_t = (tau >= self.tau_range[0] - 1e-12) & (tau <= self.tau_range[1] + 1e-12)
        return ok_x & ok_w & ok_t

    def sample(self, k: int, rng: np.random.Generator) -> PhaseSample:
        x = rng.uniform(self.x_range[0], self.x_range[1], k)
        mag = rng.uniform(self.omega_range[0], self.omega_range[1], k)
        if self.two_sided:
            sign = rng.integers(0, 2, k) * 2 - 1
            omega = sign * mag
        else:
            omega = mag
        if self.tau_range[0] == self.tau_range[1]:
            tau = np.full(k, self.tau_range[0])
        else:
            tau = rng.uniform(self.tau_range[0], self.tau_range[1], k)
        return PhaseSample(x, omega, tau)


@dataclass(frozen=True)
class CwtDomain:
    """Wavelet domain: 1/(WM) < |omega| < WM with the frequency-dependent
    time extent |x| < 1/2 + S/|omega| that exactly covers the coefficients
    of a signal supported in [-1/2, 1/2]."""

    big_w: float
    resolution: int
    half_support: float

    def __post_init__(self):
        if self.big_w <= 0 or self.resolution < 1 or self.half_support <= 0:
            raise InvalidParameterError("need W > 0, M >= 1, S > 0")
        if self.big_w * self.resolution <= 1.0:
            raise InvalidParameterError(
                f"degenerate frequency band: need W M > 1, got {self.big_w * self.resolution}"
            )

    @property
    def omega_bounds(self) -> Tuple[float, float]:
        wm = self.big_w * self.resolution
        return 1.0 / wm, wm

    @property
    def measure(self) -> float:
        """Closed form: 2 (WM - 1/(WM)) + 4 S ln(W^2 M^2)."""
        lo, hi = self.omega_bounds
        return 2.0 * (hi - lo) + 4.0 * self.half_support * np.log(hi / lo)

    def x_extent(self, omega) -> np.ndarray:
        return 0.5 + self.half_support / np.abs(np.asarray(omega, dtype=float))

    def contains(self, x, omega, tau=None) -> np.ndarray:
        x = np.asarray(x)
        omega = np.asarray(omega)
        lo, hi = self.omega_bounds
        mag = np.abs(omega)
        return (mag > lo) & (mag < hi) & (np.abs(x) < self.x_extent(omega))

    def _omega_cdf_table(self, n: int = 1 << 14):
        lo, hi = self.omega_bounds
        grid = np.exp(np.linspace(np.log(lo), np.log(hi), n))
        # Unnormalized CDF of the |omega| marginal, density 1 + 2S/omega.
        cdf = (grid - lo) + 2.0 * self.half_support * np.log(grid / lo)
        return grid, cdf / cdf[-1]

    def sample(self, k: int, rng: np.random.Generator) -> PhaseSample:
        grid, cdf = self._omega_cdf_table()
        mag = np.interp(rng.uniform(0.0, 1.0, k), cdf, grid)
        sign = rng.integers(0, 2, k) * 2 - 1
        omega = sign * mag
        x = rng.uniform(-1.0, 1.0, k) * self.x_extent(omega)
        return PhaseSample(x, omega, np.full(k, np.nan))


def ltft_domain(
    resolution: int,
    rate: float,
    w_factor: float,
    params: LTFTParams,
    two_sided: bool = False,
) -> BoxDomain:
    """Sampling domain for signals of resolution M at the given rate.

    The time side covers the signal support [-M/(2R), M/(2R)] plus the
    largest atom support length, so truncating x loses nothing. The
    frequency side is (0, W R / 2] in the practical positive-frequency
    regime, or the symmetric band (-W R, W R) when ``two_sided``.
    """
    if resolution < 1 or rate <= 0:
        raise InvalidParameterError("need M >= 1 and rate > 0")
    if w_factor < 1:
        raise InvalidParameterError(f"need W >= 1, got {w_factor}")
    margin = params.x_margin()
    half = resolution / (2.0 * rate) + margin
    omega_hi = w_factor * rate if two_sided else w_factor * rate / 2.0
    return BoxDomain(
        (-half, half),
        (0.0, omega_hi),
        (params.tau_min, params.tau_max),
        two_sided=two_sided,
    )


def cwt_domain(resolution: int, w_factor: float, half_support: float) -> CwtDomain:
    return CwtDomain(w_factor, resolution, half_support)


def sample_uniform(domain, k: int, seed) -> PhaseSample:
    """K i.i.d. points, uniform under the domain's measure; deterministic
    for a given seed."""
    if k < 1:
        raise InvalidParameterError("need at least one sample")
    rng = np.random.default_rng(seed)
    return domain.sample(k, rng)


# ---------------------------------------------------------------------------
# Signal classes for the truncation benches
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CWTClassParams:
    """Envelope and class constants for the enveloped-trig-polynomial bench.

    The default Hann envelope decays like z^-3 in frequency, comfortably
    faster than the z^-2 the theory needs.
    """

    xi: Window = field(default_factory=hann_window)
    class_const: float = 100.0
    order: int = 256


def enveloped_trig_poly(coeffs, xi: Optional[Window] = None, rate: float = 2048.0) -> Signal:
    """Signal xi(t) * sum_m c_m exp(2 pi i m t) on [-1/2, 1/2]; coeffs has
    odd length 2M+1 ordered m = -M..M."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.ndim != 1 or coeffs.size % 2 == 0:
        raise InvalidParameterError("need an odd number of coefficients (m = -M..M)")
    xi = xi or hann_window()
    m_max = coeffs.size // 2
    n = int(round(rate)) + 1
    base = Signal.centered(np.zeros(n), rate)
    t = base.times
    ms = np.arange(-m_max, m_max + 1)
    vals = np.exp(2j * np.pi * np.outer(t, ms)) @ coeffs
    return Signal(xi.eval(t) * vals, rate, base.origin)


def closed_form_spectrum(coeffs, z, xi: Optional[Window] = None) -> np.ndarray:
    """Transform of an enveloped trig polynomial: sum_m c_m xi_ft(z - m)."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    xi = xi or hann_window()
    m_max = coeffs.size // 2
    ms = np.arange(-m_max, m_max + 1)
    z = np.asarray(z, dtype=np.float64)
    return xi.ft(z[:, None] - ms[None, :]).astype(np.complex128) @ coeffs


@dataclass(frozen=True)
class RcMembership:
    """Grid evaluation of the two class inequalities."""

    env_ratio: float  # sup|q/xi| / sup|q|
    peak_ratio: float  # sup|q| / ||q||_2
    class_const: float

    @property
    def ok(self) -> bool:
        return self.env_ratio < self.class_const and self.peak_ratio < self.class_const


def rc_membership(s: Signal, xi: Optional[Window] = None, class_const: float = 100.0) -> RcMembership:
    """Check the well-spread-energy class inequalities on the sample grid,
    skipping samples where the envelope is exactly zero."""
    xi = xi or hann_window()
    env = xi.eval(s.times)
    mask = env > 0
    if not np.any(mask):
        raise InvalidParameterError("envelope vanishes on the whole grid")
    q = np.abs(s.samples)
    sup_q = float(np.max(q))
    if sup_q == 0:
        raise InvalidParameterError("zero signal has no class membership")
    env_ratio = float(np.max(q[mask] / env[mask])) / sup_q
    peak_ratio = sup_q / s.norm()
    return RcMembership(env_ratio, peak_ratio, class_const)


# ---------------------------------------------------------------------------
# Truncation diagnostics
# ---------------------------------------------------------------------------

LVD_CSV_HEADER = "M,W,psi_l1,ratio_Cv,trunc_error"


@dataclass(frozen=True)
class LVDReport:
    """Measured ingredients of the linear-volume property for one (M, W)."""

    resolution: int
    w_factor: float
    psi_l1: float
    ratio_cv: float
    trunc_error: float

    def __post_init__(self):
        if self.psi_l1 <= 0:
            raise InvalidParameterError("domain measure must be positive")

    def csv_row(self) -> str:
        return (
            f"{self.resolution},{self.w_factor!r},{self.psi_l1!r},"
            f"{self.ratio_cv!r},{self.trunc_error!r}"
        )


def _omega_window(domain: BoxDomain):
    return (domain.omega_range[0], domain.omega_range[1], domain.two_sided)


def _check_x_lossless(domain: BoxDomain, params: LTFTParams, s: Signal) -> None:
    hw = params.max_halfwidth()
    if domain.x_range[0] > s.t_start - hw + 1e-9 or domain.x_range[1] < s.t_end + hw - 1e-9:
        raise InvalidParameterError(
            "domain x range must cover the signal support plus the largest "
            "atom half-support; otherwise the frequency-side energy identity "
            "does not hold"
        )


def _ltft_energy(params: LTFTParams, s: Signal, window) -> float:
    """Coefficient energy over all x and the given omega window, computed
    through the frequency-side identity: integral |shat|^2 * (restricted
    filter) dz."""
    sp = dft(s)
    comps = _band_components(params, sp.freqs, 4.0, 16, omega_window=window)
    gain = comps[0] + comps[1] + comps[2]
    return float(np.sum(np.abs(sp.bins) ** 2 * gain) * sp.bin_hz)


def ltft_truncation_ratio(
    params: LTFTParams,
    s: Signal,
    domain: BoxDomain,
    ref_domain: BoxDomain,
    resolution: Optional[int] = None,
) -> LVDReport:
    """Relative coefficient energy lost by restricting phase space to
    ``domain``, with ``ref_domain`` standing in for the full space.

    Requires both domains' x ranges to cover the signal support plus the
    largest atom half-support (every provided constructor does), which makes
    the x side exact; the loss is then purely a frequency-side tail. A
    reference that holds less than 10x the tail of its own shrunken version
    is rejected as too small.
    """
    if ref_domain.omega_range[1] < domain.omega_range[1]:
        raise InvalidParameterError("reference domain must contain the domain")
    _check_x_lossless(domain, params, s)
    _check_x_lossless(ref_domain, params, s)
    e_dom = _ltft_energy(params, s, _omega_window(domain))
    e_ref = _ltft_energy(params, s, _omega_window(ref_domain))
    shrunk = (
        ref_domain.omega_range[0],
        ref_domain.omega_range[1] / 2.0,
        ref_domain.two_sided,
    )
    e_shrunk = _ltft_energy(params, s, shrunk)
    if e_ref <= 0:
        raise InvalidParameterError("signal has no coefficient energy in the reference")
    tail = max(e_ref - e_shrunk, 0.0)
    truncated = max(e_ref - e_dom, 0.0)
    if tail >= 0.1 * max(e_dom, 1e-300):
        raise ReferenceDomainError(
            f"reference domain too small: outer-half tail {tail:.3e} is not "
            f"negligible against the kept energy {e_dom:.3e}"
        )
    ratio = float(np.sqrt(truncated / e_ref))
    m_res = resolution if resolution is not None else s.n - 1
    w_est = domain.omega_length / s.rate
    return LVDReport(m_res, w_est, domain.measure, domain.measure / m_res, ratio)


_GL8 = np.polynomial.legendre.leggauss(8)


def _cwt_omega_energy_curve(mother: MotherWavelet, z: np.ndarray, lo: float, hi: float, oversample: float = 2.0) -> np.ndarray:
    """g(z) = integral_lo^hi |omega|^{-1} (|ft(z/omega)|^2 + |ft(-z/omega)|^2)
    domega, covering both signs of omega for a (possibly complex) wavelet."""
    span = np.log(hi) - np.log(lo)
    xg, wg = _GL8
    n_panel = max(4, int(np.ceil(span * 4.0 * oversample)))
    edges = np.linspace(np.log(lo), np.log(hi), n_panel + 1)
    centers = 0.5 * (edges[1:] + edges[:-1])
    halves = 0.5 * np.diff(edges)
    v = (centers[:, None] + halves[:, None] * xg[None, :]).ravel()
    wts = (halves[:, None] * wg[None, :]).ravel()
    args = z[:, None] * np.exp(-v)[None, :]
    vals = np.abs(mother.ft(args)) ** 2 + np.abs(mother.ft(-args)) ** 2
    return vals @ wts


def cwt_truncation_ratio(
    mother: MotherWavelet,
    coeffs: np.ndarray,
    domain: CwtDomain,
    ref_domain: CwtDomain,
    xi: Optional[Window] = None,
    z_step: float = 0.25,
    z_pad: float = 40.0,
) -> LVDReport:
    """Truncation error of the wavelet coefficients of an enveloped trig
    polynomial, via the closed-form spectrum and the exact x marginal."""
    if ref_domain.omega_bounds[1] < domain.omega_bounds[1]:
        raise InvalidParameterError("reference domain must contain the domain")
    m_max = np.asarray(coeffs).size // 2
    z_hi = m_max + z_pad
    z = np.arange(-z_hi, z_hi + z_step, z_step)
    qhat2 = np.abs(closed_form_spectrum(coeffs, z, xi)) ** 2

    def energy(lo, hi):
        return float(np.sum(qhat2 * _cwt_omega_energy_curve(mother, z, lo, hi)) * z_step)

    e_dom = energy(*domain.omega_bounds)
    e_ref = energy(*ref_domain.omega_bounds)
    lo_ref, hi_ref = ref_domain.omega_bounds
    e_shrunk = energy(2.0 * lo_ref, hi_ref / 2.0)
    if e_ref <= 0:
        raise InvalidParameterError("signal has no coefficient energy in the reference")
    tail = max(e_ref - e_shrunk, 0.0)
    truncated = max(e_ref - e_dom, 0.0)
    if tail >= 0.1 * max(e_dom, 1e-300):
        raise ReferenceDomainError(
            f"reference domain too small: outer tail {tail:.3e} vs kept {e_dom:.3e}"
        )
    ratio = float(np.sqrt(truncated / e_ref))
    m_res = domain.resolution
    return LVDReport(m_res, domain.big_w, domain.measure, domain.measure / m_res, ratio)
