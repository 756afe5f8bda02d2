"""Deterministic dense-grid analysis and synthesis over a phase-space box.

These are the Riemann-sum oracles the randomized pipelines are validated
against: analysis correlates the signal with every atom on a regular
(x, omega, tau) grid, synthesis recombines a coefficient grid against the
same atoms with the grid's quadrature weights. Atom centers sit on the
signal's sample lattice so both directions reduce to one FFT convolution per
(omega, tau) pair.

Atoms whose carrier exceeds the grid's Nyquist frequency are not
representable at the working rate (they would alias); for band-limited
signals their true contribution is negligible, so they are treated as out
of band and contribute zero on both the analysis and the synthesis side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.signal import fftconvolve

from .errors import InvalidParameterError
from .phase_space import BoxDomain
from .signals import Signal

__all__ = ["CoefficientGrid", "DenseGridSpec", "dense_analysis", "dense_synthesis", "ltft_grid_spec"]


@dataclass(frozen=True)
class DenseGridSpec:
    """Grid resolutions: x stride in samples, node counts per omega side and
    for tau."""

    x_stride: int
    n_omega: int
    n_tau: int

    def __post_init__(self):
        if self.x_stride < 1 or self.n_omega < 2 or self.n_tau < 1:
            raise InvalidParameterError("grid spec needs x_stride>=1, n_omega>=2, n_tau>=1")

    def doubled(self) -> "DenseGridSpec":
        return DenseGridSpec(max(1, self.x_stride // 2), 2 * self.n_omega, 2 * self.n_tau)


def ltft_grid_spec(params, domain: BoxDomain, rate: float, oversample: float = 4.0) -> DenseGridSpec:
    """Resolution choice for the localizing family: the x stride resolves the
    narrowest atom envelope, the omega step the widest atom bandwidth."""
    taus = np.linspace(params.tau_min, params.tau_max, 17)
    min_hw = float(np.min(taus / (2.0 * params.b_tau(taus))))
    stride = max(1, int(np.floor(min_hw * rate / oversample)))
    bw = float(np.min(params.a_tau(taus) / taus))
    lo, hi = domain.omega_range
    n_omega = max(8, int(np.ceil((hi - lo) / (bw / oversample))))
    n_tau = 1 if params.tau_min == params.tau_max else max(4, int(2 * oversample))
    return DenseGridSpec(stride, n_omega, n_tau)


@dataclass(frozen=True, eq=False)
class CoefficientGrid:
    """Coefficients on a regular phase-space grid with quadrature weights.

    values[i, j, l] is the coefficient at (x[i], omega[j], tau[l]); the cell
    weight is w_x * w_omega * w_tau[l] (tau weights sum to 1).
    """

    x: np.ndarray
    omega: np.ndarray
    tau: np.ndarray
    values: np.ndarray
    w_x: float
    w_omega: float
    w_tau: np.ndarray
    rate: float

    def energy(self) -> float:
        """Squared L2 norm of the restricted coefficient function."""
        per_tau = np.sum(np.abs(self.values) ** 2, axis=(0, 1))
        return float(np.sum(per_tau * self.w_tau) * self.w_x * self.w_omega)

    def copy_with(self, values: np.ndarray) -> "CoefficientGrid":
        if values.shape != self.values.shape:
            raise InvalidParameterError("replacement values must keep the grid shape")
        return CoefficientGrid(
            self.x, self.omega, self.tau, values, self.w_x, self.w_omega, self.w_tau, self.rate
        )


def _omega_nodes(domain: BoxDomain, n: int) -> Tuple[np.ndarray, float]:
    lo, hi = domain.omega_range
    step = (hi - lo) / n
    pos = lo + (np.arange(n) + 0.5) * step
    if domain.two_sided:
        return np.concatenate([-pos[::-1], pos]), step
    return pos, step


def _tau_nodes(domain: BoxDomain, n: int) -> Tuple[np.ndarray, np.ndarray]:
    lo, hi = domain.tau_range
    if lo == hi:
        return np.array([lo]), np.array([1.0])
    step = (hi - lo) / n
    nodes = lo + (np.arange(n) + 0.5) * step
    return nodes, np.full(n, 1.0 / n)


def _x_lattice(domain: BoxDomain, s_origin: float, rate: float, stride: int) -> np.ndarray:
    """Lattice indices p (times are s_origin + p / rate) covering the x range."""
    p_lo = int(np.ceil((domain.x_range[0] - s_origin) * rate - 1e-9))
    p_hi = int(np.floor((domain.x_range[1] - s_origin) * rate + 1e-9))
    if p_hi < p_lo:
        raise InvalidParameterError("domain x range holds no lattice point")
    return np.arange(p_lo, p_hi + 1, stride)


def _kernel(family, omega: float, tau: float, rate: float) -> Tuple[np.ndarray, int]:
    hw = family.halfwidth(omega, tau)
    m = max(1, int(np.ceil(hw * rate - 1e-9)))
    t_rel = np.arange(-m, m + 1) / rate
    return family.kernel(omega, tau, t_rel).astype(np.complex128), m


def in_band(omega, rate: float) -> np.ndarray:
    """Whether an atom carrier is representable at the working rate."""
    return np.abs(np.asarray(omega)) <= rate / 2.0 + 1e-9


def dense_analysis(s: Signal, family, domain: BoxDomain, spec: DenseGridSpec) -> CoefficientGrid:
    """Coefficients <s, atom> for every atom on the grid; atoms whose support
    misses the signal get exactly zero."""
    omega, w_omega = _omega_nodes(domain, spec.n_omega)
    tau, w_tau = _tau_nodes(domain, spec.n_tau) if family.uses_tau else (np.array([np.nan]), np.array([1.0]))
    lattice = _x_lattice(domain, s.origin, s.rate, spec.x_stride)
    x = s.origin + lattice / s.rate
    values = np.zeros((lattice.size, omega.size, tau.size), dtype=np.complex128)
    for j, om in enumerate(omega):
        if not in_band(om, s.rate):
            continue
        for l, tv in enumerate(tau):
            k, m = _kernel(family, om, tv, s.rate)
            corr = fftconvolve(s.samples, np.conj(k[::-1]))
            idx = lattice + m  # corr index j maps to lattice point j - m
            ok = (idx >= 0) & (idx < corr.size)
            col = np.zeros(lattice.size, dtype=np.complex128)
            col[ok] = corr[idx[ok]] / s.rate
            values[:, j, l] = col
    return CoefficientGrid(x, omega, tau, values, spec.x_stride / s.rate, w_omega, w_tau, s.rate)


def dense_synthesis(
    grid: CoefficientGrid,
    family,
    out_origin: float,
    n_out: int,
    rate: Optional[float] = None,
) -> Signal:
    """Weighted recombination sum_cells w * value * atom, evaluated on the
    requested output grid. The output origin must sit on the same 1/rate
    lattice as the atom centers."""
    rate = grid.rate if rate is None else rate
    rel = (grid.x - out_origin) * rate
    lattice = np.round(rel).astype(int)
    if np.max(np.abs(rel - lattice)) > 1e-6:
        raise InvalidParameterError("output grid is not aligned with the atom centers")
    m_max = 1
    for om in grid.omega:
        for tv in grid.tau:
            m_max = max(m_max, int(np.ceil(family.halfwidth(om, tv) * rate)))
    buf_lo = min(int(lattice.min()) - m_max, 0)
    buf_hi = max(int(lattice.max()) + m_max, n_out - 1)
    buf = np.zeros(buf_hi - buf_lo + 1, dtype=np.complex128)
    base = lattice - buf_lo
    for j, om in enumerate(grid.omega):
        if not in_band(om, rate):
            continue
        for l, tv in enumerate(grid.tau):
            k, m = _kernel(family, om, tv, rate)
            amp = grid.values[:, j, l] * (grid.w_x * grid.w_omega * grid.w_tau[l])
            if not np.any(amp):
                continue
            spikes = np.zeros(buf.size, dtype=np.complex128)
            spikes[base] = amp
            conv = fftconvolve(spikes, k)
            buf += conv[m : m + buf.size]
    return Signal(buf[-buf_lo : -buf_lo + n_out], rate, out_origin)
