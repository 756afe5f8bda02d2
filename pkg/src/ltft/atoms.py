"""Time-frequency atom families and coefficient evaluation.

The localizing family carries three axes: time x, frequency omega, and an
oscillation count tau. Atoms are windowed complex exponentials whose window
dilation switches between three regimes as |omega| crosses the transition
frequencies a_tau < b_tau:

    scale c = a_tau   for |omega| <  a_tau      (wide, constant support)
    scale c = |omega| for a_tau <= |omega| <= b_tau  (wavelet-like zoom)
    scale c = b_tau   for |omega| >  b_tau      (narrow, constant support)

and the atom at (x, omega, tau) is sqrt(c/tau) h((c/tau)(t-x)) e^{2 pi i omega (t-x)}.
Plain short-time and wavelet families are provided through the same coefficient
machinery.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from .errors import InvalidParameterError
from .signals import Signal
from .windows import Window, hann_ft, hann_window

__all__ = [
    "Band",
    "ConstantTransition",
    "SupportPinnedTransition",
    "LTFTParams",
    "PhasePoint",
    "atom_band",
    "atom_scale",
    "atom_support",
    "eval_ltft_atom",
    "eval_atom_ft",
    "analysis_coeff",
    "Atom",
    "ltft_atom",
    "stft_atom",
    "cwt_atom",
    "MotherWavelet",
    "default_mother_wavelet",
    "LtftFamily",
    "StftFamily",
    "CwtFamily",
    "normalized_hann",
]


class Band(enum.Enum):
    LOW = "low"
    MID = "mid"
    HIGH = "high"


@dataclass(frozen=True)
class ConstantTransition:
    """Fixed transition frequencies a < b (Hz)."""

    a: float
    b: float

    def __post_init__(self):
        if not (0 < self.a < self.b):
            raise InvalidParameterError(f"need 0 < a < b, got a={self.a}, b={self.b}")

    def a_tau(self, tau):
        return np.broadcast_to(self.a, np.shape(tau)).astype(float) if np.ndim(tau) else self.a

    def b_tau(self, tau):
        return np.broadcast_to(self.b, np.shape(tau)).astype(float) if np.ndim(tau) else self.b

    def describe(self):
        return {"mode": "constant", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class SupportPinnedTransition:
    """Transitions chosen so the wide and narrow window supports are the
    constants J1 > J2 (seconds): a_tau = 2 tau / J1, b_tau = 2 tau / J2."""

    j1: float
    j2: float

    def __post_init__(self):
        if not (self.j1 > self.j2 > 0):
            raise InvalidParameterError(f"need J1 > J2 > 0, got J1={self.j1}, J2={self.j2}")

    def a_tau(self, tau):
        return 2.0 * np.asarray(tau, dtype=float) / self.j1 if np.ndim(tau) else 2.0 * tau / self.j1

    def b_tau(self, tau):
        return 2.0 * np.asarray(tau, dtype=float) / self.j2 if np.ndim(tau) else 2.0 * tau / self.j2

    def describe(self):
        return {"mode": "support_pinned", "j1": self.j1, "j2": self.j2}


@dataclass(frozen=True)
class LTFTParams:
    """Atom-family parameters: oscillation range, transition rule, window.

    The tau axis carries the uniform probability measure on
    [tau_min, tau_max], so phase-space volumes are areas in the (x, omega)
    plane.
    """

    tau_min: float
    tau_max: float
    transition: ConstantTransition | SupportPinnedTransition
    window: Window = field(default_factory=hann_window)

    def __post_init__(self):
        if not (0 < self.tau_min <= self.tau_max):
            raise InvalidParameterError(
                f"need 0 < tau_min <= tau_max, got [{self.tau_min}, {self.tau_max}]"
            )

    def a_tau(self, tau):
        return self.transition.a_tau(tau)

    def b_tau(self, tau):
        return self.transition.b_tau(tau)

    def x_margin(self) -> float:
        """Largest atom support length tau / a_tau over the tau range; the
        time margin a sampling domain needs around a signal's support."""
        t = np.linspace(self.tau_min, self.tau_max, 33)
        return float(np.max(t / self.transition.a_tau(t)))

    def max_halfwidth(self) -> float:
        """Largest atom support half-length tau / (2 a_tau)."""
        return 0.5 * self.x_margin()

    def describe(self) -> dict:
        return {
            "tau_min": self.tau_min,
            "tau_max": self.tau_max,
            "transition": self.transition.describe(),
            "window": self.window.name,
        }


@dataclass(frozen=True)
class PhasePoint:
    """A point (x, omega, tau) in phase space; tau is ignored by families
    without an oscillation axis."""

    x: float
    omega: float
    tau: float = float("nan")


def _check_tau(params: LTFTParams, tau: float):
    if not (params.tau_min - 1e-12 <= tau <= params.tau_max + 1e-12):
        raise InvalidParameterError(
            f"tau={tau} outside [{params.tau_min}, {params.tau_max}]"
        )


def atom_scale(omega, tau, params: LTFTParams):
    """Window dilation scale c for given (omega, tau); vectorized."""
    omega = np.asarray(omega, dtype=float)
    tau = np.asarray(tau, dtype=float)
    a = np.asarray(params.a_tau(tau), dtype=float)
    b = np.asarray(params.b_tau(tau), dtype=float)
    mag = np.abs(omega)
    return np.select([mag < a, mag <= b], [a * np.ones_like(mag), mag], default=b * np.ones_like(mag))


def atom_band(omega: float, tau: float, params: LTFTParams) -> Band:
    """Which regime (omega, tau) falls in; the closed interval
    a_tau <= |omega| <= b_tau belongs to the middle band."""
    mag = abs(omega)
    a = float(params.a_tau(tau))
    b = float(params.b_tau(tau))
    if mag < a:
        return Band.LOW
    if mag <= b:
        return Band.MID
    return Band.HIGH


def atom_support(p: PhasePoint, params: LTFTParams) -> Tuple[float, float]:
    """Time interval outside which the atom vanishes: x +- tau/(2c)."""
    _check_tau(params, p.tau)
    c = float(atom_scale(p.omega, p.tau, params))
    hw = p.tau / (2.0 * c)
    return (p.x - hw, p.x + hw)


def eval_ltft_atom(p: PhasePoint, params: LTFTParams, t) -> np.ndarray:
    """Atom value sqrt(c/tau) h((c/tau)(t-x)) e^{2 pi i omega (t-x)}."""
    _check_tau(params, p.tau)
    t = np.asarray(t, dtype=np.float64)
    c = float(atom_scale(p.omega, p.tau, params))
    u = (c / p.tau) * (t - p.x)
    env = np.sqrt(c / p.tau) * params.window.eval(u)
    return env * np.exp(2j * np.pi * p.omega * (t - p.x))


def eval_atom_ft(p: PhasePoint, params: LTFTParams, z) -> np.ndarray:
    """Frequency-domain atom sqrt(tau/c) hhat((tau/c)(z-omega)) e^{-2 pi i x z}."""
    _check_tau(params, p.tau)
    z = np.asarray(z, dtype=np.float64)
    c = float(atom_scale(p.omega, p.tau, params))
    env = np.sqrt(p.tau / c) * params.window.ft((p.tau / c) * (z - p.omega))
    return env * np.exp(-2j * np.pi * p.x * z)


@dataclass(frozen=True, eq=False)
class Atom:
    """A concrete atom: center, support, and evaluators."""

    x: float
    support: Tuple[float, float]
    eval_fn: Callable[[np.ndarray], np.ndarray]
    ft_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def eval(self, t) -> np.ndarray:
        return self.eval_fn(np.asarray(t, dtype=np.float64))

    def ft(self, z) -> np.ndarray:
        if self.ft_fn is None:
            raise InvalidParameterError("this atom has no closed-form transform")
        return self.ft_fn(np.asarray(z, dtype=np.float64))


def ltft_atom(p: PhasePoint, params: LTFTParams) -> Atom:
    return Atom(
        p.x,
        atom_support(p, params),
        lambda t: eval_ltft_atom(p, params, t),
        lambda z: eval_atom_ft(p, params, z),
    )


def stft_atom(p: PhasePoint, window: Window) -> Atom:
    """Translated and modulated window: window(t-x) e^{2 pi i omega (t-x)}."""

    def ev(t):
        return window.eval(t - p.x) * np.exp(2j * np.pi * p.omega * (t - p.x))

    def ft(z):
        return window.ft(z - p.omega) * np.exp(-2j * np.pi * p.x * z)

    return Atom(p.x, (p.x - 0.5, p.x + 0.5), ev, ft)


def analysis_coeff(s: Signal, atom: Atom) -> complex:
    """Coefficient <s, atom> by a rectangle rule at the signal's rate,
    touching only the samples inside the atom's support. Returns exactly 0
    when the supports do not meet."""
    lo, hi = atom.support
    n_lo = max(0, int(np.ceil((lo - s.origin) * s.rate - 1e-9)))
    n_hi = min(s.n - 1, int(np.floor((hi - s.origin) * s.rate + 1e-9)))
    if n_lo > n_hi:
        return 0.0 + 0.0j
    t = s.origin + np.arange(n_lo, n_hi + 1) / s.rate
    vals = atom.eval(t)
    return complex(np.vdot(vals, s.samples[n_lo : n_hi + 1]) / s.rate)


def ltft_coeff(s: Signal, p: PhasePoint, params: LTFTParams) -> complex:
    return analysis_coeff(s, ltft_atom(p, params))


# ---------------------------------------------------------------------------
# Mother wavelets
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MotherWavelet:
    """Compactly supported complex wavelet with closed-form transform.

    ``admissibility`` is integral_0^inf |ft(z)|^2 / z dz after normalization;
    building through :func:`default_mother_wavelet` makes it 1.
    """

    eval_fn: Callable[[np.ndarray], np.ndarray]
    ft_fn: Callable[[np.ndarray], np.ndarray]
    half_support: float
    admissibility: float
    l2norm: float

    def eval(self, t) -> np.ndarray:
        return self.eval_fn(np.asarray(t, dtype=np.float64))

    def ft(self, z) -> np.ndarray:
        return self.ft_fn(np.asarray(z, dtype=np.float64))


def _admissibility_integral(ft_fn, z_max: float = 400.0) -> float:
    def integrand(z):
        return float(np.abs(ft_fn(z)) ** 2 / z)

    total = 0.0
    for a, b in ((1e-12, 1.0), (1.0, 8.0), (8.0, 64.0), (64.0, z_max)):
        val, _ = quad(integrand, a, b, limit=400)
        total += val
    return total


def default_mother_wavelet(nu: float = 2.0) -> MotherWavelet:
    """Hann-enveloped exponential with the DC term subtracted:

        f(t) = (e^{2 pi i nu t} - hhat(nu)/hhat(0)) h(t),

    so fthat(0) = 0 exactly; numerically normalized so the admissibility
    constant is 1.
    """
    kappa = float(hann_ft(nu) / hann_ft(0.0))

    def raw_eval(t):
        t = np.asarray(t, dtype=np.float64)
        from .windows import hann_eval

        return (np.exp(2j * np.pi * nu * t) - kappa) * hann_eval(t)

    def raw_ft(z):
        z = np.asarray(z, dtype=np.float64)
        return hann_ft(z - nu) - kappa * hann_ft(z)

    a_f = _admissibility_integral(raw_ft)
    scale = 1.0 / np.sqrt(a_f)

    def ev(t):
        return scale * raw_eval(t)

    def ft(z):
        return scale * raw_ft(z)

    # ||f||_2^2 = integral |f|^2 over the support, in closed form pieces:
    # |e^{i..} - kappa|^2 h^2 = (1 + kappa^2) h^2 - 2 kappa cos(2 pi nu t) h^2.
    val, _ = quad(lambda t: np.abs(ev(t)) ** 2, -0.5, 0.5, limit=200)
    return MotherWavelet(ev, ft, 0.5, 1.0, float(np.sqrt(val)))


def cwt_atom(p: PhasePoint, mother: MotherWavelet) -> Atom:
    """Translated dilated wavelet |omega|^{1/2} f(omega (t-x)); omega gives
    the zoom, so higher omega means shorter support."""
    if p.omega == 0:
        raise InvalidParameterError("wavelet atoms need omega != 0")
    hw = mother.half_support / abs(p.omega)
    amp = np.sqrt(abs(p.omega))

    def ev(t):
        return amp * mother.eval(p.omega * (t - p.x))

    def ft(z):
        return mother.ft(z / p.omega) / amp * np.exp(-2j * np.pi * p.x * z)

    return Atom(p.x, (p.x - hw, p.x + hw), ev, ft)


# ---------------------------------------------------------------------------
# Families: a uniform interface for dense quadrature and sampling machinery
# ---------------------------------------------------------------------------


class LtftFamily:
    """Vector-friendly access to the localizing atoms."""

    uses_tau = True

    def __init__(self, params: LTFTParams):
        self.params = params

    def halfwidth(self, omega: float, tau: float) -> float:
        c = float(atom_scale(omega, tau, self.params))
        return tau / (2.0 * c)

    def kernel(self, omega: float, tau: float, t_rel: np.ndarray) -> np.ndarray:
        """Atom centered at x = 0 evaluated at relative times."""
        return eval_ltft_atom(PhasePoint(0.0, omega, tau), self.params, t_rel)

    def ft_abs2(self, omega: float, tau: float, z: np.ndarray) -> np.ndarray:
        """Squared modulus of the kernel transform (x-phase drops out)."""
        c = float(atom_scale(omega, tau, self.params))
        v = np.sqrt(tau / c) * self.params.window.ft((tau / c) * (np.asarray(z) - omega))
        return v**2

    def atom(self, p: PhasePoint) -> Atom:
        return ltft_atom(p, self.params)


class StftFamily:
    uses_tau = False

    def __init__(self, window: Window):
        self.window = window

    def halfwidth(self, omega: float, tau: float = float("nan")) -> float:
        return 0.5

    def kernel(self, omega: float, tau: float, t_rel: np.ndarray) -> np.ndarray:
        return self.window.eval(t_rel) * np.exp(2j * np.pi * omega * t_rel)

    def ft_abs2(self, omega: float, tau: float, z: np.ndarray) -> np.ndarray:
        return self.window.ft(np.asarray(z) - omega) ** 2

    def atom(self, p: PhasePoint) -> Atom:
        return stft_atom(p, self.window)


class CwtFamily:
    uses_tau = False

    def __init__(self, mother: MotherWavelet):
        self.mother = mother

    def halfwidth(self, omega: float, tau: float = float("nan")) -> float:
        if omega == 0:
            raise InvalidParameterError("wavelet atoms need omega != 0")
        return self.mother.half_support / abs(omega)

    def kernel(self, omega: float, tau: float, t_rel: np.ndarray) -> np.ndarray:
        return np.sqrt(abs(omega)) * self.mother.eval(omega * t_rel)

    def ft_abs2(self, omega: float, tau: float, z: np.ndarray) -> np.ndarray:
        return np.abs(self.mother.ft(np.asarray(z) / omega)) ** 2 / abs(omega)

    def atom(self, p: PhasePoint) -> Atom:
        return cwt_atom(p, self.mother)


def normalized_hann() -> Window:
    """Unit-L2-norm Hann window, the natural short-time window for an
    energy-preserving family."""
    w = hann_window()
    norm = w.l2norm()
    from .windows import _make_window

    return _make_window(
        "hann-unit",
        lambda t: w.eval(t) / norm,
        lambda z: w.ft(z) / norm,
        1.0,
    )
