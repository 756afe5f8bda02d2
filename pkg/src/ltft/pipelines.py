"""Randomized phase-space signal processing: draw atoms uniformly from a
finite-measure domain, move or reweight their coefficients, and recombine.

The synthesis-mode estimator applies the inverse frame operator to the input
before analysis; the analysis-mode estimator applies it to the recombined
output. Either way the sum

    (measure / K) * sum_k r(T coeff_k) * atom_{target_k}

is an unbiased Monte Carlo estimate of the corresponding deterministic
pipeline restricted to the sampling domain. Sample processing is chunked and
vectorized, and chunks are reduced in index order, so results are bitwise
reproducible for a given seed regardless of chunk size.

Atoms whose carrier exceeds the working grid's Nyquist frequency contribute
nothing (see ltft.dense); for band-limited inputs this matches the
continuum up to a negligible tail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .atoms import LTFTParams, atom_scale
from .errors import InvalidParameterError, MaskFormatError
from .frame_filter import LTFTFrame
from .phase_space import BoxDomain, PhaseSample, ltft_domain
from .signals import Signal

__all__ = [
    "Nonlinearity",
    "identity_nl",
    "vocoder_phase",
    "soft_threshold",
    "IdentityOp",
    "Diffeo",
    "Multiplier",
    "KernelOp",
    "time_stretch",
    "PipelineConfig",
    "run_mc_pipeline",
    "run_kernel_pipeline",
    "phase_vocoder",
    "denoise",
    "multiply",
    "SymbolGrid",
    "OpCountReport",
    "op_count",
]


# ---------------------------------------------------------------------------
# Pointwise nonlinearities with a declared growth bound |r(z)| <= E |z|
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Nonlinearity:
    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    growth: float

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return self.fn(np.asarray(z, dtype=np.complex128))


def identity_nl() -> Nonlinearity:
    return Nonlinearity("identity", lambda z: z, 1.0)


def vocoder_phase(delta: int) -> Nonlinearity:
    """Multiply the phase angle by delta, keeping the modulus: r(a e^{i th})
    = a e^{i delta th}."""
    if int(delta) != delta or delta < 1:
        raise InvalidParameterError(f"phase multiplier must be a positive integer, got {delta}")
    delta = int(delta)

    def fn(z):
        mag = np.abs(z)
        unit = np.divide(z, mag, out=np.zeros_like(z), where=mag > 0)
        return mag * unit**delta

    return Nonlinearity(f"vocoder_phase({delta})", fn, 1.0)


def soft_threshold(lam: float) -> Nonlinearity:
    """Shrink the modulus by lam, keeping the phase."""
    if not lam >= 0:
        raise InvalidParameterError(f"threshold must be >= 0, got {lam}")

    def fn(z):
        mag = np.abs(z)
        unit = np.divide(z, mag, out=np.zeros_like(z), where=mag > 0)
        return unit * np.maximum(0.0, mag - lam)

    return Nonlinearity(f"soft_threshold({lam})", fn, 1.0)


def check_growth(nl: Nonlinearity, n: int = 10_000, seed: int = 0, scale: float = 10.0) -> bool:
    """Empirical check of the growth bound on random complex inputs."""
    rng = np.random.default_rng(seed)
    z = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return bool(np.all(np.abs(nl(z)) <= nl.growth * np.abs(z) * (1 + 1e-9) + 1e-300))


# ---------------------------------------------------------------------------
# Phase-space operators
# ---------------------------------------------------------------------------


class IdentityOp:
    """Leaves coefficients and sample positions alone."""


@dataclass(frozen=True)
class Diffeo:
    """Coefficient relocation: a sampled point g contributes its coefficient
    to the atom at map(g). ``inverse_fn`` is only used by validation."""

    map_fn: Callable[[np.ndarray, np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]
    inverse_fn: Optional[Callable] = None
    jacobian_bound: float = np.inf


@dataclass(frozen=True)
class Multiplier:
    """Pointwise coefficient reweighting by a bounded symbol on phase space."""

    symbol: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
    bound: float = np.inf


@dataclass(frozen=True)
class KernelOp:
    """Integral operator with kernel R(y, g); needs its own output domain and
    a uniform square-integrability bound."""

    kernel: Callable[[PhaseSample, PhaseSample], np.ndarray]
    out_domain: BoxDomain
    bound: float = np.inf


def time_stretch(delta: int) -> Diffeo:
    if int(delta) != delta or delta < 1:
        raise InvalidParameterError(f"stretch factor must be a positive integer, got {delta}")
    delta = int(delta)
    return Diffeo(
        map_fn=lambda x, w, t: (delta * x, w, t),
        inverse_fn=lambda x, w, t: (x / delta, w, t),
        jacobian_bound=float(delta),
    )


def validate_diffeo(op: Diffeo, domain: BoxDomain, n: int = 256, seed: int = 0, tol: float = 1e-9) -> bool:
    """Round-trip map/inverse check on sampled points."""
    if op.inverse_fn is None:
        return True
    pts = domain.sample(n, np.random.default_rng(seed))
    fx, fw, ft_ = op.map_fn(pts.x, pts.omega, pts.tau)
    bx, bw, bt = op.inverse_fn(fx, fw, ft_)
    return bool(
        np.allclose(bx, pts.x, atol=tol)
        and np.allclose(bw, pts.omega, atol=tol)
        and np.allclose(bt, pts.tau, atol=tol, equal_nan=True)
    )


# ---------------------------------------------------------------------------
# Pipeline configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineConfig:
    """Sample budget, sampling domain, and estimator mode.

    ``k_samples`` is the Monte Carlo budget K. ``from_z`` derives it as
    K = Z * C_v * M where C_v * M is the measure of the symmetric
    linear-volume envelope for (M, rate, W), independent of whether sampling
    then uses the positive-frequency practical domain.

    ``lebesgue_tau`` switches the normalization from measure/K (tau carrying
    a probability measure) to the plain-Lebesgue-tau convention, which
    multiplies by (tau_max - tau_min).
    """

    domain: BoxDomain
    k_samples: int
    mode: str = "synthesis"
    seed: int = 0
    l_samples: Optional[int] = None
    lebesgue_tau: bool = False
    chunk: int = 8192

    def __post_init__(self):
        if self.k_samples < 1:
            raise InvalidParameterError("need at least one Monte Carlo sample")
        if self.mode not in ("synthesis", "analysis"):
            raise InvalidParameterError(f"unknown mode {self.mode!r}")
        if self.l_samples is not None and self.l_samples < 1:
            raise InvalidParameterError("need at least one output sample point")

    def normalization(self, domain: Optional[BoxDomain] = None, k: Optional[int] = None) -> float:
        dom = self.domain if domain is None else domain
        kk = self.k_samples if k is None else k
        c = dom.measure / kk
        if self.lebesgue_tau:
            c *= dom.tau_range[1] - dom.tau_range[0]
        return c

    @classmethod
    def from_z(
        cls,
        z_ratio: float,
        resolution: int,
        rate: float,
        params: LTFTParams,
        w_factor: float = 1.0,
        **kwargs,
    ) -> "PipelineConfig":
        if z_ratio <= 0:
            raise InvalidParameterError("samples-per-resolution ratio must be positive")
        envelope = ltft_domain(resolution, rate, w_factor, params, two_sided=True)
        k = max(1, int(round(z_ratio * envelope.measure)))
        domain = ltft_domain(resolution, rate, w_factor, params)
        return cls(domain=domain, k_samples=k, **kwargs)


# ---------------------------------------------------------------------------
# Vectorized per-sample analysis and accumulation
# ---------------------------------------------------------------------------


def _support_index_bounds(x, hw, origin: float, rate: float):
    n_lo = np.ceil((x - hw - origin) * rate - 1e-9).astype(np.int64)
    n_hi = np.floor((x + hw - origin) * rate + 1e-9).astype(np.int64)
    return n_lo, n_hi


def _mc_coefficients(sig: Signal, params: LTFTParams, pts: PhaseSample, chunk: int) -> Tuple[np.ndarray, int]:
    """Analysis coefficients at every sample point; returns (coeffs, touched
    sample count)."""
    rate, origin, n = sig.rate, sig.origin, sig.n
    window = params.window
    out = np.zeros(len(pts), dtype=np.complex128)
    touched = 0
    for i0 in range(0, len(pts), chunk):
        sl = slice(i0, min(i0 + chunk, len(pts)))
        x, w, t = pts.x[sl], pts.omega[sl], pts.tau[sl]
        c = np.asarray(atom_scale(w, t, params), dtype=np.float64)
        hw = t / (2.0 * c)
        in_band = np.abs(w) <= rate / 2.0 + 1e-9
        n_lo, n_hi = _support_index_bounds(x, hw, origin, rate)
        lo = np.maximum(n_lo, 0)
        hi = np.minimum(n_hi, n - 1)
        cnt = np.maximum(hi - lo + 1, 0) * in_band
        m = int(np.max(cnt, initial=1))
        if m == 0:
            continue
        offs = np.arange(m)
        idx = lo[:, None] + offs[None, :]
        valid = offs[None, :] < cnt[:, None]
        idx_c = np.clip(idx, 0, n - 1)
        tt = origin + idx_c / rate
        dt = tt - x[:, None]
        env = np.sqrt(c / t)[:, None] * window.eval((c / t)[:, None] * dt)
        atom = env * np.exp(2j * np.pi * w[:, None] * dt)
        vals = np.where(valid, sig.samples[idx_c] * np.conj(atom), 0.0)
        out[sl] = vals.sum(axis=1) / rate
        touched += int(np.sum(cnt))
    return out, touched


def _mc_accumulate(
    amps: np.ndarray,
    pts: Tuple[np.ndarray, np.ndarray, np.ndarray],
    params: LTFTParams,
    rate: float,
    out_origin: float,
    n_out: int,
    chunk: int,
) -> Tuple[np.ndarray, int]:
    """Scatter-add amp_k * atom_k onto the output grid."""
    xs, ws, ts = pts
    window = params.window
    acc_re = np.zeros(n_out)
    acc_im = np.zeros(n_out)
    touched = 0
    for i0 in range(0, xs.size, chunk):
        sl = slice(i0, min(i0 + chunk, xs.size))
        x, w, t, amp = xs[sl], ws[sl], ts[sl], amps[sl]
        c = np.asarray(atom_scale(w, t, params), dtype=np.float64)
        hw = t / (2.0 * c)
        in_band = np.abs(w) <= rate / 2.0 + 1e-9
        n_lo, n_hi = _support_index_bounds(x, hw, out_origin, rate)
        lo = np.maximum(n_lo, 0)
        hi = np.minimum(n_hi, n_out - 1)
        cnt = np.maximum(hi - lo + 1, 0) * in_band * (amp != 0)
        m = int(np.max(cnt, initial=1))
        if m == 0:
            continue
        offs = np.arange(m)
        idx = lo[:, None] + offs[None, :]
        valid = offs[None, :] < cnt[:, None]
        idx_c = np.clip(idx, 0, n_out - 1)
        tt = out_origin + idx_c / rate
        dt = tt - x[:, None]
        env = np.sqrt(c / t)[:, None] * window.eval((c / t)[:, None] * dt)
        atom = env * np.exp(2j * np.pi * w[:, None] * dt)
        vals = np.where(valid, amp[:, None] * atom, 0.0)
        flat_idx = idx_c[valid]
        flat_vals = vals[valid]
        acc_re += np.bincount(flat_idx, weights=flat_vals.real, minlength=n_out)
        acc_im += np.bincount(flat_idx, weights=flat_vals.imag, minlength=n_out)
        touched += int(np.sum(cnt))
    return acc_re + 1j * acc_im, touched


# ---------------------------------------------------------------------------
# The pipelines
# ---------------------------------------------------------------------------


def _apply_op(op, pts: PhaseSample, coeffs: np.ndarray):
    """Apply the phase-space operator at the sampled points: returns the
    (possibly reweighted) coefficients and the synthesis target points."""
    targets = (pts.x, pts.omega, pts.tau)
    if op is None or isinstance(op, IdentityOp):
        return coeffs, targets
    if isinstance(op, Multiplier):
        return coeffs * np.asarray(op.symbol(pts.x, pts.omega, pts.tau)), targets
    if isinstance(op, Diffeo):
        return coeffs, op.map_fn(pts.x, pts.omega, pts.tau)
    raise InvalidParameterError(f"unsupported phase-space operator {op!r}")


def run_mc_pipeline(
    s: Signal,
    frame: LTFTFrame,
    cfg: PipelineConfig,
    op=None,
    r: Optional[Nonlinearity] = None,
    out_origin: Optional[float] = None,
    n_out: Optional[int] = None,
    stats: Optional[dict] = None,
) -> Signal:
    """Monte Carlo phase-space pipeline for pointwise operators (identity,
    multiplier, diffeomorphism). Kernel operators go through
    :func:`run_kernel_pipeline`.

    With a positive-frequency domain and a real input, the output is the
    doubled real part of the complex accumulation; with a two-sided domain
    the complex accumulation is returned as-is (real inputs come back real
    to rounding).
    """
    if isinstance(op, KernelOp):
        raise InvalidParameterError("kernel operators are handled by run_kernel_pipeline")
    r = r or identity_nl()
    one_sided = not cfg.domain.two_sided
    if one_sided and not s.is_real():
        raise InvalidParameterError(
            "positive-frequency sampling reconstructs real signals only; "
            "use a two-sided domain for complex inputs"
        )
    rng = np.random.default_rng(cfg.seed)
    pts = cfg.domain.sample(cfg.k_samples, rng)

    if cfg.mode == "synthesis":
        analyzed = frame.inverse_apply(s)
    else:
        analyzed = s
    coeffs, touched_a = _mc_coefficients(analyzed, frame.params, pts, cfg.chunk)
    coeffs, targets = _apply_op(op, pts, coeffs)
    amps = r(coeffs) * cfg.normalization()

    if out_origin is None:
        out_origin = s.origin
    if n_out is None:
        n_out = s.n
    acc, touched_s = _mc_accumulate(amps, targets, frame.params, s.rate, out_origin, n_out, cfg.chunk)
    out = Signal(acc, s.rate, out_origin)
    if cfg.mode == "analysis":
        out = frame.inverse_apply(out)
    if one_sided:
        out = Signal(2.0 * out.samples.real, s.rate, out_origin)
    elif s.is_real():
        out = Signal(out.samples.real, s.rate, out_origin)
    if stats is not None:
        stats.update(
            k=cfg.k_samples,
            measure=cfg.domain.measure,
            normalization=cfg.normalization(),
            touched_analysis=touched_a,
            touched_synthesis=touched_s,
        )
    return out


def run_kernel_pipeline(
    s: Signal,
    frame: LTFTFrame,
    cfg: PipelineConfig,
    kernel_op: KernelOp,
    r: Optional[Nonlinearity] = None,
    out_origin: Optional[float] = None,
    n_out: Optional[int] = None,
    stats: Optional[dict] = None,
) -> Signal:
    """Double Monte Carlo sum for integral phase-space operators:

        (mu_eta mu_psi / (K L)) sum_j sum_k R(y_j, g_k) r(coeff_k) atom_{y_j}.

    ``g`` points come from cfg.domain (K of them), ``y`` points from the
    operator's output domain (L of them, default L = K).
    """
    r = r or identity_nl()
    one_sided = not cfg.domain.two_sided
    if one_sided and not s.is_real():
        raise InvalidParameterError("positive-frequency sampling needs a real input")
    l_count = cfg.l_samples or cfg.k_samples
    rng = np.random.default_rng(cfg.seed)
    g_pts = cfg.domain.sample(cfg.k_samples, rng)
    y_pts = kernel_op.out_domain.sample(l_count, rng)

    if cfg.mode == "synthesis":
        analyzed = frame.inverse_apply(s)
    else:
        analyzed = s
    coeffs, touched_a = _mc_coefficients(analyzed, frame.params, g_pts, cfg.chunk)
    rc = r(coeffs)

    # Output-point weights: w_j = sum_k R(y_j, g_k) r(c_k), built blockwise.
    weights = np.zeros(l_count, dtype=np.complex128)
    blk = max(1, cfg.chunk // 8)
    for j0 in range(0, l_count, blk):
        jsl = slice(j0, min(j0 + blk, l_count))
        y_blk = PhaseSample(y_pts.x[jsl], y_pts.omega[jsl], y_pts.tau[jsl])
        kmat = np.asarray(kernel_op.kernel(y_blk, g_pts))
        if kmat.shape != (y_blk.x.size, len(g_pts)):
            raise InvalidParameterError("kernel block has the wrong shape")
        weights[jsl] = kmat @ rc
    norm = (
        cfg.normalization()
        * kernel_op.out_domain.measure
        / l_count
        * (1.0 if not cfg.lebesgue_tau else (kernel_op.out_domain.tau_range[1] - kernel_op.out_domain.tau_range[0]))
    )
    amps = weights * norm

    if out_origin is None:
        out_origin = s.origin
    if n_out is None:
        n_out = s.n
    acc, touched_s = _mc_accumulate(
        amps, (y_pts.x, y_pts.omega, y_pts.tau), frame.params, s.rate, out_origin, n_out, cfg.chunk
    )
    out = Signal(acc, s.rate, out_origin)
    if cfg.mode == "analysis":
        out = frame.inverse_apply(out)
    if one_sided:
        out = Signal(2.0 * out.samples.real, s.rate, out_origin)
    elif s.is_real():
        out = Signal(out.samples.real, s.rate, out_origin)
    if stats is not None:
        stats.update(
            k=cfg.k_samples,
            l=l_count,
            measure=cfg.domain.measure,
            out_measure=kernel_op.out_domain.measure,
            touched_analysis=touched_a,
            touched_synthesis=touched_s,
        )
    return out


def phase_vocoder(
    s: Signal,
    frame: LTFTFrame,
    delta: int,
    cfg: PipelineConfig,
    stats: Optional[dict] = None,
) -> Signal:
    """Integer time stretch: atoms move to (delta x, omega, tau) and their
    coefficient phases are multiplied by delta, so the output carries the
    input's frequency content over delta times the duration."""
    if int(delta) != delta or delta < 1:
        raise InvalidParameterError(f"stretch factor must be a positive integer, got {delta}")
    if not s.is_real():
        raise InvalidParameterError("the vocoder processes real signals")
    delta = int(delta)
    n_out = delta * (s.n - 1) + 1
    return run_mc_pipeline(
        s,
        frame,
        cfg,
        op=time_stretch(delta),
        r=vocoder_phase(delta),
        out_origin=delta * s.origin,
        n_out=n_out,
        stats=stats,
    )


def denoise(s: Signal, frame: LTFTFrame, lam: float, cfg: PipelineConfig, stats=None) -> Signal:
    """Phase-space shrinkage: soft-threshold every sampled coefficient."""
    return run_mc_pipeline(s, frame, cfg, r=soft_threshold(lam), stats=stats)


def multiply(s: Signal, frame: LTFTFrame, symbol, cfg: PipelineConfig, stats=None) -> Signal:
    """Phase-space multiplier with a callable or gridded symbol."""
    sym = symbol if callable(symbol) else None
    if sym is None:
        raise InvalidParameterError("symbol must be callable; load masks with SymbolGrid")
    return run_mc_pipeline(s, frame, cfg, op=Multiplier(sym), stats=stats)


# ---------------------------------------------------------------------------
# Gridded symbols (nearest-neighbor masks)
# ---------------------------------------------------------------------------

_MASK_TAG = "ltft-symbol-mask v1"


@dataclass(frozen=True, eq=False)
class SymbolGrid:
    """Piecewise-constant symbol on a regular (x, omega) grid with
    nearest-neighbor lookup; tau is ignored."""

    x0: float
    dx: float
    omega0: float
    domega: float
    values: np.ndarray  # (nx, nomega)

    def __call__(self, x, omega, tau=None) -> np.ndarray:
        ix = np.clip(np.round((np.asarray(x) - self.x0) / self.dx).astype(int), 0, self.values.shape[0] - 1)
        iw = np.clip(
            np.round((np.asarray(omega) - self.omega0) / self.domega).astype(int),
            0,
            self.values.shape[1] - 1,
        )
        return self.values[ix, iw]

    @classmethod
    def from_csv(cls, path: str) -> "SymbolGrid":
        with open(path, "r", encoding="utf-8") as fh:
            tag = fh.readline().strip()
            if tag != f"# {_MASK_TAG}":
                raise MaskFormatError(f"not a symbol-mask file: {path}")
            try:
                spec = json.loads(fh.readline().lstrip("# ").strip())
                nx, nw = int(spec["nx"]), int(spec["nomega"])
                x0, dx = float(spec["x0"]), float(spec["dx"])
                w0, dw = float(spec["omega0"]), float(spec["domega"])
            except (ValueError, KeyError, json.JSONDecodeError) as exc:
                raise MaskFormatError(f"bad grid spec in {path}: {exc}") from exc
            header = fh.readline().strip()
            if header != "x,omega,value":
                raise MaskFormatError(f"unexpected column header {header!r} in {path}")
            values = np.zeros((nx, nw))
            seen = np.zeros((nx, nw), dtype=bool)
            for lineno, line in enumerate(fh, start=4):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 3:
                    raise MaskFormatError(f"{path}:{lineno}: expected three fields, got {line!r}")
                try:
                    x, w, v = (float(p) for p in parts)
                except ValueError:
                    raise MaskFormatError(f"{path}:{lineno}: non-numeric field in {line!r}")
                ix = round((x - x0) / dx)
                iw = round((w - w0) / dw)
                if not (0 <= ix < nx and 0 <= iw < nw):
                    raise MaskFormatError(f"{path}:{lineno}: point ({x}, {w}) is off the declared grid")
                values[ix, iw] = v
                seen[ix, iw] = True
            if not seen.all():
                missing = int((~seen).sum())
                raise MaskFormatError(f"{path}: {missing} grid cells have no row")
        return cls(x0, dx, w0, dw, values)

    def to_csv(self, path: str) -> None:
        nx, nw = self.values.shape
        spec = {
            "x0": self.x0,
            "dx": self.dx,
            "nx": nx,
            "omega0": self.omega0,
            "domega": self.domega,
            "nomega": nw,
        }
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# {_MASK_TAG}\n")
            fh.write(f"# {json.dumps(spec, sort_keys=True)}\n")
            fh.write("x,omega,value\n")
            for i in range(nx):
                for j in range(nw):
                    fh.write(
                        f"{self.x0 + i * self.dx!r},{self.omega0 + j * self.domega!r},"
                        f"{float(self.values[i, j])!r}\n"
                    )


# ---------------------------------------------------------------------------
# Expected work of the stochastic vocoder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpCountReport:
    """Expected vs measured per-run sample-touch counts.

    ``formula`` is 2 tau0 Z M (1 + (1-beta)/beta + ln(beta/alpha)) with
    tau0 the mean oscillation count; the fixed transform cost is reported
    separately as a standard 5 n log2 n FFT estimate."""

    formula: float
    measured_mean: float
    measured_std: float
    fft_flops: float
    k_samples: int
    per_seed: Tuple[float, ...] = field(default_factory=tuple)

    @property
    def relative_gap(self) -> float:
        return abs(self.measured_mean - self.formula) / self.formula


def op_count(
    params: LTFTParams,
    rate: float,
    resolution: int,
    z_ratio: float,
    n_seeds: int = 20,
    seed0: int = 0,
) -> OpCountReport:
    """Draw K = Z M points per seed from the symmetric W = 1 domain and count
    the analysis-plus-synthesis sample touches of each atom (its full support
    length on the grid)."""
    tr = params.transition
    if not hasattr(tr, "a") or not hasattr(tr, "b"):
        raise InvalidParameterError("the work formula applies to constant transition frequencies")
    alpha, beta = tr.a / rate, tr.b / rate
    if not (0 < alpha < beta < 1):
        raise InvalidParameterError("need transition fractions 0 < a/R < b/R < 1")
    k = int(z_ratio * resolution)
    if k < 1:
        raise InvalidParameterError("Z M must be at least 1")
    tau0 = 0.5 * (params.tau_min + params.tau_max)
    formula = 2.0 * tau0 * z_ratio * resolution * (1.0 + (1.0 - beta) / beta + np.log(beta / alpha))
    domain = ltft_domain(resolution, rate, 1.0, params, two_sided=True)
    counts = []
    for i in range(n_seeds):
        pts = domain.sample(k, np.random.default_rng(seed0 + i))
        c = np.asarray(atom_scale(pts.omega, pts.tau, params), dtype=np.float64)
        hw = pts.tau / (2.0 * c)
        n_lo, n_hi = _support_index_bounds(pts.x, hw, 0.0, rate)
        counts.append(float(np.sum(2 * (n_hi - n_lo + 1))))
    n_fft = resolution + 1
    fft_flops = 5.0 * n_fft * np.log2(n_fft)
    arr = np.asarray(counts)
    return OpCountReport(
        float(formula),
        float(arr.mean()),
        float(arr.std(ddof=1)) if len(arr) > 1 else 0.0,
        float(fft_flops),
        k,
        tuple(arr),
    )
