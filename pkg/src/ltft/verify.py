"""Statistical and numerical checks that tie the randomized pipelines back
to their deterministic oracles: convergence-rate fits, reconstruction
residuals, and the two-path frame-operator comparison. Every check can emit
a machine-readable pass/fail row for the bench commands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import stats as sstats

from .dense import DenseGridSpec, dense_analysis, dense_synthesis, ltft_grid_spec
from .errors import InvalidParameterError
from .frame_filter import LTFTFrame, apply_frame_op, apply_inverse_frame_op
from .atoms import LtftFamily
from .phase_space import BoxDomain, ltft_domain
from .pipelines import PipelineConfig, _mc_accumulate, _mc_coefficients
from .signals import Signal

__all__ = [
    "ConvergenceRun",
    "FrameReport",
    "VerifyRow",
    "VERIFY_CSV_HEADER",
    "write_rows",
    "slope_fit",
    "random_bandlimited_signal",
    "dense_identity_pipeline",
    "reconstruct_dense",
    "pseudo_inverse_residual",
    "frame_op_equivalence",
    "convergence_run",
]


def random_bandlimited_signal(
    n: int,
    rate: float,
    band: Tuple[float, float] = (0.01, 0.35),
    seed: int = 0,
    real: bool = True,
) -> Signal:
    """Random signal with a flat random spectrum confined to
    band[0]*rate < |f| < band[1]*rate; the stock in-class test signal."""
    from .signals import Spectrum, dft, idft

    rng = np.random.default_rng(seed)
    base = Signal.centered(np.zeros(n), rate)
    freqs = dft(base).freqs
    keep = (np.abs(freqs) >= band[0] * rate) & (np.abs(freqs) <= band[1] * rate)
    bins = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * keep
    out = idft(Spectrum(bins, rate, base.origin))
    if real:
        out = Signal(out.samples.real, rate, out.origin)
    return out


# ---------------------------------------------------------------------------
# Reporting
# ---------------------------------------------------------------------------

VERIFY_CSV_HEADER = "test_id,params,metric,value,threshold,pass"


@dataclass(frozen=True)
class VerifyRow:
    test_id: str
    params: str
    metric: str
    value: float
    threshold: float
    passed: bool

    def csv_row(self) -> str:
        return (
            f"{self.test_id},{self.params},{self.metric},"
            f"{self.value!r},{self.threshold!r},{int(self.passed)}"
        )


def write_rows(path: str, rows: Iterable[VerifyRow]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(VERIFY_CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.csv_row() + "\n")


# ---------------------------------------------------------------------------
# Slope fitting
# ---------------------------------------------------------------------------


def slope_fit(k_values: Sequence[float], errors: Sequence[float]) -> Tuple[float, float]:
    """Least-squares slope of log2(error) against log2(K) with a 95%
    confidence half-width from the residual variance."""
    k = np.asarray(k_values, dtype=float)
    e = np.asarray(errors, dtype=float)
    if k.size != e.size or k.size < 3:
        raise InvalidParameterError("need at least three (K, error) pairs")
    if np.any(e <= 0) or np.any(k <= 0):
        raise InvalidParameterError("errors and K values must be positive")
    x = np.log2(k)
    y = np.log2(e)
    if np.ptp(x) == 0:
        raise InvalidParameterError("degenerate fit: all K values equal")
    design = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    dof = x.size - 2
    sxx = float(np.sum((x - x.mean()) ** 2))
    se = np.sqrt(max(float(np.sum(resid**2)), 0.0) / max(dof, 1) / sxx)
    half = float(sstats.t.ppf(0.975, max(dof, 1)) * se)
    return float(coef[1]), half


@dataclass(frozen=True)
class ConvergenceRun:
    """Per-K error statistics over seeds plus the fitted rate; ``errors``
    holds the raw per-(seed, K) values."""

    k_values: Tuple[int, ...]
    mean_error: Tuple[float, ...]
    std_error: Tuple[float, ...]
    errors: Tuple[Tuple[float, ...], ...]
    n_seeds: int
    slope: float
    slope_ci95: float

    def __post_init__(self):
        if len(self.k_values) < 4:
            raise InvalidParameterError("need at least four sample budgets")
        if np.log2(max(self.k_values)) - np.log2(min(self.k_values)) < 2:
            raise InvalidParameterError("budgets must span at least two octaves")
        if self.n_seeds < 2:
            raise InvalidParameterError("need repeated seeds for error bars")


# ---------------------------------------------------------------------------
# Dense oracles
# ---------------------------------------------------------------------------


def _postprocess(out: Signal, domain: BoxDomain, real_input: bool) -> Signal:
    if not domain.two_sided:
        return Signal(2.0 * out.samples.real, out.rate, out.origin)
    if real_input:
        return Signal(out.samples.real, out.rate, out.origin)
    return out


def dense_identity_pipeline(
    s: Signal,
    frame: LTFTFrame,
    domain: BoxDomain,
    spec: Optional[DenseGridSpec] = None,
    mode: str = "synthesis",
) -> Signal:
    """Deterministic counterpart of the identity Monte Carlo pipeline on the
    same domain: inverse frame operator, dense analysis, dense synthesis."""
    spec = spec or ltft_grid_spec(frame.params, domain, s.rate)
    family = LtftFamily(frame.params)
    if mode == "synthesis":
        grid = dense_analysis(frame.inverse_apply(s), family, domain, spec)
        out = dense_synthesis(grid, family, s.origin, s.n)
    else:
        grid = dense_analysis(s, family, domain, spec)
        out = frame.inverse_apply(dense_synthesis(grid, family, s.origin, s.n))
    return _postprocess(out, domain, s.is_real())


def reconstruct_dense(
    s: Signal,
    frame: LTFTFrame,
    domain: Optional[BoxDomain] = None,
    spec: Optional[DenseGridSpec] = None,
    w_factor: float = 2.0,
) -> Signal:
    """Inverse frame operator applied to the dense frame-operator image,
    evaluated on an extended grid so filter ring-out is kept, then cropped
    back to the input grid."""
    params = frame.params
    domain = domain or ltft_domain(s.n - 1, s.rate, w_factor, params)
    spec = spec or ltft_grid_spec(params, domain, s.rate)
    family = LtftFamily(params)
    margin = int(np.ceil(params.max_halfwidth() * s.rate)) + 4
    grid = dense_analysis(s, family, domain, spec)
    ext = dense_synthesis(grid, family, s.origin - margin / s.rate, s.n + 2 * margin)
    rec = apply_inverse_frame_op(ext, frame.filter)
    rec = _postprocess(rec, domain, s.is_real())
    return Signal(rec.samples[margin : margin + s.n], s.rate, s.origin)


def pseudo_inverse_residual(s: Signal, frame: LTFTFrame, **kwargs) -> float:
    """Relative error of inverse-frame-operator reconstruction from dense
    analysis-synthesis; small for band-limited signals inside the domain."""
    if s.norm() == 0:
        return 0.0
    rec = reconstruct_dense(s, frame, **kwargs)
    return float(np.linalg.norm(rec.samples - s.samples) / np.linalg.norm(s.samples))


def frame_op_equivalence(
    s: Signal,
    frame: LTFTFrame,
    domain: Optional[BoxDomain] = None,
    spec: Optional[DenseGridSpec] = None,
    w_factor: float = 2.0,
) -> float:
    """Relative discrepancy between the two frame-operator paths: dense
    quadrature against frequency-domain multiplication by the filter."""
    if s.norm() == 0:
        return 0.0
    params = frame.params
    domain = domain or ltft_domain(s.n - 1, s.rate, w_factor, params)
    spec = spec or ltft_grid_spec(params, domain, s.rate)
    family = LtftFamily(params)
    margin = int(np.ceil(params.max_halfwidth() * s.rate)) + 4
    grid = dense_analysis(s, family, domain, spec)
    via_atoms = dense_synthesis(grid, family, s.origin - margin / s.rate, s.n + 2 * margin)
    via_atoms = _postprocess(via_atoms, domain, s.is_real())
    embedded = Signal(
        np.pad(s.samples, (margin, margin)), s.rate, s.origin - margin / s.rate
    )
    via_filter = apply_frame_op(embedded, frame.filter)
    num = np.linalg.norm(via_atoms.samples - via_filter.samples)
    den = np.linalg.norm(via_filter.samples)
    return float(num / den)


# ---------------------------------------------------------------------------
# Convergence experiment
# ---------------------------------------------------------------------------


def convergence_run(
    s: Signal,
    frame: LTFTFrame,
    domain: BoxDomain,
    k_values: Sequence[int],
    n_seeds: int = 20,
    seed0: int = 0,
    oracle: Optional[Signal] = None,
    chunk: int = 8192,
) -> ConvergenceRun:
    """Identity-pipeline error against the dense oracle for a ladder of
    sample budgets.

    Within one seed the budgets share a sample stream (prefix sums), which
    leaves the per-K error law unchanged while halving the work; seeds are
    independent.
    """
    k_values = sorted(int(k) for k in k_values)
    if k_values[0] < 1:
        raise InvalidParameterError("sample budgets must be positive")
    oracle = oracle or dense_identity_pipeline(s, frame, domain)
    analyzed = frame.inverse_apply(s)
    errs = np.zeros((n_seeds, len(k_values)))
    for i in range(n_seeds):
        rng = np.random.default_rng(seed0 + i)
        pts = domain.sample(k_values[-1], rng)
        coeffs, _ = _mc_coefficients(analyzed, frame.params, pts, chunk)
        acc = np.zeros(s.n, dtype=np.complex128)
        prev = 0
        for j, k in enumerate(k_values):
            inc = slice(prev, k)
            batch, _ = _mc_accumulate(
                coeffs[inc],
                (pts.x[inc], pts.omega[inc], pts.tau[inc]),
                frame.params,
                s.rate,
                s.origin,
                s.n,
                chunk,
            )
            acc += batch
            prev = k
            out = Signal((domain.measure / k) * acc, s.rate, s.origin)
            out = _postprocess(out, domain, s.is_real())
            errs[i, j] = np.linalg.norm(out.samples - oracle.samples) / max(
                np.linalg.norm(oracle.samples), 1e-300
            )
    mean = errs.mean(axis=0)
    std = errs.std(axis=0, ddof=1)
    slope, ci = slope_fit(k_values, mean)
    return ConvergenceRun(
        tuple(k_values),
        tuple(float(v) for v in mean),
        tuple(float(v) for v in std),
        tuple(tuple(float(v) for v in row) for row in errs),
        n_seeds,
        slope,
        ci,
    )


@dataclass(frozen=True)
class FrameReport:
    """Summary of the frame checks for one configuration."""

    a_est: float
    b_est: float
    equivalence_error: float
    reconstruction_error: float
    parseval_ratio: Optional[float] = None

    def all_finite(self) -> bool:
        vals = [self.a_est, self.b_est, self.equivalence_error, self.reconstruction_error]
        if self.parseval_ratio is not None:
            vals.append(self.parseval_ratio)
        return bool(np.all(np.isfinite(vals)))
