"""Localizing time-frequency transform: a continuous frame over time,
frequency, and oscillation count, with randomized (Monte Carlo) phase-space
signal processing and a verification bench for its frame, truncation, and
convergence properties."""

from .atoms import (
    Band,
    ConstantTransition,
    CwtFamily,
    LTFTParams,
    LtftFamily,
    MotherWavelet,
    PhasePoint,
    StftFamily,
    SupportPinnedTransition,
    analysis_coeff,
    atom_band,
    atom_support,
    cwt_atom,
    default_mother_wavelet,
    eval_atom_ft,
    eval_ltft_atom,
    ltft_atom,
    ltft_coeff,
    normalized_hann,
    stft_atom,
)
from .dense import CoefficientGrid, DenseGridSpec, dense_analysis, dense_synthesis, ltft_grid_spec
from .errors import (
    FrameDegeneracyError,
    IllConditionedFilterError,
    InvalidParameterError,
    LtftError,
    MaskFormatError,
    QuadratureError,
    ReferenceDomainError,
    WavFormatError,
)
from .frame_filter import (
    FrameFilter,
    LTFTFrame,
    QuadratureConfig,
    apply_frame_op,
    apply_inverse_frame_op,
    build_frame_filter,
    default_freq_grid,
    load_frame_filter,
    save_frame_filter,
)
from .phase_space import (
    BoxDomain,
    CwtDomain,
    CWTClassParams,
    LVDReport,
    PhaseSample,
    cwt_domain,
    cwt_truncation_ratio,
    enveloped_trig_poly,
    ltft_domain,
    ltft_truncation_ratio,
    rc_membership,
    sample_uniform,
)
from .pipelines import (
    Diffeo,
    IdentityOp,
    KernelOp,
    Multiplier,
    Nonlinearity,
    OpCountReport,
    PipelineConfig,
    SymbolGrid,
    denoise,
    identity_nl,
    multiply,
    op_count,
    phase_vocoder,
    run_kernel_pipeline,
    run_mc_pipeline,
    soft_threshold,
    time_stretch,
    vocoder_phase,
)
from .signals import Signal, Spectrum, dft, dilate, idft, modulate, translate
from .verify import (
    ConvergenceRun,
    FrameReport,
    VerifyRow,
    convergence_run,
    frame_op_equivalence,
    pseudo_inverse_residual,
    random_bandlimited_signal,
    reconstruct_dense,
    slope_fit,
)
from .windows import Window, hann_eval, hann_ft, hann_window
from .wavio import WavData, read_wav, write_wav

__version__ = "0.1.0"
