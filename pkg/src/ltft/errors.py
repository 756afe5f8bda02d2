"""Exception types shared across the package."""


class LtftError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(LtftError, ValueError):
    """A caller-supplied parameter violates a precondition."""


class QuadratureError(LtftError):
    """A numerical integration failed to stabilize within its refinement budget."""


class FrameDegeneracyError(LtftError):
    """The estimated lower frame bound fell at or below the configured floor."""


class IllConditionedFilterError(LtftError):
    """The frame filter is too small at a frequency bin needed for inversion."""


class ReferenceDomainError(LtftError):
    """The reference phase-space domain is too small to stand in for the full space."""


class MaskFormatError(LtftError, ValueError):
    """A symbol-mask CSV file is malformed."""


class WavFormatError(LtftError, ValueError):
    """A WAV file is unreadable or uses an unsupported encoding."""
