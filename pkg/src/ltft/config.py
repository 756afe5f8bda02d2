"""Run configuration shared by the command-line tools.

A config file is a flat JSON object whose keys mirror the dataclass fields;
unknown keys are rejected so typos fail loudly. Flags override file values,
and every run logs the fully resolved configuration.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional

from .atoms import ConstantTransition, LTFTParams
from .errors import InvalidParameterError

__all__ = ["RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    tau_min: float = 3.0
    tau_max: float = 8.0
    a_hz: Optional[float] = None  # default 0.05 * rate at resolve time
    b_hz: Optional[float] = None  # default 0.40 * rate
    w_factor: float = 1.0
    z_ratio: float = 64.0
    seed: int = 0
    mode: str = "synthesis"
    lebesgue_tau: bool = False
    filter_grid: int = 2049
    cache_dir: Optional[str] = None

    @classmethod
    def field_names(cls):
        return {f.name for f in dataclasses.fields(cls)}

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InvalidParameterError(f"{path}: not valid JSON ({exc})") from exc
        if not isinstance(raw, dict):
            raise InvalidParameterError(f"{path}: config must be a JSON object")
        unknown = set(raw) - cls.field_names()
        if unknown:
            raise InvalidParameterError(
                f"{path}: unknown config keys {sorted(unknown)}; "
                f"known keys are {sorted(cls.field_names())}"
            )
        return cls(**raw)

    def overridden(self, **overrides) -> "RunConfig":
        """New config with the non-None overrides applied."""
        clean = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(clean) - self.field_names()
        if unknown:
            raise InvalidParameterError(f"unknown config overrides {sorted(unknown)}")
        return dataclasses.replace(self, **clean)

    def resolve_params(self, rate: float) -> LTFTParams:
        """Concrete atom parameters for a signal at the given rate; validates
        the transition frequencies against the rate."""
        a = 0.05 * rate if self.a_hz is None else self.a_hz
        b = 0.40 * rate if self.b_hz is None else self.b_hz
        if not a < b:
            raise InvalidParameterError(f"need a < b, got a={a}, b={b}")
        if not b < rate:
            raise InvalidParameterError(
                f"upper transition frequency must stay below the sample rate; got b={b}, rate={rate}"
            )
        return LTFTParams(self.tau_min, self.tau_max, ConstantTransition(a, b))

    def resolved_dict(self, rate: Optional[float] = None) -> dict:
        out = dataclasses.asdict(self)
        if rate is not None:
            out["rate"] = rate
            out["a_hz"] = 0.05 * rate if self.a_hz is None else self.a_hz
            out["b_hz"] = 0.40 * rate if self.b_hz is None else self.b_hz
        return out
