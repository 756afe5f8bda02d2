"""WAV reading and writing for the command-line tools.

Supported encodings are 16-bit PCM and 32-bit float, mono or stereo.
Internally everything is float64; PCM16 output is written by dither-free
truncation toward zero, so a read-write cycle is sample-exact for PCM16 and
bit-exact for float32.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.io import wavfile

from .errors import WavFormatError

__all__ = ["WavData", "read_wav", "write_wav"]

_PCM16_SCALE = 32768.0


@dataclass(frozen=True)
class WavData:
    rate: int
    channels: List[np.ndarray]  # float64 in [-1, 1] nominal range
    encoding: str  # "pcm16" or "float32"

    @property
    def n_frames(self) -> int:
        return self.channels[0].size


def read_wav(path: str) -> WavData:
    try:
        rate, data = wavfile.read(path)
    except ValueError as exc:
        raise WavFormatError(f"{path}: unreadable WAV ({exc})") from exc
    if data.dtype == np.int16:
        encoding = "pcm16"
        scaled = data.astype(np.float64) / _PCM16_SCALE
    elif data.dtype == np.float32:
        encoding = "float32"
        scaled = data.astype(np.float64)
    else:
        raise WavFormatError(
            f"{path}: unsupported sample format {data.dtype}; "
            "supported encodings are 16-bit PCM and 32-bit float"
        )
    if scaled.ndim == 1:
        channels = [scaled]
    elif scaled.ndim == 2 and scaled.shape[1] in (1, 2):
        channels = [np.ascontiguousarray(scaled[:, c]) for c in range(scaled.shape[1])]
    else:
        raise WavFormatError(f"{path}: expected mono or stereo, got shape {scaled.shape}")
    if channels[0].size == 0:
        raise WavFormatError(f"{path}: no audio frames")
    return WavData(int(rate), channels, encoding)


def write_wav(path: str, rate: int, channels: List[np.ndarray], encoding: str = "float32") -> None:
    arrays = [np.asarray(c, dtype=np.float64) for c in channels]
    if not arrays or any(a.ndim != 1 for a in arrays):
        raise WavFormatError("channels must be a non-empty list of 1-D arrays")
    if len({a.size for a in arrays}) != 1:
        raise WavFormatError("all channels must have the same length")
    data = arrays[0] if len(arrays) == 1 else np.stack(arrays, axis=1)
    if encoding == "float32":
        wavfile.write(path, int(rate), data.astype(np.float32))
    elif encoding == "pcm16":
        clipped = np.clip(data * _PCM16_SCALE, -32768.0, 32767.0)
        wavfile.write(path, int(rate), np.trunc(clipped).astype(np.int16))
    else:
        raise WavFormatError(f"unsupported encoding {encoding!r}")
