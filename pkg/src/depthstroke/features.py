"""Spectral features: the real DFT components the classifier consumes.

Profiles of arbitrary length are resampled onto a fixed power-of-two grid,
transformed with a radix-2 FFT, and the first n_features real components are
kept and scaled so the largest magnitude is 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .stroke import resample_profile


@dataclass(frozen=True)
class FeatureConfig:
    """Preprocessing settings persisted with the model so classify-time
    preprocessing always matches train-time preprocessing."""

    fft_len: int = 512
    n_features: int = 50
    normalization: str = "linf"

    def __post_init__(self):
        if self.fft_len < 2 or self.fft_len & (self.fft_len - 1):
            raise ValidationError(f"fft_len must be a power of two, got {self.fft_len!r}")
        if not 1 <= self.n_features <= self.fft_len // 2:
            raise ValidationError(
                f"n_features must be in [1, fft_len/2], got {self.n_features!r}"
            )
        if self.normalization != "linf":
            raise ValidationError(
                f"unsupported normalization: {self.normalization!r}"
            )


def _fft(x: np.ndarray) -> np.ndarray:
    """Iterative radix-2 decimation-in-time transform. Length must be a
    power of two (checked by the caller)."""
    n = x.size
    if n == 1:
        return x.astype(complex)
    bits = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.intp)
    for i in range(1, n):
        rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (bits - 1))
    a = x[rev].astype(complex)
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        a = a.reshape(-1, size)
        even = a[:, :half]
        odd = a[:, half:] * twiddle
        a = np.hstack((even + odd, even - odd)).reshape(-1)
        size *= 2
    return a


def dft_real(signal) -> np.ndarray:
    """Real components of the DFT, Re(X[k]) for k = 0..len-1.

    The input length must be a power of two; variable-length profiles are
    resampled before they reach this point.
    """
    x = np.asarray(signal, dtype=float)
    if x.size == 0:
        raise ValidationError("cannot transform an empty signal")
    if x.size & (x.size - 1):
        raise ValidationError(
            f"transform length must be a power of two, got {x.size}; resample first"
        )
    return np.real(_fft(x))


def extract_features(values, cfg: FeatureConfig = FeatureConfig()) -> np.ndarray:
    """Resample, transform, truncate, and scale a profile into a feature vector.

    The mean is retained (the DC component is feature 0) and the vector is
    divided by its largest absolute component; an all-zero vector passes
    through unchanged.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValidationError("cannot extract features from an empty profile")
    resampled = resample_profile(arr, cfg.fft_len)
    components = dft_real(resampled)[: cfg.n_features]
    peak = np.max(np.abs(components))
    if peak == 0.0:
        return components
    return components / peak
