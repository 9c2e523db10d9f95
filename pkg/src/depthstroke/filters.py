"""Reusable pressure-domain filter kernels.

All functions take a 1-D float array and return a new array of the same
length; none of them mutates its input. Parameters live in small frozen
dataclasses so chain configurations can be serialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class LowPassParams:
    """First-order exponential smoother; alpha=1 is the identity."""

    alpha: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValidationError(f"low-pass alpha must be in (0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class HysteresisParams:
    """Dead-band half-width for the ratchet rule, in pressure units."""

    band: float = 0.05

    def __post_init__(self):
        if not 0.0 <= self.band < 1.0:
            raise ValidationError(f"hysteresis band must be in [0, 1), got {self.band!r}")


class FisheyeMode(Enum):
    CONTINUOUS = "continuous"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class FisheyeParams:
    """Range compression toward a focus value.

    outer_radius and inner_radius enter only through their ratio, which sets
    how quickly the compression reaches its floor away from the focus.
    Discrete mode additionally quantizes onto `levels` uniform levels.
    """

    levels: int = 10
    outer_radius: float = 600.0
    inner_radius: float = 120.0
    scale: float = 1.0 / 6.0
    displacement: float = 0.0
    mode: FisheyeMode = FisheyeMode.CONTINUOUS

    def __post_init__(self):
        if self.levels < 1:
            raise ValidationError(f"fisheye levels must be positive, got {self.levels!r}")
        if self.mode is FisheyeMode.DISCRETE and self.levels < 2:
            raise ValidationError("discrete fisheye needs at least 2 levels")
        if not 0.0 < self.inner_radius < self.outer_radius:
            raise ValidationError(
                f"fisheye radii must satisfy 0 < inner < outer, got "
                f"{self.inner_radius!r} / {self.outer_radius!r}"
            )
        if not 0.0 < self.scale <= 1.0:
            raise ValidationError(f"fisheye scale must be in (0, 1], got {self.scale!r}")
        if not 0.0 <= self.displacement <= 1.0:
            raise ValidationError(
                f"fisheye displacement must be in [0, 1], got {self.displacement!r}"
            )


@dataclass(frozen=True)
class SigmoidParams:
    """Logistic gate with a contrast factor and threshold.

    steepness is a fixed base gain; contrast and threshold are the knobs
    that differ between chain configurations.
    """

    contrast: float = 1.0
    threshold: float = 0.5
    steepness: float = 12.0

    def __post_init__(self):
        if self.contrast <= 0.0:
            raise ValidationError(f"sigmoid contrast must be positive, got {self.contrast!r}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError(
                f"sigmoid threshold must be in [0, 1], got {self.threshold!r}"
            )
        if self.steepness <= 0.0:
            raise ValidationError(f"sigmoid steepness must be positive, got {self.steepness!r}")


@dataclass(frozen=True)
class WindowParams:
    """Centered window width in samples; must be odd so the center is defined."""

    width: int = 5

    def __post_init__(self):
        if self.width < 1 or self.width % 2 == 0:
            raise ValidationError(f"window width must be odd and >= 1, got {self.width!r}")


def low_pass(values, params: LowPassParams) -> np.ndarray:
    """y[0] = x[0]; y[i] = alpha*x[i] + (1-alpha)*y[i-1]."""
    x = np.asarray(values, dtype=float)
    if params.alpha == 1.0:
        return x.copy()
    out = np.empty_like(x)
    acc = x[0]
    out[0] = acc
    a = params.alpha
    b = 1.0 - a
    for i in range(1, x.size):
        acc = a * x[i] + b * acc
        out[i] = acc
    return out


def hysteresis(values, params: HysteresisParams) -> np.ndarray:
    """Ratchet rule: hold while inside the dead band, else trail by `band`."""
    x = np.asarray(values, dtype=float)
    if params.band == 0.0:
        return x.copy()
    out = np.empty_like(x)
    y = x[0]
    out[0] = y
    band = params.band
    for i in range(1, x.size):
        delta = x[i] - y
        if abs(delta) > band:
            y = x[i] - band * np.sign(delta)
        out[i] = y
    return np.clip(out, 0.0, 1.0)


def median_filter(values, params: WindowParams) -> np.ndarray:
    """Per-sample median over a centered window, truncated at the boundaries.

    An even-sized truncated boundary window takes the mean of the two middle
    values, which is what np.median does.
    """
    x = np.asarray(values, dtype=float)
    if params.width == 1:
        return x.copy()
    half = params.width // 2
    out = np.empty_like(x)
    n = x.size
    for i in range(n):
        out[i] = np.median(x[max(0, i - half):min(n, i + half + 1)])
    return out


def moving_average(values, params: WindowParams) -> np.ndarray:
    """Arithmetic mean over a centered window, truncated at the boundaries."""
    x = np.asarray(values, dtype=float)
    if params.width == 1:
        return x.copy()
    half = params.width // 2
    n = x.size
    idx = np.arange(n)
    lo = np.maximum(0, idx - half)
    hi = np.minimum(n, idx + half + 1)
    csum = np.concatenate(([0.0], np.cumsum(x)))
    return (csum[hi] - csum[lo]) / (hi - lo)


def fisheye(values, params: FisheyeParams) -> np.ndarray:
    """Compress pressure toward the displacement focus d.

    h(p) = d + e(p) * (p - d) with e(p) = s + (1-s) * exp(-(R*(p-d)/r)^2),
    so h(d) = d and |h(p) - d| <= |p - d| everywhere. Discrete mode then
    snaps onto the grid k/(levels-1) with ties rounding to the lower level.
    """
    x = np.asarray(values, dtype=float)
    d = params.displacement
    s = params.scale
    ratio = params.outer_radius / params.inner_radius
    u = ratio * (x - d)
    envelope = s + (1.0 - s) * np.exp(-(u * u))
    out = np.clip(d + envelope * (x - d), 0.0, 1.0)
    if params.mode is FisheyeMode.DISCRETE:
        q = params.levels - 1
        steps = np.ceil(out * q - 0.5)  # round half down
        out = np.clip(steps, 0, q) / q
    return out


def sigmoid_gate(values, params: SigmoidParams) -> np.ndarray:
    """y = logistic(contrast * steepness * (x - threshold)); strictly increasing."""
    x = np.asarray(values, dtype=float)
    u = params.contrast * params.steepness * (x - params.threshold)
    out = np.empty_like(u)
    pos = u >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-u[pos]))
    ez = np.exp(u[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out
