"""Stroke and pressure-profile primitives.

A stroke is an ordered sequence of timed (x, y, pressure) pen samples with
pressure already normalized to [0, 1]. The pressure profile is the signal
every downstream filter operates on; profiles are plain 1-D float arrays.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import StrokeValidationError

STROKE_FORMAT_VERSION = 1


class CurveClass(Enum):
    """The three recognized stroke categories, in fixed decode order."""

    SPIRAL = 0
    FORWARD = 1
    BACKWARD = 2

    @property
    def one_hot(self) -> tuple[int, int, int]:
        code = [0, 0, 0]
        code[self.value] = 1
        return tuple(code)

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "CurveClass":
        try:
            return cls[str(label).upper()]
        except KeyError:
            raise StrokeValidationError(f"unknown curve class: {label!r}") from None


@dataclass(frozen=True)
class StrokeSample:
    """One pen sample: screen position, normalized pressure, milliseconds."""

    x: float
    y: float
    p: float
    t: float

    def __post_init__(self):
        for name in ("x", "y", "p", "t"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise StrokeValidationError(f"sample field {name!r} is not finite: {value!r}")
        if not 0.0 <= self.p <= 1.0:
            raise StrokeValidationError(f"pressure outside [0, 1]: {self.p!r}")
        if self.t < 0:
            raise StrokeValidationError(f"negative timestamp: {self.t!r}")


@dataclass(frozen=True)
class RawStroke:
    """An ordered pen trace: at least two samples, timestamps non-decreasing."""

    samples: tuple[StrokeSample, ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if len(self.samples) < 2:
            raise StrokeValidationError(
                f"stroke needs at least 2 samples, got {len(self.samples)}"
            )
        times = [s.t for s in self.samples]
        for i, (a, b) in enumerate(zip(times, times[1:])):
            if b < a:
                raise StrokeValidationError(
                    f"timestamps decrease at sample {i + 1}: {a!r} -> {b!r}"
                )

    def __len__(self) -> int:
        return len(self.samples)


def stroke_to_dict(stroke: RawStroke) -> dict:
    return {
        "version": STROKE_FORMAT_VERSION,
        "samples": [
            {"x": s.x, "y": s.y, "p": s.p, "t": s.t} for s in stroke.samples
        ],
    }


def stroke_from_dict(obj) -> RawStroke:
    """Build a stroke from its wire/file form.

    Out-of-range pressure is clamped to [0, 1]; non-finite values are
    rejected. The "version" key is optional on input so API payloads can
    omit it.
    """
    if not isinstance(obj, dict):
        raise StrokeValidationError("stroke object must be a mapping")
    version = obj.get("version", STROKE_FORMAT_VERSION)
    if version != STROKE_FORMAT_VERSION:
        raise StrokeValidationError(f"unsupported stroke format version: {version!r}")
    raw_samples = obj.get("samples")
    if not isinstance(raw_samples, list):
        raise StrokeValidationError('stroke object needs a "samples" list')
    samples = []
    for i, entry in enumerate(raw_samples):
        if not isinstance(entry, dict):
            raise StrokeValidationError(f"sample {i} is not an object")
        try:
            x, y, p, t = (float(entry[k]) for k in ("x", "y", "p", "t"))
        except (KeyError, TypeError, ValueError):
            raise StrokeValidationError(
                f"sample {i} must carry numeric x, y, p, t"
            ) from None
        if not all(math.isfinite(v) for v in (x, y, p, t)):
            raise StrokeValidationError(f"sample {i} contains a non-finite value")
        samples.append(StrokeSample(x=x, y=y, p=min(1.0, max(0.0, p)), t=t))
    return RawStroke(tuple(samples))


def save_stroke(stroke: RawStroke, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(stroke_to_dict(stroke), fh)
        fh.write("\n")


def load_stroke(path) -> RawStroke:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StrokeValidationError(f"cannot parse stroke file {path}: {exc}") from None
    return stroke_from_dict(obj)


def validate_profile(values) -> np.ndarray:
    """Coerce to a 1-D float array and check the pressure-profile invariants."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise StrokeValidationError("pressure profile must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise StrokeValidationError("pressure profile contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise StrokeValidationError("pressure profile values must lie in [0, 1]")
    return arr


def extract_profile(stroke: RawStroke) -> np.ndarray:
    """Project a stroke onto its pressure channel."""
    if len(stroke.samples) < 2:
        raise StrokeValidationError("stroke needs at least 2 samples")
    return np.array([s.p for s in stroke.samples], dtype=float)


def resample_profile(values, n: int) -> np.ndarray:
    """Resample to exactly n values by linear interpolation over the index.

    Endpoints are preserved bit-exactly and resampling an n-length profile
    to n is an exact identity.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise StrokeValidationError("cannot resample an empty profile")
    if n < 2:
        raise StrokeValidationError(f"resample target must be >= 2, got {n}")
    positions = np.linspace(0.0, arr.size - 1, n)
    return np.interp(positions, np.arange(arr.size), arr)


def normalize_minmax(values) -> np.ndarray:
    """Affinely map the profile onto [0, 1]; a constant profile maps to zeros."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise StrokeValidationError("cannot normalize an empty profile")
    lo = float(arr.min())
    hi = float(arr.max())
    if hi > lo:
        return (arr - lo) / (hi - lo)
    return np.zeros_like(arr)
