"""Geometric smoothing of 3D polylines.

Catmull-Rom is the default for forward and backward strokes; the spiral
default is a clamped uniform cubic B-spline. Chaikin corner cutting is
offered at two depths (the "width 4" and "width 8" variants run 2 and 3
subdivision rounds), and piecewise Bezier/Hermite variants exist for
comparison runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError
from .stroke import CurveClass


class SmoothMethod(Enum):
    CATMULL_ROM = "catmullrom"
    CHAIKIN4 = "chaikin4"
    CHAIKIN8 = "chaikin8"
    BSPLINE = "bspline"
    BEZIER_QUADRATIC = "bezier2"
    BEZIER_CUBIC = "bezier3"
    HERMITE = "hermite"

    @classmethod
    def parse(cls, name: str) -> "SmoothMethod":
        try:
            return cls(str(name).lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValidationError(f"unknown smoothing method {name!r}; one of: {valid}") from None


# fewest control points each method accepts
MIN_POINTS = {
    SmoothMethod.CATMULL_ROM: 4,
    SmoothMethod.CHAIKIN4: 3,
    SmoothMethod.CHAIKIN8: 3,
    SmoothMethod.BSPLINE: 4,
    SmoothMethod.BEZIER_QUADRATIC: 3,
    SmoothMethod.BEZIER_CUBIC: 4,
    SmoothMethod.HERMITE: 4,
}

CHAIKIN_ROUNDS = {SmoothMethod.CHAIKIN4: 2, SmoothMethod.CHAIKIN8: 3}


@dataclass(frozen=True)
class SmoothingSpec:
    method: SmoothMethod = SmoothMethod.CATMULL_ROM
    samples_per_segment: int = 8

    def __post_init__(self):
        if self.samples_per_segment < 1:
            raise ValidationError("samples_per_segment must be >= 1")


def default_method_for(curve_class: CurveClass) -> SmoothingSpec:
    if curve_class is CurveClass.SPIRAL:
        return SmoothingSpec(method=SmoothMethod.BSPLINE)
    return SmoothingSpec(method=SmoothMethod.CATMULL_ROM)


def smooth(curve, spec: SmoothingSpec) -> np.ndarray:
    """Smooth an (n, d) polyline; returns a new, usually denser, polyline."""
    pts = np.asarray(curve, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValidationError("curve must be an (n, d) array with n >= 2")
    minimum = MIN_POINTS[spec.method]
    if pts.shape[0] < minimum:
        raise ValidationError(
            f"{spec.method.value} needs at least {minimum} points, got {pts.shape[0]}"
        )
    if spec.method is SmoothMethod.CATMULL_ROM:
        return _catmull_rom(pts, spec.samples_per_segment)
    if spec.method in CHAIKIN_ROUNDS:
        return _chaikin(pts, CHAIKIN_ROUNDS[spec.method])
    if spec.method is SmoothMethod.BSPLINE:
        return _bspline(pts, spec.samples_per_segment)
    if spec.method is SmoothMethod.BEZIER_QUADRATIC:
        return _piecewise_bezier(pts, spec.samples_per_segment, order=2)
    if spec.method is SmoothMethod.BEZIER_CUBIC:
        return _piecewise_bezier(pts, spec.samples_per_segment, order=3)
    return _hermite(pts, spec.samples_per_segment)


def _segment_ts(samples_per_segment: int) -> np.ndarray:
    return (np.arange(samples_per_segment) / samples_per_segment)[:, None]


def _catmull_rom(pts: np.ndarray, spp: int) -> np.ndarray:
    """Interpolating cubic through every control point, uniform parameters.

    Endpoint tangents come from reflected phantom points, so the first and
    last control points are interpolated too.
    """
    ext = np.vstack((2 * pts[0] - pts[1], pts, 2 * pts[-1] - pts[-2]))
    t = _segment_ts(spp)
    t2 = t * t
    t3 = t2 * t
    chunks = []
    for i in range(pts.shape[0] - 1):
        p0, p1, p2, p3 = ext[i], ext[i + 1], ext[i + 2], ext[i + 3]
        chunks.append(
            0.5
            * (
                2 * p1
                + (p2 - p0) * t
                + (2 * p0 - 5 * p1 + 4 * p2 - p3) * t2
                + (3 * p1 - p0 - 3 * p2 + p3) * t3
            )
        )
    chunks.append(pts[-1:])
    return np.vstack(chunks)


def _chaikin(pts: np.ndarray, rounds: int) -> np.ndarray:
    """Corner cutting at 1/4 and 3/4 of each edge; original endpoints kept."""
    out = pts
    for _ in range(rounds):
        q = 0.75 * out[:-1] + 0.25 * out[1:]
        r = 0.25 * out[:-1] + 0.75 * out[1:]
        inner = np.empty((2 * (out.shape[0] - 1), out.shape[1]))
        inner[0::2] = q
        inner[1::2] = r
        out = np.vstack((out[:1], inner, out[-1:]))
    return out


def _bspline(pts: np.ndarray, spp: int) -> np.ndarray:
    """Clamped uniform cubic B-spline (endpoints repeated to multiplicity 3)."""
    ctrl = np.vstack((pts[0], pts[0], pts, pts[-1], pts[-1]))
    t = _segment_ts(spp)
    t2 = t * t
    t3 = t2 * t
    b0 = (1 - t) ** 3 / 6
    b1 = (3 * t3 - 6 * t2 + 4) / 6
    b2 = (-3 * t3 + 3 * t2 + 3 * t + 1) / 6
    b3 = t3 / 6
    chunks = []
    for i in range(ctrl.shape[0] - 3):
        chunks.append(b0 * ctrl[i] + b1 * ctrl[i + 1] + b2 * ctrl[i + 2] + b3 * ctrl[i + 3])
    # t = 1 of the last segment evaluates to the (repeated) last control point
    chunks.append((ctrl[-3] + 4 * ctrl[-2] + ctrl[-1])[None, :] / 6)
    return np.vstack(chunks)


def _bezier_eval(ctrl: list[np.ndarray], t: np.ndarray) -> np.ndarray:
    if len(ctrl) == 3:
        p0, p1, p2 = ctrl
        return (1 - t) ** 2 * p0 + 2 * (1 - t) * t * p1 + t * t * p2
    p0, p1, p2, p3 = ctrl
    return (
        (1 - t) ** 3 * p0
        + 3 * (1 - t) ** 2 * t * p1
        + 3 * (1 - t) * t * t * p2
        + t ** 3 * p3
    )


def _piecewise_bezier(pts: np.ndarray, spp: int, order: int) -> np.ndarray:
    """Consecutive point triples/quadruples as segments joined with C0 only;
    leftover points are connected linearly."""
    t = _segment_ts(spp)
    chunks = []
    i = 0
    n = pts.shape[0]
    while i + order < n:
        chunks.append(_bezier_eval([pts[i + j] for j in range(order + 1)], t))
        i += order
    while i + 1 < n:  # leftover edges
        chunks.append((1 - t) * pts[i] + t * pts[i + 1])
        i += 1
    chunks.append(pts[-1:])
    return np.vstack(chunks)


def _hermite(pts: np.ndarray, spp: int) -> np.ndarray:
    """Piecewise cubic Hermite with central-difference tangents."""
    tangents = np.empty_like(pts)
    tangents[0] = pts[1] - pts[0]
    tangents[-1] = pts[-1] - pts[-2]
    tangents[1:-1] = (pts[2:] - pts[:-2]) / 2
    t = _segment_ts(spp)
    t2 = t * t
    t3 = t2 * t
    h00 = 2 * t3 - 3 * t2 + 1
    h10 = t3 - 2 * t2 + t
    h01 = -2 * t3 + 3 * t2
    h11 = t3 - t2
    chunks = []
    for i in range(pts.shape[0] - 1):
        chunks.append(
            h00 * pts[i] + h10 * tangents[i] + h01 * pts[i + 1] + h11 * tangents[i + 1]
        )
    chunks.append(pts[-1:])
    return np.vstack(chunks)
