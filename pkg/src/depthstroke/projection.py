"""Lift a processed stroke into 3D: pressure becomes the z coordinate.

Higher pressure means closer to the camera; with the default orientation
z = (1 - p) * depth_scale, so full pressure sits on the z = 0 near plane.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .filters import WindowParams, median_filter, moving_average
from .stroke import RawStroke

CURVE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ProjectionParams:
    depth_scale: float = 100.0
    invert: bool = False

    def __post_init__(self):
        if self.depth_scale <= 0:
            raise ValidationError(f"depth_scale must be positive, got {self.depth_scale!r}")


def project(stroke: RawStroke, processed_values, params: ProjectionParams = ProjectionParams()) -> np.ndarray:
    """Build the (n, 3) polyline; x and y pass through untouched."""
    p = np.asarray(processed_values, dtype=float)
    if p.size != len(stroke.samples):
        raise ValidationError(
            f"processed profile length {p.size} does not match sample count "
            f"{len(stroke.samples)}"
        )
    xs = np.array([s.x for s in stroke.samples], dtype=float)
    ys = np.array([s.y for s in stroke.samples], dtype=float)
    if params.invert:
        zs = p * params.depth_scale
    else:
        zs = (1.0 - p) * params.depth_scale
    return np.column_stack((xs, ys, zs))


def lift_y(
    curve: np.ndarray,
    median: WindowParams = WindowParams(5),
    average: WindowParams = WindowParams(9),
) -> np.ndarray:
    """Median-filter then moving-average the y coordinates; x and z untouched."""
    pts = np.asarray(curve, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
        raise ValidationError("curve must be an (n, 3) array with n >= 2")
    out = pts.copy()
    out[:, 1] = moving_average(median_filter(pts[:, 1], median), average)
    return out


def curve_to_dict(curve: np.ndarray) -> dict:
    pts = np.asarray(curve, dtype=float)
    return {"version": CURVE_FORMAT_VERSION, "points": pts.tolist()}


def save_curve(curve: np.ndarray, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(curve_to_dict(curve), fh)
        fh.write("\n")


def load_curve(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"cannot parse curve file {path}: {exc}") from None
    if not isinstance(obj, dict) or obj.get("version") != CURVE_FORMAT_VERSION:
        raise ValidationError(f"unsupported curve file: {path}")
    pts = np.asarray(obj.get("points", []), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
        raise ValidationError(f"curve file {path} must hold at least 2 [x, y, z] points")
    return pts
