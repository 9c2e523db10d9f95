"""End-to-end stroke processing shared by the CLI and the HTTP service:
classify, run the class chain, project to 3D, lift spiral y, smooth."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mlp import MLPModel, classify
from .pipelines import PipelineConfig, ProcessedProfile, default_pipeline, process
from .projection import ProjectionParams, lift_y, project
from .smoothing import SmoothingSpec, default_method_for, smooth
from .stroke import CurveClass, RawStroke, extract_profile


@dataclass
class StrokeResult:
    curve_class: CurveClass
    scores: np.ndarray
    profile_raw: np.ndarray
    processed: ProcessedProfile
    curve3d: np.ndarray
    smoothed: np.ndarray


def process_stroke(
    stroke: RawStroke,
    model: MLPModel,
    pipeline: PipelineConfig | None = None,
    projection: ProjectionParams = ProjectionParams(),
    smooth_spec: SmoothingSpec | None = None,
) -> StrokeResult:
    """Run one stroke through the whole engine.

    The projected curve keeps one point per input sample; spiral strokes get
    their deferred y-coordinate smoothing here, after projection. smooth_spec
    of None picks the per-class default method.
    """
    pipeline = pipeline or default_pipeline()
    profile = extract_profile(stroke)
    curve_class, scores = classify(model, profile)
    processed = process(profile, curve_class, pipeline)
    curve = project(stroke, processed.values, projection)
    if curve_class is CurveClass.SPIRAL:
        curve = lift_y(curve, pipeline.spiral.median, pipeline.spiral.moving_average)
    spec = smooth_spec or default_method_for(curve_class)
    smoothed = smooth(curve, spec)
    return StrokeResult(
        curve_class=curve_class,
        scores=scores,
        profile_raw=profile,
        processed=processed,
        curve3d=curve,
        smoothed=smoothed,
    )
