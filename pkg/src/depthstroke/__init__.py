"""depthstroke: pressure-annotated 2D pen strokes to 3D curves.

The engine classifies a stroke's pressure profile (spiral / forward /
backward) with a small feedforward network over spectral features, runs the
class-specific filter chain, maps pressure to depth, and smooths the result.
"""

from .data import LabeledDataset, load_dataset, save_dataset
from .engine import StrokeResult, process_stroke
from .errors import ValidationError
from .features import FeatureConfig, dft_real, extract_features
from .filters import (
    FisheyeMode,
    FisheyeParams,
    HysteresisParams,
    LowPassParams,
    SigmoidParams,
    WindowParams,
    fisheye,
    hysteresis,
    low_pass,
    median_filter,
    moving_average,
    sigmoid_gate,
)
from .mlp import (
    MLPModel,
    NetworkTopology,
    TrainingConfig,
    classify,
    evaluate,
    forward,
    load_model,
    save_model,
    topology_sweep,
    train,
)
from .pipelines import (
    PipelineConfig,
    ProcessedProfile,
    default_pipeline,
    process,
    reassign_landing_lifting,
    spiral_baseline_process,
)
from .projection import ProjectionParams, lift_y, load_curve, project, save_curve
from .smoothing import SmoothingSpec, SmoothMethod, default_method_for, smooth
from .stroke import (
    CurveClass,
    RawStroke,
    StrokeSample,
    extract_profile,
    load_stroke,
    normalize_minmax,
    resample_profile,
    save_stroke,
)
from .synth import GenSpec, generate, generate_dataset

__version__ = "0.1.0"

__all__ = [
    "CurveClass",
    "FeatureConfig",
    "FisheyeMode",
    "FisheyeParams",
    "GenSpec",
    "HysteresisParams",
    "LabeledDataset",
    "LowPassParams",
    "MLPModel",
    "NetworkTopology",
    "PipelineConfig",
    "ProcessedProfile",
    "ProjectionParams",
    "RawStroke",
    "SigmoidParams",
    "SmoothMethod",
    "SmoothingSpec",
    "StrokeResult",
    "StrokeSample",
    "TrainingConfig",
    "ValidationError",
    "WindowParams",
    "classify",
    "default_method_for",
    "default_pipeline",
    "dft_real",
    "evaluate",
    "extract_features",
    "extract_profile",
    "fisheye",
    "forward",
    "generate",
    "generate_dataset",
    "hysteresis",
    "lift_y",
    "load_curve",
    "load_dataset",
    "load_model",
    "load_stroke",
    "low_pass",
    "median_filter",
    "moving_average",
    "normalize_minmax",
    "process",
    "process_stroke",
    "project",
    "reassign_landing_lifting",
    "resample_profile",
    "save_curve",
    "save_dataset",
    "save_model",
    "save_stroke",
    "sigmoid_gate",
    "smooth",
    "spiral_baseline_process",
    "topology_sweep",
    "train",
]
