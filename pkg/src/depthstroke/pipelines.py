"""Per-class processing chains for classified pressure profiles.

Spiral:   low pass -> edge flattening toward the median baseline -> median ->
          moving average -> fisheye, with the two y-coordinate stages deferred
          until after depth projection.
Forward:  low pass -> sigmoid gate -> fisheye.
Backward: landing/lifting reassignment -> low pass -> sigmoid gate -> fisheye.

Every chain records its intermediate profiles in a stage trace so callers can
chart the before/after of each step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, PipelineError
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
from .stroke import CurveClass, validate_profile

PIPELINE_FORMAT_VERSION = 1

# Edge flattening: values within BASELINE_TOLERANCE of the baseline count as
# already on it; values beyond the detected crossings keep only EDGE_PULL of
# their offset. Monotone runs tolerate plateaus up to PLATEAU_EPS.
BASELINE_TOLERANCE = 0.05
EDGE_PULL = 0.1
PLATEAU_EPS = 1e-6

SUPPRESSION_MODES = ("fisheye", "hysteresis")


@dataclass(frozen=True)
class SpiralChainConfig:
    low_pass: LowPassParams = LowPassParams(alpha=0.075)
    fisheye: FisheyeParams = FisheyeParams(
        levels=12,
        outer_radius=600.0,
        inner_radius=120.0,
        scale=1.0 / 7.0,
        displacement=0.65,
        mode=FisheyeMode.CONTINUOUS,
    )
    median: WindowParams = WindowParams(width=5)
    moving_average: WindowParams = WindowParams(width=9)
    suppression: str = "fisheye"
    hysteresis: HysteresisParams = HysteresisParams(band=0.05)

    def __post_init__(self):
        if self.suppression not in SUPPRESSION_MODES:
            raise ConfigError(f"unknown suppression mode: {self.suppression!r}")


@dataclass(frozen=True)
class GateChainConfig:
    """Forward/backward chain: a sigmoid gate followed by a suppression stage."""

    low_pass: LowPassParams = LowPassParams(alpha=0.1)
    sigmoid: SigmoidParams = SigmoidParams(contrast=2.5, threshold=0.85)
    fisheye: FisheyeParams = FisheyeParams(
        levels=10,
        outer_radius=600.0,
        inner_radius=120.0,
        scale=1.0 / 6.0,
        displacement=0.0,
        mode=FisheyeMode.CONTINUOUS,
    )
    suppression: str = "fisheye"
    hysteresis: HysteresisParams = HysteresisParams(band=0.05)

    def __post_init__(self):
        if self.suppression not in SUPPRESSION_MODES:
            raise ConfigError(f"unknown suppression mode: {self.suppression!r}")


@dataclass(frozen=True)
class PipelineConfig:
    spiral: SpiralChainConfig = field(default_factory=SpiralChainConfig)
    forward: GateChainConfig = field(default_factory=GateChainConfig)
    backward: GateChainConfig = field(
        default_factory=lambda: GateChainConfig(
            sigmoid=SigmoidParams(contrast=1.0, threshold=0.3),
            fisheye=FisheyeParams(
                levels=10,
                outer_radius=600.0,
                inner_radius=120.0,
                scale=1.0 / 5.0,
                displacement=0.0,
                mode=FisheyeMode.CONTINUOUS,
            ),
        )
    )


def default_pipeline() -> PipelineConfig:
    return PipelineConfig()


@dataclass
class ProcessedProfile:
    """Final values plus the named intermediate profile after every stage."""

    values: np.ndarray
    stage_trace: list[tuple[str, np.ndarray]]

    def stage_names(self) -> list[str]:
        return [name for name, _ in self.stage_trace]


def landing_lifting_runs(values) -> tuple[int, int, bool]:
    """Detect the artifact runs at the ends of a profile.

    Returns (prefix_steps, suffix_steps, degenerate): the number of strictly
    increasing steps from index 0, the number of strictly decreasing steps
    into the last index, and whether the whole profile is monotone (in which
    case reassignment must leave it alone).
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    k = 0
    while k + 1 < n and x[k + 1] > x[k] + PLATEAU_EPS:
        k += 1
    m = 0
    while m + 1 < n and x[n - 2 - m] > x[n - 1 - m] + PLATEAU_EPS:
        m += 1
    degenerate = k == n - 1 or m == n - 1
    return k, m, degenerate


def reassign_landing_lifting(values) -> np.ndarray:
    """Replace the landing rise and lifting drop with the drawing pressures.

    The strictly increasing prefix becomes the first value recorded after the
    rise stops (the start drawing pressure); the strictly decreasing suffix
    becomes the last value before the drop begins (the stop drawing
    pressure). Monotone-everywhere profiles come back unchanged.
    """
    x = np.asarray(values, dtype=float)
    if x.size < 3:
        raise PipelineError("reassignment needs at least 3 samples")
    k, m, degenerate = landing_lifting_runs(x)
    out = x.copy()
    if degenerate:
        return out
    if k > 0:
        out[: k + 1] = x[k + 1]
    if m > 0:
        out[x.size - m:] = x[x.size - 1 - m]
    return out


def spiral_edge_flatten(
    values,
    tolerance: float = BASELINE_TOLERANCE,
    pull: float = EDGE_PULL,
) -> tuple[np.ndarray, int | None, int | None, bool]:
    """Pull the horizontal edges of a spiral profile toward its baseline.

    The baseline is the median pressure. Scanning outward from the global
    peak, the first sample on each side that has come down to the baseline
    band marks the end of the central arc; everything beyond keeps only
    `pull` of its offset from the baseline. Returns the flattened profile,
    the two crossing indices, and a degenerate flag (peak at an endpoint
    means there is no central arc to protect).
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    baseline = float(np.median(x))
    peak = int(np.argmax(x))
    if peak == 0 or peak == n - 1:
        return x.copy(), None, None, True
    left = 0
    for i in range(peak - 1, -1, -1):
        if x[i] <= baseline + tolerance:
            left = i
            break
    right = n - 1
    for i in range(peak + 1, n):
        if x[i] <= baseline + tolerance:
            right = i
            break
    out = x.copy()
    out[:left] = baseline + pull * (x[:left] - baseline)
    out[right + 1:] = baseline + pull * (x[right + 1:] - baseline)
    return out, left, right, False


def spiral_baseline_process(
    values,
    median: WindowParams = WindowParams(5),
    average: WindowParams = WindowParams(9),
) -> np.ndarray:
    """Edge flattening followed by whole-profile median and moving average."""
    x = np.asarray(values, dtype=float)
    if x.size < 5:
        raise PipelineError("spiral processing needs at least 5 samples")
    flattened, _, _, _ = spiral_edge_flatten(x)
    return moving_average(median_filter(flattened, median), average)


def _run_stage(trace, name, func, values):
    try:
        out = func(values)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(f"stage {name!r} failed: {exc}") from exc
    trace.append((name, out))
    return out


def process(
    values,
    curve_class: CurveClass,
    cfg: PipelineConfig | None = None,
) -> ProcessedProfile:
    """Run the chain for a class in its fixed order, recording every stage."""
    cfg = cfg or default_pipeline()
    x = validate_profile(values)
    trace: list[tuple[str, np.ndarray]] = []

    if curve_class is CurveClass.SPIRAL:
        chain = cfg.spiral
        x = _run_stage(trace, "low_pass", lambda v: low_pass(v, chain.low_pass), x)
        if x.size < 5:
            raise PipelineError("stage 'spiral_edges' failed: profile too short")
        flattened, _, _, degenerate = spiral_edge_flatten(x)
        trace.append(("spiral_edges:degenerate" if degenerate else "spiral_edges", flattened))
        x = flattened
        x = _run_stage(trace, "median", lambda v: median_filter(v, chain.median), x)
        x = _run_stage(
            trace, "moving_average", lambda v: moving_average(v, chain.moving_average), x
        )
        x = _apply_suppression(trace, chain, x)
        # executed on the y coordinate after depth projection; recorded here
        # so the trace shows the complete chain
        trace.append(("median_y:deferred", x))
        trace.append(("moving_average_y:deferred", x))
    elif curve_class is CurveClass.FORWARD:
        chain = cfg.forward
        x = _run_stage(trace, "low_pass", lambda v: low_pass(v, chain.low_pass), x)
        x = _run_stage(trace, "sigmoid", lambda v: sigmoid_gate(v, chain.sigmoid), x)
        x = _apply_suppression(trace, chain, x)
    elif curve_class is CurveClass.BACKWARD:
        chain = cfg.backward
        if x.size < 3:
            raise PipelineError("stage 'reassign_landing_lifting' failed: profile too short")
        _, _, degenerate = landing_lifting_runs(x)
        x = reassign_landing_lifting(x)
        trace.append(
            (
                "reassign_landing_lifting:degenerate"
                if degenerate
                else "reassign_landing_lifting",
                x,
            )
        )
        x = _run_stage(trace, "low_pass", lambda v: low_pass(v, chain.low_pass), x)
        x = _run_stage(trace, "sigmoid", lambda v: sigmoid_gate(v, chain.sigmoid), x)
        x = _apply_suppression(trace, chain, x)
    else:  # pragma: no cover
        raise PipelineError(f"no chain for class {curve_class!r}")

    return ProcessedProfile(values=np.clip(x, 0.0, 1.0), stage_trace=trace)


def _apply_suppression(trace, chain, values):
    if chain.suppression == "hysteresis":
        return _run_stage(
            trace, "hysteresis", lambda v: hysteresis(v, chain.hysteresis), values
        )
    return _run_stage(trace, "fisheye", lambda v: fisheye(v, chain.fisheye), values)


# --- configuration file round trip -----------------------------------------


def _fisheye_to_dict(p: FisheyeParams) -> dict:
    return {
        "levels": p.levels,
        "outer_radius": p.outer_radius,
        "inner_radius": p.inner_radius,
        "scale": p.scale,
        "displacement": p.displacement,
        "mode": p.mode.value,
    }


def _fisheye_from_dict(obj) -> FisheyeParams:
    return FisheyeParams(
        levels=int(obj["levels"]),
        outer_radius=float(obj["outer_radius"]),
        inner_radius=float(obj["inner_radius"]),
        scale=float(obj["scale"]),
        displacement=float(obj["displacement"]),
        mode=FisheyeMode(obj.get("mode", "continuous")),
    )


def pipeline_to_dict(cfg: PipelineConfig) -> dict:
    def gate(chain: GateChainConfig) -> dict:
        return {
            "low_pass": {"alpha": chain.low_pass.alpha},
            "sigmoid": {
                "contrast": chain.sigmoid.contrast,
                "threshold": chain.sigmoid.threshold,
                "steepness": chain.sigmoid.steepness,
            },
            "fisheye": _fisheye_to_dict(chain.fisheye),
            "suppression": chain.suppression,
            "hysteresis": {"band": chain.hysteresis.band},
        }

    return {
        "version": PIPELINE_FORMAT_VERSION,
        "spiral": {
            "low_pass": {"alpha": cfg.spiral.low_pass.alpha},
            "fisheye": _fisheye_to_dict(cfg.spiral.fisheye),
            "median": {"width": cfg.spiral.median.width},
            "moving_average": {"width": cfg.spiral.moving_average.width},
            "suppression": cfg.spiral.suppression,
            "hysteresis": {"band": cfg.spiral.hysteresis.band},
        },
        "forward": gate(cfg.forward),
        "backward": gate(cfg.backward),
    }


def pipeline_from_dict(obj) -> PipelineConfig:
    if not isinstance(obj, dict):
        raise ConfigError("pipeline config must be an object")
    version = obj.get("version", PIPELINE_FORMAT_VERSION)
    if version != PIPELINE_FORMAT_VERSION:
        raise ConfigError(f"unsupported pipeline config version: {version!r}")
    try:
        spiral_obj = obj["spiral"]
        spiral = SpiralChainConfig(
            low_pass=LowPassParams(alpha=float(spiral_obj["low_pass"]["alpha"])),
            fisheye=_fisheye_from_dict(spiral_obj["fisheye"]),
            median=WindowParams(width=int(spiral_obj["median"]["width"])),
            moving_average=WindowParams(width=int(spiral_obj["moving_average"]["width"])),
            suppression=str(spiral_obj.get("suppression", "fisheye")),
            hysteresis=HysteresisParams(
                band=float(spiral_obj.get("hysteresis", {}).get("band", 0.05))
            ),
        )

        def gate(gate_obj) -> GateChainConfig:
            return GateChainConfig(
                low_pass=LowPassParams(alpha=float(gate_obj["low_pass"]["alpha"])),
                sigmoid=SigmoidParams(
                    contrast=float(gate_obj["sigmoid"]["contrast"]),
                    threshold=float(gate_obj["sigmoid"]["threshold"]),
                    steepness=float(gate_obj["sigmoid"].get("steepness", 12.0)),
                ),
                fisheye=_fisheye_from_dict(gate_obj["fisheye"]),
                suppression=str(gate_obj.get("suppression", "fisheye")),
                hysteresis=HysteresisParams(
                    band=float(gate_obj.get("hysteresis", {}).get("band", 0.05))
                ),
            )

        return PipelineConfig(
            spiral=spiral, forward=gate(obj["forward"]), backward=gate(obj["backward"])
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"pipeline config is malformed: {exc}") from None


def save_pipeline(cfg: PipelineConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_pipeline(cfg))


def dump_pipeline(cfg: PipelineConfig) -> str:
    return json.dumps(pipeline_to_dict(cfg), indent=2) + "\n"


def load_pipeline(path) -> PipelineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse pipeline config {path}: {exc}") from None
    return pipeline_from_dict(obj)
