"""Seeded synthetic pressure profiles for the three stroke classes.

Stands in for captured pen data: each class gets its characteristic shape
(forward low-high-low, backward high-low-high, spiral flat shoulders with a
central bump), plus hand-tremor noise and the landing/lifting capture
artifacts a real pen leaves at the ends of a stroke.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import LabeledDataset
from .errors import ValidationError
from .stroke import CurveClass

LENGTH_RANGE = (300, 1400)
BASE_RANGE = (0.1, 0.4)
PEAK_RANGE = (0.6, 0.95)
TREMOR_MAX = 0.05
GAMMA_RANGE = (1.0, 4.0)

# generate_dataset sampling ranges; tremor capped below TREMOR_MAX so class
# signatures stay clean
DATASET_TREMOR_RANGE = (0.0, 0.03)
ARTIFACT_PROBABILITY = 0.8


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one synthetic profile; identical specs give identical output."""

    curve_class: CurveClass
    length: int = 600
    base: float = 0.25
    peak: float = 0.8
    tremor_sd: float = 0.02
    gamma: float = 2.0
    landing: bool = False
    lifting: bool = False
    seed: int = 0

    def __post_init__(self):
        if not LENGTH_RANGE[0] <= self.length <= LENGTH_RANGE[1]:
            raise ValidationError(f"length must be in {LENGTH_RANGE}, got {self.length!r}")
        if not BASE_RANGE[0] <= self.base <= BASE_RANGE[1]:
            raise ValidationError(f"base must be in {BASE_RANGE}, got {self.base!r}")
        if not PEAK_RANGE[0] <= self.peak <= PEAK_RANGE[1]:
            raise ValidationError(f"peak must be in {PEAK_RANGE}, got {self.peak!r}")
        if self.base >= self.peak:
            raise ValidationError("base must be below peak")
        if not 0.0 <= self.tremor_sd <= TREMOR_MAX:
            raise ValidationError(f"tremor_sd must be in [0, {TREMOR_MAX}]")
        if not GAMMA_RANGE[0] <= self.gamma <= GAMMA_RANGE[1]:
            raise ValidationError(f"gamma must be in {GAMMA_RANGE}, got {self.gamma!r}")


def _body(spec: GenSpec) -> np.ndarray:
    u = np.linspace(0.0, 1.0, spec.length)
    amplitude = spec.peak - spec.base
    if spec.curve_class is CurveClass.FORWARD:
        return spec.base + amplitude * np.sin(np.pi * u) ** spec.gamma
    if spec.curve_class is CurveClass.BACKWARD:
        return spec.peak - amplitude * np.sin(np.pi * u) ** spec.gamma
    # spiral: flat shoulders on the outer quarters, raised-cosine bump on the
    # middle half
    body = np.full(spec.length, spec.base)
    middle = (u >= 0.25) & (u <= 0.75)
    v = (u[middle] - 0.25) / 0.5
    body[middle] = spec.base + amplitude * 0.5 * (1.0 - np.cos(2.0 * np.pi * v))
    return body


def generate(spec: GenSpec) -> np.ndarray:
    """Render one profile: class shape + seeded tremor + optional artifacts.

    Landing/lifting segments are written after the tremor and are strictly
    monotone, the way a fast pen touch-down or lift-off registers; tremor
    only affects the stroke body.
    """
    rng = np.random.default_rng(spec.seed)
    p = _body(spec)
    # draw in a fixed order so toggling one artifact cannot shift the noise
    noise = rng.normal(0.0, 1.0, spec.length) * spec.tremor_sd
    landing_frac = rng.uniform(0.02, 0.05)
    landing_floor = rng.uniform(0.01, 0.05)
    lifting_frac = rng.uniform(0.02, 0.08)
    lifting_floor = rng.uniform(0.01, 0.05)
    p = np.clip(p + noise, 0.0, 1.0)
    if spec.landing:
        k = max(2, int(round(spec.length * landing_frac)))
        target = max(p[k], landing_floor + 0.02)
        p[:k] = np.linspace(landing_floor, target, k, endpoint=False)
    if spec.lifting:
        m = max(2, int(round(spec.length * lifting_frac)))
        source = p[-m - 1]
        floor = min(lifting_floor, max(source - 0.02, 0.0))
        p[-m:] = np.linspace(source, floor, m + 1)[1:]
    return np.clip(p, 0.0, 1.0)


def generate_dataset(
    n_spiral: int, n_forward: int, n_backward: int, seed: int
) -> LabeledDataset:
    """Draw per-item recipes from seeded ranges and render each profile.

    Items come out grouped by class (spiral, forward, backward). The same
    seed reproduces the dataset bit for bit.
    """
    for name, count in (("spiral", n_spiral), ("forward", n_forward), ("backward", n_backward)):
        if count < 1:
            raise ValidationError(f"count for {name} must be positive, got {count}")
    rng = np.random.default_rng(seed)
    items: list[tuple[np.ndarray, CurveClass]] = []
    counts = {
        CurveClass.SPIRAL: n_spiral,
        CurveClass.FORWARD: n_forward,
        CurveClass.BACKWARD: n_backward,
    }
    for cls in CurveClass:
        for _ in range(counts[cls]):
            base = rng.uniform(*BASE_RANGE)
            peak = rng.uniform(*PEAK_RANGE)
            spec = GenSpec(
                curve_class=cls,
                length=int(rng.integers(LENGTH_RANGE[0], LENGTH_RANGE[1] + 1)),
                base=base,
                peak=peak,
                tremor_sd=rng.uniform(*DATASET_TREMOR_RANGE),
                gamma=rng.uniform(*GAMMA_RANGE),
                landing=rng.random() < ARTIFACT_PROBABILITY,
                lifting=rng.random() < ARTIFACT_PROBABILITY,
                seed=int(rng.integers(0, 2**32)),
            )
            items.append((generate(spec), cls))
    return LabeledDataset(items)
