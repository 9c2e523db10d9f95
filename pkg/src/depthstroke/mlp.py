"""From-scratch feedforward classifier over spectral features.

Logistic units everywhere, mean-squared-error loss against one-hot targets,
and adaptive full-batch training: the learning rate grows while the loss
improves and shrinks (with a weight rollback) when it regresses.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .data import LabeledDataset
from .errors import (
    ModelFormatError,
    ModelTopologyError,
    ModelVersionError,
    ValidationError,
)
from .features import FeatureConfig, extract_features
from .stroke import CurveClass, validate_profile

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class NetworkTopology:
    """Layer sizes, input first. Classifier networks end in 3 output units
    and carry one or two hidden layers of at most 100 units."""

    layer_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.layer_sizes)
        object.__setattr__(self, "layer_sizes", sizes)
        if len(sizes) not in (3, 4):
            raise ModelTopologyError(
                f"topology needs 1 or 2 hidden layers, got {len(sizes) - 2}"
            )
        if sizes[-1] != 3:
            raise ModelTopologyError(f"output layer must have 3 units, got {sizes[-1]}")
        if sizes[0] < 1:
            raise ModelTopologyError("input layer must be non-empty")
        for h in sizes[1:-1]:
            if not 1 <= h <= 100:
                raise ModelTopologyError(f"hidden layer size must be in [1, 100], got {h}")

    def __str__(self) -> str:
        return ":".join(str(s) for s in self.layer_sizes)

    @classmethod
    def parse(cls, text: str) -> "NetworkTopology":
        try:
            sizes = tuple(int(part) for part in text.split(":"))
        except ValueError:
            raise ModelTopologyError(f"cannot parse topology {text!r}") from None
        return cls(sizes)


@dataclass(frozen=True)
class TrainingConfig:
    max_iterations: int = 30000
    target_mse: float = 0.0001
    lr_initial: float = 0.5
    lr_up: float = 1.05
    lr_down: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValidationError("max_iterations must be >= 0")
        if self.target_mse <= 0:
            raise ValidationError("target_mse must be positive")
        if self.lr_initial <= 0 or self.lr_up <= 1.0 or not 0.0 < self.lr_down < 1.0:
            raise ValidationError("learning-rate schedule parameters out of range")


@dataclass
class TrainingReport:
    """Per-epoch loss trace plus the stopping summary."""

    initial_mse: float
    mse_trace: list[float]
    final_mse: float
    epochs_run: int
    stop_reason: str
    lr_final: float
    accepted_epochs: int
    rejected_epochs: int


def _init_layers(sizes, rng) -> tuple[list[np.ndarray], list[np.ndarray]]:
    weights = []
    biases = []
    for n_in, n_out in zip(sizes, sizes[1:]):
        weights.append(rng.uniform(-0.5, 0.5, size=(n_in, n_out)))
        biases.append(rng.uniform(-0.5, 0.5, size=n_out))
    return weights, biases


def _logistic(u: np.ndarray) -> np.ndarray:
    out = np.empty_like(u)
    pos = u >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-u[pos]))
    ez = np.exp(u[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _forward_pass(weights, biases, X: np.ndarray) -> list[np.ndarray]:
    """Activations per layer, input included; X is (n_samples, n_in)."""
    activations = [X]
    for W, b in zip(weights, biases):
        activations.append(_logistic(activations[-1] @ W + b))
    return activations


def _mse(outputs: np.ndarray, targets: np.ndarray) -> float:
    diff = outputs - targets
    return float(np.mean(diff * diff))


def _gradients(weights, biases, X, T):
    """Analytic gradients of the batch MSE; returns (gW, gB, mse)."""
    activations = _forward_pass(weights, biases, X)
    out = activations[-1]
    delta = (out - T) * out * (1.0 - out) * (2.0 / T.size)
    grad_w = [None] * len(weights)
    grad_b = [None] * len(biases)
    for layer in range(len(weights) - 1, -1, -1):
        grad_w[layer] = activations[layer].T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            back = delta @ weights[layer].T
            a = activations[layer]
            delta = back * a * (1.0 - a)
    return grad_w, grad_b, _mse(out, T)


def train_arrays(
    X: np.ndarray, T: np.ndarray, sizes, cfg: TrainingConfig
) -> tuple[list[np.ndarray], list[np.ndarray], TrainingReport]:
    """Adaptive full-batch gradient descent on raw feature/target matrices.

    Each epoch takes one step at the current learning rate; if the loss
    improved the rate grows by lr_up, otherwise the weights are rolled back
    and the rate shrinks by lr_down. Stops at max_iterations or once the
    loss reaches target_mse.
    """
    X = np.asarray(X, dtype=float)
    T = np.asarray(T, dtype=float)
    if X.ndim != 2 or T.ndim != 2 or X.shape[0] != T.shape[0]:
        raise ValidationError("feature and target matrices must align on samples")
    if X.shape[1] != sizes[0] or T.shape[1] != sizes[-1]:
        raise ValidationError("matrix widths must match the topology")
    rng = np.random.default_rng(cfg.seed)
    weights, biases = _init_layers(sizes, rng)
    current = _mse(_forward_pass(weights, biases, X)[-1], T)
    initial = current
    lr = cfg.lr_initial
    trace: list[float] = []
    accepted = rejected = 0
    stop_reason = "max_iterations"
    if cfg.max_iterations == 0:
        stop_reason = "no_epochs"
    elif current <= cfg.target_mse:
        stop_reason = "target_mse"
    else:
        for epoch in range(cfg.max_iterations):
            grad_w, grad_b, _ = _gradients(weights, biases, X, T)
            new_w = [W - lr * g for W, g in zip(weights, grad_w)]
            new_b = [b - lr * g for b, g in zip(biases, grad_b)]
            new_mse = _mse(_forward_pass(new_w, new_b, X)[-1], T)
            if not math.isfinite(new_mse):
                raise ValidationError(
                    f"training diverged at epoch {epoch + 1}: loss is not finite "
                    f"(lr={lr:g}); lower lr_initial or lr_up"
                )
            if new_mse < current:
                weights, biases = new_w, new_b
                current = new_mse
                lr *= cfg.lr_up
                accepted += 1
            else:
                lr *= cfg.lr_down
                rejected += 1
            trace.append(current)
            if current <= cfg.target_mse:
                stop_reason = "target_mse"
                break
    report = TrainingReport(
        initial_mse=initial,
        mse_trace=trace,
        final_mse=current,
        epochs_run=len(trace),
        stop_reason=stop_reason,
        lr_final=lr,
        accepted_epochs=accepted,
        rejected_epochs=rejected,
    )
    return weights, biases, report


@dataclass
class MLPModel:
    """A trained network plus the feature preprocessing it was trained with."""

    topology: NetworkTopology
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    feature_cfg: FeatureConfig = field(default_factory=FeatureConfig)
    activation: str = "logistic"

    def __post_init__(self):
        sizes = self.topology.layer_sizes
        if sizes[0] != self.feature_cfg.n_features:
            raise ModelTopologyError(
                f"input layer ({sizes[0]}) must match feature count "
                f"({self.feature_cfg.n_features})"
            )
        if len(self.weights) != len(sizes) - 1 or len(self.biases) != len(sizes) - 1:
            raise ModelTopologyError("layer count does not match topology")
        for i, (W, b) in enumerate(zip(self.weights, self.biases)):
            if W.shape != (sizes[i], sizes[i + 1]) or b.shape != (sizes[i + 1],):
                raise ModelTopologyError(
                    f"layer {i} shapes {W.shape}/{b.shape} do not match topology {self.topology}"
                )
            if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
                raise ModelTopologyError(f"layer {i} contains non-finite values")
        if self.activation != "logistic":
            raise ModelFormatError(f"unsupported activation: {self.activation!r}")


def forward(model: MLPModel, features) -> np.ndarray:
    """Output activations for one feature vector; each lies in (0, 1)."""
    vec = np.asarray(features, dtype=float)
    if vec.shape != (model.topology.layer_sizes[0],):
        raise ValidationError(
            f"feature vector length {vec.shape} does not match input layer "
            f"({model.topology.layer_sizes[0]})"
        )
    return _forward_pass(model.weights, model.biases, vec[None, :])[-1][0]


def decode_outputs(outputs) -> CurveClass:
    """Argmax with ties resolved by the fixed class order."""
    return CurveClass(int(np.argmax(np.asarray(outputs))))


def classify(model: MLPModel, profile) -> tuple[CurveClass, np.ndarray]:
    """Classify a pressure profile; returns (class, raw output scores)."""
    values = validate_profile(profile)
    scores = forward(model, extract_features(values, model.feature_cfg))
    return decode_outputs(scores), scores


def _dataset_matrices(data: LabeledDataset, feature_cfg: FeatureConfig):
    X = np.vstack([extract_features(profile, feature_cfg) for profile, _ in data.items])
    T = np.array([cls.one_hot for _, cls in data.items], dtype=float)
    return X, T


def train(
    data: LabeledDataset,
    topology: NetworkTopology,
    cfg: TrainingConfig = TrainingConfig(),
    feature_cfg: FeatureConfig = FeatureConfig(),
    restarts: int = 1,
) -> tuple[MLPModel, TrainingReport]:
    """Train a classifier on labeled profiles.

    With restarts > 1 the run is repeated from seeds seed, seed+1, ... and
    the model with the lowest final loss wins.
    """
    if restarts < 1:
        raise ValidationError("restarts must be >= 1")
    data.require_all_classes()
    sizes = topology.layer_sizes
    if sizes[0] != feature_cfg.n_features:
        raise ModelTopologyError(
            f"topology input size {sizes[0]} does not match n_features "
            f"{feature_cfg.n_features}"
        )
    X, T = _dataset_matrices(data, feature_cfg)
    best = None
    for r in range(restarts):
        run_cfg = TrainingConfig(
            max_iterations=cfg.max_iterations,
            target_mse=cfg.target_mse,
            lr_initial=cfg.lr_initial,
            lr_up=cfg.lr_up,
            lr_down=cfg.lr_down,
            seed=cfg.seed + r,
        )
        weights, biases, report = train_arrays(X, T, sizes, run_cfg)
        if best is None or report.final_mse < best[2].final_mse:
            best = (weights, biases, report)
    weights, biases, report = best
    model = MLPModel(topology=topology, weights=weights, biases=biases, feature_cfg=feature_cfg)
    return model, report


@dataclass
class EvalReport:
    """Confusion matrix (rows = true class, columns = predicted class, both
    in fixed class order) and the per-class accuracies derived from it."""

    confusion: np.ndarray
    per_class_accuracy: dict[CurveClass, float]
    total: int
    correct: int

    @property
    def overall_accuracy(self) -> float:
        return self.correct / self.total


def evaluate(model: MLPModel, data: LabeledDataset) -> EvalReport:
    confusion = np.zeros((3, 3), dtype=int)
    for profile, cls in data.items:
        predicted, _ = classify(model, profile)
        confusion[cls.value, predicted.value] += 1
    accuracy = {}
    for cls in CurveClass:
        row_total = int(confusion[cls.value].sum())
        accuracy[cls] = float(confusion[cls.value, cls.value]) / row_total if row_total else 0.0
    return EvalReport(
        confusion=confusion,
        per_class_accuracy=accuracy,
        total=int(confusion.sum()),
        correct=int(np.trace(confusion)),
    )


def two_thirds_rule(n_in: int, n_out: int) -> int:
    """Rule-of-thumb hidden size: two thirds of input plus output units."""
    return 2 * (n_in + n_out) // 3


@dataclass
class SweepReport:
    """(topology, final mse) rows, best loss first, plus the rule-of-thumb
    hidden-size candidate for this feature/output width."""

    rows: list[tuple[NetworkTopology, float]]
    rule_of_thumb: int


def topology_sweep(
    data: LabeledDataset,
    cfg: TrainingConfig,
    hidden_range,
    feature_cfg: FeatureConfig = FeatureConfig(),
) -> SweepReport:
    """Train one single-hidden-layer model per candidate size."""
    hidden_sizes = sorted(set(int(h) for h in hidden_range))
    if not hidden_sizes:
        raise ValidationError("hidden_range is empty")
    if hidden_sizes[0] < 1 or hidden_sizes[-1] > 100:
        raise ValidationError("hidden sizes must lie in [1, 100]")
    data.require_all_classes()
    X, T = _dataset_matrices(data, feature_cfg)
    rows = []
    for h in hidden_sizes:
        sizes = (feature_cfg.n_features, h, 3)
        _, _, report = train_arrays(X, T, sizes, cfg)
        rows.append((NetworkTopology(sizes), report.final_mse))
    rows.sort(key=lambda row: row[1])
    return SweepReport(rows=rows, rule_of_thumb=two_thirds_rule(feature_cfg.n_features, 3))


def save_model(model: MLPModel, path) -> None:
    """Persist to JSON; floats keep full precision so a round trip is bit-exact."""
    payload = {
        "version": MODEL_FORMAT_VERSION,
        "topology": list(model.topology.layer_sizes),
        "activation": model.activation,
        "feature": {
            "fft_len": model.feature_cfg.fft_len,
            "n_features": model.feature_cfg.n_features,
            "norm": model.feature_cfg.normalization,
        },
        "weights": [W.tolist() for W in model.weights],
        "biases": [b.tolist() for b in model.biases],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_model(path) -> MLPModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"cannot parse model file {path}: {exc}") from None
    if not isinstance(payload, dict):
        raise ModelFormatError(f"model file {path} is not an object")
    version = payload.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f"unsupported model version {version!r} (expected {MODEL_FORMAT_VERSION})"
        )
    try:
        topology = NetworkTopology(tuple(payload["topology"]))
        feature = payload["feature"]
        feature_cfg = FeatureConfig(
            fft_len=int(feature["fft_len"]),
            n_features=int(feature["n_features"]),
            normalization=str(feature["norm"]),
        )
        weights = [np.array(W, dtype=float) for W in payload["weights"]]
        biases = [np.array(b, dtype=float) for b in payload["biases"]]
        activation = payload.get("activation", "logistic")
    except ModelTopologyError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"model file {path} is malformed: {exc}") from None
    return MLPModel(
        topology=topology,
        weights=weights,
        biases=biases,
        feature_cfg=feature_cfg,
        activation=activation,
    )
