"""Report rendering: CSV tables plus matplotlib figures written to a directory.

Raw profiles plot in blue, processed in red; intermediate stages are drawn
faintly so individual steps can be compared against the end result.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .engine import StrokeResult  # noqa: E402
from .mlp import EvalReport, TrainingReport  # noqa: E402
from .stroke import CurveClass  # noqa: E402

CLASS_ORDER = [cls.label for cls in CurveClass]


def _ensure_dir(directory) -> Path:
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_training_report(report: TrainingReport, directory) -> list[Path]:
    out = _ensure_dir(directory)
    csv_path = out / "mse_trace.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "mse"])
        writer.writerow([0, report.initial_mse])
        for epoch, mse in enumerate(report.mse_trace, start=1):
            writer.writerow([epoch, mse])

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(len(report.mse_trace) + 1), [report.initial_mse] + list(report.mse_trace))
    ax.set_yscale("log")
    ax.set_xlabel("epoch")
    ax.set_ylabel("training MSE")
    ax.set_title(f"final MSE {report.final_mse:.3g} after {report.epochs_run} epochs")
    fig.tight_layout()
    png_path = out / "mse_trace.png"
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]


def write_eval_report(report: EvalReport, directory) -> list[Path]:
    out = _ensure_dir(directory)
    csv_path = out / "confusion.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["class", "tested"] + [f"predicted_{c}" for c in CLASS_ORDER]
                        + ["correct", "errors", "accuracy"])
        for cls in CurveClass:
            row = report.confusion[cls.value]
            total = int(row.sum())
            correct = int(row[cls.value])
            writer.writerow(
                [cls.label, total] + [int(v) for v in row]
                + [correct, total - correct, f"{report.per_class_accuracy[cls]:.4f}"]
            )

    fig, ax = plt.subplots(figsize=(5, 4.2))
    im = ax.imshow(report.confusion, cmap="Blues")
    ax.set_xticks(range(3), CLASS_ORDER)
    ax.set_yticks(range(3), CLASS_ORDER)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    for i in range(3):
        for j in range(3):
            ax.text(j, i, str(report.confusion[i, j]), ha="center", va="center",
                    color="white" if report.confusion[i, j] > report.confusion.max() / 2 else "black")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    confusion_png = out / "confusion.png"
    fig.savefig(confusion_png, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(5, 3.5))
    accs = [report.per_class_accuracy[cls] for cls in CurveClass]
    ax.bar(CLASS_ORDER, accs, color=["#4878cf", "#ee854a", "#6acc64"])
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("accuracy")
    for i, acc in enumerate(accs):
        ax.text(i, acc + 0.01, f"{acc:.0%}", ha="center")
    fig.tight_layout()
    accuracy_png = out / "accuracy.png"
    fig.savefig(accuracy_png, dpi=120)
    plt.close(fig)
    return [csv_path, confusion_png, accuracy_png]


def write_process_report(result: StrokeResult, directory) -> list[Path]:
    out = _ensure_dir(directory)
    csv_path = out / "profile_stages.csv"
    stage_names = [name for name, _ in result.processed.stage_trace]
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "raw"] + stage_names)
        for i in range(result.profile_raw.size):
            writer.writerow(
                [i, result.profile_raw[i]]
                + [values[i] for _, values in result.processed.stage_trace]
            )

    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(result.profile_raw, color="blue", label="raw")
    for name, values in result.processed.stage_trace[:-1]:
        if name.endswith(":deferred"):
            continue
        ax.plot(values, color="gray", alpha=0.35, linewidth=0.9)
    ax.plot(result.processed.values, color="red", label="processed")
    ax.set_xlabel("sample")
    ax.set_ylabel("pressure")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"class: {result.curve_class.label}")
    ax.legend()
    fig.tight_layout()
    profile_png = out / "profile.png"
    fig.savefig(profile_png, dpi=120)
    plt.close(fig)

    fig = plt.figure(figsize=(10, 4.5))
    for pos, (pts, title) in enumerate(
        [(result.curve3d, "projected"), (result.smoothed, "smoothed")], start=1
    ):
        ax = fig.add_subplot(1, 2, pos, projection="3d")
        ax.plot(pts[:, 0], pts[:, 1], pts[:, 2], linewidth=1.0)
        ax.set_title(title)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_zlabel("z")
    fig.tight_layout()
    curve_png = out / "curve3d.png"
    fig.savefig(curve_png, dpi=120)
    plt.close(fig)
    return [csv_path, profile_png, curve_png]
