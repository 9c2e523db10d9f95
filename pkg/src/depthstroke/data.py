"""Labeled profile datasets and their line-delimited file format.

One record per line: {"class": "spiral", "pressure": [...]}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DatasetFormatError
from .stroke import CurveClass, validate_profile


@dataclass
class LabeledDataset:
    """An ordered collection of (pressure profile, class) pairs."""

    items: list[tuple[np.ndarray, CurveClass]] = field(default_factory=list)

    def __post_init__(self):
        if not self.items:
            raise DatasetFormatError("dataset is empty")

    def __len__(self) -> int:
        return len(self.items)

    def class_counts(self) -> dict[CurveClass, int]:
        counts = {cls: 0 for cls in CurveClass}
        for _, cls in self.items:
            counts[cls] += 1
        return counts

    def require_all_classes(self) -> None:
        missing = [cls.label for cls, n in self.class_counts().items() if n == 0]
        if missing:
            raise DatasetFormatError(
                f"training dataset needs every class; missing: {', '.join(missing)}"
            )


def save_dataset(dataset: LabeledDataset, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for profile, cls in dataset.items:
            record = {"class": cls.label, "pressure": list(map(float, profile))}
            fh.write(json.dumps(record))
            fh.write("\n")


def load_dataset(path) -> LabeledDataset:
    items: list[tuple[np.ndarray, CurveClass]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"{path}:{lineno}: invalid record: {exc}") from None
            if not isinstance(record, dict) or "class" not in record or "pressure" not in record:
                raise DatasetFormatError(
                    f'{path}:{lineno}: record needs "class" and "pressure"'
                )
            try:
                cls = CurveClass.from_label(record["class"])
                profile = validate_profile(record["pressure"])
            except ValueError as exc:
                raise DatasetFormatError(f"{path}:{lineno}: {exc}") from None
            items.append((profile, cls))
    if not items:
        raise DatasetFormatError(f"{path}: no records")
    return LabeledDataset(items)
