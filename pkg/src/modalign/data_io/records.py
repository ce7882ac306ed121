"""Core dataset record types and their validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import DataError


class DomainLabel(Enum):
    """Which of the two imaging domains a sample belongs to."""

    SOURCE = 0
    TARGET = 1

    def one_hot(self) -> np.ndarray:
        vec = np.zeros(2, dtype=np.float32)
        vec[self.value] = 1.0
        return vec

    @classmethod
    def from_name(cls, name: str) -> "DomainLabel":
        try:
            return cls[name.upper()]
        except KeyError:
            raise DataError(f"unknown domain name: {name!r}") from None


@dataclass
class SliceRecord:
    """One 2D slice: image, integer label map, and provenance.

    image: float array (H, W). label: integer array (H, W) with values in
    {0..num_classes} (0 = background), or None for unlabeled data.
    """

    image: np.ndarray
    label: np.ndarray | None
    domain: DomainLabel
    volume_id: str
    slice_index: int

    def validate(self, num_classes: int | None = None, name: str = "slice") -> None:
        if self.image.ndim != 2:
            raise DataError(f"{name}: image must be 2D, got shape {self.image.shape}")
        if not np.all(np.isfinite(self.image)):
            raise DataError(f"{name}: image contains non-finite values")
        if self.label is not None:
            if self.label.shape != self.image.shape:
                raise DataError(
                    f"{name}: label shape {self.label.shape} != image shape {self.image.shape}"
                )
            if num_classes is not None:
                top = int(self.label.max()) if self.label.size else 0
                if top > num_classes:
                    raise DataError(
                        f"{name}: label value {top} exceeds num_classes={num_classes}"
                    )


@dataclass
class PhantomSpec:
    """Parameters of the synthetic two-domain phantom generator.

    per_class_gap holds one dial in [0, 1] per foreground class controlling
    how strongly that structure's rendering diverges between the domains.
    The seed fully determines the output.
    """

    num_classes: int = 2
    per_class_gap: list[float] = field(default_factory=lambda: [0.2, 0.8])
    image_size: int = 32
    volumes_per_domain: int = 4
    slices_per_volume: int = 8
    seed: int = 0

    def validate(self) -> None:
        if self.num_classes < 1:
            raise DataError("PhantomSpec.num_classes must be >= 1")
        if len(self.per_class_gap) != self.num_classes:
            raise DataError(
                "PhantomSpec.per_class_gap must have length num_classes "
                f"({len(self.per_class_gap)} != {self.num_classes})"
            )
        for k, g in enumerate(self.per_class_gap):
            if not (0.0 <= g <= 1.0):
                raise DataError(f"PhantomSpec.per_class_gap[{k}]={g} not in [0, 1]")
        if self.image_size < 16:
            raise DataError("PhantomSpec.image_size must be >= 16")
        if self.volumes_per_domain < 1:
            raise DataError("PhantomSpec.volumes_per_domain must be >= 1")
        if self.slices_per_volume < 1:
            raise DataError("PhantomSpec.slices_per_volume must be >= 1")


@dataclass
class AugmentSpec:
    """Geometric and intensity augmentation settings.

    crop_size == 0 means no cropping. Rotations are restricted to right
    angles so that image/label stay in exact lockstep; rotation_degrees_max
    bounds the allowed rotation magnitude (e.g. 90 enables +-90 degrees).
    """

    crop_size: int = 0
    rotation_degrees_max: float = 0.0
    flip_probability: float = 0.0
    intensity_jitter: float = 0.0

    def validate(self, image_size: int | None = None) -> None:
        if not (0.0 <= self.flip_probability <= 1.0):
            raise DataError(f"AugmentSpec.flip_probability={self.flip_probability} not in [0, 1]")
        if self.intensity_jitter < 0:
            raise DataError("AugmentSpec.intensity_jitter must be >= 0")
        if self.crop_size < 0:
            raise DataError("AugmentSpec.crop_size must be >= 0")
        if image_size is not None and self.crop_size > image_size:
            raise DataError(
                f"AugmentSpec.crop_size={self.crop_size} exceeds image size {image_size}"
            )
