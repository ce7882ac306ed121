"""Slice preprocessing and batch augmentation.

Both are pure given their inputs and an explicit random generator, so they
are safe to call from multiple workers concurrently.
"""

from __future__ import annotations

import numpy as np

from .records import AugmentSpec, SliceRecord


def normalize_image(image: np.ndarray) -> np.ndarray:
    """Min-max rescale to [-1, 1]; a constant slice maps to all zeros."""
    image = image.astype(np.float32)
    lo = float(image.min())
    hi = float(image.max())
    if hi == lo:
        return np.zeros_like(image)
    return (image - lo) / (hi - lo) * 2.0 - 1.0


def _crop_or_pad(arr: np.ndarray, size: int, fill) -> np.ndarray:
    h, w = arr.shape
    out = np.full((size, size), fill, dtype=arr.dtype)
    src_y = max(0, (h - size) // 2)
    src_x = max(0, (w - size) // 2)
    dst_y = max(0, (size - h) // 2)
    dst_x = max(0, (size - w) // 2)
    ny = min(h, size)
    nx = min(w, size)
    out[dst_y : dst_y + ny, dst_x : dst_x + nx] = arr[src_y : src_y + ny, src_x : src_x + nx]
    return out


def preprocess(record: SliceRecord, size: int | None = None) -> SliceRecord:
    """Normalize a record's image to [-1, 1] and fit it to ``size`` if given.

    Size mismatches are resolved by center crop (larger inputs) or padding
    (smaller inputs; image pads with -1, label pads with background 0), so
    the function is total on valid records.
    """
    image = normalize_image(record.image)
    label = record.label
    if size is not None and image.shape != (size, size):
        image = _crop_or_pad(image, size, np.float32(-1.0))
        if label is not None:
            label = _crop_or_pad(label, size, np.uint8(0))
    return SliceRecord(
        image=image,
        label=label,
        domain=record.domain,
        volume_id=record.volume_id,
        slice_index=record.slice_index,
    )


def _right_angles(max_degrees: float) -> list[int]:
    # k values for np.rot90; 270 deg == -90 deg, magnitude 90.
    allowed = [0]
    if max_degrees >= 90:
        allowed += [1, 3]
    if max_degrees >= 180:
        allowed.append(2)
    return allowed


def augment(
    images: np.ndarray,
    labels: np.ndarray | None,
    spec: AugmentSpec,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Apply crop / right-angle rotation / horizontal flip / intensity jitter.

    ``images`` is (B, 1, H, W) float32; ``labels`` is (B, H, W) or None.
    Geometric transforms are applied identically to image and label (labels
    by index permutation, i.e. nearest-neighbor); jitter touches images only.
    """
    spec.validate(image_size=images.shape[-1])
    images = images.copy()
    labels = labels.copy() if labels is not None else None
    batch = images.shape[0]
    angles = _right_angles(spec.rotation_degrees_max)

    out_imgs = []
    out_labs = []
    for b in range(batch):
        img = images[b, 0]
        lab = labels[b] if labels is not None else None

        if 0 < spec.crop_size < img.shape[0]:
            top = int(rng.integers(0, img.shape[0] - spec.crop_size + 1))
            left = int(rng.integers(0, img.shape[1] - spec.crop_size + 1))
            img = img[top : top + spec.crop_size, left : left + spec.crop_size]
            if lab is not None:
                lab = lab[top : top + spec.crop_size, left : left + spec.crop_size]

        if len(angles) > 1:
            k = angles[int(rng.integers(0, len(angles)))]
            if k:
                img = np.rot90(img, k)
                if lab is not None:
                    lab = np.rot90(lab, k)

        if spec.flip_probability > 0 and rng.random() < spec.flip_probability:
            img = img[:, ::-1]
            if lab is not None:
                lab = lab[:, ::-1]

        if spec.intensity_jitter > 0:
            img = img + np.float32(rng.uniform(-spec.intensity_jitter, spec.intensity_jitter))

        out_imgs.append(np.ascontiguousarray(img, dtype=np.float32))
        if lab is not None:
            out_labs.append(np.ascontiguousarray(lab))

    images = np.stack(out_imgs)[:, None]
    labels = np.stack(out_labs) if out_labs else None
    return images, labels
