"""On-disk dataset layout.

Layout::

    <root>/<domain>/<split>/manifest.json
    <root>/<domain>/<split>/img_<volumeid>_<idx>.bin   float32, little-endian, row-major
    <root>/<domain>/<split>/lab_<volumeid>_<idx>.bin   uint8 (optional: absent = unlabeled)

The manifest carries: shape [H, W], num_classes, spacing_mm [z, y, x],
domain name, and the ordered volume list with each volume's slice indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DataError
from .records import DomainLabel, SliceRecord

MANIFEST_NAME = "manifest.json"
SPLITS = ("train", "val", "test")


@dataclass
class SliceDataset:
    """A loaded dataset split: slice records plus manifest metadata."""

    records: list[SliceRecord]
    num_classes: int
    spacing_mm: tuple[float, float, float]
    domain: DomainLabel
    extra: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, idx):
        return self.records[idx]

    def volume_ids(self) -> list[str]:
        seen: list[str] = []
        for rec in self.records:
            if rec.volume_id not in seen:
                seen.append(rec.volume_id)
        return seen


def _img_name(volume_id: str, idx: int) -> str:
    return f"img_{volume_id}_{idx}.bin"


def _lab_name(volume_id: str, idx: int) -> str:
    return f"lab_{volume_id}_{idx}.bin"


def save_slice_dataset(
    records: list[SliceRecord],
    root: Path | str,
    split: str,
    num_classes: int,
    spacing_mm: tuple[float, float, float] = (1.0, 1.0, 1.0),
    extra: dict | None = None,
) -> Path:
    """Write records under ``<root>/<domain>/<split>/`` and return that directory.

    All records must share one domain and one spatial shape. Records with
    label=None produce no ``lab_*.bin`` file.
    """
    if not records:
        raise DataError("cannot save an empty record list (no domain to infer)")
    domain = records[0].domain
    shape = records[0].image.shape
    split_dir = Path(root) / domain.name.lower() / split
    split_dir.mkdir(parents=True, exist_ok=True)

    volumes: dict[str, list[int]] = {}
    for rec in records:
        if rec.domain is not domain:
            raise DataError("mixed domains in one dataset split")
        if rec.image.shape != shape:
            raise DataError(
                f"inconsistent slice shapes: {rec.image.shape} vs {shape} "
                f"(volume {rec.volume_id}, slice {rec.slice_index})"
            )
        rec.validate(num_classes, name=f"{rec.volume_id}/{rec.slice_index}")
        volumes.setdefault(rec.volume_id, []).append(rec.slice_index)
        img = np.ascontiguousarray(rec.image.astype("<f4"))
        (split_dir / _img_name(rec.volume_id, rec.slice_index)).write_bytes(img.tobytes())
        if rec.label is not None:
            lab = np.ascontiguousarray(rec.label.astype(np.uint8))
            (split_dir / _lab_name(rec.volume_id, rec.slice_index)).write_bytes(lab.tobytes())

    manifest = {
        "shape": list(shape),
        "num_classes": num_classes,
        "spacing_mm": list(spacing_mm),
        "domain": domain.name.lower(),
        "volumes": [
            {"volume_id": vid, "slices": sorted(idxs)} for vid, idxs in volumes.items()
        ],
    }
    if extra:
        manifest["extra"] = extra
    (split_dir / MANIFEST_NAME).write_text(json.dumps(manifest, indent=1))
    return split_dir


def load_slice_dataset(path: Path | str, split: str) -> SliceDataset:
    """Load one split from a domain directory (``<root>/<domain>``).

    An absent or empty split directory yields an empty dataset. A directory
    holding data files without a manifest is an error.
    """
    split_dir = Path(path) / split
    manifest_path = split_dir / MANIFEST_NAME
    if not manifest_path.exists():
        if split_dir.exists() and any(split_dir.iterdir()):
            raise DataError(f"missing manifest: {manifest_path}")
        return SliceDataset(
            records=[], num_classes=0, spacing_mm=(1.0, 1.0, 1.0), domain=DomainLabel.SOURCE
        )

    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise DataError(f"unreadable manifest {manifest_path}: {exc}") from exc

    for key in ("shape", "num_classes", "spacing_mm", "domain", "volumes"):
        if key not in manifest:
            raise DataError(f"manifest {manifest_path} missing field {key!r}")

    shape = tuple(int(v) for v in manifest["shape"])
    num_classes = int(manifest["num_classes"])
    spacing = tuple(float(v) for v in manifest["spacing_mm"])
    if len(spacing) != 3:
        raise DataError(f"manifest {manifest_path}: spacing_mm must have 3 entries")
    domain = DomainLabel.from_name(manifest["domain"])

    records: list[SliceRecord] = []
    n_pixels = shape[0] * shape[1]
    for vol in manifest["volumes"]:
        vid = str(vol["volume_id"])
        for idx in vol["slices"]:
            idx = int(idx)
            img_path = split_dir / _img_name(vid, idx)
            if not img_path.exists():
                raise DataError(f"manifest lists {img_path.name} but the file is missing")
            raw = img_path.read_bytes()
            if len(raw) != n_pixels * 4:
                raise DataError(
                    f"{img_path.name}: expected {n_pixels * 4} bytes for shape {shape}, "
                    f"got {len(raw)}"
                )
            img = np.frombuffer(raw, dtype="<f4").reshape(shape).copy()

            lab_path = split_dir / _lab_name(vid, idx)
            label = None
            if lab_path.exists():
                lraw = lab_path.read_bytes()
                if len(lraw) != n_pixels:
                    raise DataError(
                        f"{lab_path.name}: expected {n_pixels} bytes for shape {shape}, "
                        f"got {len(lraw)}"
                    )
                label = np.frombuffer(lraw, dtype=np.uint8).reshape(shape).copy()
                top = int(label.max()) if label.size else 0
                if top > num_classes:
                    raise DataError(
                        f"{lab_path.name}: label value {top} exceeds num_classes={num_classes}"
                    )

            rec = SliceRecord(
                image=img, label=label, domain=domain, volume_id=vid, slice_index=idx
            )
            rec.validate(num_classes, name=img_path.name)
            records.append(rec)

    return SliceDataset(
        records=records,
        num_classes=num_classes,
        spacing_mm=spacing,  # type: ignore[arg-type]
        domain=domain,
        extra=manifest.get("extra", {}),
    )
