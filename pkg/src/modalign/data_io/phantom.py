"""Deterministic synthetic two-domain phantom generator.

Each volume is a soft-tissue disk ("body") with a bright rim, containing one
geometric structure per foreground class: odd classes are filled ellipses,
even classes are rings. Geometry statistics are shared between domains but
sampled independently (unpaired); intensity rendering differs per class by
an amount controlled by ``per_class_gap``.

The bright rim and dark air anchor every slice's min/max, so per-slice
min-max normalization maps both domains through the same affine and the
class-palette differences survive preprocessing.
"""

from __future__ import annotations

import numpy as np
from scipy.ndimage import gaussian_filter

from .records import DomainLabel, PhantomSpec, SliceRecord

# Raw palette, before per-voxel noise. Everything lives in [0, 1].
AIR = 0.03
TISSUE = 0.22
RIM = 0.95
NOISE_SIGMA = 0.025
# Maximum per-class intensity shift between domains (applied at gap dial 1.0).
GAP_SHIFT = 0.34


def class_intensity(class_id: int, num_classes: int, domain: DomainLabel, gap: float) -> float:
    """Mean raw intensity of foreground class ``class_id`` (1-based) in ``domain``."""
    if num_classes == 1:
        base = 0.66
    else:
        base = 0.50 + 0.38 * (class_id - 1) / (num_classes - 1)
    if domain is DomainLabel.TARGET:
        base = base - gap * GAP_SHIFT
    return base


def _volume_geometry(rng: np.random.Generator, spec: PhantomSpec) -> dict:
    n = spec.image_size
    body_r = n * rng.uniform(0.39, 0.44)
    body_c = np.array([n / 2, n / 2]) + rng.uniform(-0.02 * n, 0.02 * n, size=2)
    depth = spec.slices_per_volume
    z_center = (depth - 1) / 2 + rng.uniform(-0.05, 0.05) * depth
    z_half = depth * rng.uniform(0.62, 0.78)

    structures = []
    for k in range(1, spec.num_classes + 1):
        angle = 2 * np.pi * (k - 1) / spec.num_classes + rng.uniform(-0.25, 0.25)
        dist = body_r * rng.uniform(0.40, 0.50)
        center = body_c + dist * np.array([np.sin(angle), np.cos(angle)])
        radius = body_r * rng.uniform(0.28, 0.36)
        aspect = rng.uniform(0.8, 1.25)
        structures.append(
            {
                "class_id": k,
                "center": center,
                "radius": radius,
                "aspect": aspect,
                "ring": k % 2 == 0,
            }
        )
    return {
        "body_r": body_r,
        "body_c": body_c,
        "z_center": z_center,
        "z_half": z_half,
        "structures": structures,
    }


def _render_slice(
    rng: np.random.Generator,
    spec: PhantomSpec,
    geom: dict,
    z: int,
    domain: DomainLabel,
) -> tuple[np.ndarray, np.ndarray]:
    n = spec.image_size
    yy, xx = np.ogrid[:n, :n]

    # Cross-section scale at this slice depth (ellipsoid profile).
    t = (z - geom["z_center"]) / geom["z_half"]
    profile = float(np.sqrt(max(0.0, 1.0 - t * t)))

    img = np.full((n, n), AIR, dtype=np.float64)
    lab = np.zeros((n, n), dtype=np.uint8)

    cy, cx = geom["body_c"]
    body_r = geom["body_r"] * (0.90 + 0.10 * profile)
    d_body = np.sqrt((yy - cy) ** 2 + (xx - cx) ** 2)
    img[d_body <= body_r] = TISSUE
    img[(d_body <= body_r + 0.5) & (d_body >= body_r - 1.5)] = RIM

    for st in geom["structures"]:
        r = st["radius"] * profile
        if r < 1.0:
            continue
        sy, sx = st["center"]
        d2 = ((yy - sy) / st["aspect"]) ** 2 + ((xx - sx) * st["aspect"]) ** 2
        if st["ring"]:
            mask = (d2 <= r**2) & (d2 >= (0.55 * r) ** 2)
        else:
            mask = d2 <= r**2
        gap = spec.per_class_gap[st["class_id"] - 1]
        img[mask] = class_intensity(st["class_id"], spec.num_classes, domain, gap)
        lab[mask] = st["class_id"]

    # Smooth multiplicative modulation inside the body plus per-voxel noise;
    # the rng draws are domain-independent so paired volumes stay aligned.
    coarse = rng.normal(0.0, 1.0, size=(4, 4))
    field = gaussian_filter(np.kron(coarse, np.ones((n // 4 + 1, n // 4 + 1)))[:n, :n], sigma=n / 8)
    inside = d_body <= body_r
    img[inside] *= 1.0 + 0.04 * field[inside]
    img += rng.normal(0.0, NOISE_SIGMA, size=(n, n))
    np.clip(img, 0.0, 1.0, out=img)
    return img.astype(np.float32), lab


def generate_phantom(
    spec: PhantomSpec, paired: bool = False
) -> tuple[list[SliceRecord], list[SliceRecord]]:
    """Generate the two unpaired domain datasets described by ``spec``.

    Returns (source_records, target_records). With ``paired=True`` both
    domains reuse the same per-volume random stream, so geometry and noise
    coincide and only the class palette differs; this is a debug mode for
    oracle tests, not part of the production data contract.
    """
    spec.validate()
    out: dict[DomainLabel, list[SliceRecord]] = {DomainLabel.SOURCE: [], DomainLabel.TARGET: []}
    for domain in (DomainLabel.SOURCE, DomainLabel.TARGET):
        stream_key = 0 if paired else domain.value
        prefix = "s" if domain is DomainLabel.SOURCE else "t"
        for v in range(spec.volumes_per_domain):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=spec.seed, spawn_key=(stream_key, v))
            )
            geom = _volume_geometry(rng, spec)
            vid = f"{prefix}{v:03d}"
            for z in range(spec.slices_per_volume):
                img, lab = _render_slice(rng, spec, geom, z, domain)
                out[domain].append(
                    SliceRecord(image=img, label=lab, domain=domain, volume_id=vid, slice_index=z)
                )
    return out[DomainLabel.SOURCE], out[DomainLabel.TARGET]
