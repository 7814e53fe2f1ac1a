"""Per-superpixel feature vectors: mean RGB plus normalized centroid.

A descriptor is a 5-vector (mean_r, mean_g, mean_b, cx, cy) with every
component in [0, 1]. Colors are divided by 255; centroid coordinates by
(width - 1) and (height - 1), so both image borders map to 0 and 1. The
scaling constants are fixed, never data-dependent.
"""

from __future__ import annotations

import numpy as np

from .oversegment import SuperpixelMap
from .raster import RasterImage, check_same_shape

CSV_HEADER = "id,mean_r,mean_g,mean_b,cx,cy"


def describe_all(sp: SuperpixelMap, image: RasterImage) -> np.ndarray:
    """Compute the (S, 5) descriptor matrix for every superpixel."""
    check_same_shape(sp, image)
    flat = sp.assignment.ravel()
    s = sp.num_superpixels
    counts = np.bincount(flat, minlength=s).astype(np.float64)

    out = np.empty((s, 5), dtype=np.float64)
    pix = image.pixels.reshape(-1, 3).astype(np.float64)
    for ch in range(3):
        out[:, ch] = np.bincount(flat, weights=pix[:, ch], minlength=s) / counts / 255.0

    h, w = image.height, image.width
    xs = np.tile(np.arange(w, dtype=np.float64), h)
    ys = np.repeat(np.arange(h, dtype=np.float64), w)
    mean_x = np.bincount(flat, weights=xs, minlength=s) / counts
    mean_y = np.bincount(flat, weights=ys, minlength=s) / counts
    out[:, 3] = mean_x / (w - 1) if w > 1 else 0.0
    out[:, 4] = mean_y / (h - 1) if h > 1 else 0.0
    return out


def descriptors_to_csv(descriptors: np.ndarray) -> str:
    lines = [CSV_HEADER]
    for i, d in enumerate(descriptors):
        lines.append(f"{i}," + ",".join(format(v, ".9f") for v in d))
    return "\n".join(lines) + "\n"
