"""Image and label-map types plus PNG / PPM / PGM I/O.

Conventions used everywhere in this package: row-major storage, origin at
the top-left corner, x grows rightward, y grows downward, and the flat
pixel index of (x, y) is ``y * width + x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError


class RasterError(Exception):
    """Raised for unreadable, unwritable or malformed raster files."""


class DimensionMismatchError(ValueError):
    """Two rasters that must share a shape do not."""


@dataclass(frozen=True)
class RasterImage:
    """An RGB image; ``pixels`` has shape (height, width, 3), dtype uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.uint8)
        if p.ndim != 3 or p.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) pixel array, got {p.shape}")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("zero-dimension image")
        object.__setattr__(self, "pixels", p)
        p.setflags(write=False)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def num_pixels(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class LabelMap:
    """Per-pixel class ids in {0, ..., num_classes}; 0 is the void label.

    A seed mask may contain zeros; a final segmentation must not.
    """

    labels: np.ndarray
    num_classes: int = field(default=-1)

    def __post_init__(self):
        lab = np.asarray(self.labels)
        if lab.ndim != 2:
            raise ValueError(f"expected (H, W) label array, got {lab.shape}")
        if lab.size == 0:
            raise ValueError("zero-dimension label map")
        if np.any(lab < 0):
            raise ValueError("negative label")
        lab = lab.astype(np.int32, copy=True)
        k = self.num_classes
        if k < 0:
            k = int(lab.max(initial=0))
        elif int(lab.max(initial=0)) > k:
            raise ValueError("label exceeds num_classes")
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "num_classes", k)
        lab.setflags(write=False)

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def is_total(self) -> bool:
        """True when no pixel carries the void label."""
        return not bool((self.labels == 0).any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabelMap):
            return NotImplemented
        return (
            self.num_classes == other.num_classes
            and self.labels.shape == other.labels.shape
            and bool(np.array_equal(self.labels, other.labels))
        )


def _open(path) -> Image.Image:
    try:
        img = Image.open(path)
        img.load()
    except (OSError, UnidentifiedImageError, SyntaxError, ValueError) as exc:
        raise RasterError(f"unreadable file: {path}: {exc}") from exc
    return img


def load_image(path) -> RasterImage:
    """Decode a PNG or PPM/PGM file into an RGB image.

    Grayscale inputs are replicated across channels; no other color-space
    conversion is applied.
    """
    img = _open(path)
    if img.mode == "RGB":
        arr = np.asarray(img, dtype=np.uint8)
    elif img.mode in ("L", "I;16", "1"):
        arr = np.asarray(img.convert("L"), dtype=np.uint8)
        arr = np.repeat(arr[:, :, None], 3, axis=2)
    elif img.mode in ("RGBA", "P"):
        arr = np.asarray(img.convert("RGB"), dtype=np.uint8)
    else:
        raise RasterError(f"unsupported format: mode {img.mode}")
    return RasterImage(arr)


def load_label_map(path) -> LabelMap:
    """Read an 8-bit single-channel raster as a label map (gray value = class id)."""
    img = _open(path)
    if img.mode == "P":
        arr = np.asarray(img, dtype=np.int32)  # palette indices are the ids
    elif img.mode == "L":
        arr = np.asarray(img, dtype=np.int32)
    else:
        raise RasterError(f"multi-channel input: mode {img.mode}")
    return LabelMap(arr)


def save_label_map(label_map: LabelMap, path, palette=None) -> None:
    """Write a label map as an 8-bit gray (or palette-indexed) raster.

    With ``palette`` (a sequence of (r, g, b)), the output is an indexed PNG
    whose entry i colors class i; without it, the gray value is the class id.
    Round-trips bit-exactly through :func:`load_label_map` for K <= 255.
    """
    if label_map.num_classes > 255:
        raise ValueError("label maps with more than 255 classes cannot be saved as 8-bit")
    arr = label_map.labels.astype(np.uint8)
    img = Image.fromarray(arr, mode="L")
    if palette is not None:
        img = img.convert("P")
        flat = []
        for rgb in palette:
            flat.extend(int(v) for v in rgb)
        flat.extend([0] * (768 - len(flat)))
        img.putpalette(flat)
    path = Path(path)
    try:
        img.save(path)
    except (OSError, ValueError, KeyError) as exc:
        raise RasterError(f"cannot write {path}: {exc}") from exc


def save_image(image_or_array, path) -> None:
    """Write an RGB image (RasterImage or (H, W, 3) uint8 array) to disk."""
    arr = image_or_array.pixels if isinstance(image_or_array, RasterImage) else np.asarray(image_or_array, dtype=np.uint8)
    try:
        Image.fromarray(arr, mode="RGB").save(Path(path))
    except (OSError, ValueError, KeyError) as exc:
        raise RasterError(f"cannot write {path}: {exc}") from exc


def check_same_shape(a, b) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
