"""Segmentation quality measures and a directory-based benchmark harness.

All measures return percentages in [0, 100] and equal 100 on identical maps.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.ndimage import distance_transform_edt

from .oversegment import FhParams
from .raster import LabelMap, RasterImage, check_same_shape, load_image, load_label_map
from .session import SeedingError, apply_seed_mask, create_session, segment as run_segment
from .svm import SvmParams

REPORT_HEADER = ["image", "gt", "acc", "boundary", "object", "dice", "seed_pixels", "ms"]


@dataclass(frozen=True)
class FuzzyBorder:
    """Per-pixel border membership in [0, 1]; 1 on the border itself,
    ramping linearly to 0 with Euclidean distance."""

    membership: np.ndarray

    @property
    def width(self) -> int:
        return self.membership.shape[1]

    @property
    def height(self) -> int:
        return self.membership.shape[0]


def _require_total(m: LabelMap, name: str) -> None:
    if not m.is_total:
        raise ValueError(f"{name} contains void labels")


def accuracy(result: LabelMap, gt: LabelMap) -> float:
    """Percentage of pixels whose class matches the ground truth."""
    check_same_shape(result, gt)
    _require_total(result, "result")
    _require_total(gt, "ground truth")
    agree = int((result.labels == gt.labels).sum())
    return 100.0 * agree / result.labels.size


def internal_border(label_map: LabelMap) -> np.ndarray:
    """Boolean mask of pixels with a 4-neighbor of a different label."""
    _require_total(label_map, "map")
    lab = label_map.labels
    border = np.zeros(lab.shape, dtype=bool)
    diff_h = lab[:, :-1] != lab[:, 1:]
    diff_v = lab[:-1, :] != lab[1:, :]
    border[:, :-1] |= diff_h
    border[:, 1:] |= diff_h
    border[:-1, :] |= diff_v
    border[1:, :] |= diff_v
    return border


def fuzzify(border: np.ndarray, radius: int) -> FuzzyBorder:
    """Linear ramp membership max(0, 1 - d/(radius+1)) from the crisp set."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    border = np.asarray(border, dtype=bool)
    if not border.any():
        return FuzzyBorder(np.zeros(border.shape, dtype=np.float64))
    dist = distance_transform_edt(~border)
    membership = np.maximum(0.0, 1.0 - dist / (radius + 1))
    return FuzzyBorder(membership)


def boundary_accuracy(result: LabelMap, gt: LabelMap, radius: int = 4) -> float:
    """Fuzzy border overlap: 100 * sum(min) / sum(max) of the two fuzzified
    border memberships. Both maps uniform (no borders) counts as 100."""
    check_same_shape(result, gt)
    bg = fuzzify(internal_border(gt), radius).membership
    bm = fuzzify(internal_border(result), radius).membership
    denom = float(np.maximum(bg, bm).sum())
    if denom == 0:
        return 100.0
    return 100.0 * (float(np.minimum(bg, bm).sum()) / denom)


def object_accuracy(result: LabelMap, gt: LabelMap, object_class: int) -> float:
    """Jaccard index (x100) of the object-class pixel sets."""
    check_same_shape(result, gt)
    ro = result.labels == object_class
    go = gt.labels == object_class
    union = int((ro | go).sum())
    if union == 0:
        return 100.0
    return 100.0 * int((ro & go).sum()) / union


def dice(result: LabelMap, gt: LabelMap) -> float:
    """Per-class Dice 2|R∩G|/(|R|+|G|), averaged over the classes present
    in either map; a class absent from both contributes 100."""
    check_same_shape(result, gt)
    _require_total(result, "result")
    _require_total(gt, "ground truth")
    classes = range(1, max(result.num_classes, gt.num_classes) + 1)
    scores = []
    for c in classes:
        r = result.labels == c
        g = gt.labels == c
        denom = int(r.sum()) + int(g.sum())
        if denom == 0:
            scores.append(100.0)
        else:
            scores.append(100.0 * 2 * int((r & g).sum()) / denom)
    return float(np.mean(scores))


def dice_literal(result: LabelMap, gt: LabelMap) -> float:
    """Unaveraged variant with a union denominator: 100 * sum over classes of
    2|R∩G|/|R∪G|. Kept for auditability next to :func:`dice`."""
    check_same_shape(result, gt)
    classes = sorted(set(np.unique(gt.labels)) | set(np.unique(result.labels)))
    total = 0.0
    for c in classes:
        r = result.labels == c
        g = gt.labels == c
        union = int((r | g).sum())
        if union:
            total += 2 * int((r & g).sum()) / union
    return 100.0 * total


# ---------------------------------------------------------------------------
# Benchmark harness

@dataclass
class BenchRow:
    image: str
    gt: str
    acc: float
    boundary: float
    object: float | None
    dice: float
    seed_pixels: int
    ms: float


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def means(self) -> dict:
        out = {}
        for col in ("acc", "boundary", "dice", "seed_pixels", "ms"):
            vals = [getattr(r, col) for r in self.rows]
            out[col] = float(np.mean(vals)) if vals else 0.0
        objs = [r.object for r in self.rows if r.object is not None]
        out["object"] = float(np.mean(objs)) if objs else None
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_HEADER)

        def fmt(v):
            return "" if v is None else (format(v, ".6f") if isinstance(v, float) else str(v))

        for r in self.rows:
            writer.writerow([r.image, r.gt, fmt(r.acc), fmt(r.boundary),
                             fmt(r.object), fmt(r.dice), r.seed_pixels, fmt(r.ms)])
        m = self.means()
        writer.writerow(["MEAN", "", fmt(m["acc"]), fmt(m["boundary"]),
                         fmt(m["object"]), fmt(m["dice"]),
                         fmt(m["seed_pixels"]), fmt(m["ms"])])
        return buf.getvalue()


def run_benchmark(
    dataset_dir,
    seeds_dir,
    fh: FhParams = FhParams(),
    svm: SvmParams = SvmParams(),
    radius: int = 4,
) -> BenchReport:
    """Run the one-shot pipeline on every (image, ground truth, seed mask)
    triple and collect all measures.

    Layout: ``images/<id>.png``, ``gt/<id>_<g>.png`` under ``dataset_dir``
    and ``seeds/<id>_<g>.png`` under ``seeds_dir``. Problems with individual
    triples become warnings, not failures.
    """
    dataset_dir = Path(dataset_dir)
    seeds_dir = Path(seeds_dir)
    report = BenchReport()
    gt_dir = dataset_dir / "gt"
    if not gt_dir.is_dir():
        return report

    for gt_path in sorted(gt_dir.glob("*.png")):
        stem = gt_path.stem
        if "_" not in stem:
            report.warnings.append(f"{gt_path.name}: expected <image>_<gt> name")
            continue
        image_id, gt_id = stem.rsplit("_", 1)
        image_path = dataset_dir / "images" / f"{image_id}.png"
        seed_path = seeds_dir / "seeds" / gt_path.name
        if not seed_path.exists():
            seed_path = seeds_dir / gt_path.name
        try:
            image = load_image(image_path)
            gt = load_label_map(gt_path)
            seed_mask = load_label_map(seed_path)
        except OSError as exc:
            report.warnings.append(f"{stem}: {exc}")
            continue
        except Exception as exc:  # unreadable / malformed entries are per-row issues
            report.warnings.append(f"{stem}: {exc}")
            continue

        try:
            start = time.perf_counter()
            session = create_session(image, fh, svm)
            apply_seed_mask(session, seed_mask)
            result = run_segment(session)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
        except SeedingError as exc:
            report.warnings.append(f"{stem}: {exc}")
            continue

        obj = None
        gt_classes = [int(c) for c in np.unique(gt.labels) if c > 0]
        if len(gt_classes) == 2:
            obj = object_accuracy(result, gt, object_class=max(gt_classes))
        report.rows.append(BenchRow(
            image=image_id,
            gt=gt_id,
            acc=accuracy(result, gt),
            boundary=boundary_accuracy(result, gt, radius),
            object=obj,
            dice=dice(result, gt),
            seed_pixels=int((seed_mask.labels > 0).sum()),
            ms=elapsed_ms,
        ))
    return report
