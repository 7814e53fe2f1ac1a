"""Interactive segmentation session: seeds in, pixel-level class map out.

Superpixels and descriptors are computed once at session creation; every
update replays the seed state, retrains the classifier from scratch and
re-predicts, so the final segmentation is a pure function of
(image, params, stroke log).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import svm as svm_mod
from .descriptor import describe_all
from .oversegment import FhParams, SuperpixelMap, felzenszwalb_segment
from .raster import LabelMap, RasterImage
from .svm import SvmParams


class SeedingError(Exception):
    """Seeds are insufficient to train: fewer than two usable classes, or a
    seeded class with no unambiguous superpixel."""

    def __init__(self, message, missing_classes=()):
        super().__init__(message)
        self.missing_classes = tuple(missing_classes)


@dataclass(frozen=True)
class Stroke:
    class_id: int
    points: tuple  # ((x, y), ...)
    brush_radius: int = 0
    erase: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((int(x), int(y)) for x, y in self.points))
        if not self.erase and self.class_id < 1:
            raise ValueError("class_id must be >= 1 for a painting stroke")
        if self.brush_radius < 0:
            raise ValueError("brush_radius must be >= 0")


@dataclass
class SeedState:
    seed_labels: np.ndarray  # (H, W) int32, 0 = void
    stroke_log: list = field(default_factory=list)

    @property
    def num_classes(self) -> int:
        return int(self.seed_labels.max(initial=0))

    @property
    def seeded_classes(self) -> tuple:
        vals = np.unique(self.seed_labels)
        return tuple(int(v) for v in vals if v > 0)


@dataclass
class Session:
    image: RasterImage
    sp: SuperpixelMap
    descriptors: np.ndarray
    seeds: SeedState
    fh_params: FhParams
    svm_params: SvmParams
    model: svm_mod.SvmModel | None = None
    segmentation: LabelMap | None = None


def create_session(
    image: RasterImage,
    fh: FhParams = FhParams(),
    svm: SvmParams = SvmParams(),
) -> Session:
    sp = felzenszwalb_segment(image, fh)
    descriptors = describe_all(sp, image)
    seeds = SeedState(seed_labels=np.zeros((image.height, image.width), dtype=np.int32))
    return Session(image=image, sp=sp, descriptors=descriptors, seeds=seeds,
                   fh_params=fh, svm_params=svm)


def apply_stroke(session: Session, stroke: Stroke) -> None:
    """Paint a Euclidean disc of the stroke's class around every stroke point.

    Later strokes overwrite earlier labels; erase strokes paint the void label.
    """
    h, w = session.image.height, session.image.width
    for x, y in stroke.points:
        if not (0 <= x < w and 0 <= y < h):
            raise ValueError(f"stroke point ({x}, {y}) out of bounds for {w}x{h} image")
    value = 0 if stroke.erase else stroke.class_id
    r = stroke.brush_radius
    labels = session.seeds.seed_labels
    for x, y in stroke.points:
        x0, x1 = max(0, x - r), min(w - 1, x + r)
        y0, y1 = max(0, y - r), min(h - 1, y + r)
        yy, xx = np.mgrid[y0:y1 + 1, x0:x1 + 1]
        disc = (xx - x) ** 2 + (yy - y) ** 2 <= r * r
        labels[y0:y1 + 1, x0:x1 + 1][disc] = value
    session.seeds.stroke_log.append(stroke)
    session.model = None
    session.segmentation = None


def apply_seed_mask(session: Session, mask: LabelMap) -> None:
    """Replace the whole seed state with a precomputed seed mask."""
    if (mask.height, mask.width) != (session.image.height, session.image.width):
        raise ValueError("seed mask dimensions do not match the image")
    session.seeds.seed_labels = mask.labels.astype(np.int32).copy()
    session.seeds.stroke_log = []
    session.model = None
    session.segmentation = None


def build_training_sets(session: Session) -> dict:
    """Map class id -> superpixel ids containing only seeds of that class.

    A superpixel with seeds of two or more classes, or with no seeds, belongs
    to no training set and will be predicted.
    """
    seeds = session.seeds.seed_labels.ravel()
    assign = session.sp.assignment.ravel()
    seeded = seeds > 0
    pairs = np.unique(np.stack([assign[seeded], seeds[seeded]], axis=1), axis=0)
    if pairs.size == 0:
        return {}
    sp_ids, class_counts = np.unique(pairs[:, 0], return_counts=True)
    pure_ids = set(sp_ids[class_counts == 1].tolist())
    result: dict = {}
    for sp_id, cls in pairs:
        if int(sp_id) in pure_ids:
            result.setdefault(int(cls), []).append(int(sp_id))
    return result


def segment(session: Session) -> LabelMap:
    """Train on unambiguously seeded superpixels, predict the rest, and
    expand superpixel classes to pixels."""
    training = build_training_sets(session)
    seeded = session.seeds.seeded_classes
    usable = sorted(c for c, ids in training.items() if ids)
    if len(seeded) < 2:
        raise SeedingError("<2 classes seeded")
    missing = [c for c in seeded if c not in usable]
    if missing:
        raise SeedingError(
            f"class(es) {missing} have seeds but no unambiguous superpixel",
            missing_classes=missing,
        )

    train_ids = []
    train_labels = []
    for cls in usable:
        for sp_id in training[cls]:
            train_ids.append(sp_id)
            train_labels.append(cls)
    train_ids = np.asarray(train_ids)
    train_labels = np.asarray(train_labels)

    model = svm_mod.train(session.descriptors[train_ids], train_labels, session.svm_params)

    sp_class = np.zeros(session.sp.num_superpixels, dtype=np.int32)
    sp_class[train_ids] = train_labels
    rest = np.flatnonzero(sp_class == 0)
    if rest.size:
        sp_class[rest] = svm_mod.predict_many(model, session.descriptors[rest])

    labels = sp_class[session.sp.assignment]
    result = LabelMap(labels)
    session.model = model
    session.segmentation = result
    return result


def update(session: Session, strokes) -> LabelMap:
    """Apply strokes in order, then recompute the segmentation."""
    for stroke in strokes:
        apply_stroke(session, stroke)
    return segment(session)
