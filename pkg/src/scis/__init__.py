"""Superpixel classification-based interactive multiclass image segmentation."""

from .descriptor import describe_all
from .oversegment import (
    FhParams,
    SlicParams,
    SuperpixelMap,
    felzenszwalb_segment,
    oversegmentation_error,
    slic_segment,
)
from .raster import (
    LabelMap,
    RasterImage,
    load_image,
    load_label_map,
    save_label_map,
)
from .session import (
    SeedingError,
    Session,
    Stroke,
    apply_seed_mask,
    apply_stroke,
    build_training_sets,
    create_session,
    segment,
    update,
)
from .svm import ConvergenceError, SvmModel, SvmParams, predict, rbf_kernel, train

__all__ = [
    "ConvergenceError",
    "FhParams",
    "LabelMap",
    "RasterImage",
    "SeedingError",
    "Session",
    "SlicParams",
    "Stroke",
    "SuperpixelMap",
    "SvmModel",
    "SvmParams",
    "apply_seed_mask",
    "apply_stroke",
    "build_training_sets",
    "create_session",
    "describe_all",
    "felzenszwalb_segment",
    "load_image",
    "load_label_map",
    "oversegmentation_error",
    "predict",
    "rbf_kernel",
    "save_label_map",
    "segment",
    "slic_segment",
    "train",
    "update",
]
