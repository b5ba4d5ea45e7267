"""Zero-shot inference, evaluation protocols and similarity-map export."""
from .inference import attribute_scores, classify, classify_scores, squared_distances
from .metrics import (
    DETECTION_THRESHOLD,
    AttributeMetrics,
    ClassResult,
    EvalReport,
    attribute_metrics,
    attribute_metrics_from_scores,
    evaluate,
    select_samples,
)
from .similarity_maps import (
    MapIndexEntry,
    encode_pgm,
    export_similarity_maps,
    high_band_hit_rate,
    normalize_map,
    upsample_nearest,
)

__all__ = [
    "DETECTION_THRESHOLD",
    "AttributeMetrics",
    "ClassResult",
    "EvalReport",
    "MapIndexEntry",
    "attribute_metrics",
    "attribute_metrics_from_scores",
    "attribute_scores",
    "classify",
    "classify_scores",
    "encode_pgm",
    "evaluate",
    "export_similarity_maps",
    "high_band_hit_rate",
    "normalize_map",
    "select_samples",
    "squared_distances",
    "upsample_nearest",
]
