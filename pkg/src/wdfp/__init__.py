"""Wavelet-domain camera fingerprints.

Extraction pipelines for sensor pattern noise, in both the classical
image domain and the streamlined wavelet domain, plus cosine matching,
ROC threshold selection, a binary fingerprint store and a batch
experiment harness.
"""

from .dtcwt import DtcwtPyramid, dtcwt_forward, dtcwt_inverse
from .dwt import WaveletPyramid, dwt2_forward, dwt2_inverse
from .filters import (
    FilterConfig,
    fourier_wiener,
    fourier_wiener_complex,
    local_variance_min,
    mihcak_filter,
    mihcak_filter_complex,
    wiener_shrink,
    zero_mean,
)
from .harness import (
    DatasetManifest,
    MethodReport,
    RunReport,
    emit_roc_data,
    run_experiment,
    scan_dataset,
)
from .image_io import center_crop, load_image, to_grayscale
from .matcher import (
    RocCurve,
    ScoredPair,
    ThresholdReport,
    build_roc,
    cosine,
    threshold_at_tnr,
    threshold_report,
    youden_threshold,
)
from .pipelines import (
    ExtractConfig,
    ExtractionTiming,
    Fingerprint,
    Method,
    extract,
    extract_dtcwt_residual,
    extract_gray_wdlaw,
    extract_gray_wdlaw_dtcwt,
    extract_law,
    extract_law_dtcwt,
    extract_rgb_wdlaw,
    extract_wdlaw_gray,
    wd_fingerprint_length,
)
from .store import read_fingerprint, write_fingerprint

__version__ = "0.1.0"

__all__ = [
    "DatasetManifest",
    "DtcwtPyramid",
    "ExtractConfig",
    "ExtractionTiming",
    "FilterConfig",
    "Fingerprint",
    "Method",
    "MethodReport",
    "RocCurve",
    "RunReport",
    "ScoredPair",
    "ThresholdReport",
    "WaveletPyramid",
    "build_roc",
    "center_crop",
    "cosine",
    "dtcwt_forward",
    "dtcwt_inverse",
    "dwt2_forward",
    "dwt2_inverse",
    "emit_roc_data",
    "extract",
    "extract_dtcwt_residual",
    "extract_gray_wdlaw",
    "extract_gray_wdlaw_dtcwt",
    "extract_law",
    "extract_law_dtcwt",
    "extract_rgb_wdlaw",
    "extract_wdlaw_gray",
    "fourier_wiener",
    "fourier_wiener_complex",
    "load_image",
    "local_variance_min",
    "mihcak_filter",
    "mihcak_filter_complex",
    "read_fingerprint",
    "run_experiment",
    "scan_dataset",
    "threshold_at_tnr",
    "threshold_report",
    "to_grayscale",
    "wd_fingerprint_length",
    "wiener_shrink",
    "write_fingerprint",
    "youden_threshold",
    "zero_mean",
]
