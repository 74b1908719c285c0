"""The eight end-to-end sensor-fingerprint extraction methods.

Image-domain methods (LAW, LAW-DTCWT, the DTCWT residual pair) produce a
fingerprint of m^2 values, one per pixel. Wavelet-domain methods skip
the inverse transform and concatenate filtered detail coefficients
directly: gray-WDLAW and WDLAW-gray yield l values, rgb-WDLAW 3l, and
gray-WDLAW-DTCWT 4l (2l complex coefficients embedded as real/imaginary
pairs), where

    l = sum_{j=1..J} 3 * (m / 2^j)^2.

Concatenation orders are fixed: levels fine-to-coarse, subbands cH, cV,
cD within a level (the six DTCWT bands in pyramid order), channels R, G,
B, each subimage flattened row-major. Cosine similarity is invariant to
any fixed ordering applied consistently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import dtcwt as dt
from . import dwt
from .errors import BadDimensionsError, NonSquareInputError
from .filters import (
    DEFAULT_SIGMA_N2,
    DEFAULT_WINDOW_SIDES,
    FilterConfig,
    fourier_wiener,
    fourier_wiener_complex,
    mihcak_filter,
    mihcak_filter_complex,
    zero_mean,
)
from .image_io import combine_channels, to_grayscale

DEFAULT_LEVELS = 4


class Method(enum.IntEnum):
    """Extraction methods, in wire-format order."""

    LAW = 0
    GRAY_WDLAW = 1
    RGB_WDLAW = 2
    WDLAW_GRAY = 3
    DTCWT_RES = 4
    DTCWT_RES_AR = 5
    LAW_DTCWT = 6
    GRAY_WDLAW_DTCWT = 7


# Filter-set identifiers for the store format.
WAVELET_IDS = {"db4": 0, dt.FILTER_SET: 1}

_DWT_METHODS = {Method.LAW, Method.GRAY_WDLAW, Method.RGB_WDLAW, Method.WDLAW_GRAY}


def wd_fingerprint_length(m: int, levels: int) -> int:
    """Coefficient count of a single-channel wavelet-domain fingerprint."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if m % (1 << levels):
        raise BadDimensionsError(f"side {m} not divisible by 2^{levels}")
    return sum(3 * (m >> j) ** 2 for j in range(1, levels + 1))


def expected_length(method: Method, m: int, levels: int) -> int:
    """Fingerprint length implied by method, image side and level count."""
    if method in (Method.LAW, Method.DTCWT_RES, Method.DTCWT_RES_AR, Method.LAW_DTCWT):
        return m * m
    length = wd_fingerprint_length(m, levels)
    if method == Method.RGB_WDLAW:
        return 3 * length
    if method == Method.GRAY_WDLAW_DTCWT:
        return 4 * length
    return length


@dataclass
class Fingerprint:
    """A flat fingerprint vector plus the parameters that shaped it."""

    method: Method
    values: np.ndarray
    m: int
    levels: int
    wavelet: str
    sigma_n2: float

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values).ravel()
        want = expected_length(self.method, self.m, self.levels)
        if self.values.size != want:
            raise BadDimensionsError(
                f"{self.method.name} fingerprint has {self.values.size} values, "
                f"expected {want} for m={self.m}, J={self.levels}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("fingerprint contains non-finite values")

    @property
    def length(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ExtractConfig:
    """Shared knobs of every extraction pipeline."""

    levels: int = DEFAULT_LEVELS
    wavelet: str = "db4"
    sigma_n2: float = DEFAULT_SIGMA_N2
    window_sides: tuple[int, ...] = DEFAULT_WINDOW_SIDES
    fourier_noise_power: float | None = None

    def filter_config(self) -> FilterConfig:
        return FilterConfig(
            sigma_n2=self.sigma_n2,
            window_sides=self.window_sides,
            fourier_noise_power=self.fourier_noise_power,
        )


@dataclass
class ExtractionTiming:
    """Wall-clock extraction cost of one image for one method."""

    method: Method
    seconds: float

    def __post_init__(self):
        if self.seconds < 0:
            raise ValueError("elapsed seconds cannot be negative")


def _check_square(img: np.ndarray, levels: int) -> int:
    if img.ndim != 3 or img.shape[2] != 3:
        raise BadDimensionsError(f"expected an (H, W, 3) image, got {img.shape}")
    h, w = img.shape[:2]
    if h != w:
        raise NonSquareInputError(f"extraction needs a square image, got {h}x{w}")
    if h % (1 << levels):
        raise BadDimensionsError(f"side {h} not divisible by 2^{levels}")
    return h


def _channels(img: np.ndarray):
    return img[:, :, 0], img[:, :, 1], img[:, :, 2]


def _fingerprint(method, values, m, cfg: ExtractConfig, wavelet=None) -> Fingerprint:
    return Fingerprint(
        method=method,
        values=values,
        m=m,
        levels=cfg.levels,
        wavelet=wavelet if wavelet is not None else cfg.wavelet,
        sigma_n2=cfg.sigma_n2,
    )


def _law_denoise_channel(plane: np.ndarray, cfg: ExtractConfig, fcfg: FilterConfig):
    """DWT, shrink all details, zero the approximation, invert."""
    pyr = dwt.dwt2_forward(plane, cfg.levels, cfg.wavelet)
    pyr.details = [
        tuple(mihcak_filter(band, fcfg) for band in level) for level in pyr.details
    ]
    return dwt.dwt2_inverse(pyr.zeroed_approx())


def extract_law(img: np.ndarray, cfg: ExtractConfig = ExtractConfig()) -> Fingerprint:
    """Image-domain baseline: per-channel wavelet filtering with zeroed
    approximation, luminance combination, zero-mean, Fourier Wiener."""
    m = _check_square(img, cfg.levels)
    fcfg = cfg.filter_config()
    filtered = [_law_denoise_channel(ch, cfg, fcfg) for ch in _channels(img)]
    plane = combine_channels(*filtered)
    plane = fourier_wiener(zero_mean(plane), fcfg)
    return _fingerprint(Method.LAW, plane, m, cfg)


def _wdlaw_filter_pyramid(plane: np.ndarray, cfg: ExtractConfig, fcfg: FilterConfig):
    """Algorithm core of the WDLAW family: per level, shrink each detail
    subband then Wiener-filter it in the Fourier domain. Returns the
    filtered (cH, cV, cD) triples, finest level first; cA is never used."""
    pyr = dwt.dwt2_forward(plane, cfg.levels, cfg.wavelet)
    return [
        tuple(fourier_wiener(mihcak_filter(band, fcfg), fcfg) for band in level)
        for level in pyr.details
    ]


def _concat_details(levels_list) -> np.ndarray:
    return np.concatenate([band.ravel() for level in levels_list for band in level])


def extract_gray_wdlaw(img: np.ndarray, cfg: ExtractConfig = ExtractConfig()) -> Fingerprint:
    """Wavelet-domain fingerprint of the grayscaled image (no inversion)."""
    m = _check_square(img, cfg.levels)
    details = _wdlaw_filter_pyramid(to_grayscale(img), cfg, cfg.filter_config())
    return _fingerprint(Method.GRAY_WDLAW, _concat_details(details), m, cfg)


def extract_rgb_wdlaw(img: np.ndarray, cfg: ExtractConfig = ExtractConfig()) -> Fingerprint:
    """Wavelet-domain fingerprint keeping all three channels, order R, G, B."""
    m = _check_square(img, cfg.levels)
    fcfg = cfg.filter_config()
    blocks = [
        _concat_details(_wdlaw_filter_pyramid(ch, cfg, fcfg)) for ch in _channels(img)
    ]
    return _fingerprint(Method.RGB_WDLAW, np.concatenate(blocks), m, cfg)


def extract_wdlaw_gray(img: np.ndarray, cfg: ExtractConfig = ExtractConfig()) -> Fingerprint:
    """Per-channel wavelet-domain filtering, then luminance combination of
    corresponding filtered subbands."""
    m = _check_square(img, cfg.levels)
    fcfg = cfg.filter_config()
    per_channel = [_wdlaw_filter_pyramid(ch, cfg, fcfg) for ch in _channels(img)]
    combined = [
        tuple(
            combine_channels(
                per_channel[0][j][b], per_channel[1][j][b], per_channel[2][j][b]
            )
            for b in range(3)
        )
        for j in range(cfg.levels)
    ]
    return _fingerprint(Method.WDLAW_GRAY, _concat_details(combined), m, cfg)


def _dtcwt_shrink(pyr: dt.DtcwtPyramid, fcfg: FilterConfig) -> None:
    for j, bands in enumerate(pyr.highpasses):
        filtered = np.empty_like(bands)
        for b in range(6):
            filtered[:, :, b] = mihcak_filter_complex(bands[:, :, b], fcfg)
        pyr.highpasses[j] = filtered


def extract_dtcwt_residual(
    img: np.ndarray,
    cfg: ExtractConfig = ExtractConfig(),
    artifact_removal: bool = False,
) -> Fingerprint:
    """Residual of the dual-tree denoiser (approximation retained).

    With ``artifact_removal`` the combined residual additionally passes
    zero-mean and Fourier Wiener before flattening.
    """
    m = _check_square(img, cfg.levels)
    fcfg = cfg.filter_config()
    residuals = []
    for ch in _channels(img):
        pyr = dt.dtcwt_forward(ch, cfg.levels)
        _dtcwt_shrink(pyr, fcfg)
        residuals.append(ch - dt.dtcwt_inverse(pyr))
    plane = combine_channels(*residuals)
    if artifact_removal:
        plane = fourier_wiener(zero_mean(plane), fcfg)
    method = Method.DTCWT_RES_AR if artifact_removal else Method.DTCWT_RES
    return _fingerprint(method, plane, m, cfg, wavelet=dt.FILTER_SET)


def extract_law_dtcwt(img: np.ndarray, cfg: ExtractConfig = ExtractConfig()) -> Fingerprint:
    """LAW pipeline with the dual-tree transform in place of the DWT."""
    m = _check_square(img, cfg.levels)
    fcfg = cfg.filter_config()
    filtered = []
    for ch in _channels(img):
        pyr = dt.dtcwt_forward(ch, cfg.levels)
        _dtcwt_shrink(pyr, fcfg)
        filtered.append(dt.dtcwt_inverse(pyr.zeroed_lowpass()))
    plane = combine_channels(*filtered)
    plane = fourier_wiener(zero_mean(plane), fcfg)
    return _fingerprint(Method.LAW_DTCWT, plane, m, cfg, wavelet=dt.FILTER_SET)


def extract_gray_wdlaw_dtcwt(
    img: np.ndarray, cfg: ExtractConfig = ExtractConfig()
) -> Fingerprint:
    """Wavelet-domain dual-tree fingerprint of the grayscaled image.

    Complex coefficients are embedded as interleaved (real, imaginary)
    pairs, band order per level as stored in the pyramid.
    """
    m = _check_square(img, cfg.levels)
    fcfg = cfg.filter_config()
    pyr = dt.dtcwt_forward(to_grayscale(img), cfg.levels)
    pieces = []
    for bands in pyr.highpasses:
        for b in range(6):
            coeffs = fourier_wiener_complex(
                mihcak_filter_complex(bands[:, :, b], fcfg), fcfg
            ).ravel()
            interleaved = np.empty(2 * coeffs.size)
            interleaved[0::2] = coeffs.real
            interleaved[1::2] = coeffs.imag
            pieces.append(interleaved)
    return _fingerprint(
        Method.GRAY_WDLAW_DTCWT, np.concatenate(pieces), m, cfg, wavelet=dt.FILTER_SET
    )


_EXTRACTORS = {
    Method.LAW: extract_law,
    Method.GRAY_WDLAW: extract_gray_wdlaw,
    Method.RGB_WDLAW: extract_rgb_wdlaw,
    Method.WDLAW_GRAY: extract_wdlaw_gray,
    Method.DTCWT_RES: lambda img, cfg: extract_dtcwt_residual(img, cfg, False),
    Method.DTCWT_RES_AR: lambda img, cfg: extract_dtcwt_residual(img, cfg, True),
    Method.LAW_DTCWT: extract_law_dtcwt,
    Method.GRAY_WDLAW_DTCWT: extract_gray_wdlaw_dtcwt,
}


def extract(method: Method, img: np.ndarray, cfg: ExtractConfig = ExtractConfig()) -> Fingerprint:
    """Run the extraction pipeline selected by ``method``."""
    return _EXTRACTORS[Method(method)](img, cfg)
