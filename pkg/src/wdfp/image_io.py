"""Image decoding, center cropping and luminance conversion.

Images are carried as plain numpy arrays: an RGB image is an (H, W, 3)
float64 array and a single plane is an (H, W) float64 array. Sample
values stay in the decoder's [0, 255] range; nothing here rescales to
[0, 1], so noise-variance parameters downstream keep their meaning.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CropTooLargeError, DecodeError

# Luminance weights for R, G, B.
GRAY_WEIGHTS = (0.299, 0.587, 0.114)


def load_image(path: str | os.PathLike) -> np.ndarray:
    """Decode a JPEG or PNG file into an (H, W, 3) float64 array.

    8-bit samples are promoted to float64 without rescaling, so values
    lie in [0, 255]. Grayscale and palette images are expanded to RGB.

    Raises FileNotFoundError for a missing path and DecodeError for a
    file that is not a decodable image.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such image file: {path}")
    try:
        with Image.open(path) as im:
            rgb = im.convert("RGB")
            arr = np.asarray(rgb, dtype=np.float64)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise DecodeError(f"cannot decode {path}: {exc}") from exc
    return arr


def center_crop(img: np.ndarray, size: int) -> np.ndarray:
    """Extract a centered size-by-size window.

    Works on (H, W) planes and (H, W, C) images. Odd remainders resolve
    by flooring the top-left offset.
    """
    if size <= 0:
        raise ValueError(f"crop size must be positive, got {size}")
    h, w = img.shape[0], img.shape[1]
    if size > h or size > w:
        raise CropTooLargeError(f"crop {size} exceeds image dimensions {h}x{w}")
    top = (h - size) // 2
    left = (w - size) // 2
    return img[top : top + size, left : left + size]


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """Combine R, G, B planes into one luminance plane.

    Uses the 0.299/0.587/0.114 linear combination in real arithmetic
    with no rounding and no gamma handling.
    """
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) image, got shape {img.shape}")
    return combine_channels(img[:, :, 0], img[:, :, 1], img[:, :, 2])


def combine_channels(r: np.ndarray, g: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Luminance-weight three equally shaped planes into one."""
    if r.shape != g.shape or g.shape != b.shape:
        raise ValueError("channel planes must share a shape")
    wr, wg, wb = GRAY_WEIGHTS
    return wr * r + wg * g + wb * b
