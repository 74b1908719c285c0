"""Separable 2-D discrete wavelet transform with periodized boundaries.

The transform is strictly orthonormal: subbands at level j are exactly
(m / 2^j) per side, the total coefficient count equals the pixel count,
and coefficient energy equals pixel energy to float64 precision. That
exactness is what lets cosine similarity be computed on coefficient
vectors instead of reconstructed images.

Analysis convention, per axis of length N (even):

    a[k] = sum_n h[n] * x[(2k + n) mod N]
    d[k] = sum_n g[n] * x[(2k + n) mod N]

with g[n] = (-1)^n h[L-1-n]. The inverse is the adjoint (the matrix is
orthonormal, so transpose = inverse).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadDimensionsError, InconsistentPyramidError, UnknownWaveletError

# Daubechies-4 scaling coefficients (8 taps, orthonormal, sum = sqrt(2)).
_DB4_LO = np.array(
    [
        0.23037781330885523,
        0.7148465705525415,
        0.6308807679295904,
        -0.02798376941698385,
        -0.18703481171888114,
        0.030841381835986965,
        0.032883011666982945,
        -0.010597401784997278,
    ]
)


def _qmf(lo: np.ndarray) -> np.ndarray:
    """Quadrature-mirror highpass: g[n] = (-1)^n h[L-1-n]."""
    g = lo[::-1].copy()
    g[1::2] *= -1.0
    return g


_FILTER_BANKS = {"db4": (_DB4_LO, _qmf(_DB4_LO))}


def filter_bank(wavelet: str) -> tuple[np.ndarray, np.ndarray]:
    """Resolve a wavelet identifier to its (lowpass, highpass) analysis pair."""
    try:
        return _FILTER_BANKS[wavelet]
    except KeyError:
        raise UnknownWaveletError(
            f"unknown wavelet {wavelet!r}; known: {sorted(_FILTER_BANKS)}"
        ) from None


@dataclass
class WaveletPyramid:
    """Multilevel DWT coefficient set.

    ``details[j]`` holds the (cH, cV, cD) subbands of level j+1, finest
    first; each is (m / 2^(j+1)) per side. ``approx`` is the level-J
    lowpass. cH is lowpass along axis 0 / highpass along axis 1.
    """

    levels: int
    shape: tuple[int, int]
    wavelet: str
    approx: np.ndarray
    details: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = field(default_factory=list)

    def detail_vector(self) -> np.ndarray:
        """Concatenate all detail subbands, level 1..J, cH/cV/cD row-major."""
        return np.concatenate(
            [band.ravel() for level in self.details for band in level]
        )

    def zeroed_approx(self) -> "WaveletPyramid":
        """Copy of the pyramid with the approximation subband set to zero."""
        return WaveletPyramid(
            levels=self.levels,
            shape=self.shape,
            wavelet=self.wavelet,
            approx=np.zeros_like(self.approx),
            details=self.details,
        )


def _analyze_axis0(x: np.ndarray, h: np.ndarray, g: np.ndarray):
    """One periodized analysis step along axis 0: returns (approx, detail)."""
    n = x.shape[0]
    taps = len(h)
    xp = np.concatenate([x, x[: taps - 1]], axis=0)
    lo = np.zeros((n // 2,) + x.shape[1:])
    hi = np.zeros_like(lo)
    for t in range(taps):
        sl = xp[t : t + n : 2]
        lo += h[t] * sl
        hi += g[t] * sl
    return lo, hi


def _synthesize_axis0(lo: np.ndarray, hi: np.ndarray, h: np.ndarray, g: np.ndarray):
    """Adjoint of _analyze_axis0: periodized upsample-and-filter, summed."""
    n = 2 * lo.shape[0]
    taps = len(h)
    out = np.zeros((n,) + lo.shape[1:])
    up = np.zeros_like(out)
    for coeffs, filt in ((lo, h), (hi, g)):
        up[...] = 0.0
        up[0::2] = coeffs
        upp = np.concatenate([up[n - (taps - 1) :], up], axis=0)
        for t in range(taps):
            out += filt[t] * upp[taps - 1 - t : taps - 1 - t + n]
    return out


def _dwt2_level(plane: np.ndarray, h: np.ndarray, g: np.ndarray):
    lo0, hi0 = _analyze_axis0(plane, h, g)
    ca, ch = _analyze_axis0(lo0.T, h, g)
    cv, cd = _analyze_axis0(hi0.T, h, g)
    return ca.T, ch.T, cv.T, cd.T


def _idwt2_level(ca, ch, cv, cd, h, g):
    lo0 = _synthesize_axis0(ca.T, ch.T, h, g).T
    hi0 = _synthesize_axis0(cv.T, cd.T, h, g).T
    return _synthesize_axis0(lo0, hi0, h, g)


def dwt2_forward(plane: np.ndarray, levels: int, wavelet: str = "db4") -> WaveletPyramid:
    """Multilevel forward 2-D DWT.

    Both plane dimensions must be divisible by 2^levels so every subband
    is an exact decimation; violations raise BadDimensionsError.
    """
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    h, g = filter_bank(wavelet)
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2:
        raise BadDimensionsError(f"expected a 2-D plane, got shape {plane.shape}")
    rows, cols = plane.shape
    div = 1 << levels
    if rows % div or cols % div:
        raise BadDimensionsError(
            f"plane shape {plane.shape} not divisible by 2^{levels}"
        )
    details = []
    current = plane
    for _ in range(levels):
        ca, ch, cv, cd = _dwt2_level(current, h, g)
        details.append((ch, cv, cd))
        current = ca
    return WaveletPyramid(
        levels=levels, shape=plane.shape, wavelet=wavelet, approx=current, details=details
    )


def dwt2_inverse(pyramid: WaveletPyramid) -> np.ndarray:
    """Exact inverse of :func:`dwt2_forward`."""
    h, g = filter_bank(pyramid.wavelet)
    current = pyramid.approx
    for j in range(pyramid.levels - 1, -1, -1):
        ch, cv, cd = pyramid.details[j]
        if not (current.shape == ch.shape == cv.shape == cd.shape):
            raise InconsistentPyramidError(
                f"level {j + 1} subband shapes disagree: "
                f"{current.shape} vs {ch.shape}/{cv.shape}/{cd.shape}"
            )
        current = _idwt2_level(current, ch, cv, cd, h, g)
    if current.shape != pyramid.shape:
        raise InconsistentPyramidError(
            f"reconstruction shape {current.shape} != declared {pyramid.shape}"
        )
    return current
