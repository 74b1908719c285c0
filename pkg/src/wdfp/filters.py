"""Locally adaptive Wiener-like shrinkage and Fourier-domain filtering.

The shrinkage estimates the local signal variance of each coefficient as
the windowed mean of squared values minus an assumed noise variance,
clamped at zero, taking the minimum over several window sizes. Each
coefficient is then scaled by variance / (variance + noise variance), so
coefficients in noise-dominated regions shrink toward zero and strongly
structured regions pass through.

The same estimator drives the Fourier-domain Wiener step: there the
"signal" grid is the DFT magnitude (scaled by 1/sqrt(MN) so that its
squared values live on the image energy scale), and the noise power
defaults to the sample variance of the input plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import uniform_filter

from .errors import DimensionMismatchError, WindowTooLargeError

DEFAULT_SIGMA_N2 = 3.24  # 1.8^2
DEFAULT_WINDOW_SIDES = (3, 5, 7, 9)


@dataclass(frozen=True)
class FilterConfig:
    """Noise variance and window sides for the local variance estimator.

    ``fourier_noise_power`` overrides the Fourier-domain noise power S_n;
    when None it is taken as the sample variance of the filtered plane.
    """

    sigma_n2: float = DEFAULT_SIGMA_N2
    window_sides: tuple[int, ...] = DEFAULT_WINDOW_SIDES
    fourier_noise_power: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.sigma_n2) or self.sigma_n2 <= 0:
            raise ValueError(f"sigma_n2 must be finite and positive, got {self.sigma_n2}")
        if not self.window_sides:
            raise ValueError("window_sides must not be empty")
        for s in self.window_sides:
            if s < 3 or s % 2 == 0:
                raise ValueError(f"window sides must be odd and >= 3, got {s}")

    def with_noise(self, sigma_n2: float) -> "FilterConfig":
        return FilterConfig(
            sigma_n2=sigma_n2,
            window_sides=self.window_sides,
            fourier_noise_power=self.fourier_noise_power,
        )


def _variance_min(energy: np.ndarray, cfg: FilterConfig) -> np.ndarray:
    """Minimum-over-windows local variance of a squared-signal grid.

    Windowed means use symmetric (edge-repeat) extension at borders.
    """
    if min(energy.shape) < max(cfg.window_sides):
        raise WindowTooLargeError(
            f"plane {energy.shape} smaller than largest window "
            f"{max(cfg.window_sides)}"
        )
    vmin = None
    for side in cfg.window_sides:
        v = uniform_filter(energy, size=side, mode="reflect") - cfg.sigma_n2
        np.maximum(v, 0.0, out=v)
        vmin = v if vmin is None else np.minimum(vmin, v, out=vmin)
    return vmin


def local_variance_min(sub: np.ndarray, cfg: FilterConfig) -> np.ndarray:
    """Per-pixel local variance estimate of a real subimage."""
    sub = np.asarray(sub, dtype=np.float64)
    return _variance_min(np.square(sub), cfg)


def wiener_shrink(sub: np.ndarray, vmap: np.ndarray, sigma_n2: float) -> np.ndarray:
    """Scale each coefficient by variance / (variance + noise variance)."""
    if sub.shape != vmap.shape:
        raise DimensionMismatchError(
            f"subimage {sub.shape} vs variance map {vmap.shape}"
        )
    return sub * (vmap / (vmap + sigma_n2))


def mihcak_filter(sub: np.ndarray, cfg: FilterConfig) -> np.ndarray:
    """Locally adaptive shrinkage of a real coefficient subimage."""
    sub = np.asarray(sub, dtype=np.float64)
    return wiener_shrink(sub, _variance_min(np.square(sub), cfg), cfg.sigma_n2)


def mihcak_filter_complex(sub: np.ndarray, cfg: FilterConfig) -> np.ndarray:
    """Shrinkage of a complex subimage driven by coefficient magnitudes.

    The variance map comes from |w|^2 and the resulting real factor
    multiplies each complex coefficient, so phases are untouched.
    """
    sub = np.asarray(sub, dtype=np.complex128)
    vmap = _variance_min((sub.real * sub.real + sub.imag * sub.imag), cfg)
    return sub * (vmap / (vmap + cfg.sigma_n2))


def _fourier_gain(freq: np.ndarray, cfg: FilterConfig, noise_power: float) -> np.ndarray:
    # noise_power > 0 guaranteed by callers, so the denominator never vanishes.
    mag = np.abs(freq) / np.sqrt(freq.size)
    s_hat = _variance_min(np.square(mag), cfg.with_noise(noise_power))
    return s_hat / (s_hat + noise_power)


def _fourier_noise_power(sub: np.ndarray, cfg: FilterConfig) -> float:
    if cfg.fourier_noise_power is not None:
        return float(cfg.fourier_noise_power)
    return float(np.var(sub, ddof=1).real)


def fourier_wiener(sub: np.ndarray, cfg: FilterConfig) -> np.ndarray:
    """Adaptive Wiener attenuation of the 2-D DFT of a real plane.

    The local signal power spectrum is estimated on the (scaled) DFT
    magnitudes with the same minimum-over-windows rule as the wavelet
    shrinkage; each frequency is attenuated by S / (S + S_n) and the
    real part of the inverse DFT is returned.
    """
    sub = np.asarray(sub, dtype=np.float64)
    noise_power = _fourier_noise_power(sub, cfg)
    if noise_power <= 0.0:
        # Constant plane: no noise to separate, nothing passes the filter.
        return np.zeros_like(sub)
    freq = np.fft.fft2(sub)
    return np.fft.ifft2(freq * _fourier_gain(freq, cfg, noise_power)).real


def fourier_wiener_complex(sub: np.ndarray, cfg: FilterConfig) -> np.ndarray:
    """As :func:`fourier_wiener` for complex planes, without the real cast."""
    sub = np.asarray(sub, dtype=np.complex128)
    noise_power = _fourier_noise_power(sub, cfg)
    if noise_power <= 0.0:
        return np.zeros_like(sub)
    freq = np.fft.fft2(sub)
    return np.fft.ifft2(freq * _fourier_gain(freq, cfg, noise_power))


def zero_mean(plane: np.ndarray) -> np.ndarray:
    """Subtract each row's mean, then each resulting column's mean.

    Removes the linear row/column patterns that sensor readout circuitry
    superimposes on every image.
    """
    plane = np.asarray(plane, dtype=np.float64)
    out = plane - plane.mean(axis=1, keepdims=True)
    out -= out.mean(axis=0, keepdims=True)
    return out
