"""Independent brute-force implementations used as test oracles.

Nothing here may call into the package's computation paths: transforms
are dense matrix applications, window statistics are per-pixel loops,
DFTs are direct summations, and ROC statistics use exact rational
arithmetic. Slow on purpose; only run on small inputs.
"""

from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------- DWT

def dwt_analysis_matrix(n: int, lo, hi) -> np.ndarray:
    """One-level periodized analysis matrix; rows are filter shifts."""
    T = np.zeros((n, n))
    half = n // 2
    for k in range(half):
        for t in range(len(lo)):
            col = (2 * k + t) % n
            T[k, col] += lo[t]
            T[half + k, col] += hi[t]
    return T


def dwt2_oracle(plane: np.ndarray, levels: int, lo, hi):
    """Multilevel 2-D DWT by dense matrix application (square planes)."""
    details = []
    current = plane
    for _ in range(levels):
        n = current.shape[0]
        T = dwt_analysis_matrix(n, lo, hi)
        C = T @ current @ T.T
        half = n // 2
        details.append((C[:half, half:], C[half:, :half], C[half:, half:]))
        current = C[:half, :half]
    return current, details


# ------------------------------------------------- windowed variance

def local_variance_min_oracle(sub, sigma_n2, window_sides):
    """Per-pixel loop over symmetric-padded windows, min across sizes."""
    h, w = sub.shape
    result = np.full((h, w), np.inf)
    for side in window_sides:
        pad = side // 2
        padded = np.pad(sub, pad, mode="symmetric")
        for i in range(h):
            for j in range(w):
                window = padded[i : i + side, j : j + side]
                est = max(0.0, float(np.mean(window * window)) - sigma_n2)
                result[i, j] = min(result[i, j], est)
    return result


def mihcak_oracle(sub, sigma_n2, window_sides):
    """Shrinkage per the variance equation, one pixel at a time."""
    vmap = local_variance_min_oracle(sub, sigma_n2, window_sides)
    h, w = sub.shape
    out = np.empty((h, w))
    for i in range(h):
        for j in range(w):
            v = vmap[i, j]
            out[i, j] = sub[i, j] * v / (v + sigma_n2)
    return out


# ------------------------------------------------------- Fourier side

def dft2_oracle(x: np.ndarray) -> np.ndarray:
    """Unnormalized forward DFT by direct summation over the image."""
    m, n = x.shape
    n1, n2 = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    out = np.empty((m, n), dtype=complex)
    for k1 in range(m):
        for k2 in range(n):
            phase = np.exp(-2j * np.pi * (k1 * n1 / m + k2 * n2 / n))
            out[k1, k2] = np.sum(x * phase)
    return out


def idft2_oracle(freq: np.ndarray) -> np.ndarray:
    """Inverse DFT with the 1/(MN) convention, direct summation."""
    m, n = freq.shape
    k1g, k2g = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    out = np.empty((m, n), dtype=complex)
    for n1 in range(m):
        for n2 in range(n):
            phase = np.exp(2j * np.pi * (n1 * k1g / m + n2 * k2g / n))
            out[n1, n2] = np.sum(freq * phase) / (m * n)
    return out


def fourier_wiener_oracle(x, window_sides, noise_power=None, truncate_real=True):
    """Direct-summation Wiener filtering in the Fourier domain.

    Mirrors the documented convention: the local power spectrum is
    estimated on DFT magnitudes scaled by 1/sqrt(MN), the noise power
    defaults to the sample variance of the plane, and each frequency is
    attenuated by S / (S + S_n).
    """
    x = np.asarray(x)
    if noise_power is None:
        noise_power = float(np.var(x, ddof=1).real)
    freq = dft2_oracle(x.astype(complex)) if np.iscomplexobj(x) else dft2_oracle(x)
    mag = np.abs(freq) / np.sqrt(x.size)
    s_hat = local_variance_min_oracle(mag, noise_power, window_sides)
    gain = s_hat / (s_hat + noise_power)
    out = idft2_oracle(freq * gain)
    return out.real if truncate_real else out


# --------------------------------------------------------- ROC side

def auc_oracle(pos, neg) -> Fraction:
    """Pairwise concordance count with half credit for ties."""
    num = 0
    for p in pos:
        for q in neg:
            if p > q:
                num += 2
            elif p == q:
                num += 1
    return Fraction(num, 2 * len(pos) * len(neg))


def roc_counts_oracle(pos, neg, lam):
    tp = sum(1 for s in pos if s >= lam)
    fp = sum(1 for s in neg if s >= lam)
    return tp, fp


def youden_oracle(pos, neg):
    """Exhaustive Youden search over distinct score values, exact J.

    Ties prefer the higher TPR, then the smaller threshold.
    """
    n_pos, n_neg = len(pos), len(neg)
    best = None
    for lam in sorted(set(pos) | set(neg)):
        tp, fp = roc_counts_oracle(pos, neg, lam)
        j = Fraction(tp, n_pos) - Fraction(fp, n_neg)
        key = (j, Fraction(tp, n_pos))
        if best is None or key > best[0]:
            best = (key, lam, tp, fp)
    _, lam, tp, fp = best
    return lam, Fraction(tp, n_pos), 1 - Fraction(fp, n_neg)


def tnr_threshold_oracle(pos, neg, target):
    """Smallest swept threshold (score values, then +inf) with TNR >= target."""
    n_pos, n_neg = len(pos), len(neg)
    target = Fraction(target)
    for lam in sorted(set(pos) | set(neg)) + [np.inf]:
        tp, fp = roc_counts_oracle(pos, neg, lam)
        if 1 - Fraction(fp, n_neg) >= target:
            return lam, Fraction(tp, n_pos), 1 - Fraction(fp, n_neg)
    raise AssertionError("unreachable")
