"""Seedable stochastic-process generators.

Power-law noise is synthesized by spectral shaping of uniform noise; the
fractional Gaussian family uses exact circulant embedding, so the sample
covariance matches the target law in distribution, not just asymptotically.
All generators are pure functions of (parameters, seed).
"""

from __future__ import annotations

import numpy as np


def powerlaw_noise(k: float, n: int, seed: int) -> np.ndarray:
    """Noise with a 1/f**k power spectrum, zero mean, unit variance.

    Uniform samples on (-0.5, 0.5) are Fourier transformed, every positive
    frequency is scaled by f**(-k/2), and the symmetrized spectrum is
    inverted. The DC coefficient is zeroed (the shaping factor diverges
    there), which also forces the zero mean.
    """
    if k < 0:
        raise ValueError("spectral exponent k must be >= 0")
    if n < 4:
        raise ValueError("n must be >= 4")
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-0.5, 0.5, n)
    spectrum = np.fft.rfft(raw)
    shape = np.zeros(spectrum.size)
    freqs = np.arange(1.0, spectrum.size)
    shape[1:] = freqs ** (-k / 2.0)
    x = np.fft.irfft(spectrum * shape, n)
    x -= x.mean()
    return x / x.std()


def fractional_gaussian_noise(hurst: float, n: int, seed: int) -> np.ndarray:
    """Stationary Gaussian sequence with the fractional-noise autocovariance.

    rho(j) = ((j+1)**2H - 2 j**2H + |j-1|**2H) / 2, unit variance at lag 0.
    Circulant embedding of the covariance is diagonalized by the FFT; its
    eigenvalues are nonnegative for every H in (0, 1), so the draw is exact.
    """
    if not 0.0 < hurst < 1.0:
        raise ValueError("hurst must be in (0,1)")
    if n < 2:
        raise ValueError("n must be >= 2")
    two_h = 2.0 * hurst
    lags = np.arange(n + 1, dtype=np.float64)
    rho = 0.5 * ((lags + 1.0) ** two_h - 2.0 * lags ** two_h + np.abs(lags - 1.0) ** two_h)
    row = np.concatenate([rho[:n], rho[n:n + 1], rho[n - 1:0:-1]])
    eig = np.fft.fft(row).real
    eig = np.clip(eig, 0.0, None)  # tiny negatives are FFT round-off
    m = 2 * n
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    return np.fft.ifft(np.sqrt(eig) * w).real[:n] * np.sqrt(m)


def fractional_brownian_motion(hurst: float, n: int, seed: int) -> np.ndarray:
    """Cumulative sum of fractional Gaussian noise, anchored at an implicit 0."""
    return np.cumsum(fractional_gaussian_noise(hurst, n, seed))
