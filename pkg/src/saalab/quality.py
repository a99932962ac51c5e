"""PSNR and SSIM for 8-bit grayscale images."""

from __future__ import annotations

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .pgm import GrayImage

PEAK = 255.0
WINDOW = 11
SIGMA = 1.5
K1, K2 = 0.01, 0.03


def _pair(reference: GrayImage, target: GrayImage):
    a = reference.pixels.astype(np.float64)
    b = target.pixels.astype(np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    return a, b


def mse(reference: GrayImage, target: GrayImage) -> float:
    a, b = _pair(reference, target)
    return float(np.mean((a - b) ** 2))


def psnr(reference: GrayImage, target: GrayImage) -> float:
    """``10 log10(255^2 / MSE)`` in dB; ``inf`` for identical images."""
    m = mse(reference, target)
    if m == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / m)


def gaussian_window(size: int = WINDOW, sigma: float = SIGMA) -> np.ndarray:
    x = np.arange(size) - (size - 1) / 2
    g = np.exp(-(x**2) / (2 * sigma**2))
    return g / g.sum()


def _filter_valid(img: np.ndarray, g: np.ndarray) -> np.ndarray:
    # separable Gaussian over every fully-contained window
    rows = sliding_window_view(img, g.size, axis=1) @ g
    return sliding_window_view(rows, g.size, axis=0) @ g


def ssim_map(reference: GrayImage, target: GrayImage) -> np.ndarray:
    a, b = _pair(reference, target)
    if min(a.shape) < WINDOW:
        raise ValueError(f"images must be at least {WINDOW}x{WINDOW} for SSIM")
    g = gaussian_window()
    c1 = (K1 * PEAK) ** 2
    c2 = (K2 * PEAK) ** 2
    mu_a = _filter_valid(a, g)
    mu_b = _filter_valid(b, g)
    var_a = _filter_valid(a * a, g) - mu_a**2
    var_b = _filter_valid(b * b, g) - mu_b**2
    cov = _filter_valid(a * b, g) - mu_a * mu_b
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2)
    return num / den


def ssim(reference: GrayImage, target: GrayImage) -> float:
    """Mean SSIM over all 11x11 Gaussian-weighted (sigma 1.5) windows."""
    if reference == target:
        return 1.0
    return float(np.mean(ssim_map(reference, target)))
