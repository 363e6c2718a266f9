"""Normalization of a fitted signal into a quasi-distribution, plus its stats.

The discretized fitted signal approximates a histogram distribution but
does not sum to exactly 1; rescaling by the adjustment factor
gamma = 1/sum makes it a quasi-distribution: PDF-like over day indices,
though spline undershoot may leave slightly negative cells (they are kept,
not clamped, and surfaced as diagnostics by the report layer).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.signal


class Peak(NamedTuple):
    day: int  # 1-based day index
    height: float
    prominence: float


class QuasiDistribution(NamedTuple):
    values: np.ndarray
    gamma: float
    mean: float
    variance: float
    peaks: list[Peak]


def normalize(signal: np.ndarray) -> tuple[float, np.ndarray]:
    """Rescale a signal to unit sum; returns (gamma, rescaled values)."""
    signal = np.asarray(signal, dtype=float)
    total = float(signal.sum())
    if total == 0.0:
        raise ValueError("cannot normalize a signal with zero sum")
    gamma = 1.0 / total
    return gamma, gamma * signal


def moments(values: np.ndarray) -> tuple[float, float]:
    """Mean and variance of a unit-sum sequence over day indices k = 1..N.

    mean = sum k * v_k, variance = sum k^2 * v_k - mean^2.
    """
    values = np.asarray(values, dtype=float)
    total = float(values.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"values must sum to 1 (got {total!r}); normalize first")
    days = np.arange(1, values.size + 1, dtype=float)
    mean = float(days @ values)
    variance = float((days * days) @ values - mean * mean)
    return mean, variance


def find_peaks(values: np.ndarray, prominence_frac: float = 0.05) -> list[Peak]:
    """Local maxima with prominence at least prominence_frac * max(values).

    Peaks are strict local maxima (plateaus report their leftmost sample),
    returned in day-index order with 1-based day indices.  The prominence
    floor suppresses low ripple peaks from quintic oscillation.
    """
    if not 0.0 <= prominence_frac <= 1.0:
        raise ValueError("prominence fraction must lie in [0, 1]")
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        return []
    indices, props = scipy.signal.find_peaks(values, plateau_size=(1, None))
    if indices.size == 0:
        return []
    prominences = scipy.signal.peak_prominences(values, indices)[0]
    floor = prominence_frac * float(values.max())
    peaks = [
        Peak(int(edge) + 1, float(values[edge]), float(prom))
        for edge, prom in zip(props["left_edges"], prominences)
        if prom >= floor
    ]
    return peaks


def quasi_distribution(
    signal: np.ndarray, prominence_frac: float = 0.05
) -> QuasiDistribution:
    """Normalize a discretized fitted signal and compute its summary stats."""
    gamma, values = normalize(signal)
    mean, variance = moments(values)
    return QuasiDistribution(values, gamma, mean, variance, find_peaks(values, prominence_frac))
