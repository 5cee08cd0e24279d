"""NumPy fallback for the sweep kernels.

Mirrors polarkit._native operation for operation. Both backends mix member
probabilities with the same `alpha*spec + (1-alpha)*gen` double-precision
expression and return integer confusion counts, so their outputs are
bit-identical; all float metric math happens downstream in polarkit.metrics.
"""

from __future__ import annotations

import numpy as np


def threshold_sweep_counts(
    probs: np.ndarray, gold: np.ndarray, taus: np.ndarray
) -> np.ndarray:
    """Confusion counts (tp, fp, fn, tn) at each threshold; prob >= tau is positive."""
    out = np.zeros((taus.shape[0], 4), dtype=np.int64)
    positive = gold.astype(bool)
    negative = ~positive
    for j, tau in enumerate(taus):
        pred = probs >= tau
        tp = np.count_nonzero(pred & positive)
        fp = np.count_nonzero(pred & negative)
        out[j, 0] = tp
        out[j, 1] = fp
        out[j, 2] = np.count_nonzero(positive) - tp
        out[j, 3] = np.count_nonzero(negative) - fp
    return out


def pair_row_counts(
    spec: np.ndarray,
    gen: np.ndarray,
    gold: np.ndarray,
    alpha: float,
    taus: np.ndarray,
) -> np.ndarray:
    """Threshold sweep of the two-member mixture at one specialist weight."""
    mix = alpha * spec + (1.0 - alpha) * gen
    return threshold_sweep_counts(mix, gold, taus)


def pair_grid_counts(
    spec: np.ndarray,
    gen: np.ndarray,
    gold: np.ndarray,
    alphas: np.ndarray,
    taus: np.ndarray,
) -> np.ndarray:
    """Full (alpha, tau) grid of confusion counts, shape (len(alphas), len(taus), 4)."""
    out = np.zeros((alphas.shape[0], taus.shape[0], 4), dtype=np.int64)
    for i, alpha in enumerate(alphas):
        out[i] = pair_row_counts(spec, gen, gold, float(alpha), taus)
    return out
