"""Backend selection and array plumbing for the sweep kernels.

Imports the compiled extension when present, otherwise the NumPy fallback;
POLARKIT_PURE=1 forces the fallback. Both backends return identical int64
confusion-count arrays (see the module docstrings of _pure/_native), so the
choice never changes results, only speed.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from . import _pure
from .metrics import ConfusionCounts, GoldLabels, PredictionRun

if os.environ.get("POLARKIT_PURE") == "1":
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"


def prob_array(run: PredictionRun, order: Sequence[str]) -> np.ndarray:
    return np.array([run.probs[sample_id] for sample_id in order], dtype=np.float64)


def gold_array(gold: GoldLabels, order: Sequence[str]) -> np.ndarray:
    return np.array([gold.entries[sample_id] for sample_id in order], dtype=np.uint8)


def _as_f64(values: Iterable[float]) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(values, dtype=np.float64))


def threshold_sweep_counts(
    probs: np.ndarray, gold: np.ndarray, taus: Sequence[float]
) -> np.ndarray:
    return _impl.threshold_sweep_counts(
        _as_f64(probs), np.ascontiguousarray(gold, dtype=np.uint8), _as_f64(taus)
    )


def pair_row_counts(
    spec: np.ndarray,
    gen: np.ndarray,
    gold: np.ndarray,
    alpha: float,
    taus: Sequence[float],
) -> np.ndarray:
    return _impl.pair_row_counts(
        _as_f64(spec),
        _as_f64(gen),
        np.ascontiguousarray(gold, dtype=np.uint8),
        float(alpha),
        _as_f64(taus),
    )


def pair_grid_counts(
    spec: np.ndarray,
    gen: np.ndarray,
    gold: np.ndarray,
    alphas: Sequence[float],
    taus: Sequence[float],
) -> np.ndarray:
    return _impl.pair_grid_counts(
        _as_f64(spec),
        _as_f64(gen),
        np.ascontiguousarray(gold, dtype=np.uint8),
        _as_f64(alphas),
        _as_f64(taus),
    )


def counts_from_row(row: np.ndarray) -> ConfusionCounts:
    tp, fp, fn, tn = (int(v) for v in row)
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


__all__ = [
    "BACKEND",
    "counts_from_row",
    "gold_array",
    "pair_grid_counts",
    "pair_row_counts",
    "prob_array",
    "threshold_sweep_counts",
]
