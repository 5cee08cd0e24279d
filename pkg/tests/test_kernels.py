"""Backend equivalence: the compiled kernels and the NumPy fallback must
produce identical integer counts, and both must match the dict-based
metrics path."""

import numpy as np
import pytest

from polarkit import _pure, kernels
from polarkit.metrics import GoldLabels, PredictionRun, binarize, confusion

try:
    from polarkit import _native
except ImportError:
    _native = None

needs_native = pytest.mark.skipif(_native is None, reason="compiled kernel not built")


def random_case(rng, n):
    probs = rng.random(n)
    gold = (rng.random(n) < 0.6).astype(np.uint8)
    return probs, gold


def test_backend_is_reported():
    assert kernels.BACKEND in ("native", "pure")


@needs_native
def test_threshold_sweep_backends_identical():
    rng = np.random.default_rng(11)
    taus = np.array([i / 100 for i in range(0, 101, 5)])
    for n in (1, 7, 64, 500):
        probs, gold = random_case(rng, n)
        native = _native.threshold_sweep_counts(probs, gold, taus)
        pure = _pure.threshold_sweep_counts(probs, gold, taus)
        assert np.array_equal(native, pure)


@needs_native
def test_pair_grid_backends_identical():
    rng = np.random.default_rng(12)
    alphas = np.array([i / 100 for i in range(0, 101, 5)])
    taus = np.array([i / 100 for i in range(30, 71, 5)])
    for n in (3, 40, 300):
        spec, gold = random_case(rng, n)
        gen = rng.random(n)
        native = _native.pair_grid_counts(spec, gen, gold, alphas, taus)
        pure = _pure.pair_grid_counts(spec, gen, gold, alphas, taus)
        assert np.array_equal(native, pure)


@needs_native
def test_pair_row_matches_grid_row():
    rng = np.random.default_rng(13)
    spec, gold = random_case(rng, 90)
    gen = rng.random(90)
    alphas = np.array([0.0, 0.35, 0.8])
    taus = np.array([0.3, 0.5, 0.6])
    grid = _native.pair_grid_counts(spec, gen, gold, alphas, taus)
    for i, alpha in enumerate(alphas):
        row = _native.pair_row_counts(spec, gen, gold, float(alpha), taus)
        assert np.array_equal(grid[i], row)
        pure_row = _pure.pair_row_counts(spec, gen, gold, float(alpha), taus)
        assert np.array_equal(row, pure_row)


def test_sweep_matches_dict_based_confusion():
    rng = np.random.default_rng(14)
    probs, gold_arr = random_case(rng, 80)
    ids = [f"s{i}" for i in range(80)]
    run = PredictionRun(
        track="eng", model_id="m", split="dev", probs=dict(zip(ids, probs))
    )
    gold = GoldLabels(dict(zip(ids, (int(v) for v in gold_arr))))
    taus = [0.2, 0.5, 0.77]
    counts = kernels.threshold_sweep_counts(probs, gold_arr, taus)
    for tau, row in zip(taus, counts):
        expected = confusion(gold, binarize(run, tau))
        assert kernels.counts_from_row(row) == expected
