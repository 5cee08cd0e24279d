"""Calibration-search tests.

The brute-force oracle evaluates every grid cell through the plain
ensemble + binarize + metric_report path and applies the documented
tie-break by hand, independently of the kernel-backed implementation.
"""

import pytest

from polarkit.calibration import (
    DEFAULT_ALPHAS,
    DEFAULT_TAUS,
    SearchGrid,
    surface_to_csv,
    tune_pair,
    tune_threshold,
)
from polarkit.ensemble import soft_vote
from polarkit.errors import GridError, IdMismatchError
from polarkit.ledger import load_gold, load_predictions
from polarkit.metrics import GoldLabels, PredictionRun, binarize, metric_report


def run_of(probs, model_id="m"):
    return PredictionRun(track="eng", model_id=model_id, split="dev", probs=probs)


def oracle_pair_search(gold, spec, gen, alphas, taus):
    """Exhaustive reference search over the same grid."""
    cells = []
    for alpha in alphas:
        mixed = soft_vote([spec, gen], [alpha, 1.0 - alpha])
        for tau in taus:
            report = metric_report(gold, binarize(mixed, tau))
            cells.append((alpha, tau, report.f1_macro))
    best = min(
        cells, key=lambda c: (-c[2], abs(c[1] - 0.5), abs(c[0] - 0.5), c[1], c[0])
    )
    return best, cells


class TestSearchGrid:
    def test_defaults_cover_published_settings(self):
        for value in (0.35, 0.40, 0.45, 0.50, 0.60, 0.65):
            assert value in DEFAULT_TAUS or value in DEFAULT_ALPHAS
        for tau in (0.35, 0.45, 0.60):
            assert tau in DEFAULT_TAUS
        for alpha in (0.40, 0.50, 0.60, 0.65):
            assert alpha in DEFAULT_ALPHAS

    def test_rejects_empty_axis(self):
        with pytest.raises(GridError):
            SearchGrid(alpha_values=(), tau_values=(0.5,))

    def test_rejects_unsorted_axis(self):
        with pytest.raises(GridError):
            SearchGrid(alpha_values=(0.5, 0.4), tau_values=(0.5,))

    def test_rejects_out_of_range(self):
        with pytest.raises(GridError):
            SearchGrid(alpha_values=(0.5, 1.2), tau_values=(0.5,))


class TestTuneThreshold:
    def test_separated_probs_tie_break_to_half(self):
        gold = GoldLabels({"a": 1, "b": 1, "c": 0, "d": 0})
        run = run_of({"a": 0.9, "b": 0.9, "c": 0.1, "d": 0.1})
        result = tune_threshold(gold, run, DEFAULT_TAUS)
        assert result.best_dev_report.f1_macro == 1.0
        assert result.best_config.tau == 0.50

    def test_hand_evaluated_grid(self):
        gold = GoldLabels({"a": 1, "b": 1, "c": 1, "d": 0})
        run = run_of({"a": 0.9, "b": 0.7, "c": 0.45, "d": 0.4})
        result = tune_threshold(gold, run, (0.35, 0.45, 0.50, 0.60))
        assert result.best_config.tau == 0.45
        assert result.best_dev_report.f1_macro == 1.0

    def test_single_cell_grid(self):
        gold = GoldLabels({"a": 1, "b": 0})
        run = run_of({"a": 0.2, "b": 0.9})
        result = tune_threshold(gold, run, (0.40,))
        assert result.best_config.tau == 0.40
        assert len(result.full_surface) == 1

    def test_rejects_test_split(self):
        gold = GoldLabels({"a": 1})
        run = PredictionRun(track="eng", model_id="m", split="test", probs={"a": 0.9})
        with pytest.raises(GridError):
            tune_threshold(gold, run, (0.5,))

    def test_surface_is_exhaustive_and_best(self):
        gold = GoldLabels({"a": 1, "b": 0, "c": 1})
        run = run_of({"a": 0.8, "b": 0.3, "c": 0.55})
        result = tune_threshold(gold, run, DEFAULT_TAUS)
        assert len(result.full_surface) == len(DEFAULT_TAUS)
        best = result.best_dev_report.f1_macro
        assert all(cell.macro_f1 <= best for cell in result.full_surface)


class TestTunePair:
    def test_duplicated_member_ties_to_center(self):
        gold = GoldLabels({"a": 1, "b": 1, "c": 0, "d": 0})
        probs = {"a": 0.8, "b": 0.6, "c": 0.4, "d": 0.2}
        result = tune_pair(gold, run_of(probs, "x"), run_of(probs, "y"))
        assert result.best_config.members[0][1] == 0.50
        assert result.best_config.tau == 0.50

    def test_perfect_vs_antiperfect_matches_oracle(self):
        gold_map = {"a": 1, "b": 1, "c": 0, "d": 0, "e": 1}
        gold = GoldLabels(gold_map)
        spec = run_of({k: float(v) for k, v in gold_map.items()}, "spec")
        gen = run_of({k: 1.0 - v for k, v in gold_map.items()}, "gen")
        (alpha, tau, f1), _ = oracle_pair_search(
            gold, spec, gen, DEFAULT_ALPHAS, DEFAULT_TAUS
        )
        # Oracle-frozen winner under the documented tie-break: the least
        # aggressive perfect cell, not the extreme alpha=1 corner.
        assert (alpha, tau, f1) == (0.55, 0.50, 1.0)
        result = tune_pair(gold, spec, gen)
        assert result.best_config.members[0][1] == alpha
        assert result.best_config.tau == tau
        assert result.best_dev_report.f1_macro == 1.0

    def test_single_cell_grid_returns_that_config(self):
        gold = GoldLabels({"a": 1, "b": 0})
        spec = run_of({"a": 0.7, "b": 0.4}, "spec")
        gen = run_of({"a": 0.6, "b": 0.5}, "gen")
        grid = SearchGrid(alpha_values=(0.65,), tau_values=(0.45,))
        result = tune_pair(gold, spec, gen, grid)
        assert result.best_config.members[0][1] == 0.65
        assert result.best_config.members[1][1] == pytest.approx(0.35)
        assert result.best_config.tau == 0.45
        assert len(result.full_surface) == 1

    def test_matches_oracle_on_noisy_fixture(self, fixtures):
        gold = load_gold(fixtures / "dev_gold.csv")
        spec = load_predictions(fixtures / "dev_spec.csv", model_id="spec")
        gen = load_predictions(fixtures / "dev_gen.csv", model_id="gen")
        grid = SearchGrid()
        result = tune_pair(gold, spec, gen, grid)
        (alpha, tau, f1), cells = oracle_pair_search(
            gold, spec, gen, grid.alpha_values, grid.tau_values
        )
        assert result.best_config.members[0][1] == alpha
        assert result.best_config.tau == tau
        assert result.best_dev_report.f1_macro == f1
        surface = {(c.alpha, c.tau): c.macro_f1 for c in result.full_surface}
        for cell_alpha, cell_tau, cell_f1 in cells:
            assert surface[(cell_alpha, cell_tau)] == cell_f1

    def test_exhaustive_surface_size(self):
        gold = GoldLabels({"a": 1, "b": 0})
        spec = run_of({"a": 0.7, "b": 0.4}, "spec")
        gen = run_of({"a": 0.6, "b": 0.5}, "gen")
        result = tune_pair(gold, spec, gen)
        assert len(result.full_surface) == len(DEFAULT_ALPHAS) * len(DEFAULT_TAUS)

    def test_id_mismatch(self):
        gold = GoldLabels({"a": 1, "b": 0})
        spec = run_of({"a": 0.7, "b": 0.4}, "spec")
        gen = run_of({"a": 0.6, "z": 0.5}, "gen")
        with pytest.raises(IdMismatchError):
            tune_pair(gold, spec, gen)

    def test_serial_equals_parallel(self, fixtures):
        gold = load_gold(fixtures / "dev_gold.csv")
        spec = load_predictions(fixtures / "dev_spec.csv", model_id="spec")
        gen = load_predictions(fixtures / "dev_gen.csv", model_id="gen")
        serial = tune_pair(gold, spec, gen)
        parallel = tune_pair(gold, spec, gen, workers=4)
        assert serial.best_config.members[0][1] == parallel.best_config.members[0][1]
        assert serial.best_config.tau == parallel.best_config.tau
        assert serial.full_surface == parallel.full_surface

    def test_best_score_round_trips_through_metric_report(self, fixtures):
        gold = load_gold(fixtures / "dev_gold.csv")
        spec = load_predictions(fixtures / "dev_spec.csv", model_id="spec")
        gen = load_predictions(fixtures / "dev_gen.csv", model_id="gen")
        result = tune_pair(gold, spec, gen)
        recomputed = metric_report(
            gold, binarize(result.best_config.combined(), result.best_config.tau)
        )
        assert recomputed.f1_macro == result.best_dev_report.f1_macro
        best_cell = max(result.full_surface, key=lambda c: c.macro_f1)
        assert best_cell.macro_f1 == recomputed.f1_macro


class TestMonotonicity:
    def test_positive_count_non_increasing_in_tau(self, fixtures):
        run = load_predictions(fixtures / "dev_spec.csv")
        counts = [sum(binarize(run, tau).values()) for tau in DEFAULT_TAUS]
        assert all(a >= b for a, b in zip(counts, counts[1:]))


class TestSurfaceCsv:
    def test_format(self):
        gold = GoldLabels({"a": 1, "b": 0})
        run = run_of({"a": 0.8, "b": 0.3})
        result = tune_threshold(gold, run, (0.40, 0.50))
        text = surface_to_csv(result)
        lines = text.splitlines()
        assert lines[0] == "alpha,tau,macro_f1"
        assert lines[1] == ",0.400000,1.000000"
        assert len(lines) == 3

    def test_pair_rows_have_six_decimals(self):
        gold = GoldLabels({"a": 1, "b": 0})
        spec = run_of({"a": 0.7, "b": 0.4}, "s")
        gen = run_of({"a": 0.6, "b": 0.5}, "g")
        grid = SearchGrid(alpha_values=(0.65,), tau_values=(0.45,))
        text = surface_to_csv(tune_pair(gold, spec, gen, grid))
        assert text.splitlines()[1] == "0.650000,0.450000,1.000000"
