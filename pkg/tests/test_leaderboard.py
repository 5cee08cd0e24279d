import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarkit.errors import TrackMismatchError, ValidationError
from polarkit.leaderboard import (
    AblationRow,
    LeaderboardEntry,
    ablation_markdown,
    ablation_report,
    baseline_context,
    baseline_context_markdown,
    challenge_tracks,
    delta_sota,
    entries_markdown,
    proximity_window,
)


class TestDeltaSota:
    def test_near_miss(self):
        assert delta_sota(0.8308, 0.8348) == -0.0040

    def test_large_gap(self):
        assert delta_sota(0.6149, 0.7303) == -0.1154

    def test_parity(self):
        assert delta_sota(0.81, 0.81) == 0.0

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            delta_sota(1.2, 0.5)

    @given(st.floats(0, 1, width=64), st.floats(0, 1, width=64))
    @settings(max_examples=200, deadline=None)
    def test_antisymmetric(self, a, b):
        assert delta_sota(a, b) == -delta_sota(b, a)


def entry(track, our, sota, rank=None):
    return LeaderboardEntry(track=track, our_score=our, sota_score=sota, rank=rank)


class TestWindows:
    def test_boundary_adjacent_included(self):
        entries = [entry("spa", 0.7632, 0.8030)]
        assert [e.track for e in proximity_window(entries)] == ["spa"]

    def test_exact_floor_included(self):
        entries = [entry("x", 0.76, 0.80)]
        assert proximity_window(entries)  # delta exactly -0.04

    def test_empty_input(self):
        assert proximity_window([]) == []
        assert challenge_tracks([]) == []

    def test_sorted_descending_by_delta(self):
        entries = [
            entry("far", 0.70, 0.73),
            entry("near", 0.80, 0.805),
        ]
        assert [e.track for e in proximity_window(entries)] == ["near", "far"]

    def test_challenge_strict_boundary(self):
        at_cutoff = entry("edge", 0.75, 0.80)  # exactly -0.05
        below = entry("deu", 0.7096, 0.7608)  # -0.0512
        selected = challenge_tracks([at_cutoff, below])
        assert [e.track for e in selected] == ["deu"]

    def test_spanish_not_a_challenge_track(self):
        assert challenge_tracks([entry("spa", 0.7632, 0.8030)]) == []

    def test_disjoint_with_mid_band(self):
        entries = [
            entry("in", 0.80, 0.81),
            entry("mid", 0.80, 0.845),
            entry("out", 0.70, 0.80),
        ]
        window = {e.track for e in proximity_window(entries)}
        challenge = {e.track for e in challenge_tracks(entries)}
        assert window == {"in"}
        assert challenge == {"out"}
        assert not window & challenge

    def test_markdown_idempotent(self):
        entries = [entry("fas", 0.8308, 0.8348, rank=3)]
        first = entries_markdown("window", proximity_window(entries))
        second = entries_markdown("window", proximity_window(entries))
        assert first == second
        assert "-0.0040" in first


def row(track, base, aug, final):
    return AblationRow(track=track, baseline_f1=base, augmented_f1=aug, final_f1=final)


class TestAblation:
    def test_final_wins_with_degradation(self):
        r = row("rus", 0.743, 0.684, 0.784)
        assert r.winner == "final"
        assert r.degraded

    def test_augmented_exception(self):
        r = row("swa", 0.779, 0.791, 0.782)
        assert r.winner == "augmented"
        assert not r.degraded

    def test_all_equal_ties_to_final(self):
        assert row("xxx", 0.7, 0.7, 0.7).winner == "final"

    def test_baseline_can_hold_the_row_maximum(self):
        assert row("pan", 0.780, 0.700, 0.768).winner == "baseline"

    def test_report_head_to_head(self):
        report = ablation_report(
            [
                row("rus", 0.743, 0.684, 0.784),
                row("swa", 0.779, 0.791, 0.782),
                row("arb", 0.797, 0.797, 0.829),
            ]
        )
        assert report.final_wins == 2
        assert report.augmented_wins == 1
        assert report.degradations == ("rus",)

    def test_equal_augmented_is_not_degradation(self):
        assert not row("arb", 0.797, 0.797, 0.829).degraded

    def test_markdown(self):
        report = ablation_report([row("rus", 0.743, 0.684, 0.784)])
        text = ablation_markdown(report)
        assert "rus" in text and "yes" in text


class TestBaselineContext:
    def test_organizer_stronger(self):
        rows = baseline_context({"khm": 0.737}, {"khm": 0.588})
        assert rows[0].stronger == "organizer"
        assert rows[0].difference == pytest.approx(0.149)

    def test_inhouse_stronger(self):
        rows = baseline_context({"ita": 0.564}, {"ita": 0.646})
        assert rows[0].stronger == "inhouse"
        assert rows[0].difference == pytest.approx(-0.082)

    def test_identical_columns(self):
        rows = baseline_context({"a": 0.5, "b": 0.6}, {"a": 0.5, "b": 0.6})
        assert all(r.difference == 0 and r.stronger == "tie" for r in rows)

    def test_track_mismatch(self):
        with pytest.raises(TrackMismatchError):
            baseline_context({"a": 0.5}, {"b": 0.5})

    def test_markdown(self):
        text = baseline_context_markdown(baseline_context({"khm": 0.737}, {"khm": 0.588}))
        assert "khm" in text and "organizer" in text
