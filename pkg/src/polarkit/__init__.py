"""Model selection, soft-voting calibration, and evaluation analytics for
multilingual binary polarization tracks, operating purely on
prediction-probability files."""

__version__ = "0.1.0"

from .calibration import SearchGrid, SearchResult, tune_pair, tune_threshold
from .diagnostics import (
    ShiftRecord,
    SkewReport,
    classify_shift,
    dev_test_shift,
    majority_baseline,
    prediction_skew,
)
from .ensemble import EnsembleConfig, soft_vote, uniform_vote
from .fragmentation import (
    FragmentationReport,
    SubwordVocabulary,
    fragmentation_ratio,
    reduction,
    tokenize_word,
)
from .leaderboard import (
    AblationRow,
    LeaderboardEntry,
    ablation_report,
    baseline_context,
    challenge_tracks,
    delta_sota,
    proximity_window,
)
from .ledger import (
    RunRecord,
    TrackRegistry,
    append_ledger,
    load_gold,
    load_predictions,
    load_registry,
    read_ledger,
)
from .metrics import (
    ConfusionCounts,
    GoldLabels,
    MetricReport,
    PredictionRun,
    binarize,
    confusion,
    metric_report,
)
from .selection import CandidateEvaluation, SelectionDecision, decide, ledger_replay

__all__ = [
    "AblationRow",
    "CandidateEvaluation",
    "ConfusionCounts",
    "EnsembleConfig",
    "FragmentationReport",
    "GoldLabels",
    "LeaderboardEntry",
    "MetricReport",
    "PredictionRun",
    "RunRecord",
    "SearchGrid",
    "SearchResult",
    "SelectionDecision",
    "ShiftRecord",
    "SkewReport",
    "SubwordVocabulary",
    "TrackRegistry",
    "ablation_report",
    "append_ledger",
    "baseline_context",
    "binarize",
    "challenge_tracks",
    "classify_shift",
    "confusion",
    "decide",
    "delta_sota",
    "dev_test_shift",
    "fragmentation_ratio",
    "ledger_replay",
    "load_gold",
    "load_predictions",
    "load_registry",
    "majority_baseline",
    "metric_report",
    "prediction_skew",
    "proximity_window",
    "read_ledger",
    "reduction",
    "soft_vote",
    "tokenize_word",
    "tune_pair",
    "tune_threshold",
    "uniform_vote",
]
