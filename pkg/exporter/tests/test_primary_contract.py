"""The exported files must pass the analytics toolkit's validation as-is.

The toolkit is exercised strictly through its public CLI (subprocess), the
same way a shell pipeline would chain the two packages.
"""

import json
import subprocess
import sys

import pytest

from inference_exporter import ExportJobConfig, export_probs, export_subword_counts


def run_polarkit(*args):
    return subprocess.run(
        [sys.executable, "-m", "polarkit", *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture
def exported_probs(checkpoint_dir, input_file, tmp_path):
    return export_probs(
        ExportJobConfig(
            checkpoint=str(checkpoint_dir),
            input_path=input_file,
            output_path=tmp_path / "pred.csv",
            positive_index=1,
        )
    )


class TestProbsContract:
    def test_evaluate_accepts_exported_file(self, exported_probs, input_file, tmp_path):
        ids = [line.split("\t")[0] for line in input_file.read_text().splitlines()]
        gold = tmp_path / "gold.csv"
        gold.write_text(
            "id,label\n" + "\n".join(f"{i},{k % 2}" for k, i in enumerate(ids)) + "\n"
        )
        result = run_polarkit(
            "evaluate", "--gold", str(gold), "--pred", str(exported_probs),
            "--format", "json",
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(result.stdout)
        assert report["n"] == 5

    def test_ensemble_accepts_exported_files(self, exported_probs, tmp_path):
        mixed = tmp_path / "mixed.csv"
        result = run_polarkit(
            "ensemble",
            "--pred", str(exported_probs),
            "--pred", str(exported_probs),
            "--weights", "0.65,0.35",
            "--out", str(mixed),
        )
        assert result.returncode == 0, result.stderr
        assert mixed.exists()


class TestSubwordContract:
    def test_two_tokenizer_reduction(
        self, generalist_tokenizer_dir, specialist_tokenizer_dir, corpus_file, tmp_path
    ):
        base = export_subword_counts(
            str(generalist_tokenizer_dir), corpus_file, tmp_path / "base.csv"
        )
        spec = export_subword_counts(
            str(specialist_tokenizer_dir), corpus_file, tmp_path / "spec.csv"
        )
        result = run_polarkit(
            "frag", "--counts", str(base), "--counts", str(spec), "--format", "json"
        )
        assert result.returncode == 0, result.stderr
        doc = json.loads(result.stdout)
        ratios = [r["ratio"] for r in doc["reports"]]
        # generalist pieces: the=1 sunshine=2 is=1 good=1 unhappiness=3 happy=2
        assert ratios[0] == pytest.approx(10 / 6)
        assert ratios[1] == pytest.approx(1.0)
        assert doc["reduction"] == pytest.approx(40.0, abs=0.05)
