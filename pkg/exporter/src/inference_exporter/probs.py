"""Batch inference: checkpoint -> polarized-class probability CSV.

Output is the `id,prob` format with 6-decimal probabilities and LF
endings, written atomically. Inference runs in eval mode under no_grad,
so a re-run over the same inputs reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

import torch

from ._io import read_samples, write_atomic
from .config import ExportJobConfig
from .errors import CheckpointError, ShapeError


def load_classifier(checkpoint: str, device: str = "cpu"):
    """Load tokenizer and 2-class sequence classifier from a hub id or path."""
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        model = AutoModelForSequenceClassification.from_pretrained(checkpoint)
    except Exception as exc:
        raise CheckpointError(f"cannot load {checkpoint!r}: {exc}") from exc
    if model.config.num_labels != 2:
        raise ShapeError(
            f"checkpoint {checkpoint!r} has a {model.config.num_labels}-class head, "
            "expected 2"
        )
    model.to(device)
    model.eval()
    return tokenizer, model


def export_probs(config: ExportJobConfig) -> Path:
    """Run the checkpoint over the input samples and write `id,prob` rows."""
    tokenizer, model = load_classifier(config.checkpoint, config.device)
    samples = read_samples(config.input_path)

    lines = ["id,prob"]
    with torch.no_grad():
        for start in range(0, len(samples), config.batch_size):
            batch = samples[start : start + config.batch_size]
            encoded = tokenizer(
                [text for _, text in batch],
                padding=True,
                truncation=True,
                max_length=config.max_seq_len,
                return_tensors="pt",
            ).to(config.device)
            probs = torch.softmax(model(**encoded).logits, dim=-1)
            positive = probs[:, config.positive_index].tolist()
            for (sample_id, _), prob in zip(batch, positive):
                lines.append(f"{sample_id},{prob:.6f}")

    out = write_atomic(config.output_path, "\n".join(lines) + "\n")
    meta = {
        "checkpoint": config.checkpoint,
        "positive_index": config.positive_index,
        "max_seq_len": config.max_seq_len,
        "batch_size": config.batch_size,
        "n_samples": len(samples),
        "provenance": config.provenance,
    }
    write_atomic(
        str(out) + ".meta.json", json.dumps(meta, indent=2, sort_keys=True) + "\n"
    )
    return out
