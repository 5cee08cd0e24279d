import os

# Everything runs against tiny locally constructed checkpoints.
os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("TOKENIZERS_PARALLELISM", "false")

import pytest
import torch
from transformers import BertConfig, BertForSequenceClassification, BertTokenizer

GENERALIST_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "un", "##happi", "##ness", "good", "the", "is", "bad",
    "hap", "##py", "sun", "##shine", "day",
]

SPECIALIST_VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "sunshine", "is", "good", "unhappiness", "happy", "bad", "day",
]

CORPUS = "the sunshine is good unhappiness happy"


def save_tokenizer(directory, vocab):
    directory.mkdir(parents=True, exist_ok=True)
    vocab_file = directory / "vocab.txt"
    vocab_file.write_text("\n".join(vocab) + "\n", encoding="utf-8")
    BertTokenizer(str(vocab_file)).save_pretrained(str(directory))
    return directory


def save_model(directory, vocab_size, num_labels):
    torch.manual_seed(1234)
    config = BertConfig(
        vocab_size=vocab_size,
        hidden_size=32,
        num_hidden_layers=1,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
        num_labels=num_labels,
    )
    BertForSequenceClassification(config).save_pretrained(str(directory))
    return directory


@pytest.fixture(scope="session")
def checkpoint_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("tiny-classifier")
    save_tokenizer(directory, GENERALIST_VOCAB)
    save_model(directory, len(GENERALIST_VOCAB), num_labels=2)
    return directory


@pytest.fixture(scope="session")
def three_class_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("three-class")
    save_tokenizer(directory, GENERALIST_VOCAB)
    save_model(directory, len(GENERALIST_VOCAB), num_labels=3)
    return directory


@pytest.fixture(scope="session")
def generalist_tokenizer_dir(checkpoint_dir):
    return checkpoint_dir


@pytest.fixture(scope="session")
def specialist_tokenizer_dir(tmp_path_factory):
    return save_tokenizer(tmp_path_factory.mktemp("specialist-tok"), SPECIALIST_VOCAB)


@pytest.fixture(scope="session")
def corpus_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "corpus.txt"
    path.write_text(CORPUS + "\n", encoding="utf-8")
    return path


@pytest.fixture
def input_file(tmp_path):
    path = tmp_path / "samples.tsv"
    lines = [
        "s1\tthe day is good",
        "s2\tbad day",
        "s3\tunhappiness is bad",
        "s4\tthe sunshine is good",
        "s5\thappy happy day",
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
