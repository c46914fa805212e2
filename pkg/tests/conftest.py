import json
import logging
from collections.abc import Callable, Mapping, Sequence
from pathlib import Path

import numpy as np
import pytest

from src.core.config import EmbeddingConfig
from src.preprocess.models import CleanAttribute, CleanCategory, CleanSentence
from src.subword_embeddings.model import EmbeddingModel


def write_jsonl(path: Path, records: Sequence[Mapping]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record) + "\n")
    return path


@pytest.fixture(autouse=True)
def _propagating_root_logger():
    """La CLI coupe la propagation du logger racine ; caplog en a besoin."""
    yield
    root = logging.getLogger("attrank")
    for handler in root.handlers[:]:
        root.removeHandler(handler)
    root.propagate = True


@pytest.fixture
def logger() -> logging.Logger:
    test_logger = logging.getLogger("attrank.tests")
    test_logger.setLevel(logging.DEBUG)
    return test_logger


CATEGORY_RECORDS = [
    {
        "category_id": "bags",
        "attributes": [
            {"name": "Color", "values": ["red", "blue", "black"]},
            {"name": "Material", "values": ["leather", "canvas"]},
            {"name": "Weight", "values": ["1 kg", "2 kg"]},
        ],
    },
    {
        "category_id": "phones",
        "attributes": [
            {"name": "type", "values": ["smartphone"]},
            {"name": "product type", "values": ["feature phone"]},
            {"name": "Voltage", "values": ["220 V", "110 V"]},
        ],
    },
]

ENQUIRY_RECORDS = [
    {
        "enquiry_id": "e1",
        "category_id": "bags",
        "text": "<p>Hello, I am John.</p><p>Do you have a red leather bag of 15.3 kg?</p>",
    },
    {
        "enquiry_id": "e2",
        "category_id": "phones",
        "text": "Hi. I want a smartphone working at 220 V. Thanks!",
    },
    {
        "enquiry_id": "e3",
        "category_id": "bags",
        "text": "Buy now http://a.example http://b.example www.c.example",
    },
]

LABEL_RECORDS = [
    {"category_id": "bags", "important_attributes": ["Color", "Material"]},
    {"category_id": "phones", "important_attributes": ["product type", "voltage"]},
]


@pytest.fixture
def kg_files(tmp_path: Path) -> dict[str, Path]:
    """Petit graphe, trois enquêtes (dont un spam) et des annotations."""
    return {
        "categories": write_jsonl(tmp_path / "categories.jsonl", CATEGORY_RECORDS),
        "enquiries": write_jsonl(tmp_path / "enquiries.jsonl", ENQUIRY_RECORDS),
        "labels": write_jsonl(tmp_path / "labels.jsonl", LABEL_RECORDS),
    }


@pytest.fixture
def make_model() -> Callable[[Mapping[str, Sequence[float]]], EmbeddingModel]:
    """Modèle à mots entiers construit à partir de vecteurs explicites."""

    def _make(vectors: Mapping[str, Sequence[float]]) -> EmbeddingModel:
        words = list(vectors)
        matrix = np.array([vectors[word] for word in words], dtype=np.float64)
        config = EmbeddingConfig(dim=matrix.shape[1], bucket_count=0)
        return EmbeddingModel(config, words, [1] * len(words), matrix, np.zeros_like(matrix))

    return _make


def sentence(
    *tokens: str, enquiry_id: str = "e1", category_id: str = "c", index: int = 0
) -> CleanSentence:
    return CleanSentence(
        enquiry_id=enquiry_id, category_id=category_id, sentence_index=index, tokens=tokens
    )


def attribute(name: str, *values: str) -> CleanAttribute:
    return CleanAttribute(
        name=name,
        name_tokens=tuple(name.split()),
        value_tokens=tuple(tuple(value.split()) for value in values),
    )


def category(category_id: str, *attributes: CleanAttribute) -> CleanCategory:
    return CleanCategory(category_id=category_id, attributes=attributes)
