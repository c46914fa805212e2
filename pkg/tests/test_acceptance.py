"""Exécutions de bout en bout sur le corpus synthétique (lentes)."""

import logging
import time

import numpy as np
import pytest

from src.cli.runner import ALL_METHODS, PipelineRunner
from src.core.config import EmbeddingConfig, load_settings
from src.subword_embeddings import train
from src.synthetic import generate_corpus

pytestmark = pytest.mark.slow


def _topic_corpus(seed: int, sentences: int = 200) -> list[list[str]]:
    rng = np.random.default_rng(seed)
    topics = [[f"t{topic}w{word}" for word in range(10)] for topic in range(3)]
    corpus = []
    for _ in range(sentences):
        words = topics[int(rng.integers(len(topics)))]
        corpus.append([words[int(i)] for i in rng.integers(len(words), size=6)])
    return corpus


def test_loss_descends_for_most_seeds():
    logger = logging.getLogger("attrank.tests")
    descending = 0
    for seed in range(20):
        config = EmbeddingConfig(dim=16, bucket_count=1000, epochs=5, seed=seed)
        history = train(_topic_corpus(seed), config, logger).training_history
        descending += history[-1] < history[0]
    assert descending >= 19


@pytest.fixture(scope="module")
def synthetic_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("synthetic")
    logger = logging.getLogger("attrank.tests")
    files = generate_corpus(out, seed=7, logger=logger)
    runner = PipelineRunner(load_settings(files.config, {"workers": 1}), logger)
    started = time.perf_counter()
    report = runner.run_pipeline(ALL_METHODS)
    return runner, report, time.perf_counter() - started


@pytest.fixture(scope="module")
def synthetic_report(synthetic_run):
    return synthetic_run[1]


@pytest.fixture(scope="module")
def values_only_report(synthetic_run):
    """Même corpus et mêmes modèles, noms d'attributs exclus des vecteurs d'attributs."""
    runner = synthetic_run[0]
    settings = runner.settings.model_copy(
        update={"matcher": runner.settings.matcher.model_copy(update={"include_name": False})}
    )
    values_only = PipelineRunner(settings, runner.logger)
    values_only.match(ALL_METHODS)
    values_only.rank(ALL_METHODS)
    return values_only.evaluate(ALL_METHODS)


def test_pipeline_fits_time_budget(synthetic_run):
    assert synthetic_run[2] < 300


@pytest.mark.parametrize("report_name", ["synthetic_report", "values_only_report"])
def test_subword_recovers_designated_attributes(report_name, request):
    report = request.getfixturevalue(report_name)
    subword = report.average("subword")
    assert subword.categories == 20
    assert subword.f1 >= 0.90


@pytest.mark.parametrize("report_name", ["synthetic_report", "values_only_report"])
def test_method_ordering(report_name, request):
    report = request.getfixturevalue(report_name)
    f1 = {method: report.average(method).f1 for method in report.methods}
    assert f1["subword"] >= f1["wordvec"] > f1["textrank"]
