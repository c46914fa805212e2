"""
Orchestration des étapes du pipeline avec passage d'artefacts par fichiers.

Chaque étape lit les artefacts de l'étape précédente dans le répertoire de
travail et écrit les siens ; le pipeline complet enchaîne exactement les
mêmes fonctions, ce qui rend sa sortie identique à l'exécution étape par étape.

Artefacts (répertoire paths.workdir) :
    vs.jsonl                     phrases valides
    categories.clean.jsonl       attributs fusionnés et normalisés
    model.subword.vec            modèle à sous-mots
    model.wordvec.vec            modèle à mots entiers (baseline)
    matches.<méthode>.jsonl      correspondances phrase / attribut
    ranked.<méthode>.jsonl       classements par catégorie
    report.<méthode>.tsv/.jsonl  rapport d'évaluation
"""

import logging
from pathlib import Path

from ..baselines.textrank import TEXTRANK_METHOD, rank_categories
from ..baselines.wordvec import WORDVEC_METHOD, build_wordvec_model
from ..core.config import PipelineSettings
from ..core.errors import DataLoadError, InputPathError, MissingArtifactError
from ..core.jsonl import iter_records, write_records
from ..evaluator.metrics import (
    EvalReport,
    canonical_truth,
    evaluate,
    merge_reports,
    render_report,
    report_records,
)
from ..kg_store.loader import KGLoader
from ..matcher.models import MatchRecord
from ..matcher.similarity import SentenceMatcher
from ..preprocess.models import CleanCategory, CleanSentence
from ..preprocess.pipeline import PreprocessStats, Preprocessor
from ..preprocess.resources import load_stop_words, load_unit_lexicon
from ..ranker.aggregate import RankedAttributes, aggregate
from ..subword_embeddings.io import load_pretrained, save
from ..subword_embeddings.model import EmbeddingModel
from ..subword_embeddings.training import SkipgramTrainer

SUBWORD_METHOD = "subword"
METHODS = (SUBWORD_METHOD, WORDVEC_METHOD, TEXTRANK_METHOD)
VECTOR_METHODS = (SUBWORD_METHOD, WORDVEC_METHOD)
ALL_METHODS = "all"

VS_FILE = "vs.jsonl"
CLEAN_CATEGORIES_FILE = "categories.clean.jsonl"


def model_file(method: str) -> str:
    return f"model.{method}.vec"


def matches_file(method: str) -> str:
    return f"matches.{method}.jsonl"


def ranked_file(method: str) -> str:
    return f"ranked.{method}.jsonl"


def expand_methods(method: str) -> tuple[str, ...]:
    """Liste des méthodes désignées par --method ("all" = toutes)."""
    return METHODS if method == ALL_METHODS else (method,)


class PipelineRunner:
    """
    Exécuteur des commandes du pipeline.

    Exemple d'utilisation:
        runner = PipelineRunner(load_settings("config.toml"), logger)
        runner.preprocess()
        runner.train("subword")
    """

    def __init__(self, settings: PipelineSettings, logger: logging.Logger):
        """
        Initialise l'exécuteur.

        Args:
            settings: Configuration validée du pipeline
            logger: Logger racine du pipeline
        """
        self.settings = settings
        self.logger = logger

    # === CHEMINS ===

    @property
    def workdir(self) -> Path:
        return self.settings.paths.workdir

    def artifact(self, name: str) -> Path:
        return self.workdir / name

    def _input(self, role: str) -> Path:
        path = getattr(self.settings.paths, role)
        if path is None or not Path(path).is_file():
            raise InputPathError(path if path is not None else f"<paths.{role}>", role)
        return Path(path)

    def _optional_input(self, role: str) -> Path | None:
        if getattr(self.settings.paths, role) is None:
            return None
        return self._input(role)

    def _require(self, name: str, producer: str) -> Path:
        path = self.artifact(name)
        if not path.is_file():
            raise MissingArtifactError(path, producer)
        return path

    def _child(self, component: str) -> logging.Logger:
        return self.logger.getChild(component)

    # === LECTURE DES ARTEFACTS ===

    def _read(self, name: str, producer: str, model: type) -> list:
        path = self._require(name, producer)
        records = []
        for line_number, raw in iter_records(path):
            try:
                records.append(model.model_validate(raw))
            except ValueError as e:
                raise DataLoadError(f"invalid record: {e}", path, line_number) from e
        return records

    def read_sentences(self) -> list[CleanSentence]:
        return self._read(VS_FILE, "preprocess", CleanSentence)

    def read_clean_categories(self) -> list[CleanCategory]:
        return self._read(CLEAN_CATEGORIES_FILE, "preprocess", CleanCategory)

    def read_model(self, method: str) -> EmbeddingModel:
        return load_pretrained(self._require(model_file(method), "train"))

    def read_matches(self, method: str) -> list[MatchRecord]:
        return self._read(matches_file(method), "match", MatchRecord)

    def read_rankings(self, method: str) -> list[RankedAttributes]:
        return self._read(ranked_file(method), "rank", RankedAttributes)

    # === ÉTAPES ===

    def preprocess(self) -> PreprocessStats:
        """Charge le graphe et les enquêtes, écrit VS et les catégories nettoyées."""
        loader = KGLoader(self._child("kg_store"))
        categories = loader.load_categories(self._input("categories"))
        enquiries = loader.load_enquiries(self._input("enquiries"))

        preprocessor = Preprocessor(
            self.settings.preprocess,
            load_stop_words(self._optional_input("stopwords")),
            load_unit_lexicon(self._optional_input("units")),
            self._child("preprocess"),
            workers=self.settings.workers,
        )
        result = preprocessor.run(categories, enquiries)

        write_records(self.artifact(VS_FILE), result.sentences)
        write_records(self.artifact(CLEAN_CATEGORIES_FILE), result.categories)
        self.logger.info(f"Wrote {len(result.sentences)} sentences to '{self.artifact(VS_FILE)}'")
        return result.stats

    def train(self, method: str = SUBWORD_METHOD) -> None:
        """Entraîne (ou charge) le modèle de vecteurs de chaque méthode vectorielle."""
        sentences = self.read_sentences()
        corpus = [sentence.tokens for sentence in sentences]
        logger = self._child("embeddings")

        for name in expand_methods(method):
            if name == SUBWORD_METHOD:
                model = SkipgramTrainer(
                    self.settings.embedding, logger, self.settings.workers
                ).train(corpus)
            elif name == WORDVEC_METHOD:
                model = build_wordvec_model(
                    corpus,
                    self.settings.embedding,
                    logger,
                    vectors_path=self._optional_input("vectors"),
                    workers=self.settings.workers,
                )
            else:
                self.logger.info(f"Method '{name}' has no model to train")
                continue
            save(model, self.artifact(model_file(name)))
            self.logger.info(f"Saved {name} model to '{self.artifact(model_file(name))}'")

    def match(self, method: str = SUBWORD_METHOD) -> int:
        """Apparie les phrases valides avec les attributs ; renvoie le nombre de correspondances."""
        total = 0
        for name in expand_methods(method):
            if name not in VECTOR_METHODS:
                self.logger.info(f"Method '{name}' has no matching stage")
                continue
            model = self.read_model(name)
            sentences = self.read_sentences()
            matcher = SentenceMatcher(
                model,
                self.read_clean_categories(),
                self.settings.matcher,
                self._child("matcher"),
            )
            records = matcher.match_all(sentences, workers=self.settings.workers)
            total += write_records(self.artifact(matches_file(name)), records)
        return total

    def rank(self, method: str = SUBWORD_METHOD) -> list[RankedAttributes]:
        """Classe les attributs de chaque catégorie."""
        config = self.settings.ranker
        rankings: list[RankedAttributes] = []
        for name in expand_methods(method):
            if name == TEXTRANK_METHOD:
                ranked = rank_categories(
                    self.read_sentences(),
                    self.read_clean_categories(),
                    self.settings.textrank,
                    config.top_k,
                    self._child("textrank"),
                )
            else:
                ranked = aggregate(
                    self.read_matches(name),
                    top_k=config.top_k,
                    count_unit=config.count_unit,
                    min_evidence=config.min_evidence,
                    method=name,
                )
            write_records(self.artifact(ranked_file(name)), ranked)
            self.logger.info(f"Ranked {len(ranked)} categories with '{name}'")
            rankings.extend(ranked)
        return rankings

    def evaluate(self, method: str = SUBWORD_METHOD) -> EvalReport:
        """
        Évalue les classements contre les annotations et écrit le rapport.

        Avec --method all, seules les méthodes dont le classement existe sont évaluées.
        """
        loader = KGLoader(self._child("kg_store"))
        loader.load_categories(self._input("categories"))
        labels = loader.load_ground_truth(self._input("labels"))
        truth = canonical_truth(
            {label.category_id: label.important_attributes for label in labels},
            self.read_clean_categories(),
        )

        names = expand_methods(method)
        if method == ALL_METHODS:
            names = tuple(name for name in names if self.artifact(ranked_file(name)).is_file())
            if not names:
                raise MissingArtifactError(self.artifact(ranked_file(SUBWORD_METHOD)), "rank")

        reports = []
        for name in names:
            rankings = self.read_rankings(name)
            selected = {ranking.category_id: ranking.selected for ranking in rankings}
            reports.append(evaluate(selected, truth, name, self._child("evaluator")))
        report = merge_reports(reports)

        stem = f"report.{method}"
        self.artifact(f"{stem}.tsv").write_text(render_report(report), encoding="utf-8")
        write_records(self.artifact(f"{stem}.jsonl"), report_records(report))
        for average in report.averages:
            self.logger.info(
                f"'{average.method}' average over {average.categories} categories: "
                f"P={average.precision:.4f} R={average.recall:.4f} F1={average.f1:.4f}"
            )
        return report

    def run_pipeline(self, method: str = SUBWORD_METHOD) -> EvalReport:
        """Enchaîne toutes les étapes."""
        self.preprocess()
        self.train(method)
        self.match(method)
        self.rank(method)
        return self.evaluate(method)
