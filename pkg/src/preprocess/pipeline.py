"""
Algorithme de prétraitement des enquêtes (sortie : phrases valides VS).

Pour chaque enquête :
    1. retrait des balises HTML
    2. filtre des enquêtes invalides (non anglaises, spam)
    3. découpage en phrases
    4. normalisation de chaque phrase ; les phrases vides sont écartées

Le vocabulaire de correction orthographique n'est connu qu'après un
premier passage sur tout le corpus : le traitement se fait donc en deux
passes (lexicale puis correction), chacune parallélisable par enquête.
"""

import logging
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import TypeVar

from ..core.config import PreprocessConfig
from ..kg_store.models import CategorySchema, Enquiry
from .attributes import clean_categories
from .filters import filter_invalid
from .html import strip_html
from .models import CleanCategory, CleanSentence, StopWordList, UnitLexicon
from .normalizer import NUMBER_TOKEN, SentenceNormalizer
from .spelling import SpellingCorrector
from .splitter import split_sentences

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class PreprocessStats:
    """Compteurs de l'étape de prétraitement."""

    enquiries_in: int = 0
    discarded: dict[str, int] = field(default_factory=dict)
    enquiries_out: int = 0
    sentences_out: int = 0
    vocabulary_size: int = 0


@dataclass
class PreprocessResult:
    sentences: list[CleanSentence]
    categories: list[CleanCategory]
    stats: PreprocessStats


@dataclass(frozen=True)
class _LexedEnquiry:
    enquiry_id: str
    category_id: str
    reason: str | None
    sentences: tuple[tuple[str, ...], ...] = ()


def _lex_enquiry(
    lexer: SentenceNormalizer, config: PreprocessConfig, enquiry: Enquiry
) -> _LexedEnquiry:
    plain = strip_html(enquiry.raw_text)
    decision = filter_invalid(plain, config)
    if not decision.keep:
        return _LexedEnquiry(enquiry.enquiry_id, enquiry.category_id, decision.reason)
    return _LexedEnquiry(
        enquiry.enquiry_id,
        enquiry.category_id,
        None,
        tuple(tuple(lexer.lex(sentence)) for sentence in split_sentences(plain)),
    )


def _finish_enquiry(
    normalizer: SentenceNormalizer, lexed: _LexedEnquiry
) -> list[CleanSentence]:
    sentences = []
    for index, tokens in enumerate(lexed.sentences):
        clean = normalizer.finish(list(tokens))
        if clean:
            sentences.append(
                CleanSentence(
                    enquiry_id=lexed.enquiry_id,
                    category_id=lexed.category_id,
                    sentence_index=index,
                    tokens=tuple(clean),
                )
            )
    return sentences


class Preprocessor:
    """
    Classe orchestrant le prétraitement des enquêtes et des attributs.

    Le traitement de chaque enquête est pur et indépendant ; avec plusieurs
    workers il est réparti sur un pool de processus, et la sortie est triée
    par (enquiry_id, sentence_index) pour rester indépendante du parallélisme.
    """

    def __init__(
        self,
        config: PreprocessConfig,
        stop_words: StopWordList,
        units: UnitLexicon,
        logger: logging.Logger,
        workers: int = 1,
    ):
        """
        Initialise le préprocesseur.

        Args:
            config: Seuils du filtre et du vocabulaire
            stop_words: Liste des mots vides
            units: Lexique des unités
            logger: Instance du logger pour enregistrer les compteurs
            workers: Nombre de processus pour les passes par enquête
        """
        self.config = config
        self.stop_words = stop_words
        self.units = units
        self.logger = logger
        self.workers = workers
        self.lexer = SentenceNormalizer(stop_words, units)

    def _map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        if self.workers <= 1 or len(items) < 2 * self.workers:
            return [fn(item) for item in items]
        chunksize = max(1, len(items) // (self.workers * 4))
        with ProcessPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(fn, items, chunksize=chunksize))

    def build_vocabulary(
        self,
        categories: Iterable[CategorySchema],
        lexed: Iterable[_LexedEnquiry],
    ) -> dict[str, int]:
        """
        Construit le vocabulaire de correction avec les fréquences du corpus.

        Vocabulaire = tokens des noms et valeurs d'attributs, tokens du corpus
        de fréquence >= corpus_vocab_min_count, mots vides et unités canoniques.

        Returns:
            Table token -> fréquence dans le corpus
        """
        counts: Counter[str] = Counter()
        for enquiry in lexed:
            for tokens in enquiry.sentences:
                counts.update(tokens)
        counts.pop(NUMBER_TOKEN, None)

        known = {
            token
            for token, count in counts.items()
            if count >= self.config.corpus_vocab_min_count
        }
        for schema in categories:
            for attribute in schema.attributes:
                for text in (attribute.key, *attribute.values):
                    known.update(self.lexer.lex(text))
        known.update(self.stop_words.words)
        known.update(self.units.canonical_tokens)
        known.discard(NUMBER_TOKEN)

        return {token: counts.get(token, 0) for token in known}

    def run(
        self, categories: Sequence[CategorySchema], enquiries: Sequence[Enquiry]
    ) -> PreprocessResult:
        """
        Exécute le prétraitement complet.

        Args:
            categories: Catégories chargées
            enquiries: Enquêtes chargées

        Returns:
            Les phrases valides triées, les catégories nettoyées et les compteurs
        """
        stats = PreprocessStats(enquiries_in=len(enquiries))
        self.logger.info(f"Preprocessing {len(enquiries)} enquiries...")

        # === PASSE 1 : HTML, FILTRE, DÉCOUPAGE, NOMBRES ET UNITÉS ===
        lexed = self._map(partial(_lex_enquiry, self.lexer, self.config), enquiries)
        for enquiry in lexed:
            if enquiry.reason is not None:
                stats.discarded[enquiry.reason] = stats.discarded.get(enquiry.reason, 0) + 1
        stats.discarded = dict(sorted(stats.discarded.items()))

        vocabulary = self.build_vocabulary(categories, lexed)
        stats.vocabulary_size = len(vocabulary)
        self.logger.info(f"Spelling vocabulary: {len(vocabulary)} tokens")

        # === PASSE 2 : CORRECTION, MOTS VIDES, DÉDOUBLONNAGE ===
        normalizer = SentenceNormalizer(
            self.stop_words, self.units, SpellingCorrector(vocabulary)
        )
        kept = [enquiry for enquiry in lexed if enquiry.reason is None]
        per_enquiry = self._map(partial(_finish_enquiry, normalizer), kept)

        sentences = sorted(
            (sentence for batch in per_enquiry for sentence in batch),
            key=lambda sentence: (sentence.enquiry_id, sentence.sentence_index),
        )
        stats.sentences_out = len(sentences)
        stats.enquiries_out = len({sentence.enquiry_id for sentence in sentences})

        cleaned = clean_categories(categories, normalizer, self.logger)

        discarded_total = sum(stats.discarded.values())
        self.logger.info(
            f"Enquiries in: {stats.enquiries_in}, discarded: {discarded_total} "
            f"{stats.discarded}, sentences out: {stats.sentences_out}"
        )
        return PreprocessResult(sentences=sentences, categories=cleaned, stats=stats)
