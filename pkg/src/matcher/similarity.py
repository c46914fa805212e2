"""
Appariement des phrases valides avec les attributs de leur catégorie.

    vector(s)   = moyenne des vecteurs des tokens de s
    vector(att) = moyenne des vecteurs des valeurs de att (chaque valeur
                  étant d'abord la moyenne de ses tokens), le nom comptant
                  comme une valeur de plus si include_name est activé
    score       = cos(vector(s), vector(att))

Les vecteurs nuls (mots inconnus d'un modèle sans buckets) sont exclus du
numérateur comme du dénominateur des moyennes.
"""

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..core.config import MatcherConfig
from ..core.logging import get_logger
from ..preprocess.models import CleanAttribute, CleanCategory, CleanSentence
from ..subword_embeddings.model import EmbeddingModel
from .models import MatchRecord


def mean_vector(vectors: Iterable[np.ndarray], dim: int) -> np.ndarray:
    """
    Moyenne arithmétique des vecteurs non nuls.

    Returns:
        La moyenne, ou le vecteur nul si tous les vecteurs sont nuls
    """
    kept = [vector for vector in vectors if np.any(vector)]
    if not kept:
        return np.zeros(dim)
    return np.mean(kept, axis=0)


def tokens_vector(tokens: Sequence[str], model: EmbeddingModel) -> np.ndarray:
    return mean_vector((model.word_vector(token) for token in tokens), model.dim)


def sentence_vector(s: CleanSentence, model: EmbeddingModel) -> np.ndarray:
    """Vecteur moyen d'une phrase valide."""
    return tokens_vector(s.tokens, model)


def attribute_vector(
    att: CleanAttribute, model: EmbeddingModel, include_name: bool = True
) -> np.ndarray:
    """
    Vecteur moyen d'un attribut.

    Args:
        att: Attribut nettoyé (valeurs déjà normalisées)
        model: Modèle de vecteurs
        include_name: Ajoute les tokens du nom comme pseudo-valeur

    Returns:
        La moyenne des vecteurs de valeurs
    """
    values = list(att.value_tokens)
    if include_name and att.name_tokens:
        values.append(att.name_tokens)
    return mean_vector((tokens_vector(tokens, model) for tokens in values), model.dim)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Similarité cosinus ; 0 si l'un des vecteurs est nul."""
    norm = float(np.linalg.norm(u)) * float(np.linalg.norm(v))
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(u, v) / norm, -1.0, 1.0))


def select_matches(
    scores: Iterable[tuple[str, float]], threshold: float, top: int
) -> list[tuple[str, float]]:
    """
    Garde les `top` meilleurs attributs dont le score atteint le seuil.

    Les ex aequo sont départagés par ordre lexicographique du nom.
    """
    ranked = sorted(scores, key=lambda item: (-item[1], item[0]))
    return [(name, value) for name, value in ranked[:top] if value >= threshold]


class SentenceMatcher:
    """
    Apparie les phrases d'un corpus avec les attributs de leur catégorie.

    Les vecteurs d'attributs sont calculés une fois par catégorie ; le modèle
    étant en lecture seule, les phrases peuvent être traitées en parallèle.
    """

    def __init__(
        self,
        model: EmbeddingModel,
        categories: Iterable[CleanCategory],
        config: MatcherConfig,
        logger: logging.Logger,
    ):
        """
        Initialise l'apparieur.

        Args:
            model: Modèle de vecteurs (sous-mots ou mots entiers)
            categories: Catégories nettoyées
            config: Seuil k, top-N par phrase et prise en compte des noms
            logger: Logger de l'étape
        """
        self.model = model
        self.config = config
        self.logger = logger
        self.categories = {category.category_id: category for category in categories}
        self._attribute_vectors: dict[str, list[tuple[str, np.ndarray]]] = {}

    def attribute_vectors(self, category_id: str) -> list[tuple[str, np.ndarray]]:
        vectors = self._attribute_vectors.get(category_id)
        if vectors is None:
            category = self.categories.get(category_id)
            attributes = category.attributes if category is not None else ()
            vectors = [
                (
                    attribute.name,
                    attribute_vector(attribute, self.model, self.config.include_name),
                )
                for attribute in attributes
            ]
            self._attribute_vectors[category_id] = vectors
        return vectors

    def match(self, s: CleanSentence) -> list[MatchRecord]:
        """Correspondances d'une phrase (au plus per_sentence_top)."""
        vector = sentence_vector(s, self.model)
        scores = [
            (name, cosine(vector, attribute))
            for name, attribute in self.attribute_vectors(s.category_id)
        ]
        return [
            MatchRecord(
                enquiry_id=s.enquiry_id,
                category_id=s.category_id,
                sentence_index=s.sentence_index,
                attribute_name=name,
                score=value,
            )
            for name, value in select_matches(
                scores, self.config.threshold, self.config.per_sentence_top
            )
        ]

    def match_all(
        self, sentences: Sequence[CleanSentence], workers: int = 1
    ) -> list[MatchRecord]:
        """
        Apparie toutes les phrases, dans l'ordre d'entrée.

        Args:
            sentences: Phrases valides
            workers: Nombre de threads

        Returns:
            Les correspondances, groupées par phrase dans l'ordre des phrases
        """
        unknown = {s.category_id for s in sentences} - self.categories.keys()
        for category_id in sorted(unknown):
            self.logger.warning(f"No attributes for category '{category_id}': sentences skipped")
        for category_id in sorted({s.category_id for s in sentences} - unknown):
            self.attribute_vectors(category_id)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                batches = list(executor.map(self.match, sentences))
        else:
            batches = [self.match(s) for s in sentences]

        records = [record for batch in batches for record in batch]
        self.logger.info(
            f"Matched {len(sentences)} sentences: {len(records)} records "
            f"(threshold={self.config.threshold}, top={self.config.per_sentence_top})"
        )
        return records


def match_sentence(
    s: CleanSentence,
    schema: CleanCategory,
    model: EmbeddingModel,
    cfg: MatcherConfig,
) -> list[MatchRecord]:
    """
    Apparie une phrase avec les attributs de sa catégorie.

    Args:
        s: Phrase valide
        schema: Catégorie de la phrase
        model: Modèle de vecteurs
        cfg: Configuration de l'appariement

    Returns:
        Au plus cfg.per_sentence_top correspondances, toutes de score >= cfg.threshold
    """
    matcher = SentenceMatcher(model, [schema], cfg, get_logger("matcher"))
    return matcher.match(s)
