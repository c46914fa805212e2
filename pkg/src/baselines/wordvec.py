"""
Baseline à vecteurs de mots entiers (style word2vec / GloVe).

Les vecteurs viennent d'un fichier pré-entraîné lorsqu'il est configuré ;
sinon un modèle skipgram est entraîné sans buckets de n-grammes, de sorte
que les mots inconnus (fautes de frappe comprises) ont le vecteur nul.
"""

import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

from ..core.config import EmbeddingConfig
from ..subword_embeddings.io import load_pretrained
from ..subword_embeddings.model import EmbeddingModel
from ..subword_embeddings.training import SkipgramTrainer

WORDVEC_METHOD = "wordvec"


def whole_word_config(config: EmbeddingConfig) -> EmbeddingConfig:
    """Copie de la configuration sans composition par n-grammes."""
    return config.model_copy(update={"bucket_count": 0})


def build_wordvec_model(
    corpus: Iterable[Sequence[str]],
    config: EmbeddingConfig,
    logger: logging.Logger,
    vectors_path: str | Path | None = None,
    workers: int = 1,
) -> EmbeddingModel:
    """
    Construit le modèle de la baseline à mots entiers.

    Args:
        corpus: Phrases valides tokenisées (ignoré si vectors_path est fourni)
        config: Hyperparamètres du modèle à sous-mots, dont bucket_count est ignoré
        logger: Logger de l'étape
        vectors_path: Fichier de vecteurs pré-entraînés (word2vec ou GloVe)
        workers: Nombre de threads d'entraînement

    Returns:
        Un modèle dont bucket_count vaut 0
    """
    if vectors_path is not None:
        model = load_pretrained(vectors_path)
        logger.info(
            f"Loaded {len(model)} pretrained whole-word vectors (dim={model.dim}) "
            f"from '{vectors_path}'"
        )
        if model.bucket_count:
            model = EmbeddingModel(
                whole_word_config(model.config),
                model.words,
                model.counts,
                model.input_vectors[model.bucket_count :],
                model.output_vectors,
            )
        return model

    return SkipgramTrainer(whole_word_config(config), logger, workers).train(corpus)
