"""
Représentations de mots par sommes de vecteurs de n-grammes de caractères.

Usage:
    from src.subword_embeddings import SkipgramTrainer, save, load_pretrained

    model = SkipgramTrainer(settings.embedding, logger).train(corpus)
    save(model, "work/model.subword.vec")
"""

from .io import load_pretrained, save
from .model import EmbeddingModel, nearest_neighbors, score, word_vector
from .ngrams import character_ngrams, extract_ngrams, fnv1a_32
from .sampling import NegativeSampler
from .training import (
    InstanceGradients,
    SkipgramTrainer,
    TrainingExample,
    instance_gradients,
    instance_loss,
    log_loss,
    train,
)

__all__ = [
    "load_pretrained",
    "save",
    "EmbeddingModel",
    "nearest_neighbors",
    "score",
    "word_vector",
    "character_ngrams",
    "extract_ngrams",
    "fnv1a_32",
    "NegativeSampler",
    "InstanceGradients",
    "SkipgramTrainer",
    "TrainingExample",
    "instance_gradients",
    "instance_loss",
    "log_loss",
    "train",
]
