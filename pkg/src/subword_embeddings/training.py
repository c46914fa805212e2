"""
Entraînement skipgram à sous-mots avec échantillonnage négatif.

Pour chaque position t d'une phrase et chaque contexte c de la fenêtre
(rayon tiré uniformément dans [1, window]), on minimise la perte logistique
binaire :

    ℓ(s(w_t, w_c)) + Σ_{n ∈ N_{t,c}} ℓ(-s(w_t, n)),   ℓ(x) = log(1 + e^{-x})

La descente de gradient met à jour les lignes z_g de G_{w_t} (gradient divisé
par |G_{w_t}|) et les lignes v de la matrice de sortie. Avec plusieurs workers,
les threads partagent les matrices sans verrou ; le résultat n'est alors plus
reproductible bit à bit.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..core.config import EmbeddingConfig
from ..core.errors import EmptyVocabularyError
from ..core.logging import get_logger
from .model import EmbeddingModel
from .sampling import NegativeSampler


@dataclass(frozen=True)
class TrainingExample:
    """Instance (w_t, w_c, N_{t,c}) exprimée en indices du vocabulaire."""

    target: int
    context: int
    negatives: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.context in self.negatives:
            raise ValueError("negative samples must differ from the context word")


@dataclass
class InstanceGradients:
    """Gradients d'une instance, accumulés par ligne touchée."""

    loss: float
    input_rows: dict[int, np.ndarray] = field(default_factory=dict)
    output_rows: dict[int, np.ndarray] = field(default_factory=dict)


def log_loss(x: np.ndarray | float) -> np.ndarray | float:
    """ℓ(x) = log(1 + e^{-x}), stable pour les grandes valeurs de |x|."""
    return np.logaddexp(0.0, -np.asarray(x, dtype=np.float64))


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return np.exp(-np.logaddexp(0.0, -x))


def _logistic_step(
    hidden: np.ndarray, output_rows: np.ndarray
) -> tuple[float, np.ndarray]:
    """
    Perte et dérivées par rapport aux scores pour un contexte et ses négatifs.

    La première ligne de output_rows est le contexte (étiquette 1), les
    suivantes les négatifs (étiquette 0).

    Returns:
        La perte et le vecteur dL/ds
    """
    scores = output_rows @ hidden
    labels = np.zeros_like(scores)
    labels[0] = 1.0
    loss = float(log_loss(scores[0]) + log_loss(-scores[1:]).sum())
    return loss, _sigmoid(scores) - labels


def _example_rows(example: TrainingExample, model: EmbeddingModel) -> tuple[np.ndarray, np.ndarray]:
    rows = model.subword_rows(model.words[example.target])
    targets = np.asarray((example.context, *example.negatives), dtype=np.int64)
    return rows, targets


def instance_loss(example: TrainingExample, model: EmbeddingModel) -> float:
    """
    Perte d'une instance sous la perte logistique binaire.

    Args:
        example: Cible, contexte et négatifs
        model: Modèle dont la matrice de sortie est définie

    Returns:
        ℓ(s(w_t, w_c)) + Σ ℓ(-s(w_t, n)), toujours positive ou nulle
    """
    rows, targets = _example_rows(example, model)
    hidden = model.input_vectors[rows].sum(axis=0)
    loss, _ = _logistic_step(hidden, model.output_vectors[targets])
    return loss


def instance_gradients(example: TrainingExample, model: EmbeddingModel) -> InstanceGradients:
    """
    Gradient analytique de instance_loss pour chaque ligne touchée.

    Une ligne présente plusieurs fois (collision de hachage, négatif tiré
    deux fois) reçoit la somme de ses contributions.
    """
    rows, targets = _example_rows(example, model)
    hidden = model.input_vectors[rows].sum(axis=0)
    context_rows = model.output_vectors[targets]
    loss, coefficients = _logistic_step(hidden, context_rows)
    hidden_gradient = coefficients @ context_rows

    gradients = InstanceGradients(loss=loss)
    for row in rows.tolist():
        gradients.input_rows[row] = gradients.input_rows.get(row, 0.0) + hidden_gradient
    for coefficient, row in zip(coefficients, targets.tolist()):
        gradients.output_rows[row] = gradients.output_rows.get(row, 0.0) + coefficient * hidden
    return gradients


def _apply_update(
    model: EmbeddingModel, rows: np.ndarray, targets: np.ndarray, learning_rate: float
) -> float:
    hidden = model.input_vectors[rows].sum(axis=0)
    context_rows = model.output_vectors[targets]
    loss, coefficients = _logistic_step(hidden, context_rows)
    hidden_gradient = coefficients @ context_rows

    np.add.at(model.output_vectors, targets, -learning_rate * np.outer(coefficients, hidden))
    np.add.at(model.input_vectors, rows, -learning_rate * hidden_gradient / len(rows))
    return loss


class SkipgramTrainer:
    """
    Entraîneur skipgram avec échantillonnage négatif.

    Exemple d'utilisation:
        trainer = SkipgramTrainer(settings.embedding, logger)
        model = trainer.train(sentence.tokens for sentence in sentences)
    """

    def __init__(self, config: EmbeddingConfig, logger: logging.Logger, workers: int = 1):
        """
        Initialise l'entraîneur.

        Args:
            config: Hyperparamètres d'entraînement
            logger: Logger de l'étape
            workers: Nombre de threads (1 = reproductible bit à bit)
        """
        self.config = config
        self.logger = logger
        self.workers = max(1, workers)

    def build_vocabulary(self, corpus: Iterable[Sequence[str]]) -> tuple[list[str], list[int]]:
        """
        Vocabulaire trié par fréquence décroissante puis par ordre lexicographique.

        Raises:
            EmptyVocabularyError: Si aucun mot n'atteint min_count
        """
        counts: Counter[str] = Counter()
        for tokens in corpus:
            counts.update(tokens)
        kept = sorted(
            ((word, count) for word, count in counts.items() if count >= self.config.min_count),
            key=lambda item: (-item[1], item[0]),
        )
        if not kept:
            raise EmptyVocabularyError(
                f"No word reaches min_count={self.config.min_count} in the training corpus"
            )
        return [word for word, _ in kept], [count for _, count in kept]

    def initialize(
        self, words: Sequence[str], counts: Sequence[int], rng: np.random.Generator
    ) -> EmbeddingModel:
        """Lignes d'entrée uniformes dans [-1/dim, 1/dim], lignes de sortie nulles (float32)."""
        bound = 1.0 / self.config.dim
        shape = (self.config.bucket_count + len(words), self.config.dim)
        input_vectors = rng.random(shape, dtype=np.float32)
        input_vectors *= 2 * bound
        input_vectors -= bound
        output_vectors = np.zeros((len(words), self.config.dim), dtype=np.float32)
        return EmbeddingModel(self.config, words, counts, input_vectors, output_vectors)

    def _train_shard(
        self,
        model: EmbeddingModel,
        sentences: Sequence[Sequence[int]],
        rows_by_word: Sequence[np.ndarray],
        rng: np.random.Generator,
        progress: tuple[int, int],
    ) -> tuple[float, int]:
        """Une passe sur un lot de phrases ; renvoie (somme des pertes, nombre d'instances)."""
        config = self.config
        sampler = NegativeSampler(model.counts, rng)
        processed, total = progress
        loss_sum, pairs = 0.0, 0

        for sentence in sentences:
            radii = rng.integers(1, config.window + 1, size=len(sentence))
            for position, target in enumerate(sentence):
                learning_rate = config.learning_rate * max(0.0, 1.0 - processed / total)
                processed += 1
                rows = rows_by_word[target]
                radius = int(radii[position])
                start = max(0, position - radius)
                end = min(len(sentence), position + radius + 1)
                for context_position in range(start, end):
                    if context_position == position:
                        continue
                    context = sentence[context_position]
                    negatives = sampler.sample(config.negatives, exclude=context)
                    targets = np.asarray((context, *negatives), dtype=np.int64)
                    loss_sum += _apply_update(model, rows, targets, learning_rate)
                    pairs += 1
        return loss_sum, pairs

    def train(self, corpus: Iterable[Sequence[str]]) -> EmbeddingModel:
        """
        Entraîne un modèle sur un corpus de phrases tokenisées.

        Args:
            corpus: Séquences de tokens (phrases valides)

        Returns:
            Le modèle entraîné, avec l'historique des pertes moyennes par époque

        Raises:
            EmptyVocabularyError: Si le vocabulaire est vide après filtrage
        """
        sentences = [list(tokens) for tokens in corpus]
        words, counts = self.build_vocabulary(sentences)
        rng = np.random.default_rng(self.config.seed)
        model = self.initialize(words, counts, rng)

        encoded = [
            [model.word2index[token] for token in tokens if token in model.word2index]
            for tokens in sentences
        ]
        encoded = [sentence for sentence in encoded if sentence]
        rows_by_word = [model.subword_rows(word) for word in words]
        tokens_per_epoch = sum(len(sentence) for sentence in encoded)
        total = max(1, tokens_per_epoch * self.config.epochs)

        self.logger.info(
            f"Training skipgram: {len(words)} words, {len(encoded)} sentences, "
            f"dim={self.config.dim}, buckets={self.config.bucket_count}, "
            f"epochs={self.config.epochs}, workers={self.workers}"
        )

        if self.workers > 1:
            shards = [encoded[i :: self.workers] for i in range(self.workers)]
            shard_rngs = [np.random.default_rng([self.config.seed, i]) for i in range(self.workers)]

        for epoch in range(self.config.epochs):
            processed = epoch * tokens_per_epoch
            if self.workers == 1:
                loss_sum, pairs = self._train_shard(
                    model, encoded, rows_by_word, rng, (processed, total)
                )
            else:
                with ThreadPoolExecutor(max_workers=self.workers) as executor:
                    results = list(
                        executor.map(
                            lambda args: self._train_shard(
                                model,
                                args[0],
                                rows_by_word,
                                args[1],
                                (processed // self.workers, max(1, total // self.workers)),
                            ),
                            zip(shards, shard_rngs),
                        )
                    )
                loss_sum = sum(result[0] for result in results)
                pairs = sum(result[1] for result in results)

            mean_loss = loss_sum / pairs if pairs else 0.0
            model.training_history.append(mean_loss)
            self.logger.info(
                f"  - Epoch {epoch + 1}/{self.config.epochs}: {pairs} instances, "
                f"mean loss {mean_loss:.4f}"
            )

        finite = np.isfinite(model.input_vectors).all() and np.isfinite(model.output_vectors).all()
        if not finite:
            self.logger.warning("Training produced non-finite vectors; lower the learning rate")
        return model


def train(
    corpus: Iterable[Sequence[str]],
    cfg: EmbeddingConfig,
    logger: logging.Logger | None = None,
    workers: int = 1,
) -> EmbeddingModel:
    """Entraîne un modèle skipgram à sous-mots (voir SkipgramTrainer)."""
    logger = logger or get_logger("embeddings")
    return SkipgramTrainer(cfg, logger, workers).train(corpus)
