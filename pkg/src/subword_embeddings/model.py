"""
Modèle de représentations de mots par sommes de n-grammes.

La matrice d'entrée contient d'abord les bucket_count lignes des n-grammes
hachés, puis une ligne par mot du vocabulaire. La matrice de sortie contient
un vecteur de contexte par mot du vocabulaire.
"""

from collections.abc import Mapping, Sequence
from types import MappingProxyType

import numpy as np

from ..core.config import EmbeddingConfig
from ..core.errors import OutOfVocabularyError
from .ngrams import extract_ngrams


class EmbeddingModel:
    """
    Modèle entraîné (ou chargé) : vocabulaire, vecteurs z_g et vecteurs v_c.

    Un modèle est traité comme immuable une fois l'entraînement terminé ;
    les lectures concurrentes sont sûres.
    """

    def __init__(
        self,
        config: EmbeddingConfig,
        words: Sequence[str],
        counts: Sequence[int],
        input_vectors: np.ndarray,
        output_vectors: np.ndarray | None = None,
    ):
        """
        Initialise le modèle.

        Args:
            config: Configuration (dimension, n-grammes, buckets)
            words: Vocabulaire, dans l'ordre des lignes
            counts: Fréquence de chaque mot dans le corpus
            input_vectors: Matrice (bucket_count + V) x dim
            output_vectors: Matrice V x dim, absente pour des vecteurs pré-entraînés

        Raises:
            ValueError: Si les dimensions des matrices sont incohérentes
        """
        if len(words) != len(counts):
            raise ValueError("words and counts must have the same length")
        expected = (config.bucket_count + len(words), config.dim)
        if input_vectors.shape != expected:
            raise ValueError(
                f"input matrix has shape {input_vectors.shape}, expected {expected}"
            )
        if output_vectors is not None and output_vectors.shape != (len(words), config.dim):
            raise ValueError(
                f"output matrix has shape {output_vectors.shape}, "
                f"expected {(len(words), config.dim)}"
            )

        self.config = config
        self.words = list(words)
        self.counts = [int(count) for count in counts]
        self.word2index = {word: index for index, word in enumerate(self.words)}
        self.input_vectors = input_vectors
        self.output_vectors = output_vectors
        self.training_history: list[float] = []
        self._rows_cache: dict[str, np.ndarray] = {}
        self._unit_matrix: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.config.dim

    @property
    def bucket_count(self) -> int:
        return self.config.bucket_count

    @property
    def vocabulary(self) -> Mapping[str, int]:
        """Table mot -> fréquence dans le corpus."""
        return MappingProxyType(dict(zip(self.words, self.counts)))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.word2index

    def word_row(self, index: int) -> int:
        """Ligne de la matrice d'entrée du mot d'indice donné."""
        return self.bucket_count + index

    def subword_rows(self, word: str) -> np.ndarray:
        """
        Ensemble G_w des lignes composant un mot.

        Args:
            word: Mot, dans le vocabulaire ou non

        Returns:
            Les indices de lignes (vide pour un mot inconnu sans buckets)
        """
        rows = self._rows_cache.get(word)
        if rows is None:
            index = self.word2index.get(word)
            word_row = self.word_row(index) if index is not None else None
            rows = np.asarray(extract_ngrams(word, self.config, word_row), dtype=np.int64)
            self._rows_cache[word] = rows
        return rows

    def word_vector(self, word: str) -> np.ndarray:
        """
        Vecteur d'un mot : somme des z_g de ses n-grammes (et de sa ligne propre).

        Un mot inconnu d'un modèle sans buckets a le vecteur nul.
        """
        rows = self.subword_rows(word)
        if rows.size == 0:
            return np.zeros(self.dim, dtype=self.input_vectors.dtype)
        return self.input_vectors[rows].sum(axis=0)

    def context_vector(self, word: str) -> np.ndarray:
        """
        Vecteur de contexte v_c d'un mot du vocabulaire.

        Raises:
            OutOfVocabularyError: Si le mot n'a pas de vecteur de sortie
        """
        index = self.word2index.get(word)
        if index is None or self.output_vectors is None:
            raise OutOfVocabularyError(word)
        return self.output_vectors[index]

    def score(self, w: str, c: str) -> float:
        """
        Score s(w, c) : somme des produits scalaires z_g . v_c sur G_w.

        Args:
            w: Mot cible (peut être hors vocabulaire)
            c: Mot de contexte (doit être dans le vocabulaire)

        Returns:
            Le score réel

        Raises:
            OutOfVocabularyError: Si c n'a pas de vecteur de contexte
        """
        v_c = self.context_vector(c)
        rows = self.subword_rows(w)
        if rows.size == 0:
            return 0.0
        return float((self.input_vectors[rows] @ v_c).sum())

    def nearest_neighbors(self, word: str, topn: int = 10) -> list[tuple[str, float]]:
        """
        Plus proches voisins d'un mot dans le vocabulaire, par similarité cosinus.

        Args:
            word: Mot de requête (peut être hors vocabulaire)
            topn: Nombre de voisins

        Returns:
            Couples (mot, cosinus) triés par similarité décroissante
        """
        query = self.word_vector(word)
        norm = np.linalg.norm(query)
        if norm == 0.0 or not self.words:
            return []

        if self._unit_matrix is None:
            matrix = np.stack([self.word_vector(other) for other in self.words])
            norms = np.linalg.norm(matrix, axis=1, keepdims=True)
            norms[norms == 0.0] = 1.0
            self._unit_matrix = matrix / norms

        similarities = self._unit_matrix @ (query / norm)
        order = sorted(
            (index for index, other in enumerate(self.words) if other != word),
            key=lambda index: (-similarities[index], self.words[index]),
        )
        return [(self.words[index], float(similarities[index])) for index in order[:topn]]


def score(w: str, c: str, model: EmbeddingModel) -> float:
    """Score s(w, c) du modèle."""
    return model.score(w, c)


def word_vector(word: str, model: EmbeddingModel) -> np.ndarray:
    """Vecteur composé d'un mot, y compris hors vocabulaire."""
    return model.word_vector(word)


def nearest_neighbors(
    word: str, model: EmbeddingModel, topn: int = 10
) -> list[tuple[str, float]]:
    """Plus proches voisins d'un mot dans le vocabulaire du modèle."""
    return model.nearest_neighbors(word, topn)
