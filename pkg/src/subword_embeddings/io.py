"""
Lecture et écriture des fichiers de vecteurs au format texte.

Format :
    V D
    mot f1 ... fD                 (V lignes, vecteurs des mots entiers)
    BUCKETS G D MINN MAXN         (modèles à sous-mots uniquement)
    f1 ... fD                     (G lignes, vecteurs des n-grammes)
    OUTPUT V D                    (optionnel, vecteurs de contexte)
    f1 ... fD                     (V lignes, dans l'ordre des mots)

Les fichiers word2vec (avec en-tête) et GloVe (sans en-tête) sont lus comme
des modèles sans buckets.
"""

from collections.abc import Iterator
from pathlib import Path
from typing import BinaryIO

import numpy as np

from ..core.config import EmbeddingConfig
from ..core.errors import VectorFormatError
from .model import EmbeddingModel


def _format_row(row: np.ndarray) -> str:
    # Plus courte écriture décimale relue à l'identique dans le type de la matrice
    return " ".join(str(value) for value in row)


def save(model: EmbeddingModel, path: str | Path) -> None:
    """
    Enregistre un modèle ; le rechargement redonne les mêmes vecteurs bit à bit.

    Args:
        model: Modèle à enregistrer
        path: Fichier de destination (les répertoires parents sont créés)
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    config = model.config
    vocabulary_size = len(model.words)

    with path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(f"{vocabulary_size} {config.dim}\n")
        for index, word in enumerate(model.words):
            f.write(f"{word} {_format_row(model.input_vectors[model.word_row(index)])}\n")

        if config.bucket_count > 0:
            f.write(
                f"BUCKETS {config.bucket_count} {config.dim} "
                f"{config.ngram_min} {config.ngram_max}\n"
            )
            for row in model.input_vectors[: config.bucket_count]:
                f.write(f"{_format_row(row)}\n")

        if model.output_vectors is not None:
            f.write(f"OUTPUT {vocabulary_size} {config.dim}\n")
            for row in model.output_vectors:
                f.write(f"{_format_row(row)}\n")


class _VectorReader:
    """Lecteur ligne à ligne qui garde le numéro de ligne pour les erreurs."""

    def __init__(self, path: Path, handle: BinaryIO):
        self.path = path
        self._lines: Iterator[tuple[int, bytes]] = enumerate(handle, start=1)
        self.line_number = 0
        self._pending: tuple[int, str] | None = None

    def next_fields(self) -> list[str] | None:
        """Champs de la prochaine ligne non vide, ou None en fin de fichier."""
        if self._pending is not None:
            self.line_number, line = self._pending
            self._pending = None
            return line.split()
        for self.line_number, raw in self._lines:
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise self.error(f"invalid UTF-8: {e.reason}") from e
            if line.strip():
                return line.split()
        return None

    def push_back(self, fields: list[str]) -> None:
        self._pending = (self.line_number, " ".join(fields))

    def error(self, message: str) -> VectorFormatError:
        return VectorFormatError(message, self.path, self.line_number)

    def floats(self, fields: list[str], dim: int) -> list[float]:
        if len(fields) != dim:
            raise self.error(f"expected {dim} values, found {len(fields)}")
        try:
            return [float(value) for value in fields]
        except ValueError as e:
            raise self.error(f"invalid number: {e}") from e

    def header(self, fields: list[str], size: int) -> list[int]:
        try:
            values = [int(value) for value in fields]
        except ValueError as e:
            raise self.error(f"invalid section header '{' '.join(fields)}'") from e
        if len(values) != size or any(value < 0 for value in values):
            raise self.error(f"invalid section header '{' '.join(fields)}'")
        return values


def _read_word_rows(
    reader: _VectorReader, expected: int | None, dim: int | None
) -> tuple[list[str], list[list[float]], int, list[str] | None]:
    """Lit les lignes "mot f1 ... fD" jusqu'à une section ou la fin du fichier."""
    words: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    while True:
        fields = reader.next_fields()
        if fields is None or fields[0] in ("BUCKETS", "OUTPUT"):
            break
        if expected is not None and len(words) == expected:
            raise reader.error(f"more word vectors than the {expected} declared in the header")
        if dim is None:
            dim = len(fields) - 1
            if dim < 1:
                raise reader.error("vector line has no values")
        word = fields[0]
        if word in seen:
            raise reader.error(f"duplicate word '{word}'")
        seen.add(word)
        words.append(word)
        rows.append(reader.floats(fields[1:], dim))

    if expected is not None and len(words) != expected:
        raise reader.error(f"header declares {expected} words, found {len(words)}")
    if dim is None:
        raise reader.error("no vectors in file")
    return words, rows, dim, fields


def _read_matrix(reader: _VectorReader, count: int, dim: int, section: str) -> np.ndarray:
    matrix = np.empty((count, dim), dtype=np.float32)
    for index in range(count):
        fields = reader.next_fields()
        if fields is None:
            raise reader.error(f"section {section} declares {count} rows, found {index}")
        matrix[index] = reader.floats(fields, dim)
    return matrix


def load_pretrained(path: str | Path) -> EmbeddingModel:
    """
    Charge un fichier de vecteurs (modèle enregistré, word2vec ou GloVe).

    Args:
        path: Fichier texte de vecteurs

    Returns:
        Le modèle ; sans section BUCKETS il ne compose pas les mots inconnus

    Raises:
        VectorFormatError: Dimension incohérente, en-tête faux ou nombre de lignes erroné
    """
    path = Path(path)
    with path.open("rb") as handle:
        reader = _VectorReader(path, handle)
        first = reader.next_fields()
        if first is None:
            raise reader.error("empty vector file")

        expected: int | None = None
        dim: int | None = None
        if len(first) == 2:
            expected, dim = reader.header(first, 2)
            if dim < 1:
                raise reader.error("dimension must be positive")
        else:
            # GloVe : pas d'en-tête, la première ligne est déjà un vecteur
            reader.push_back(first)

        words, rows, dim, fields = _read_word_rows(reader, expected, dim)

        bucket_count, ngram_min, ngram_max = 0, 3, 6
        buckets = np.empty((0, dim), dtype=np.float32)
        if fields is not None and fields[0] == "BUCKETS":
            bucket_count, section_dim, ngram_min, ngram_max = reader.header(fields[1:], 4)
            if section_dim != dim:
                raise reader.error(f"BUCKETS dimension {section_dim} differs from {dim}")
            buckets = _read_matrix(reader, bucket_count, dim, "BUCKETS")
            fields = reader.next_fields()

        output_vectors = None
        if fields is not None and fields[0] == "OUTPUT":
            output_count, section_dim = reader.header(fields[1:], 2)
            if output_count != len(words) or section_dim != dim:
                raise reader.error(
                    f"OUTPUT section {output_count}x{section_dim} does not match "
                    f"{len(words)}x{dim}"
                )
            output_vectors = _read_matrix(reader, output_count, dim, "OUTPUT")
            fields = reader.next_fields()

        if fields is not None:
            raise reader.error(f"unexpected content '{' '.join(fields[:3])}'")

    try:
        config = EmbeddingConfig(
            dim=dim, bucket_count=bucket_count, ngram_min=ngram_min, ngram_max=ngram_max
        )
    except ValueError as e:
        raise VectorFormatError(f"invalid model parameters: {e}", path) from e

    word_rows = np.asarray(rows, dtype=np.float32).reshape(len(words), dim)
    input_vectors = np.concatenate([buckets, word_rows]) if bucket_count else word_rows
    return EmbeddingModel(config, words, [0] * len(words), input_vectors, output_vectors)
