"""
N-grammes de caractères et hachage vers les lignes de la matrice d'entrée.

Le mot est encadré par les marqueurs "<" et ">" ; chaque n-gramme de
longueur ngram_min..ngram_max est haché avec FNV-1a 32 bits (sur son
encodage UTF-8) puis réduit modulo bucket_count.
"""

from ..core.config import EmbeddingConfig

FNV_OFFSET_BASIS = 2166136261
FNV_PRIME = 16777619
BOW = "<"
EOW = ">"


def fnv1a_32(data: bytes) -> int:
    """Hachage FNV-1a 32 bits."""
    h = FNV_OFFSET_BASIS
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFF
    return h


def character_ngrams(word: str, ngram_min: int, ngram_max: int) -> list[str]:
    """
    N-grammes du mot encadré, dans l'ordre des positions puis des longueurs.

    Args:
        word: Mot non vide
        ngram_min: Longueur minimale
        ngram_max: Longueur maximale

    Returns:
        Les n-grammes (avec répétitions éventuelles)
    """
    marked = f"{BOW}{word}{EOW}"
    ngrams = []
    for start in range(len(marked)):
        for length in range(ngram_min, ngram_max + 1):
            if start + length > len(marked):
                break
            ngrams.append(marked[start : start + length])
    return ngrams


def extract_ngrams(
    word: str, cfg: EmbeddingConfig, word_row: int | None = None
) -> list[int]:
    """
    Lignes de la matrice d'entrée composant un mot (G_w).

    Args:
        word: Mot non vide
        cfg: Configuration (bornes des n-grammes, nombre de buckets)
        word_row: Ligne dédiée au mot entier s'il est dans le vocabulaire

    Returns:
        Les indices des buckets des n-grammes, suivis de la ligne du mot entier
    """
    rows: list[int] = []
    if cfg.bucket_count > 0:
        rows = [
            fnv1a_32(ngram.encode("utf-8")) % cfg.bucket_count
            for ngram in character_ngrams(word, cfg.ngram_min, cfg.ngram_max)
        ]
    if word_row is not None:
        rows.append(word_row)
    return rows
