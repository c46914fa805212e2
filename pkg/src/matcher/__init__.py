"""Appariement des phrases valides avec les attributs (similarité cosinus)."""

from .models import MatchRecord
from .similarity import (
    SentenceMatcher,
    attribute_vector,
    cosine,
    match_sentence,
    mean_vector,
    select_matches,
    sentence_vector,
)

__all__ = [
    "MatchRecord",
    "SentenceMatcher",
    "attribute_vector",
    "cosine",
    "match_sentence",
    "mean_vector",
    "select_matches",
    "sentence_vector",
]
