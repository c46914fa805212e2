"""Méthodes de comparaison : TextRank et vecteurs de mots entiers."""

from .textrank import (
    TEXTRANK_METHOD,
    CooccurrenceGraph,
    TextRankScores,
    build_graph,
    rank_categories,
    textrank,
    textrank_attributes,
)
from .wordvec import WORDVEC_METHOD, build_wordvec_model, whole_word_config

__all__ = [
    "TEXTRANK_METHOD",
    "CooccurrenceGraph",
    "TextRankScores",
    "build_graph",
    "rank_categories",
    "textrank",
    "textrank_attributes",
    "WORDVEC_METHOD",
    "build_wordvec_model",
    "whole_word_config",
]
