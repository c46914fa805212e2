"""
Prétraitement des enquêtes et des attributs (phrases valides VS).

Usage:
    from src.preprocess import Preprocessor, load_stop_words, load_unit_lexicon

    preprocessor = Preprocessor(config, load_stop_words(), load_unit_lexicon(), logger)
    result = preprocessor.run(categories, enquiries)
"""

from .attributes import clean_categories, merge_attributes, merge_with_aliases
from .filters import filter_invalid
from .html import strip_html
from .models import (
    CleanAttribute,
    CleanCategory,
    CleanSentence,
    FilterDecision,
    StopWordList,
    UnitLexicon,
)
from .normalizer import NUMBER_TOKEN, SentenceNormalizer, is_numeric, normalize
from .pipeline import PreprocessResult, Preprocessor, PreprocessStats
from .resources import load_stop_words, load_unit_lexicon
from .spelling import SpellingCorrector, correct_spelling, levenshtein
from .splitter import split_sentences

__all__ = [
    "clean_categories",
    "merge_attributes",
    "merge_with_aliases",
    "filter_invalid",
    "strip_html",
    "CleanAttribute",
    "CleanCategory",
    "CleanSentence",
    "FilterDecision",
    "StopWordList",
    "UnitLexicon",
    "NUMBER_TOKEN",
    "SentenceNormalizer",
    "is_numeric",
    "normalize",
    "PreprocessResult",
    "Preprocessor",
    "PreprocessStats",
    "load_stop_words",
    "load_unit_lexicon",
    "SpellingCorrector",
    "correct_spelling",
    "levenshtein",
    "split_sentences",
]
