"""
Filtre des enquêtes invalides (non anglaises ou spam).

Les heuristiques sont des seuils sur les classes de caractères et des
comptages de motifs, tous exposés dans PreprocessConfig.
"""

import re

from ..core.config import PreprocessConfig
from .models import FilterDecision

# Une URL est comptée une fois, avec ou sans schéma ("https://www.x.com" = 1)
_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)


def latin_fraction(text: str) -> float | None:
    """
    Fraction des caractères alphabétiques appartenant au latin de base (A-Z, a-z).

    Returns:
        La fraction, ou None si le texte ne contient aucune lettre
    """
    letters = [char for char in text if char.isalpha()]
    if not letters:
        return None
    latin = sum(1 for char in letters if char.isascii())
    return latin / len(letters)


def filter_invalid(text: str, config: PreprocessConfig | None = None) -> FilterDecision:
    """
    Décide si une enquête en texte brut est conservée.

    Une enquête est écartée si elle est vide, si moins de
    `min_latin_fraction` de ses lettres sont latines, si elle contient au
    moins `max_urls` URL ou une répétition d'au moins `max_char_run` fois
    le même caractère.

    Args:
        text: Texte brut (après strip_html)
        config: Seuils ; valeurs par défaut si None

    Returns:
        FilterDecision avec la raison du rejet éventuel
    """
    config = config or PreprocessConfig()

    if not text.strip():
        return FilterDecision(keep=False, reason="empty")

    fraction = latin_fraction(text)
    if fraction is None or fraction < config.min_latin_fraction:
        return FilterDecision(keep=False, reason="non_english")

    if len(_URL_RE.findall(text)) >= config.max_urls:
        return FilterDecision(keep=False, reason="spam")

    run_re = re.compile(rf"(\S)\1{{{config.max_char_run - 1},}}")
    if run_re.search(text):
        return FilterDecision(keep=False, reason="spam")

    return FilterDecision(keep=True)
