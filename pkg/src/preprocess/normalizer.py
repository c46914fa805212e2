"""
Normalisation d'une phrase en séquence de tokens.

L'ordre du pipeline est fixe :
    1. repli de casse (après normalisation Unicode NFKC : cm² -> cm2)
    2. découpage sur les frontières non alphanumériques, en gardant intacts
       les tokens porteurs de chiffres et les expressions numériques
    3. remplacement de tout nombre (entier, décimal, scientifique, expression
       comme 128x300x350) par le token #number#
    4. remplacement des unités par leur forme canonique, y compris les unités
       collées à un nombre ("15.3kg" -> #number#, kilogram)
    5. correction orthographique des tokens hors vocabulaire
    6. suppression des mots vides
    7. dédoublonnage des #number# adjacents
"""

import re
import unicodedata
from collections.abc import Mapping, Set

from .models import StopWordList, UnitLexicon
from .spelling import SpellingCorrector

NUMBER_TOKEN = "#number#"

_NUMBER = r"\d+(?:[.,]\d+)*(?:e[+-]?\d+)?"
_NUMERIC_EXPRESSION = rf"{_NUMBER}(?:\s*[x×*/+\-^:]\s*{_NUMBER})*"

NUMERIC_RE = re.compile(rf"[+-]?{_NUMERIC_EXPRESSION}")

_TOKEN_RE = re.compile(
    rf"(?P<placeholder>{re.escape(NUMBER_TOKEN)})"
    rf"|(?P<number>{_NUMERIC_EXPRESSION})(?P<unit>°?[^\W\d_]+\d?)?"
    r"|(?P<word>°?[^\W_]+)"
)


def is_numeric(token: str) -> bool:
    """Vrai si le token est un nombre ou une expression numérique."""
    return NUMERIC_RE.fullmatch(token) is not None


class SentenceNormalizer:
    """
    Normaliseur de phrases partagé par les enquêtes et les attributs.

    Sans correcteur, l'étape 5 est sautée : c'est la forme utilisée pour
    compter les tokens du corpus avant de construire le vocabulaire.
    """

    def __init__(
        self,
        stop_words: StopWordList | Set[str],
        units: UnitLexicon | Mapping[str, tuple[str, ...]],
        corrector: SpellingCorrector | None = None,
    ):
        self.stop_words = stop_words
        self.units = units if isinstance(units, UnitLexicon) else UnitLexicon(units=units)
        self.corrector = corrector
        self._protected = self.units.canonical_tokens | {NUMBER_TOKEN}

    def lex(self, sentence: str) -> list[str]:
        """
        Étapes 1 à 4 : casse, découpage, nombres et unités collées.

        Les unités isolées ("25 kg") sont remplacées dans finish(), une fois
        les mots vides retirés : "25 in kg" et "25 kg" donnent le même résultat.

        Args:
            sentence: Phrase en texte brut

        Returns:
            Les tokens lexicaux (mots vides compris)
        """
        text = unicodedata.normalize("NFKC", sentence).casefold()
        tokens: list[str] = []

        for match in _TOKEN_RE.finditer(text):
            if match.group("placeholder") or match.group("number"):
                tokens.append(NUMBER_TOKEN)
                unit = match.group("unit")
                if unit:
                    tokens.extend(self.units.get(unit) or (unit,))
                continue

            word = match.group("word")
            tokens.append(NUMBER_TOKEN if is_numeric(word) else word)

        return tokens

    def _unit_after_number(self, token: str, result: list[str]) -> tuple[str, ...] | None:
        if result and result[-1] == NUMBER_TOKEN and token in self.units:
            return self.units.get(token)
        return None

    def finish(self, tokens: list[str]) -> list[str]:
        """
        Étapes 4 à 7 : unités isolées, correction, mots vides, dédoublonnage.

        Une unité isolée n'est remplacée que si le dernier token conservé est
        #number#, avant comme après sa correction orthographique. Le résultat
        est stable : normaliser à nouveau la phrase reconstituée ne change rien.

        Args:
            tokens: Sortie de lex()

        Returns:
            Les tokens normalisés ; une liste vide retire la phrase de VS
        """
        result: list[str] = []
        for token in tokens:
            canonical = self._unit_after_number(token, result)
            if canonical is None and self.corrector is not None and token not in self._protected:
                token = self.corrector.correct(token)
                canonical = self._unit_after_number(token, result)
            if canonical is not None:
                result.extend(canonical)
                continue
            if token in self.stop_words:
                continue
            if token == NUMBER_TOKEN and result and result[-1] == NUMBER_TOKEN:
                continue
            result.append(token)
        return result

    def normalize(self, sentence: str) -> list[str]:
        """Applique le pipeline complet à une phrase."""
        return self.finish(self.lex(sentence))

    __call__ = normalize


def normalize(
    sentence: str,
    stop: StopWordList | Set[str],
    units: UnitLexicon | Mapping[str, tuple[str, ...]],
    vocab: Mapping[str, int] | Set[str] | None = None,
) -> list[str]:
    """
    Normalise une phrase (Normalize(s) de l'algorithme de prétraitement).

    Args:
        sentence: Phrase en texte brut
        stop: Mots vides
        units: Lexique des unités
        vocab: Vocabulaire de correction ; None ou vide désactive la correction

    Returns:
        Les tokens normalisés (éventuellement vide)
    """
    corrector = SpellingCorrector(vocab) if vocab else None
    return SentenceNormalizer(stop, units, corrector).normalize(sentence)
