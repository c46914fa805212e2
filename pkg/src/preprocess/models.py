"""
Types produits par l'étape de prétraitement.
"""

from collections.abc import Mapping
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

DiscardReason = Literal["empty", "non_english", "spam"]


class CleanSentence(BaseModel):
    """Phrase valide (élément de VS) : tokens normalisés non vides."""

    model_config = ConfigDict(frozen=True)

    enquiry_id: str
    category_id: str
    sentence_index: int = Field(ge=0)
    tokens: tuple[str, ...] = Field(min_length=1)


class FilterDecision(BaseModel):
    """Décision du filtre d'enquêtes invalides."""

    model_config = ConfigDict(frozen=True)

    keep: bool
    reason: DiscardReason | None = None


class StopWordList(BaseModel):
    """Liste de mots vides, appartenance exacte sur tokens normalisés."""

    model_config = ConfigDict(frozen=True)

    words: frozenset[str]

    def __contains__(self, token: object) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)


class UnitLexicon(BaseModel):
    """
    Formes de surface des unités de mesure vers leurs tokens canoniques.

    Une forme canonique peut compter plusieurs mots (cm2 -> centimeter area).
    """

    model_config = ConfigDict(frozen=True)

    units: Mapping[str, tuple[str, ...]]

    def get(self, surface: str) -> tuple[str, ...] | None:
        return self.units.get(surface)

    def __contains__(self, surface: object) -> bool:
        return surface in self.units

    @property
    def canonical_tokens(self) -> frozenset[str]:
        return frozenset(token for tokens in self.units.values() for token in tokens)


class CleanAttribute(BaseModel):
    """Attribut fusionné et normalisé, prêt pour l'appariement."""

    model_config = ConfigDict(frozen=True)

    name: str
    name_tokens: tuple[str, ...]
    value_tokens: tuple[tuple[str, ...], ...]

    @property
    def tokens(self) -> frozenset[str]:
        """Tous les tokens du nom et des valeurs."""
        return frozenset(self.name_tokens).union(*self.value_tokens)


class CleanCategory(BaseModel):
    """
    Catégorie nettoyée.

    `aliases` associe chaque nom d'attribut d'origine au nom qui a survécu
    à la fusion (un nom survivant est son propre alias).
    """

    model_config = ConfigDict(frozen=True)

    category_id: str
    attributes: tuple[CleanAttribute, ...]
    aliases: dict[str, str] = {}

    def canonical(self, name: str) -> str:
        return self.aliases.get(name, name)
