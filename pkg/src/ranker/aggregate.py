"""
Agrégation des correspondances en classement d'importance par catégorie.

Tri : nombre de correspondances décroissant, puis score moyen décroissant,
puis nom d'attribut. Les top_k premiers forment l'ensemble S_a.
"""

import math
from collections import defaultdict
from collections.abc import Iterable
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from ..matcher.models import MatchRecord


class RankedEntry(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    attribute_name: str = Field(alias="attribute")
    match_count: int = Field(ge=1)
    mean_score: float

    @field_serializer("mean_score")
    def _round_score(self, mean_score: float) -> float:
        return round(mean_score, 6)


class RankedAttributes(BaseModel):
    """Classement complet d'une catégorie et attributs sélectionnés (S_a)."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    category_id: str
    method: str = "subword"
    selected: tuple[str, ...] = ()
    entries: tuple[RankedEntry, ...] = Field(default=(), alias="full_ranking")
    top_k: int = Field(default=5, ge=1)


def _ranking_key(entry: RankedEntry) -> tuple[int, float, str]:
    return (-entry.match_count, -entry.mean_score, entry.attribute_name)


def aggregate(
    matches: Iterable[MatchRecord],
    top_k: int = 5,
    count_unit: Literal["records", "enquiries"] = "records",
    min_evidence: int = 0,
    method: str = "subword",
) -> list[RankedAttributes]:
    """
    Agrège les correspondances par catégorie.

    Args:
        matches: Correspondances (l'ordre n'a pas d'importance)
        top_k: Nombre d'attributs sélectionnés par catégorie
        count_unit: Compte des correspondances ("records") ou des enquêtes distinctes
        min_evidence: Nombre minimal de correspondances dans la catégorie pour
            sélectionner des attributs
        method: Nom de la méthode ayant produit les correspondances

    Returns:
        Un classement par catégorie, trié par identifiant de catégorie
    """
    scores: dict[str, dict[str, list[float]]] = defaultdict(lambda: defaultdict(list))
    enquiries: dict[str, dict[str, set[str]]] = defaultdict(lambda: defaultdict(set))
    for record in matches:
        scores[record.category_id][record.attribute_name].append(record.score)
        enquiries[record.category_id][record.attribute_name].add(record.enquiry_id)

    rankings: list[RankedAttributes] = []
    for category_id in sorted(scores):
        per_attribute = scores[category_id]
        entries = sorted(
            (
                RankedEntry(
                    attribute_name=name,
                    match_count=(
                        len(values)
                        if count_unit == "records"
                        else len(enquiries[category_id][name])
                    ),
                    mean_score=math.fsum(values) / len(values),
                )
                for name, values in per_attribute.items()
            ),
            key=_ranking_key,
        )
        evidence = sum(len(values) for values in per_attribute.values())
        selected = (
            tuple(entry.attribute_name for entry in entries[:top_k])
            if evidence >= min_evidence
            else ()
        )
        rankings.append(
            RankedAttributes(
                category_id=category_id,
                method=method,
                selected=selected,
                entries=tuple(entries),
                top_k=top_k,
            )
        )
    return rankings
