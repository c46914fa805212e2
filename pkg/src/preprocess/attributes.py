"""
Fusion et normalisation des attributs d'une catégorie.

Deux attributs sont fusionnés lorsque l'ensemble des tokens du nom de l'un
est contenu dans celui de l'autre ("type" et "product type") : le nom le
plus court survit et les valeurs sont réunies. La fusion est calculée
jusqu'au point fixe et ne dépend pas de l'ordre d'entrée.
"""

import logging
from collections.abc import Iterable, Sequence

from ..kg_store.models import AttributeDef, CategorySchema
from .models import CleanAttribute, CleanCategory
from .normalizer import SentenceNormalizer


def _generality(attribute: AttributeDef) -> tuple[int, int, str]:
    return (len(set(attribute.name)), len(attribute.name), attribute.key)


def merge_with_aliases(
    attributes: Sequence[AttributeDef],
) -> tuple[list[AttributeDef], dict[str, str]]:
    """
    Fusionne les attributs par inclusion de noms.

    Args:
        attributes: Attributs d'une catégorie (noms normalisés et uniques)

    Returns:
        Les attributs survivants triés par nom, et la table nom d'origine -> survivant
    """
    survivors = {attribute.key: attribute for attribute in attributes}
    aliases = {key: key for key in survivors}

    changed = True
    while changed:
        changed = False
        ordered = sorted(survivors.values(), key=_generality)
        for i, general in enumerate(ordered):
            general_tokens = set(general.name)
            specific = next(
                (other for other in ordered[i + 1 :] if general_tokens <= set(other.name)),
                None,
            )
            if specific is None:
                continue

            survivors[general.key] = AttributeDef(
                name=general.name,
                raw_name=general.raw_name,
                values=general.values | specific.values,
            )
            del survivors[specific.key]
            for alias, target in aliases.items():
                if target == specific.key:
                    aliases[alias] = general.key
            changed = True
            break

    merged = sorted(survivors.values(), key=lambda attribute: attribute.key)
    return merged, dict(sorted(aliases.items()))


def merge_attributes(attributes: Sequence[AttributeDef]) -> list[AttributeDef]:
    """
    Fusionne les attributs dont un nom contient l'autre.

    Args:
        attributes: Attributs d'une catégorie

    Returns:
        Les attributs survivants, triés par nom
    """
    merged, _ = merge_with_aliases(attributes)
    return merged


def clean_categories(
    categories: Iterable[CategorySchema],
    normalizer: SentenceNormalizer,
    logger: logging.Logger,
) -> list[CleanCategory]:
    """
    Fusionne puis normalise les attributs de chaque catégorie.

    Les valeurs sont normalisées avec le même pipeline que les phrases ; un
    attribut dont aucune valeur ne survit est écarté.

    Args:
        categories: Catégories chargées
        normalizer: Normaliseur complet (avec correction orthographique)
        logger: Logger de l'étape

    Returns:
        Les catégories nettoyées, triées par identifiant
    """
    cleaned: list[CleanCategory] = []
    for schema in sorted(categories, key=lambda schema: schema.category_id):
        merged, aliases = merge_with_aliases(schema.attributes)
        if len(merged) < len(schema.attributes):
            logger.info(
                f"  - Category '{schema.category_id}': merged "
                f"{len(schema.attributes)} attributes into {len(merged)}"
            )

        attributes: list[CleanAttribute] = []
        for attribute in merged:
            value_tokens = sorted(
                {
                    tuple(tokens)
                    for tokens in map(normalizer.normalize, sorted(attribute.values))
                    if tokens
                }
            )
            if not value_tokens:
                logger.warning(
                    f"  - Dropped attribute '{attribute.key}' of category "
                    f"'{schema.category_id}': no value survives normalization"
                )
                continue
            attributes.append(
                CleanAttribute(
                    name=attribute.key,
                    name_tokens=tuple(normalizer.normalize(attribute.key)),
                    value_tokens=tuple(value_tokens),
                )
            )

        cleaned.append(
            CleanCategory(
                category_id=schema.category_id,
                attributes=tuple(attributes),
                aliases=aliases,
            )
        )
    return cleaned
