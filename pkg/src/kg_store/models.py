"""
Modèles de données de la tranche du graphe de connaissances.

Ce module contient les types immuables partagés par toutes les étapes
(catégories, attributs, enquêtes, annotations), ainsi que les modèles des
enregistrements bruts tels qu'ils apparaissent dans les fichiers d'entrée.
"""

from pydantic import BaseModel, ConfigDict, Field


def normalize_name(raw: str) -> tuple[str, ...]:
    """Normalise un nom d'attribut : casse repliée et espaces compactés."""
    return tuple(raw.casefold().split())


def clean_value(raw: str) -> str:
    """Compacte les espaces d'une valeur d'attribut."""
    return " ".join(raw.split())


class AttributeDef(BaseModel):
    """
    Définition d'un attribut d'une catégorie.

    `name` est la séquence de tokens normalisée, `values` l'ensemble V_att
    des valeurs possibles de l'attribut.
    """

    model_config = ConfigDict(frozen=True)

    name: tuple[str, ...]
    raw_name: str
    values: frozenset[str]

    @property
    def key(self) -> str:
        """Nom normalisé sous forme de chaîne, identifiant de l'attribut."""
        return " ".join(self.name)


class CategorySchema(BaseModel):
    """Attributs d'une catégorie de produits."""

    model_config = ConfigDict(frozen=True)

    category_id: str = Field(min_length=1)
    attributes: tuple[AttributeDef, ...] = ()

    def attribute_keys(self) -> set[str]:
        return {attribute.key for attribute in self.attributes}


class Enquiry(BaseModel):
    """Enquête d'acheteur rattachée à une catégorie (HTML autorisé)."""

    model_config = ConfigDict(frozen=True)

    enquiry_id: str
    category_id: str
    raw_text: str


class GroundTruth(BaseModel):
    """Attributs annotés comme importants (M_a) pour une catégorie."""

    model_config = ConfigDict(frozen=True)

    category_id: str
    important_attributes: frozenset[str]


# === ENREGISTREMENTS BRUTS DES FICHIERS D'ENTRÉE ===


class AttributeRecord(BaseModel):
    name: str = Field(min_length=1)
    values: list[str] = []


class CategoryRecord(BaseModel):
    category_id: str = Field(min_length=1)
    attributes: list[AttributeRecord] = []


class EnquiryRecord(BaseModel):
    enquiry_id: str = Field(min_length=1)
    category_id: str = Field(min_length=1)
    text: str = ""


class LabelRecord(BaseModel):
    category_id: str = Field(min_length=1)
    important_attributes: list[str]
