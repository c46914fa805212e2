"""
Chargement et validation de la tranche du graphe de connaissances.

Ce module contient la classe KGLoader qui centralise la lecture des trois
fichiers d'entrée (catégories, enquêtes, annotations) et garantit
l'intégrité référentielle entre eux.
"""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType

from pydantic import ValidationError

from ..core.errors import DataLoadError
from ..core.jsonl import iter_records, write_records
from .models import (
    AttributeDef,
    CategoryRecord,
    CategorySchema,
    Enquiry,
    EnquiryRecord,
    GroundTruth,
    LabelRecord,
    clean_value,
    normalize_name,
)


@dataclass
class LoadStats:
    """Compteurs de chargement."""

    categories: int = 0
    dropped_attributes: int = 0
    enquiries: int = 0
    skipped_enquiries: int = 0
    labels: int = 0


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]


class KGLoader:
    """
    Classe responsable du chargement du graphe de connaissances et du corpus.

    Cette classe encapsule toute la logique de :
    - Lecture et validation des catégories et de leurs attributs
    - Lecture des enquêtes avec résolution de leur catégorie
    - Lecture des annotations avec résolution des noms d'attributs

    Les catégories doivent être chargées en premier ; les objets retournés
    sont immuables et peuvent être partagés entre plusieurs lecteurs.
    """

    def __init__(self, logger: logging.Logger):
        """
        Initialise le loader.

        Args:
            logger: Instance du logger pour enregistrer les messages
        """
        self.logger = logger
        self.stats = LoadStats()
        self._categories: dict[str, CategorySchema] = {}

    @property
    def categories(self) -> Mapping[str, CategorySchema]:
        """Catégories chargées, indexées par identifiant (lecture seule)."""
        return MappingProxyType(self._categories)

    def load_categories(self, path: str | Path) -> list[CategorySchema]:
        """
        Charge le fichier des catégories.

        Les attributs sans aucune valeur non vide sont écartés (avec un
        avertissement) ; les noms d'attributs en double dans une même
        catégorie sont refusés.

        Args:
            path: Fichier JSONL des catégories

        Returns:
            Les catégories dans l'ordre du fichier

        Raises:
            DataLoadError: Ligne mal formée, catégorie ou attribut en double
        """
        path = Path(path)
        self.logger.info(f"Loading categories from '{path}'...")
        categories: list[CategorySchema] = []
        self._categories = {}

        for line_number, raw in iter_records(path):
            try:
                record = CategoryRecord.model_validate(raw)
            except ValidationError as e:
                raise DataLoadError(_first_error(e), path, line_number) from e

            if record.category_id in self._categories:
                raise DataLoadError(
                    f"duplicate category_id '{record.category_id}'", path, line_number
                )

            attributes: list[AttributeDef] = []
            seen_names: set[tuple[str, ...]] = set()
            for attribute in record.attributes:
                name = normalize_name(attribute.name)
                if not name:
                    raise DataLoadError("blank attribute name", path, line_number)
                if name in seen_names:
                    raise DataLoadError(
                        f"duplicate attribute '{' '.join(name)}' in category "
                        f"'{record.category_id}'",
                        path,
                        line_number,
                    )
                seen_names.add(name)

                values = frozenset(
                    cleaned for cleaned in map(clean_value, attribute.values) if cleaned
                )
                if not values:
                    self.stats.dropped_attributes += 1
                    self.logger.warning(
                        f"  - Dropped attribute '{attribute.name}' of category "
                        f"'{record.category_id}': no values (line {line_number})"
                    )
                    continue

                attributes.append(
                    AttributeDef(name=name, raw_name=attribute.name, values=values)
                )

            schema = CategorySchema(
                category_id=record.category_id, attributes=tuple(attributes)
            )
            self._categories[schema.category_id] = schema
            categories.append(schema)

        self.stats.categories = len(categories)
        self.logger.info(
            f"Loaded {len(categories)} categories "
            f"({self.stats.dropped_attributes} attributes dropped)"
        )
        return categories

    def load_enquiries(self, path: str | Path) -> list[Enquiry]:
        """
        Charge le fichier des enquêtes.

        Les enquêtes dont la catégorie est inconnue sont ignorées et comptées :
        un corpus externe est sale par hypothèse.

        Args:
            path: Fichier JSONL des enquêtes

        Returns:
            Les enquêtes valides dans l'ordre du fichier

        Raises:
            DataLoadError: Ligne mal formée ou catégories non chargées
        """
        path = Path(path)
        self._require_categories("enquiries")
        self.logger.info(f"Loading enquiries from '{path}'...")

        enquiries: list[Enquiry] = []
        skipped = 0
        for line_number, raw in iter_records(path):
            try:
                record = EnquiryRecord.model_validate(raw)
            except ValidationError as e:
                raise DataLoadError(_first_error(e), path, line_number) from e

            if record.category_id not in self._categories:
                skipped += 1
                self.logger.debug(
                    f"  - Skipped enquiry '{record.enquiry_id}': unknown category "
                    f"'{record.category_id}' (line {line_number})"
                )
                continue

            enquiries.append(
                Enquiry(
                    enquiry_id=record.enquiry_id,
                    category_id=record.category_id,
                    raw_text=record.text,
                )
            )

        self.stats.enquiries = len(enquiries)
        self.stats.skipped_enquiries = skipped
        if skipped:
            self.logger.warning(f"Skipped {skipped} enquiries with unknown category")
        self.logger.info(f"Loaded {len(enquiries)} enquiries")
        return enquiries

    def load_ground_truth(self, path: str | Path) -> list[GroundTruth]:
        """
        Charge le fichier des annotations (M_a par catégorie).

        Les noms sont normalisés comme les noms d'attributs ("Color" -> "color").

        Args:
            path: Fichier JSONL des annotations

        Returns:
            Une annotation par catégorie, dans l'ordre du fichier

        Raises:
            DataLoadError: Catégorie inconnue, liste vide ou nom d'attribut inexistant
        """
        path = Path(path)
        self._require_categories("labels")
        self.logger.info(f"Loading ground truth from '{path}'...")

        truths: list[GroundTruth] = []
        seen: set[str] = set()
        for line_number, raw in iter_records(path):
            try:
                record = LabelRecord.model_validate(raw)
            except ValidationError as e:
                raise DataLoadError(_first_error(e), path, line_number) from e

            schema = self._categories.get(record.category_id)
            if schema is None:
                raise DataLoadError(
                    f"unknown category '{record.category_id}'", path, line_number
                )
            if record.category_id in seen:
                raise DataLoadError(
                    f"duplicate labels for category '{record.category_id}'",
                    path,
                    line_number,
                )
            seen.add(record.category_id)

            names = {" ".join(normalize_name(name)) for name in record.important_attributes}
            names.discard("")
            if not names:
                raise DataLoadError(
                    f"no important attributes for category '{record.category_id}'",
                    path,
                    line_number,
                )

            unknown = sorted(names - schema.attribute_keys())
            if unknown:
                raise DataLoadError(
                    f"unknown attributes for category '{record.category_id}': "
                    + ", ".join(repr(name) for name in unknown),
                    path,
                    line_number,
                )

            truths.append(
                GroundTruth(
                    category_id=record.category_id,
                    important_attributes=frozenset(names),
                )
            )

        self.stats.labels = len(truths)
        self.logger.info(f"Loaded ground truth for {len(truths)} categories")
        return truths

    def _require_categories(self, what: str) -> None:
        if not self._categories:
            self.logger.warning(f"No categories loaded before loading {what}")


def dump_categories(categories: Iterable[CategorySchema], path: str | Path) -> int:
    """
    Écrit des catégories au format du fichier d'entrée (valeurs triées).

    Args:
        categories: Catégories à sérialiser
        path: Fichier de destination

    Returns:
        Le nombre de catégories écrites
    """
    return write_records(
        path,
        (
            {
                "category_id": schema.category_id,
                "attributes": [
                    {"name": attribute.raw_name, "values": sorted(attribute.values)}
                    for attribute in schema.attributes
                ],
            }
            for schema in categories
        ),
    )
