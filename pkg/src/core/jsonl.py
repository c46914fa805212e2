"""
Lecture et écriture des fichiers d'enregistrements ligne par ligne (JSONL).

Tous les artefacts échangés entre les étapes utilisent ce format : un objet
JSON par ligne, UTF-8, clés dans l'ordre des champs, séparateurs fixes
(", " et ": "), ce qui rend deux exécutions identiques octet pour octet.
"""

import json
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from .errors import DataLoadError


def iter_records(path: str | Path) -> Iterator[tuple[int, dict[str, Any]]]:
    """
    Parcourt un fichier JSONL en ignorant les lignes vides.

    Args:
        path: Chemin du fichier

    Yields:
        Couples (numéro de ligne à partir de 1, objet décodé)

    Raises:
        DataLoadError: Si une ligne n'est pas de l'UTF-8 ou pas un objet JSON valide
    """
    path = Path(path)
    with path.open("rb") as f:
        for line_number, raw in enumerate(f, start=1):
            try:
                line = raw.decode("utf-8").strip()
            except UnicodeDecodeError as e:
                raise DataLoadError(f"invalid UTF-8: {e.reason}", path, line_number) from e
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise DataLoadError(f"malformed JSON: {e.msg}", path, line_number) from e
            if not isinstance(record, dict):
                raise DataLoadError("record is not a JSON object", path, line_number)
            yield line_number, record


_SEPARATORS = (", ", ": ")


def _dumps(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, separators=_SEPARATORS)


def dumps_record(record: BaseModel | dict[str, Any]) -> str:
    """
    Sérialise un enregistrement sur une seule ligne.

    Un modèle peut déclarer `fixed_decimals` (clé -> nombre de décimales) :
    ces nombres sont écrits en virgule fixe ("score": 0.800000).
    """
    fixed: dict[str, int] = {}
    if isinstance(record, BaseModel):
        fixed = getattr(record, "fixed_decimals", {})
        record = record.model_dump(mode="json", by_alias=True)
    if not fixed:
        return _dumps(record)
    fields = (
        f"{_dumps(key)}: "
        + (f"{value:.{fixed[key]}f}" if key in fixed else _dumps(value))
        for key, value in record.items()
    )
    return "{" + ", ".join(fields) + "}"


def write_records(path: str | Path, records: Iterable[BaseModel | dict[str, Any]]) -> int:
    """
    Écrit des enregistrements dans un fichier JSONL.

    Args:
        path: Fichier de destination (les répertoires parents sont créés)
        records: Modèles Pydantic ou dictionnaires

    Returns:
        Le nombre d'enregistrements écrits
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(dumps_record(record))
            f.write("\n")
            count += 1
    return count
