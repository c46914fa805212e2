"""
Chargement des listes de mots vides et du lexique des unités.

Les deux fichiers contiennent une entrée par ligne (UTF-8) ; les lignes
vides et celles commençant par "# " sont ignorées. Les versions livrées
avec le paquet (répertoire data/) sont utilisées quand aucun chemin n'est
configuré.
"""

from importlib import resources
from pathlib import Path

from ..core.errors import DataLoadError
from .models import StopWordList, UnitLexicon

_DATA_PACKAGE = "src.preprocess.data"


def _read_lines(path: str | Path | None, bundled: str) -> list[tuple[int, str]]:
    if path is None:
        text = resources.files(_DATA_PACKAGE).joinpath(bundled).read_text(encoding="utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise DataLoadError(f"invalid UTF-8: {e.reason}", path) from e

    lines = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("# "):
            continue
        lines.append((line_number, line.rstrip("\r\n")))
    return lines


def load_stop_words(path: str | Path | None = None) -> StopWordList:
    """
    Charge la liste de mots vides.

    Args:
        path: Fichier à lire ; None pour la liste anglaise livrée

    Returns:
        StopWordList en casse repliée
    """
    words = frozenset(line.strip().casefold() for _, line in _read_lines(path, "stopwords.txt"))
    return StopWordList(words=words)


def load_unit_lexicon(path: str | Path | None = None) -> UnitLexicon:
    """
    Charge le lexique des unités (forme<TAB>canonique).

    Args:
        path: Fichier à lire ; None pour le lexique livré

    Returns:
        UnitLexicon aux clés en casse repliée

    Raises:
        DataLoadError: Si une ligne n'a pas exactement deux colonnes
    """
    units: dict[str, tuple[str, ...]] = {}
    for line_number, line in _read_lines(path, "units.txt"):
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].split():
            raise DataLoadError(
                "expected 'surface<TAB>canonical'", path or "units.txt", line_number
            )
        surface, canonical = parts
        units[surface.strip().casefold()] = tuple(canonical.casefold().split())
    return UnitLexicon(units=units)
