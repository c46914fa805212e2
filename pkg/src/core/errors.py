"""
Hiérarchie d'exceptions du pipeline.

Chaque exception porte le code de sortie que la ligne de commande renvoie
lorsqu'elle la reçoit : 1 pour une erreur d'usage ou de configuration,
2 pour une erreur de données.
"""

from pathlib import Path


class AttrankError(Exception):
    """Exception de base du pipeline."""

    exit_code: int = 2


class ConfigError(AttrankError):
    """Configuration absente, illisible ou hors bornes."""

    exit_code = 1


class DataLoadError(AttrankError):
    """Enregistrement invalide dans un fichier d'entrée."""

    def __init__(
        self,
        message: str,
        path: str | Path | None = None,
        line_number: int | None = None,
    ):
        self.path = Path(path) if path is not None else None
        self.line_number = line_number
        location = ""
        if self.path is not None:
            location = f"{self.path}"
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}")


class VectorFormatError(DataLoadError):
    """Fichier de vecteurs mal formé (dimension, en-tête, nombre de lignes)."""


class InputPathError(AttrankError):
    """Fichier d'entrée référencé par la configuration introuvable."""

    def __init__(self, path: str | Path, role: str):
        self.path = Path(path)
        self.role = role
        super().__init__(f"Input file for '{role}' not found or unreadable: '{path}'")


class MissingArtifactError(AttrankError):
    """Artefact d'une étape précédente manquant."""

    def __init__(self, path: str | Path, producer: str):
        self.path = Path(path)
        self.producer = producer
        super().__init__(
            f"Missing artifact '{path}': run the '{producer}' command first"
        )


class EmptyVocabularyError(AttrankError):
    """Aucun mot ne survit au filtrage min_count."""


class OutOfVocabularyError(KeyError):
    """Mot de contexte absent du vocabulaire (aucun vecteur de sortie)."""

    def __str__(self) -> str:
        return f"'{self.args[0]}' is not in the model vocabulary"
