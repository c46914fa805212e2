"""
Gestion centralisée de la configuration du pipeline d'importance des attributs.

Ce module regroupe tous les modèles de configuration du pipeline en utilisant
Pydantic Settings pour une gestion robuste et typée, qu'elle vienne d'un
fichier, de variables d'environnement ou de la ligne de commande.

Point d'entrée unique pour toute la configuration :
    from src.core.config import load_settings

    settings = load_settings("pipeline.toml", {"matcher": {"threshold": 0.8}})
    k = settings.matcher.threshold
    dim = settings.embedding.dim

Structure hiérarchique :
    - settings.paths.*      : fichiers d'entrée et répertoire de travail
    - settings.preprocess.* : filtrage des enquêtes (heuristiques spam / langue)
    - settings.embedding.*  : entraînement des vecteurs de sous-mots
    - settings.matcher.*    : seuil de similarité et top-N par phrase
    - settings.ranker.*     : top-K attributs par catégorie
    - settings.textrank.*   : constantes de la baseline TextRank

Priorité des sources (de la plus faible à la plus forte) :
    valeurs par défaut < .env / environnement (préfixe ATTRANK_) < fichier --config
    < options de la ligne de commande
"""

import json
import tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError


class PathsConfig(BaseModel):
    """
    Chemins des fichiers d'entrée et du répertoire des artefacts.

    Les fichiers stopwords / units sont optionnels : les listes livrées avec
    le paquet sont utilisées à défaut.
    """

    categories: Path | None = None
    enquiries: Path | None = None
    labels: Path | None = None
    stopwords: Path | None = None
    units: Path | None = None
    # Vecteurs pré-entraînés (word2vec / GloVe) pour la méthode "wordvec"
    vectors: Path | None = None
    workdir: Path = Path("work")


class PreprocessConfig(BaseModel):
    """Seuils du filtre d'enquêtes invalides et du vocabulaire de correction."""

    # Fraction minimale de lettres latines de base parmi les caractères alphabétiques
    min_latin_fraction: float = Field(default=0.6, ge=0.0, le=1.0)

    # Une enquête contenant au moins ce nombre d'URL est considérée comme spam
    max_urls: int = Field(default=3, ge=1)

    # Une répétition d'au moins ce nombre du même caractère est considérée comme spam
    max_char_run: int = Field(default=10, ge=2)

    # Fréquence minimale d'un token du corpus pour entrer dans le vocabulaire de correction
    corpus_vocab_min_count: int = Field(default=5, ge=1)


class EmbeddingConfig(BaseModel):
    """
    Hyperparamètres de l'entraînement skipgram à sous-mots.

    bucket_count = 0 désactive la composition par n-grammes : le modèle ne
    connaît alors que les mots entiers (comportement word2vec / GloVe).
    """

    dim: int = Field(default=100, ge=1)
    ngram_min: int = Field(default=3, ge=1)
    ngram_max: int = Field(default=6, ge=1)
    bucket_count: int = Field(default=2_000_000, ge=0)
    window: int = Field(default=5, ge=1)
    negatives: int = Field(default=5, ge=1)
    epochs: int = Field(default=5, ge=1)
    learning_rate: float = Field(default=0.05, gt=0.0)
    min_count: int = Field(default=1, ge=1)
    seed: int = 1

    @model_validator(mode="after")
    def _check_ngram_range(self) -> "EmbeddingConfig":
        if self.ngram_min > self.ngram_max:
            raise ValueError(
                f"ngram_min ({self.ngram_min}) must not exceed ngram_max ({self.ngram_max})"
            )
        return self


class MatcherConfig(BaseModel):
    """Configuration de l'appariement phrase / attribut."""

    threshold: float = Field(default=0.75, ge=-1.0, le=1.0)
    per_sentence_top: int = Field(default=2, ge=1)

    # Le nom de l'attribut compte comme une pseudo-valeur supplémentaire
    include_name: bool = True


class RankerConfig(BaseModel):
    """Configuration de l'agrégation des correspondances par catégorie."""

    top_k: int = Field(default=5, ge=1)
    count_unit: Literal["records", "enquiries"] = "records"

    # Nombre minimal de correspondances avant de sélectionner des attributs
    min_evidence: int = Field(default=0, ge=0)


class TextRankConfig(BaseModel):
    """Constantes de la baseline TextRank."""

    window: int = Field(default=4, ge=2)
    damping: float = Field(default=0.85, gt=0.0, lt=1.0)
    tolerance: float = Field(default=1e-6, gt=0.0)
    max_iterations: int = Field(default=100, ge=1)
    top_keywords: int = Field(default=50, ge=1)


class PipelineSettings(BaseSettings):
    """
    Configuration principale du pipeline.

    Cette classe centralise les configurations de toutes les étapes via des
    modèles imbriqués, et charge automatiquement les variables d'environnement
    préfixées par ATTRANK_ (ex: ATTRANK_MATCHER__THRESHOLD=0.8).
    """

    paths: PathsConfig = PathsConfig()
    preprocess: PreprocessConfig = PreprocessConfig()
    embedding: EmbeddingConfig = EmbeddingConfig()
    matcher: MatcherConfig = MatcherConfig()
    ranker: RankerConfig = RankerConfig()
    textrank: TextRankConfig = TextRankConfig()

    workers: int = Field(default=1, ge=1)

    # Graine globale ; prend le pas sur embedding.seed lorsqu'elle est définie
    seed: int | None = None

    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_prefix="ATTRANK_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @model_validator(mode="after")
    def _propagate_seed(self) -> "PipelineSettings":
        if self.seed is not None and self.embedding.seed != self.seed:
            self.embedding = self.embedding.model_copy(update={"seed": self.seed})
        return self


def _read_config_file(path: Path) -> dict[str, Any]:
    """
    Lit un fichier de configuration TOML ou JSON.

    Args:
        path: Chemin du fichier de configuration

    Returns:
        Le contenu du fichier sous forme de dictionnaire

    Raises:
        ConfigError: Si le fichier est introuvable ou illisible
    """
    if not path.is_file():
        raise ConfigError(f"Configuration file not found: '{path}'")

    try:
        if path.suffix.lower() == ".json":
            with path.open("r", encoding="utf-8") as f:
                return json.load(f)
        with path.open("rb") as f:
            return tomllib.load(f)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
        raise ConfigError(f"Invalid configuration file '{path}': {e}") from e


def _resolve_paths(data: dict[str, Any], base_dir: Path) -> None:
    """Résout les chemins relatifs de la section [paths] par rapport au fichier."""
    paths = data.get("paths")
    if not isinstance(paths, dict):
        return
    for key, value in paths.items():
        if isinstance(value, str) and value and not Path(value).is_absolute():
            paths[key] = str((base_dir / value).resolve())


def _deep_merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_settings(
    config_path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> PipelineSettings:
    """
    Construit la configuration du pipeline à partir d'un fichier et d'options.

    Args:
        config_path: Fichier TOML ou JSON (optionnel)
        overrides: Valeurs imbriquées issues de la ligne de commande, prioritaires

    Returns:
        PipelineSettings validée

    Raises:
        ConfigError: Si le fichier est invalide ou si une valeur est hors bornes
    """
    data: dict[str, Any] = {}
    if config_path is not None:
        path = Path(config_path)
        data = _read_config_file(path)
        _resolve_paths(data, path.resolve().parent)

    if overrides:
        data = _deep_merge(data, overrides)

    try:
        return PipelineSettings(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
