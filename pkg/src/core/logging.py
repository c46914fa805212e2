"""
Configuration du logging pour le pipeline.

Ce module configure un système de logging cohérent pour toutes les étapes
du pipeline. Les messages partent sur la sortie d'erreur : la sortie
standard est réservée au rapport d'évaluation.
"""

import logging
import sys

ROOT_LOGGER_NAME = "attrank"


def setup_logging(name: str = ROOT_LOGGER_NAME, level: str = "INFO") -> logging.Logger:
    """
    Configure le système de logging pour le pipeline.

    Args:
        name: Nom du logger à créer
        level: Niveau de log (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        Logger configuré pour le pipeline
    """

    # Configuration des niveaux de log
    log_levels = {
        "DEBUG": logging.DEBUG,
        "INFO": logging.INFO,
        "WARNING": logging.WARNING,
        "ERROR": logging.ERROR,
        "CRITICAL": logging.CRITICAL,
    }

    log_level = log_levels.get(level.upper(), logging.INFO)

    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    # Supprimer les handlers existants pour éviter les doublons
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(log_format))
    logger.addHandler(console_handler)

    # Éviter la propagation vers le logger racine
    logger.propagate = False

    return logger


def get_logger(component: str) -> logging.Logger:
    """Retourne le logger enfant d'un composant (ex: "attrank.preprocess")."""
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{component}")
