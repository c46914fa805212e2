"""Commandes du pipeline et orchestration des étapes."""

from .main import build_parser, main
from .runner import METHODS, PipelineRunner

__all__ = ["build_parser", "main", "METHODS", "PipelineRunner"]
