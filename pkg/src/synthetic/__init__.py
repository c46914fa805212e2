"""Corpus synthétique aux attributs importants connus."""

from .generator import CorpusGenerator, GeneratedFiles, SyntheticCorpus, generate_corpus

__all__ = ["CorpusGenerator", "GeneratedFiles", "SyntheticCorpus", "generate_corpus"]
