"""
Module core centralisant la configuration, le logging et les erreurs.

Ce module contient les classes de configuration, les utilitaires de logging
et la hiérarchie d'exceptions partagés entre les étapes du pipeline.
"""

__version__ = "0.1.0"
