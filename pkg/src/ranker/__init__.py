"""Classement des attributs importants par catégorie."""

from .aggregate import RankedAttributes, RankedEntry, aggregate

__all__ = ["RankedAttributes", "RankedEntry", "aggregate"]
