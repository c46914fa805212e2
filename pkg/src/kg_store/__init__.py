"""
Tranche du graphe de connaissances : catégories, attributs, enquêtes, annotations.

Usage:
    from src.kg_store import KGLoader

    loader = KGLoader(logger)
    categories = loader.load_categories("categories.jsonl")
    enquiries = loader.load_enquiries("enquiries.jsonl")
"""

from .loader import KGLoader, LoadStats, dump_categories
from .models import AttributeDef, CategorySchema, Enquiry, GroundTruth, normalize_name

__all__ = [
    "KGLoader",
    "LoadStats",
    "dump_categories",
    "AttributeDef",
    "CategorySchema",
    "Enquiry",
    "GroundTruth",
    "normalize_name",
]
