"""
Baseline TextRank : extraction de mots-clés puis comparaison exacte avec
les tokens des attributs.

Toutes les phrases d'une catégorie forment un seul texte. Deux tokens
distants de moins de `window` positions dans une même phrase gagnent +1 sur
leur arête ; le score de chaque nœud est itéré selon

    S(i) = (1 - d) + d * Σ_{j ∈ adj(i)} w_ji / (Σ_{k ∈ adj(j)} w_jk) * S(j)

à partir de 1.0, jusqu'à ce que la plus grande variation passe sous la tolérance.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from ..core.config import TextRankConfig
from ..preprocess.models import CleanCategory, CleanSentence
from ..preprocess.normalizer import NUMBER_TOKEN
from ..ranker.aggregate import RankedAttributes, RankedEntry

TEXTRANK_METHOD = "textrank"


class CooccurrenceGraph:
    """Graphe non orienté pondéré des co-occurrences de tokens."""

    def __init__(self, window: int = 4):
        self.window = window
        self.graph = nx.Graph()

    def add_sentence(self, tokens: Sequence[str]) -> None:
        self.graph.add_nodes_from(tokens)
        for i, left in enumerate(tokens):
            for j in range(i + 1, min(len(tokens), i + self.window)):
                right = tokens[j]
                if right == left:
                    continue
                if self.graph.has_edge(left, right):
                    self.graph[left][right]["weight"] += 1
                else:
                    self.graph.add_edge(left, right, weight=1)

    def weight(self, u: str, v: str) -> int:
        return int(self.graph[u][v]["weight"]) if self.graph.has_edge(u, v) else 0

    @property
    def nodes(self) -> list[str]:
        return sorted(self.graph.nodes)

    def __len__(self) -> int:
        return self.graph.number_of_nodes()


@dataclass(frozen=True)
class TextRankScores:
    scores: Mapping[str, float]
    damping: float
    tolerance: float
    max_iterations: int
    iterations: int
    converged: bool

    def keywords(self, top: int) -> list[str]:
        """Les `top` meilleurs tokens hors #number#, par score décroissant puis par nom."""
        ranked = sorted(
            (token for token in self.scores if token != NUMBER_TOKEN),
            key=lambda token: (-self.scores[token], token),
        )
        return ranked[:top]


def build_graph(
    sentences: Iterable[CleanSentence | Sequence[str]], window: int = 4
) -> CooccurrenceGraph:
    """
    Construit le graphe de co-occurrence d'une catégorie.

    Args:
        sentences: Phrases valides (ou séquences de tokens) d'une même catégorie
        window: Taille de la fenêtre glissante ; les phrases ne se chevauchent jamais

    Returns:
        Le graphe pondéré
    """
    graph = CooccurrenceGraph(window)
    for sentence in sentences:
        tokens = sentence.tokens if isinstance(sentence, CleanSentence) else sentence
        graph.add_sentence(tokens)
    return graph


def textrank(
    graph: CooccurrenceGraph,
    damping: float = 0.85,
    tolerance: float = 1e-6,
    max_iterations: int = 100,
) -> TextRankScores:
    """
    Itère les scores TextRank pondérés jusqu'à convergence.

    Args:
        graph: Graphe de co-occurrence
        damping: Facteur d'amortissement d
        tolerance: Variation maximale tolérée entre deux itérations
        max_iterations: Nombre maximal d'itérations

    Returns:
        Les scores par token ; un nœud isolé vaut 1 - d
    """
    nodes = graph.nodes
    index = {node: i for i, node in enumerate(nodes)}
    edges = list(graph.graph.edges(data="weight"))

    sources = np.array(
        [index[u] for u, v, _ in edges] + [index[v] for u, v, _ in edges], dtype=np.int64
    )
    targets = np.array(
        [index[v] for u, v, _ in edges] + [index[u] for u, v, _ in edges], dtype=np.int64
    )
    weights = np.array([w for _, _, w in edges] * 2, dtype=np.float64)
    strength = np.bincount(sources, weights=weights, minlength=len(nodes))
    transfer = weights / strength[sources] if len(weights) else weights

    scores = np.ones(len(nodes))
    iterations, converged = 0, False
    while iterations < max_iterations:
        updated = (1.0 - damping) + damping * np.bincount(
            targets, weights=transfer * scores[sources], minlength=len(nodes)
        )
        iterations += 1
        change = float(np.max(np.abs(updated - scores))) if len(nodes) else 0.0
        scores = updated
        if change < tolerance:
            converged = True
            break

    return TextRankScores(
        scores={node: float(scores[i]) for node, i in index.items()},
        damping=damping,
        tolerance=tolerance,
        max_iterations=max_iterations,
        iterations=iterations,
        converged=converged,
    )


def textrank_attributes(
    scores: TextRankScores,
    schema: CleanCategory,
    top_keywords: int = 50,
    top_k: int = 5,
) -> RankedAttributes:
    """
    Associe les meilleurs mots-clés aux attributs par égalité exacte de tokens.

    Un attribut est retenu si un token de son nom ou de ses valeurs figure
    parmi les top_keywords ; il est classé par le rang de son meilleur mot-clé.

    Returns:
        Le classement de la catégorie pour la méthode "textrank"
    """
    rank = {token: position for position, token in enumerate(scores.keywords(top_keywords))}

    hits: list[tuple[int, str, int, float]] = []
    for attribute in schema.attributes:
        matched = [token for token in attribute.tokens if token in rank]
        if not matched:
            continue
        best = min(rank[token] for token in matched)
        best_token = min(matched, key=lambda token: rank[token])
        hits.append((best, attribute.name, len(matched), scores.scores[best_token]))
    hits.sort(key=lambda hit: (hit[0], hit[1]))

    entries = tuple(
        RankedEntry(attribute_name=name, match_count=count, mean_score=score)
        for _, name, count, score in hits
    )
    return RankedAttributes(
        category_id=schema.category_id,
        method=TEXTRANK_METHOD,
        selected=tuple(entry.attribute_name for entry in entries[:top_k]),
        entries=entries,
        top_k=top_k,
    )


def rank_categories(
    sentences: Iterable[CleanSentence],
    categories: Iterable[CleanCategory],
    config: TextRankConfig,
    top_k: int,
    logger: logging.Logger,
) -> list[RankedAttributes]:
    """
    Applique la baseline TextRank à chaque catégorie.

    Args:
        sentences: Phrases valides de toutes les catégories
        categories: Catégories nettoyées
        config: Constantes TextRank
        top_k: Nombre d'attributs sélectionnés
        logger: Logger de l'étape

    Returns:
        Un classement par catégorie ayant au moins une phrase, trié par identifiant
    """
    by_category: dict[str, list[CleanSentence]] = {}
    for sentence in sentences:
        by_category.setdefault(sentence.category_id, []).append(sentence)

    rankings = []
    for schema in sorted(categories, key=lambda category: category.category_id):
        category_sentences = by_category.get(schema.category_id)
        if not category_sentences:
            continue
        graph = build_graph(category_sentences, config.window)
        scores = textrank(graph, config.damping, config.tolerance, config.max_iterations)
        if not scores.converged:
            logger.warning(
                f"TextRank did not converge for category '{schema.category_id}' "
                f"after {scores.iterations} iterations"
            )
        rankings.append(textrank_attributes(scores, schema, config.top_keywords, top_k))

    logger.info(f"TextRank ranked {len(rankings)} categories")
    return rankings
