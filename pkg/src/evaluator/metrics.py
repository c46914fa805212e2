"""
Précision, rappel et F1 des attributs détectés (S_a) contre les attributs
annotés (M_a).

    P = |M_a ∩ S_a| / |S_a|      (0 si S_a est vide)
    R = |M_a ∩ S_a| / |M_a|
    F1 = 2PR / (P + R)           (0 si P + R = 0)

Ligne de moyenne : P et R sont les moyennes non pondérées sur les catégories,
F1 la moyenne harmonique de ces deux moyennes ; la moyenne simple des F1 par
catégorie est conservée à part (mean_f1).
"""

import logging
import math
from collections.abc import Collection, Iterable, Mapping, Sequence
from decimal import ROUND_HALF_UP, Decimal

from pydantic import BaseModel, ConfigDict, Field

from ..core.logging import get_logger
from ..preprocess.models import CleanCategory


class CategoryScore(BaseModel):
    """Ligne du rapport pour une catégorie et une méthode."""

    model_config = ConfigDict(frozen=True)

    category_id: str
    method: str
    precision: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0, le=1.0)


class MethodAverage(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: str
    categories: int = 0
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    mean_f1: float = 0.0


class EvalReport(BaseModel):
    """Rapport d'évaluation, éventuellement multi-méthodes."""

    model_config = ConfigDict(frozen=True)

    methods: tuple[str, ...] = ()
    rows: tuple[CategoryScore, ...] = ()
    averages: tuple[MethodAverage, ...] = ()

    def average(self, method: str) -> MethodAverage:
        return next(average for average in self.averages if average.method == method)


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def precision_recall_f1(
    selected: Collection[str], truth: Collection[str]
) -> tuple[float, float, float]:
    """
    Métriques d'ensemble pour une catégorie.

    Args:
        selected: Attributs détectés S_a
        truth: Attributs annotés M_a (non vide)

    Returns:
        (P, R, F1)
    """
    selected, truth = set(selected), set(truth)
    hits = len(selected & truth)
    precision = hits / len(selected) if selected else 0.0
    recall = hits / len(truth) if truth else 0.0
    return precision, recall, f1_score(precision, recall)


def summarize(method: str, rows: Sequence[CategoryScore]) -> MethodAverage:
    """Ligne de moyenne macro d'une méthode."""
    if not rows:
        return MethodAverage(method=method)
    precision = math.fsum(row.precision for row in rows) / len(rows)
    recall = math.fsum(row.recall for row in rows) / len(rows)
    return MethodAverage(
        method=method,
        categories=len(rows),
        precision=precision,
        recall=recall,
        f1=f1_score(precision, recall),
        mean_f1=math.fsum(row.f1 for row in rows) / len(rows),
    )


def canonical_truth(
    truth: Mapping[str, Collection[str]], categories: Iterable[CleanCategory]
) -> dict[str, frozenset[str]]:
    """Ramène les noms annotés à leur attribut survivant après fusion."""
    by_id = {category.category_id: category for category in categories}
    canonical = {}
    for category_id, names in truth.items():
        category = by_id.get(category_id)
        canonical[category_id] = frozenset(
            category.canonical(name) if category is not None else name for name in names
        )
    return canonical


def evaluate(
    selected: Mapping[str, Collection[str]],
    truth: Mapping[str, Collection[str]],
    method: str = "subword",
    logger: logging.Logger | None = None,
) -> EvalReport:
    """
    Évalue une méthode sur toutes les catégories annotées.

    Une catégorie sans annotation est exclue (avec un avertissement) ; une
    catégorie annotée sans sélection compte pour P = R = 0.

    Args:
        selected: S_a par catégorie
        truth: M_a par catégorie
        method: Nom de la méthode évaluée
        logger: Logger recevant les avertissements

    Returns:
        Le rapport de la méthode
    """
    logger = logger or get_logger("evaluator")
    for category_id in sorted(selected.keys() - truth.keys()):
        logger.warning(
            f"Category '{category_id}' has no ground truth: excluded from '{method}' averages"
        )

    rows = []
    for category_id in sorted(truth):
        precision, recall, f1 = precision_recall_f1(
            selected.get(category_id, ()), truth[category_id]
        )
        rows.append(
            CategoryScore(
                category_id=category_id,
                method=method,
                precision=precision,
                recall=recall,
                f1=f1,
            )
        )
    return EvalReport(methods=(method,), rows=tuple(rows), averages=(summarize(method, rows),))


def merge_reports(reports: Iterable[EvalReport]) -> EvalReport:
    """Réunit des rapports de méthodes différentes en un seul tableau."""
    methods: list[str] = []
    rows: list[CategoryScore] = []
    averages: list[MethodAverage] = []
    for report in reports:
        methods.extend(report.methods)
        rows.extend(report.rows)
        averages.extend(report.averages)
    return EvalReport(methods=tuple(methods), rows=tuple(rows), averages=tuple(averages))


def format_metric(value: float) -> str:
    """Deux décimales, arrondi au demi supérieur (0.375 -> "0.38")."""
    # round(x, 10) absorbe l'erreur binaire (0.375 peut valoir 0.37499999...)
    exact = Decimal(repr(round(value, 10)))
    return str(exact.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def render_report(report: EvalReport) -> str:
    """
    Tableau séparé par tabulations : une ligne par catégorie et une ligne "average".

    Args:
        report: Rapport à afficher

    Returns:
        Le texte du tableau, terminé par un saut de ligne
    """
    header = ["category"]
    for method in report.methods:
        header.extend([f"{method} P", f"{method} R", f"{method} F1"])
    lines = ["\t".join(header)]

    cells = {(row.category_id, row.method): row for row in report.rows}
    for category_id in sorted({row.category_id for row in report.rows}):
        line = [category_id]
        for method in report.methods:
            row = cells.get((category_id, method))
            if row is None:
                line.extend(["", "", ""])
            else:
                line.extend(format_metric(value) for value in (row.precision, row.recall, row.f1))
        lines.append("\t".join(line))

    average_line = ["average"]
    for method in report.methods:
        average = report.average(method)
        average_line.extend(
            format_metric(value) for value in (average.precision, average.recall, average.f1)
        )
    lines.append("\t".join(average_line))
    return "\n".join(lines) + "\n"


def report_records(report: EvalReport) -> list[dict]:
    """Variante ligne par ligne du rapport (mêmes valeurs, non arrondies)."""
    records: list[dict] = [row.model_dump() for row in report.rows]
    records.extend(
        {"category_id": "average", **average.model_dump()} for average in report.averages
    )
    return records
