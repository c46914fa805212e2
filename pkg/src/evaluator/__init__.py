"""Évaluation précision / rappel / F1 contre les attributs annotés."""

from .metrics import (
    CategoryScore,
    EvalReport,
    MethodAverage,
    canonical_truth,
    evaluate,
    f1_score,
    format_metric,
    merge_reports,
    precision_recall_f1,
    render_report,
    report_records,
    summarize,
)

__all__ = [
    "CategoryScore",
    "EvalReport",
    "MethodAverage",
    "canonical_truth",
    "evaluate",
    "f1_score",
    "format_metric",
    "merge_reports",
    "precision_recall_f1",
    "render_report",
    "report_records",
    "summarize",
]
