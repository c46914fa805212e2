"""
Ligne de commande du pipeline d'importance des attributs.

Commandes : preprocess, train, match, rank, eval, pipeline, generate.
Les options de la ligne de commande l'emportent sur le fichier --config.

Codes de sortie : 0 succès, 1 erreur d'usage ou de configuration,
2 erreur de données (fichier illisible, enregistrement invalide, artefact manquant).
"""

import argparse
import sys
from collections.abc import Sequence
from typing import Any, NoReturn

from ..core.config import load_settings
from ..core.errors import AttrankError, ConfigError
from ..core.logging import ROOT_LOGGER_NAME, setup_logging
from ..evaluator.metrics import render_report
from ..synthetic.generator import generate_corpus
from .runner import ALL_METHODS, METHODS, SUBWORD_METHOD, PipelineRunner

EXIT_OK = 0
EXIT_USAGE = 1


class _ArgumentParser(argparse.ArgumentParser):
    """Les erreurs d'usage sortent avec le code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="Configuration file (TOML or JSON)")
    common.add_argument(
        "--method",
        choices=(*METHODS, ALL_METHODS),
        default=SUBWORD_METHOD,
        help="Method for train/match/rank/eval (default: subword)",
    )
    common.add_argument("--threshold", type=float, help="Sentence/attribute similarity threshold k")
    common.add_argument("--top-k", type=int, help="Number of attributes kept per category")
    common.add_argument("--workers", type=int, help="Worker count for preprocess/train/match")
    common.add_argument("--seed", type=int, help="Global random seed")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")

    parser = _ArgumentParser(
        prog="attrank",
        description="Rank the important attributes of graph categories from buyer enquiries.",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for name, help_text in (
        ("preprocess", "Clean enquiries into valid sentences"),
        ("train", "Train the word vector model"),
        ("match", "Match sentences with category attributes"),
        ("rank", "Rank attributes per category"),
        ("eval", "Evaluate rankings against labels and print the report"),
        ("pipeline", "Run every stage in sequence"),
    ):
        commands.add_parser(name, parents=[common], help=help_text)

    generate = commands.add_parser("generate", help="Write a synthetic corpus and config")
    generate.add_argument("--out", required=True, help="Output directory")
    generate.add_argument("--categories", type=int, default=20)
    generate.add_argument("--attributes", type=int, default=8)
    generate.add_argument("--important", type=int, default=5)
    generate.add_argument("--enquiries-per-category", type=int, default=500)
    generate.add_argument("--misspelling-rate", type=float, default=0.1)
    generate.add_argument("--seed", type=int, default=7)
    generate.add_argument("--log-level", default="INFO")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    if args.threshold is not None:
        overrides["matcher"] = {"threshold": args.threshold}
    if args.top_k is not None:
        overrides["ranker"] = {"top_k": args.top_k}
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.log_level is not None:
        overrides["log_level"] = args.log_level
    return overrides


def _run_command(args: argparse.Namespace) -> int:
    if args.command == "generate":
        logger = setup_logging(ROOT_LOGGER_NAME, args.log_level)
        try:
            files = generate_corpus(
                args.out,
                categories=args.categories,
                attributes=args.attributes,
                important=args.important,
                enquiries_per_category=args.enquiries_per_category,
                misspelling_rate=args.misspelling_rate,
                seed=args.seed,
                logger=logger.getChild("synthetic"),
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e
        print(files.config)
        return EXIT_OK

    settings = load_settings(args.config, _overrides(args))
    logger = setup_logging(ROOT_LOGGER_NAME, settings.log_level)
    runner = PipelineRunner(settings, logger)
    logger.info(f"🚀 Running '{args.command}' (method={args.method}, workdir={runner.workdir})")

    if args.command == "preprocess":
        stats = runner.preprocess()
        logger.info(
            f"✅ Preprocess done: {stats.enquiries_in} enquiries in, "
            f"{sum(stats.discarded.values())} discarded, {stats.sentences_out} sentences out"
        )
    elif args.command == "train":
        runner.train(args.method)
    elif args.command == "match":
        runner.match(args.method)
    elif args.command == "rank":
        runner.rank(args.method)
    elif args.command == "eval":
        sys.stdout.write(render_report(runner.evaluate(args.method)))
    elif args.command == "pipeline":
        sys.stdout.write(render_report(runner.run_pipeline(args.method)))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """
    Point d'entrée de la ligne de commande.

    Args:
        argv: Arguments (par défaut sys.argv[1:])

    Returns:
        Le code de sortie
    """
    args = build_parser().parse_args(argv)
    logger = setup_logging(ROOT_LOGGER_NAME, args.log_level or "INFO")
    try:
        return _run_command(args)
    except AttrankError as e:
        logger.error(f"💥 {e}")
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("👋 Interrupted by user")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
