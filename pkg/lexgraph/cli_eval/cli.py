"""
``lexgraph`` command line.

    lexgraph ingest --graph G --terms T --templates P [--config C]
    lexgraph query --config C [--mode complete] [--disable KB,LCM] [--trace | --trace-file PATH] "query" ...
    lexgraph eval --refs R --cands C [--labels L]
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from loguru import logger

from .. import __version__
from ..errors import LexGraphError
from ..prompt_engine import RunMode
from .config import LexGraphSettings, load_settings
from .metrics import evaluate_pairs, read_labels, read_lines
from .pipeline import RunConfig, run_queries, serialize_reports
from .runtime import ingest_corpus, load_runtime

DEFAULT_TRACE = "lexgraph.trace.jsonl"


def configure_logging(verbose: bool = False, trace: Optional[str] = None) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO")
    if trace:
        logger.add(
            trace,
            level="DEBUG",
            serialize=True,
            filter=lambda record: bool(record["extra"].get("trace")),
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexgraph",
        description="Knowledge-graph enhanced prompting for legal question answering.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    ingest = commands.add_parser("ingest", help="Load and validate a corpus, print a summary")
    ingest.add_argument("--graph", required=True, type=Path, help="Knowledge graph (.kg.jsonl)")
    ingest.add_argument("--terms", required=True, type=Path, help="Term statistics (.terms.tsv)")
    ingest.add_argument(
        "--templates", required=True, type=Path, help="Task templates (.templates.json)"
    )
    ingest.add_argument("--config", type=Path, help="Optional lexgraph.toml for parameters")

    query = commands.add_parser("query", help="Answer one or more queries")
    query.add_argument("--config", required=True, type=Path, help="Global lexgraph.toml")
    query.add_argument(
        "--mode", choices=[m.value for m in RunMode], default=RunMode.COMPLETE.value
    )
    query.add_argument(
        "--disable", default=None, help="Comma separated components: TD,KB,RG,DO,LCM,SVM"
    )
    query.add_argument(
        "--trace",
        action="store_true",
        help=f"Write prompts, responses and reports as JSON lines to {DEFAULT_TRACE}",
    )
    query.add_argument(
        "--trace-file", type=Path, help="Trace to this file instead (implies --trace)"
    )
    query.add_argument("--jobs", type=int, default=1, help="Queries to run concurrently")
    query.add_argument("--output", type=Path, help="Write the report here instead of stdout")
    query.add_argument("queries", nargs="+", help="Query text")

    evaluate = commands.add_parser("eval", help="Score candidate answers against references")
    evaluate.add_argument("--refs", required=True, type=Path, help="One reference per line")
    evaluate.add_argument("--cands", required=True, type=Path, help="One candidate per line")
    evaluate.add_argument("--labels", type=Path, help="'gold pred' boolean pair per line")
    return parser


def _ingest(args: argparse.Namespace) -> int:
    settings = load_settings(args.config) if args.config else LexGraphSettings()
    runtime = ingest_corpus(args.graph, args.terms, args.templates, settings)
    for line in runtime.summary().lines():
        print(line)
    return 0


def _query(args: argparse.Namespace) -> int:
    settings = load_settings(args.config)
    run_cfg = RunConfig.parse(args.mode, args.disable)
    runtime = load_runtime(settings)
    reports = run_queries(args.queries, runtime, run_cfg, jobs=args.jobs)
    text = serialize_reports(reports)
    if args.output:
        args.output.write_text(text, encoding="utf-8")
        logger.info(f"Report written to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _eval(args: argparse.Namespace) -> int:
    labels = read_labels(args.labels) if args.labels else None
    report = evaluate_pairs(read_lines(args.cands), read_lines(args.refs), labels)
    print(json.dumps(report.as_dict(), sort_keys=True, indent=2))
    return 0


def _trace_path(args: argparse.Namespace) -> Optional[str]:
    if getattr(args, "trace_file", None):
        return str(args.trace_file)
    return DEFAULT_TRACE if getattr(args, "trace", False) else None


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, _trace_path(args))
    handler = {"ingest": _ingest, "query": _query, "eval": _eval}[args.command]
    try:
        return handler(args)
    except LexGraphError as e:
        logger.error(str(e))
        print(f"lexgraph: error: {e}", file=sys.stderr)
        return 2
