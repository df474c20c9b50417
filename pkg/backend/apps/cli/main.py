"""
Command line entry point.

    lrgae run <config.json> [--output PATH]
    lrgae gen <spec.json> <out_dir>
    lrgae report <glob> [--csv PATH]
"""

import argparse
import glob
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from config import get_settings

from ..core.exceptions import ConfigError, ExperimentError, LrgaeError
from ..core.utils import ErrorHandler, configure_logging
from ..graph import write_graph
from ..graph.schemas import SyntheticSpec
from .report import ResultReport, summarize
from .runner import ExperimentRunner
from .schemas import ExperimentConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_INVALID = 2

RESULTS_DIR = Path("results")


def validation_lines(error: ValidationError) -> List[str]:
    """`field.path: message` for every problem pydantic found."""
    lines = []
    for problem in error.errors():
        message = problem["msg"].removeprefix("Value error, ")
        path = ".".join(str(part) for part in problem["loc"])
        lines.append(f"{path}: {message}" if path else message)
    return lines


def init_sentry(settings) -> None:
    if settings.SENTRY_DSN:
        import sentry_sdk

        sentry_sdk.init(dsn=settings.SENTRY_DSN, traces_sample_rate=0.0)


def cmd_run(args) -> int:
    config_path = Path(args.config)
    config = ExperimentConfig.model_validate_json(config_path.read_text())
    output = Path(args.output or config.output or RESULTS_DIR / f"{config_path.stem}.json")

    report = ExperimentRunner(config).run()
    report.write(output)
    print(report.summary())
    print(f"✅ Report written to {output}")
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = SyntheticSpec.model_validate_json(Path(args.spec).read_text())
    graph = spec.build()
    root = write_graph(graph, args.out_dir)
    print(f"✅ Generated {graph.n} nodes, {graph.num_edges} edges in {root}")
    return EXIT_OK


def cmd_report(args) -> int:
    paths = sorted(glob.glob(args.pattern, recursive=True))
    if not paths:
        print(f"❌ No result files match {args.pattern}", file=sys.stderr)
        return EXIT_INVALID
    table = summarize([ResultReport.load(p) for p in paths], csv_path=args.csv)
    print(table.to_string())
    if args.csv:
        print(f"✅ CSV written to {args.csv}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrgae", description="Graph autoencoder pretraining benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run every seed of an experiment config")
    run.add_argument("config", help="Experiment config (JSON)")
    run.add_argument("--output", "-o", help="Result file (default results/<config name>.json)")
    run.set_defaults(handler=cmd_run)

    gen = sub.add_parser("gen", help="Write a stochastic block model dataset")
    gen.add_argument("spec", help="Synthetic graph spec (JSON)")
    gen.add_argument("out_dir", help="Dataset directory to create")
    gen.set_defaults(handler=cmd_gen)

    report = sub.add_parser("report", help="Aggregate result files into a mean±std table")
    report.add_argument("pattern", help="Glob of result files, e.g. 'results/*.json'")
    report.add_argument("--csv", help="Also write the table as CSV")
    report.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(settings)
    init_sentry(settings)

    try:
        return args.handler(args)
    except ValidationError as e:
        for line in validation_lines(e):
            print(f"❌ {line}", file=sys.stderr)
        return EXIT_INVALID
    except ConfigError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INVALID
    except ExperimentError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except (LrgaeError, OSError) as e:
        ErrorHandler.log_exception(e, {"command": args.command})
        print(f"❌ {e.__class__.__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
