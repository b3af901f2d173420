"""
main.py
Command-line entry point: `nclp run` executes one configured experiment,
`nclp list` prints the registered experiment names.
"""

import argparse
import sys
from typing import List, Optional

from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from nclp.app.exceptions import AdmissibilityError, ConfigError, PreconditionError, ReportError
from nclp.app.experiment_config import load_config
from nclp.app.experiments import experiment_names
from nclp.app.report import Report, emit, to_csv, to_json
from nclp.app.runner import run
from nclp.app.utils.logger import add_json_sink, get_logger, set_console_level

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# Load environment variables from .env
load_dotenv()

logger = get_logger()
console = Console(stderr=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nclp",
        description="Numerical laboratory for twisted sums of noncommutative L^p spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="Run one experiment from a YAML config")
    run_parser.add_argument("--config", required=True, help="Path to the experiment config")
    run_parser.add_argument("--experiment", help="Override the experiment named in the config")
    run_parser.add_argument("--out", help="Report path (default: config output.path, else stdout)")
    run_parser.add_argument("--format", choices=["csv", "json"], help="Report format")
    run_parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on the console")
    run_parser.add_argument("--log-dir", help="Also write structured JSON logs to this directory")

    sub.add_parser("list", help="List the available experiments")
    return parser


def render_summary(report: Report) -> None:
    table = Table(title=f"{report.experiment}: {len(report.rows)} rows in {report.wall_time:.2f}s")
    table.add_column("assertion")
    table.add_column("result")
    table.add_column("detail")
    for a in report.assertions:
        table.add_row(a.name, "[green]pass[/green]" if a.passed else "[red]FAIL[/red]", a.detail)
    console.print(table)


def run_command(args: argparse.Namespace) -> int:
    if args.verbose:
        set_console_level("DEBUG")
    if args.log_dir:
        add_json_sink(args.log_dir)

    try:
        config = load_config(args.config).with_overrides(args.experiment, args.out, args.format)
        report = run(config)
    except (ConfigError, PreconditionError) as e:
        logger.error(f"configuration error: {e}")
        return EXIT_CONFIG
    except AdmissibilityError as e:
        logger.error(f"runtime validity check failed: {e}")
        return EXIT_FAILED

    fmt = config.output.format
    try:
        if config.output.path:
            emit(report, config.output.path, fmt)
        elif fmt == "json":
            sys.stdout.write(to_json(report).decode("utf-8") + "\n")
        else:
            sys.stdout.write(to_csv(report))
    except ReportError as e:
        logger.error(str(e))
        return EXIT_CONFIG

    render_summary(report)
    return EXIT_PASSED if report.passed else EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name in experiment_names():
            print(name)
        return EXIT_PASSED
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
