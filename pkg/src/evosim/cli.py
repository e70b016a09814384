"""Command-line entry point: ``evosim run | sweep | plot``.

Exit codes: 0 success, 1 usage or configuration error, 2 I/O error.
Flag values override config-file values, which override defaults.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .config import parse_config
from .core import ConfigError, SimConfig
from .experiment import SweepError, run_simulation, run_sweep, summarize
from .report import (
    DEFAULT_CHART_COLUMNS,
    chart_for_series,
    read_csv,
    render_chart,
    write_csv,
    write_summary_csv,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _name_list(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evosim", description="Natural-selection foraging simulator.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one simulation")
    run.add_argument("--config", type=Path)
    run.add_argument("--seed", type=int)
    run.add_argument("--food", type=int)
    run.add_argument("--generations", type=int)
    run.add_argument("--out", type=Path, default=Path("."))

    sweep = sub.add_parser("sweep", help="run a food-level sweep")
    sweep.add_argument("--config", type=Path)
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--foods", type=_int_list, default=[100, 200, 300])
    sweep.add_argument("--trials", type=int, default=3)
    sweep.add_argument("--generations", type=int)
    sweep.add_argument("--jobs", type=int, default=1)
    sweep.add_argument("--out", type=Path, default=Path("."))

    plot = sub.add_parser("plot", help="render a chart from a run CSV")
    plot.add_argument("--in", dest="input", type=Path, required=True)
    plot.add_argument("--out", type=Path, required=True)
    plot.add_argument("--columns", type=_name_list, default=DEFAULT_CHART_COLUMNS)
    plot.add_argument("--title")
    return parser


def load_config(args: argparse.Namespace) -> SimConfig:
    config = SimConfig()
    if args.config is not None:
        config = parse_config(args.config.read_text(encoding="utf-8"))
    overrides = {
        key: value
        for key, value in (
            ("seed", args.seed),
            ("start_food", getattr(args, "food", None)),
            ("generations", getattr(args, "generations", None)),
        )
        if value is not None
    }
    return replace(config, **overrides).validate()


def _run_title(food: int, trial: int | None = None) -> str:
    title = f"Average speed, size, cloning probability and population, {food} starting food"
    return title if trial is None else f"{title}: trial {trial}"


def cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args)
    result = run_simulation(config)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "run.csv").write_bytes(write_csv(result))
    if result.series:
        chart = chart_for_series(result.series, _run_title(config.start_food))
        (args.out / "chart.svg").write_bytes(render_chart(chart))
    log.info("run finished: %d generations, extinct_at=%s", len(result.series), result.extinct_at)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    config = load_config(args)
    results = run_sweep(config, args.foods, args.trials, jobs=args.jobs)
    args.out.mkdir(parents=True, exist_ok=True)
    per_food: dict[int, int] = {}
    for result in results:
        food = result.config.start_food
        trial = per_food[food] = per_food.get(food, 0) + 1
        stem = f"food{food}_trial{trial}"
        (args.out / f"{stem}.csv").write_bytes(write_csv(result))
        if result.series:
            chart = chart_for_series(result.series, _run_title(food, trial))
            (args.out / f"{stem}.svg").write_bytes(render_chart(chart))
    (args.out / "summary.csv").write_bytes(write_summary_csv(summarize(results)))
    log.info("sweep finished: %d runs", len(results))
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    series = read_csv(args.input.read_bytes())
    title = args.title or f"Per-generation statistics: {args.input.name}"
    try:
        chart = chart_for_series(series, title, args.columns)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not series:
        raise ValueError(f"{args.input} has no data rows")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(render_chart(chart))
    return EXIT_OK


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "plot": cmd_plot}


def cli_main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, SweepError) as exc:
        print(f"evosim: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        print(f"evosim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli_main())
