"""regret-filter command-line interface.

Commands:
    synth       synthesize the regret-optimal filter and write a JSON report
    analyze     norms and per-frequency curves of several estimators
    simulate    running error energy under gaussian or adversarial disturbances
    reproduce   recompute a reference performance table and check every cell

Exit codes: 0 success, 1 a reproduction cell failed, 2 usage, model or
configuration error, 3 numerical or synthesis failure. Errors are also
written to stderr as one JSON object.
"""

import argparse
import json
import sys
import time
from collections.abc import Sequence
from pathlib import Path

from config import Settings, get_default_settings, load_settings, set_default_settings
from exceptions import (
    ConfigurationError,
    FilterError,
    ValidationError,
    get_error_description,
    get_error_suggestion,
)
from observability import configure, get_logger
from observability.formatters import OutputFormatter, TableFormatter
from observability.metrics import RunMetrics
from utils import STDOUT, csv_text, format_float, json_text, write_text_output

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

FILTER_CHOICES = ("h2", "hinf", "regret", "noncausal")
# CLI filter names -> exported column labels
FILTER_LABELS = {"h2": "h2", "hinf": "hinf", "regret": "regret_opt", "noncausal": "noncausal"}


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a number, got '{text}'") from e
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"must be positive and finite, got {text}")
    return value


def _filter_list(text: str) -> list[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in FILTER_CHOICES]
    if not names or unknown:
        raise argparse.ArgumentTypeError(
            f"choose from {','.join(FILTER_CHOICES)}; got '{text}'"
        )
    return list(dict.fromkeys(names))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regret-filter",
        description="Regret-optimal causal estimation: synthesis, analysis and experiments.",
    )
    parser.add_argument("--config", type=Path, help="YAML settings file")
    parser.add_argument("--log-dir", type=Path, help="directory for JSON log files")
    parser.add_argument(
        "--log-level",
        choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
        help="console log level (default from settings)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize the regret-optimal filter")
    synth.add_argument(
        "--model",
        required=True,
        help="builtin:scalar, builtin:tracking[?delta_t=1&target=current] or a JSON file",
    )
    synth.add_argument("--tol", type=_positive_float, help="relative bisection tolerance")
    synth.add_argument("--out", default=STDOUT, help="JSON report path ('-' for stdout)")
    synth.add_argument("--verify", action="store_true", help="run the identity checks")

    analyze = sub.add_parser("analyze", help="norms and frequency curves")
    analyze.add_argument("--model", required=True)
    analyze.add_argument("--filters", type=_filter_list, default=list(FILTER_CHOICES))
    analyze.add_argument("--grid", type=_positive_int, help="grid points (power of two >= 64)")
    analyze.add_argument("--quantity", choices=("operator", "regret"), default="operator")
    analyze.add_argument("--out", default=STDOUT, help="curve CSV path ('-' for stdout)")
    analyze.add_argument("--summary", help="JSON summary path")

    simulate = sub.add_parser("simulate", help="time-domain experiment")
    simulate.add_argument("--model", required=True)
    simulate.add_argument("--kind", choices=("gaussian", "adversarial"), default="gaussian")
    simulate.add_argument("--horizon", type=_positive_int)
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--scale", type=_positive_float, default=1.0)
    simulate.add_argument("--filters", type=_filter_list, default=["h2", "hinf", "regret"])
    simulate.add_argument("--out", default=STDOUT, help="running-average CSV path")

    reproduce = sub.add_parser("reproduce", help="recompute a reference table")
    reproduce.add_argument("--table", type=int, choices=(1, 2), required=True)
    reproduce.add_argument("--delta-t", type=_positive_float, help="sampling period for table 2")
    reproduce.add_argument("--out", help="cell CSV path ('-' for stdout)")
    return parser


def _emit_error(error: BaseException, exit_code: int) -> int:
    """Write the error JSON document to stderr and return the exit code."""
    document = {
        "error": type(error).__name__,
        "message": getattr(error, "message", str(error)),
        "details": getattr(error, "details", None),
        "description": get_error_description(error),
        "suggestion": get_error_suggestion(error),
        "exit_code": exit_code,
    }
    sys.stderr.write(json.dumps(document) + "\n")
    return exit_code


# --- Commands ----------------------------------------------------------------


def cmd_synth(args: argparse.Namespace, settings: Settings) -> int:
    from checkers import VerificationContext, run_verification
    from model_file import load_model
    from synthesis import synthesize

    model = load_model(args.model)
    metrics = RunMetrics()
    result = synthesize(model, tol=args.tol, settings=settings, metrics=metrics)
    document = result.to_dict()
    exit_code = EXIT_OK
    if args.verify:
        with metrics.timer("verify"):
            reports = run_verification(VerificationContext(model, result, settings))
        document["verification"] = [r.to_dict() for r in reports]
        document["timings"] = metrics.summary()
        sys.stderr.write(OutputFormatter().format_check_reports(reports) + "\n")
        if any(r.is_fail() for r in reports):
            exit_code = EXIT_CHECK_FAILED
    write_text_output(args.out, json_text(document))
    return exit_code


def _build_estimators(model, names: Sequence[str], settings: Settings) -> dict:
    from analysis import FrequencyMatched
    from baselines import hinf_optimal
    from synthesis import kalman_filter, synthesize

    estimators = {}
    for name in names:
        label = FILTER_LABELS[name]
        if name == "h2":
            estimators[label] = kalman_filter(model, settings=settings)
        elif name == "hinf":
            estimators[label] = hinf_optimal(model, settings=settings)[1]
        elif name == "regret":
            estimators[label] = synthesize(model, settings=settings).filter
        else:
            estimators[label] = FrequencyMatched()
    return estimators


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    from analysis import FrequencyGrid, curves_text, evaluate
    from model_file import load_model

    model = load_model(args.model)
    grid = FrequencyGrid(args.grid) if args.grid else FrequencyGrid.from_settings(settings)
    estimators = _build_estimators(model, args.filters, settings)
    reports = [
        evaluate(model, est, grid, settings, label=label) for label, est in estimators.items()
    ]
    write_text_output(args.out, curves_text(reports, args.quantity))

    summary = json_text(
        {
            "model": model.name,
            "grid": grid.count,
            "reports": {r.label: r.to_dict() for r in reports},
        }
    )
    if args.summary:
        write_text_output(args.summary, summary)
    elif args.out != STDOUT:
        sys.stdout.write(summary)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    from model_file import load_model
    from sim import DisturbanceSpec, export_sim, plateau, simulate

    if "noncausal" in args.filters:
        raise ValidationError("The noncausal estimator cannot be simulated causally")
    model = load_model(args.model)
    overrides = {"scale": args.scale}
    if args.horizon is not None:
        overrides["horizon"] = args.horizon
    if args.seed is not None:
        overrides["seed"] = args.seed
    spec = DisturbanceSpec.from_settings(args.kind, settings, **overrides)
    filters = _build_estimators(model, args.filters, settings)
    result = simulate(model, filters, spec, settings)
    export_sim(result, args.out)
    get_logger().info(
        "Simulation plateaus",
        plateaus={name: plateau(result, name) for name in result.names},
        burn_in=result.burn_in,
    )
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace, settings: Settings) -> int:
    from checkers import (
        ESTIMATORS,
        METRICS,
        anchor_failed,
        compute_reports,
        reproduction_cells,
        table_model,
        table_tolerance,
    )
    from checkers.reproduction import ESTIMATOR_TITLES, METRIC_TITLES

    model = table_model(args.table, args.delta_t, settings)
    tolerance = table_tolerance(args.table, settings)
    metrics = RunMetrics()
    reports = compute_reports(model, settings, metrics=metrics)
    cells = reproduction_cells(reports, args.table, tolerance)

    formatter = OutputFormatter()
    stream = sys.stderr if args.out == STDOUT else sys.stdout
    lines = [formatter.banner(f"Table {args.table}: {model.name} model")]
    if args.table == 2:
        delta_t = settings.reproduction.delta_t if args.delta_t is None else args.delta_t
        lines.append(f"delta_t = {delta_t:g}")
    by_key = {(c.metadata["estimator"], c.metadata["metric"]): c for c in cells}
    rows = []
    for estimator in ESTIMATORS:
        row = [ESTIMATOR_TITLES[estimator]]
        for metric in METRICS:
            cell = by_key[(estimator, metric)]
            mark = "ok" if cell.is_pass() else "known" if cell.is_warning() else "FAIL"
            row.append(f"{cell.metadata['value']:.2f} ({cell.metadata['target']:g}) {mark}")
        rows.append(row)
    lines.append(
        TableFormatter().format_table(
            ["Estimator"] + [METRIC_TITLES[m] for m in METRICS], rows, [16, 20, 20, 20]
        )
    )
    passed = not any(c.is_fail() for c in cells)
    lines.append(f"tolerance ±{tolerance:g}: {formatter.status(passed)}")
    if anchor_failed(cells):
        lines.append(
            "The noncausal Frobenius anchor depends only on the plant; the reference "
            "sampling period may differ. Try a sweep, e.g. --delta-t 0.5, 1, 2."
        )
    elif not passed:
        failed = ", ".join(c.checker_name for c in cells if c.is_fail())
        lines.append(
            f"Failed cells: {failed}. The noncausal anchor matches, so the plant is right; "
            "check the target map (reproduction.tracking_target for table 2) and the "
            "estimator settings."
        )
    deviations = [c for c in cells if c.is_warning()]
    for cell in deviations:
        lines.append(f"{cell.checker_name}: {cell.message} ({cell.details})")
    stream.write("\n".join(lines) + "\n")

    if args.out:
        header = ("estimator", "metric", "value", "target", "tolerance", "status")
        rows_csv = [
            (
                c.metadata["estimator"],
                c.metadata["metric"],
                format_float(c.metadata["value"]),
                format_float(c.metadata["target"]),
                format_float(c.metadata["tolerance"]),
                c.result.value.upper(),
            )
            for c in cells
        ]
        write_text_output(args.out, csv_text(header, rows_csv))
    return EXIT_OK if passed else EXIT_CHECK_FAILED


COMMANDS = {
    "synth": cmd_synth,
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "reproduce": cmd_reproduce,
}


def _load_settings(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config) if args.config else get_default_settings()
    set_default_settings(settings)
    configure(log_dir=args.log_dir or settings.log_dir, level=args.log_level or settings.log_level)
    return settings


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = _load_settings(args)
    except ConfigurationError as e:
        return _emit_error(e, EXIT_USAGE)

    logger = get_logger()
    start = time.perf_counter()
    exit_code = EXIT_NUMERICAL
    try:
        exit_code = COMMANDS[args.command](args, settings)
    except (ValidationError, ConfigurationError) as e:
        exit_code = _emit_error(e, EXIT_USAGE)
    except FilterError as e:
        exit_code = _emit_error(e, EXIT_NUMERICAL)
    except OSError as e:
        exit_code = _emit_error(e, EXIT_USAGE)
    finally:
        logger.log_command(
            args.command,
            {k: str(v) for k, v in vars(args).items() if v is not None},
            time.perf_counter() - start,
            success=exit_code == EXIT_OK,
        )
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
