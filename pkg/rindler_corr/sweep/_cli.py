import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from rindler_corr.correlations import assemble_record
from rindler_corr.exception import ConfigError, InvalidParameterError, RindlerCorrError
from rindler_corr.model import SqueezingParameter
from rindler_corr.model.sweep_config import SweepConfig
from rindler_corr.oracle import SPOT_CHECK_ALPHAS, verify_all
from rindler_corr.sweep._csv import emit_csv, write_json
from rindler_corr.sweep._runner import convergence_study, run_sweep
from rindler_corr.sweep._svg import emit_plots
from rindler_corr.utils.const import (
    DEFAULT_TRUNCATION_CONVERGENCE_TOL,
    TOOL_NAME,
    EigenSolver,
)
from rindler_corr.utils.helpers import tool_version

logger = logging.getLogger("rindler_corr")

LOG_FORMAT = "%(asctime)s [%(levelname)8s] %(message)s (%(filename)s:%(lineno)s)"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

CSV_NAME = "correlations.csv"
METADATA_NAME = "metadata.json"
PLOTS_DIR = "plots"

# flags whose argparse destination is also the configuration key
_FLAG_KEYS = (
    "alpha_min",
    "alpha_max",
    "steps",
    "omega",
    "accel_min",
    "accel_max",
    "nmax",
    "tail_eps",
    "out",
    "plots",
    "workers",
    "eigensolver",
)


def build_parser() -> argparse.ArgumentParser:
    """Builds the ``rindler-corr`` argument parser with its four subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value configuration file")
    common.add_argument(
        "--nmax", type=int, help="fixed truncation N (disables the adaptive policy)"
    )
    common.add_argument("--tail-eps", type=float, help="discarded weight allowed per branch")
    common.add_argument(
        "--eigensolver",
        choices=[s.value for s in EigenSolver],
        help="dense block eigensolver",
    )
    common.add_argument("--workers", type=int, help="worker processes")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")

    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Correlations between an inertial observer and two "
        "uniformly accelerated observers as a function of the squeezing parameter.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {tool_version()}"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser(
        "sweep", parents=[common], help="full sweep to CSV and SVG"
    )
    sweep.add_argument("--alpha-min", type=float)
    sweep.add_argument("--alpha-max", type=float)
    sweep.add_argument("--steps", type=int)
    sweep.add_argument(
        "--omega", type=float, help="mode frequency; switches to an acceleration axis"
    )
    sweep.add_argument("--accel-min", type=float)
    sweep.add_argument("--accel-max", type=float)
    sweep.add_argument("--out", type=Path, help="output directory")
    sweep.add_argument(
        "--plots", action="store_true", default=None, help="write SVG charts"
    )

    point = commands.add_parser("point", parents=[common], help="one record as JSON")
    point.add_argument("--alpha", type=float, required=True)

    convergence = commands.add_parser(
        "convergence", parents=[common], help="N-doubling study at one alpha"
    )
    convergence.add_argument("--alpha", type=float, required=True)
    convergence.add_argument("--doublings", type=int, default=1)

    verify = commands.add_parser("verify", parents=[common], help="run the oracle suite")
    verify.add_argument(
        "--resolution",
        type=float,
        default=1.0,
        help="exhaustive measurement grid step in degrees (default: 1)",
    )
    verify.add_argument(
        "--alpha",
        type=float,
        action="append",
        dest="alphas",
        help="spot-check value, repeatable (default: 0, 0.25, ln3/2, 1, 2)",
    )
    return parser


def load_config(args: argparse.Namespace) -> SweepConfig:
    """
    Merges the configuration file and the command-line flags.

    Flags override file values; the worker count falls back to
    ``RINDLER_CORR_WORKERS`` and then the CPU count when neither sets it.

    Raises:
        ConfigError: If the file or a value is invalid.
    """
    values: Dict[str, Any] = {}
    if args.config is not None:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config file {args.config}: {e}") from e
        values.update(SweepConfig.parse_text(text))
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    if getattr(args, "omega", None) is not None:
        values["axis"] = "acceleration"
    if args.nmax is None and args.tail_eps is not None:
        values.pop("nmax", None)
    return SweepConfig.from_mapping(values)


def _check_alphas(args: argparse.Namespace) -> None:
    alphas = getattr(args, "alphas", None) or ()
    if getattr(args, "alpha", None) is not None:
        alphas = (args.alpha,)
    for alpha in alphas:
        try:
            SqueezingParameter(alpha)
        except InvalidParameterError as e:
            raise ConfigError(f"--alpha: {e}") from e


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)


def _sweep(config: SweepConfig) -> int:
    result = run_sweep(config)
    emit_csv(result, config.out / CSV_NAME)
    write_json(result.metadata, config.out / METADATA_NAME)
    if config.plots:
        emit_plots(result, config.out / PLOTS_DIR)
    return 0


def _point(config: SweepConfig, alpha: float) -> int:
    record = assemble_record(alpha, config.truncation, config.numerics)
    sys.stdout.write(write_json(record))
    return 0


def _convergence(config: SweepConfig, alpha: float, doublings: int) -> int:
    table = convergence_study(alpha, config.truncation, doublings, config.numerics)
    sys.stdout.write(table.to_text())
    if table.max_delta >= DEFAULT_TRUNCATION_CONVERGENCE_TOL:
        logger.warning(
            "Not converged at alpha=%s: max |delta| = %.3e", alpha, table.max_delta
        )
    return 0


def _verify(
    config: SweepConfig, alphas: Optional[Sequence[float]], resolution: float
) -> int:
    report = verify_all(
        alphas or SPOT_CHECK_ALPHAS,
        policy=config.truncation,
        numerics=config.numerics,
        resolution_deg=resolution,
    )
    for check in report.checks:
        sys.stdout.write(f"{check}\n")
    sys.stdout.write(f"{report.summary()}\n")
    return 0 if report.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``rindler-corr`` command.

    Args:
        argv (Optional[Sequence[str]], optional): Arguments without the
            program name. Defaults to ``sys.argv[1:]``.

    Returns:
        int: 0 on success, 1 when a computation or verification fails,
            2 for invalid arguments or configuration.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        config = load_config(args)
        _check_alphas(args)
    except ConfigError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return 2

    try:
        if args.command == "sweep":
            return _sweep(config)
        if args.command == "point":
            return _point(config, args.alpha)
        if args.command == "convergence":
            return _convergence(config, args.alpha, args.doublings)
        return _verify(config, args.alphas, args.resolution)
    except RindlerCorrError as e:
        logger.error("%s", e)
        return 1
