"""
rindler-corr Sweep Module
"""

from ._cli import build_parser, load_config, main
from ._csv import emit_csv, format_csv, read_csv, write_json
from ._runner import (
    AsyncSweepRunner,
    ConvergenceTable,
    convergence_study,
    run_sweep,
    sweep_alphas,
)
from ._svg import LineSeries, SvgDocument, chart_specs, emit_plots, render_line_chart

__all__ = [
    # Runner
    "AsyncSweepRunner",
    "run_sweep",
    "sweep_alphas",
    "ConvergenceTable",
    "convergence_study",
    # Output
    "format_csv",
    "emit_csv",
    "read_csv",
    "write_json",
    "SvgDocument",
    "LineSeries",
    "render_line_chart",
    "chart_specs",
    "emit_plots",
    # Command line
    "build_parser",
    "load_config",
    "main",
]
