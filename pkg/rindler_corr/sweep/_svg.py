import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np
from numpy.typing import ArrayLike, NDArray

from rindler_corr.exception import InvalidParameterError
from rindler_corr.model import SweepResult

logger = logging.getLogger("rindler_corr")

BLUE = "#1f4fd1"
RED = "#c81e1e"
BLACK = "#000000"
SOLID = ""
DASHED = "8 5"
DOTTED = "2 4"

X_LABEL = "squeezing parameter α"

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 80
MARGIN_RIGHT = 30
MARGIN_TOP = 50
MARGIN_BOTTOM = 70
TICKS = 6


class SvgDocument:
    """Accumulates SVG 1.1 elements into a standalone document."""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self._body: list[str] = []

    def rect(
        self,
        x: float,
        y: float,
        width: float,
        height: float,
        fill: str,
        stroke: str = "none",
    ) -> None:
        self._body.append(
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{width:.1f}" height="{height:.1f}" '
            f'fill="{fill}" stroke="{stroke}"/>'
        )

    def line(
        self,
        x1: float,
        y1: float,
        x2: float,
        y2: float,
        stroke: str,
        width: float = 1.0,
        dash: str = SOLID,
    ) -> None:
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self._body.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" stroke-width="{width:g}"{dash_attr}/>'
        )

    def polyline(
        self,
        xs: Sequence[float],
        ys: Sequence[float],
        stroke: str,
        dash: str = SOLID,
        label: str = "",
    ) -> None:
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        title = f"<title>{escape(label)}</title>" if label else ""
        self._body.append(
            f'<polyline points="{points}" fill="none" stroke="{stroke}" '
            f'stroke-width="2"{dash_attr}>{title}</polyline>'
        )

    def text(
        self,
        x: float,
        y: float,
        content: str,
        anchor: str = "start",
        size: int = 14,
        rotate: bool = False,
    ) -> None:
        transform = f' transform="rotate(-90 {x:.2f} {y:.2f})"' if rotate else ""
        self._body.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}"{transform}>{escape(content)}</text>'
        )

    def get_svg(self) -> str:
        header = (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
        )
        return header + "\n".join(self._body) + "\n</svg>\n"


@dataclass(frozen=True)
class LineSeries:
    """One curve of a chart and how it is drawn."""

    label: str
    values: NDArray[np.float64]
    color: str = BLUE
    dash: str = SOLID


def render_line_chart(
    title: str,
    x: ArrayLike,
    series: Sequence[LineSeries],
    y_label: str,
    x_label: str = X_LABEL,
) -> str:
    """
    Draws curves sharing one x axis as a standalone SVG line chart.

    Args:
        title (str): Chart title.
        x (ArrayLike): Abscissae shared by every series.
        series (Sequence[LineSeries]): The curves, drawn in order and listed
            in the legend.
        y_label (str): Quantity on the vertical axis.
        x_label (str, optional): Quantity on the horizontal axis.

    Returns:
        str: The SVG document.

    Raises:
        InvalidParameterError: If there are no curves, fewer than two points,
            or a curve does not match the x values.
    """
    xs = np.asarray(x, dtype=np.float64)
    if not series or xs.size < 2:
        raise InvalidParameterError("a chart needs at least one curve and two points")
    for s in series:
        if np.shape(s.values) != xs.shape:
            raise InvalidParameterError(f"curve {s.label!r} does not match the x values")

    x_lo, x_hi = float(xs.min()), float(xs.max())
    stacked = np.concatenate([np.asarray(s.values, dtype=np.float64) for s in series])
    y_lo, y_hi = min(0.0, float(stacked.min())), float(stacked.max())
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0
    y_hi += 0.05 * (y_hi - y_lo)

    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM

    def to_x(values):
        return left + (np.asarray(values) - x_lo) / (x_hi - x_lo) * (right - left)

    def to_y(values):
        return bottom - (np.asarray(values) - y_lo) / (y_hi - y_lo) * (bottom - top)

    doc = SvgDocument(WIDTH, HEIGHT)
    doc.rect(0, 0, WIDTH, HEIGHT, fill="#ffffff")
    doc.text(WIDTH / 2, 30, title, anchor="middle", size=16)

    # grid and ticks
    for tick in np.linspace(y_lo, y_hi, TICKS):
        y = float(to_y(tick))
        doc.line(left, y, right, y, stroke="#e5e7eb")
        doc.text(left - 8, y + 4, f"{tick:.3g}", anchor="end", size=12)
    for tick in np.linspace(x_lo, x_hi, TICKS):
        xpos = float(to_x(tick))
        doc.line(xpos, bottom, xpos, bottom + 5, stroke=BLACK)
        doc.text(xpos, bottom + 20, f"{tick:.3g}", anchor="middle", size=12)
    doc.line(left, bottom, right, bottom, stroke=BLACK)
    doc.line(left, top, left, bottom, stroke=BLACK)
    doc.text((left + right) / 2, HEIGHT - 20, x_label, anchor="middle")
    doc.text(22, (top + bottom) / 2, y_label, anchor="middle", rotate=True)

    for s in series:
        doc.polyline(to_x(xs), to_y(s.values), s.color, s.dash, s.label)

    # legend
    legend_x, legend_y = right - 170, top + 10
    doc.rect(
        legend_x - 10,
        legend_y - 14,
        175,
        22 * len(series) + 8,
        fill="#ffffff",
        stroke="#9ca3af",
    )
    for i, s in enumerate(series):
        y = legend_y + 22 * i
        doc.line(legend_x, y, legend_x + 36, y, stroke=s.color, width=2, dash=s.dash)
        doc.text(legend_x + 44, y + 5, s.label, size=13)
    return doc.get_svg()


def chart_specs(result: SweepResult) -> dict[str, tuple[str, str, list[LineSeries]]]:
    """
    The six standard charts of a sweep, keyed by file stem.

    Returns:
        dict[str, tuple[str, str, list[LineSeries]]]: Title, y label and curves.
    """
    c = result.column
    return {
        "entropies": (
            "Von Neumann entropies",
            "entropy (bits)",
            [
                LineSeries("S(ρ_A)", c("S_A"), BLUE, SOLID),
                LineSeries("S(ρ_R)", c("S_R"), RED, DASHED),
                LineSeries("S(ρ_R̄)", c("S_AntiR"), BLACK, DOTTED),
            ],
        ),
        "mutual_information": (
            "Mutual information",
            "mutual information (bits)",
            [
                LineSeries("I(ρ_AR)", c("I_AR"), BLUE, SOLID),
                LineSeries("I(ρ_AR̄)", c("I_AAntiR"), RED, DASHED),
                LineSeries(
                    "I(ρ_AR) + I(ρ_AR̄)", c("I_AR") + c("I_AAntiR"), BLACK, DOTTED
                ),
            ],
        ),
        "correlations_AR": (
            "Alice-Rob correlations",
            "correlations (bits)",
            [
                LineSeries("I(ρ_AR)", c("I_AR"), BLUE, SOLID),
                LineSeries("J(ρ_AR)", c("J_AR"), RED, DASHED),
                LineSeries("D(ρ_AR)", c("D_AR"), BLACK, DOTTED),
            ],
        ),
        "correlations_AAntiR": (
            "Alice-AntiRob correlations",
            "correlations (bits)",
            [
                LineSeries("I(ρ_AR̄)", c("I_AAntiR"), BLUE, SOLID),
                LineSeries("J(ρ_AR̄)", c("J_AAntiR"), RED, DASHED),
                LineSeries("D(ρ_AR̄)", c("D_AAntiR"), BLACK, DOTTED),
            ],
        ),
        "correlations_compared": (
            "Both bipartitions",
            "correlations (bits)",
            [
                LineSeries("I(ρ_AR)", c("I_AR"), BLUE, SOLID),
                LineSeries("J(ρ_AR)", c("J_AR"), BLUE, DASHED),
                LineSeries("D(ρ_AR)", c("D_AR"), BLUE, DOTTED),
                LineSeries("I(ρ_AR̄)", c("I_AAntiR"), RED, SOLID),
                LineSeries("J(ρ_AR̄)", c("J_AAntiR"), RED, DASHED),
                LineSeries("D(ρ_AR̄)", c("D_AAntiR"), RED, DOTTED),
            ],
        ),
        "entanglement_of_formation": (
            "Entanglement of formation",
            "E_F(ρ_RR̄) (bits)",
            [LineSeries("E_F(ρ_RR̄)", c("EF_RAntiR"), BLUE, SOLID)],
        ),
    }


def emit_plots(result: SweepResult, directory: Path | str) -> list[Path]:
    """
    Writes the six standard charts of a sweep as SVG files.

    Args:
        result (SweepResult): The sweep, at least two points.
        directory (Path | str): Output directory, created if missing.

    Returns:
        list[Path]: The files written.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, (title, y_label, series) in chart_specs(result).items():
        path = directory / f"{stem}.svg"
        chart = render_line_chart(title, result.alphas, series, y_label)
        path.write_text(chart, encoding="utf-8")
        written.append(path)
    logger.info("Wrote %d charts to %s", len(written), directory)
    return written
