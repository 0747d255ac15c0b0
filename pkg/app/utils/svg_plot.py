"""
Minimal SVG line plots of CSV tables.

Uses matplotlib's object API with the SVG canvas directly, so no pyplot
global state and no GUI backend are involved.
"""

from pathlib import Path

import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure


def line_plot(
    x: np.ndarray,
    series: dict[str, np.ndarray],
    x_label: str,
    path: str | Path,
    y_label: str = "",
    log_x: bool = False,
) -> Path:
    """One line per entry of ``series`` against ``x``; written as SVG."""
    path = Path(path)
    fig = Figure(figsize=(6.0, 4.0))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot(1, 1, 1)
    for label, values in series.items():
        ax.plot(x, values, marker="o" if len(x) <= 10 else None, label=label)
    if log_x:
        ax.set_xscale("log")
    ax.set_xlabel(x_label)
    ax.set_ylabel(y_label)
    if len(series) > 1:
        ax.legend(frameon=False, fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    return path


def svg_path_for(out: str | Path) -> Path:
    """``results.csv`` → ``results.svg``."""
    return Path(out).with_suffix(".svg")
