"""Figure definitions and deterministic rendering.

Each figure id names a fixed set of CSV columns and a layout; the
renderer validates the columns up front, draws from the table values
only, and writes images without timestamps or host-dependent metadata
so the same CSV always produces the same bytes.
"""

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .errors import FigureError, MissingColumnError
from .tables import SweepData, read_sweep_csv

# 95% normal-approximation band half-width in standard errors.
BAND_Z = 1.96

AXIS_LABELS = {
    "u": "number of nodes",
    "radius": "node placement radius (m)",
    "d_bs_ue": "BS-UE distance (m)",
    "p_node_dbm": "node transmit power (dBm)",
}


@dataclass(frozen=True)
class Series:
    column: str
    label: str
    linestyle: str = "-"


@dataclass(frozen=True)
class FigureLayout:
    series: tuple[Series, ...]
    y_label: str
    title: str
    # Optional second panel showing the ratio of two plotted mean columns.
    ratio_of: tuple[str, str] | None = None
    ratio_label: str = "relative gain"


FIGURES = {
    "fig3": FigureLayout(
        series=(
            Series("c1_min_mean", "min rate"),
            Series("c1_median_mean", "median rate"),
            Series("c1_max_mean", "max rate"),
        ),
        y_label="front-haul rate (b/s/Hz)",
        title="Front-haul rates vs. node radius",
    ),
    "fig4": FigureLayout(
        series=(
            Series("c2_closed_mean", "joint transmission"),
            Series("c_baseline_mean", "BS-only baseline", linestyle="--"),
        ),
        y_label="capacity (b/s/Hz)",
        title="Joint-transmission capacity vs. distance",
        ratio_of=("c2_closed_mean", "c_baseline_mean"),
    ),
    "fig5": FigureLayout(
        series=(
            Series("c2_closed_mean", "joint transmission (one node)"),
            Series("c_baseline_mean", "BS-only baseline", linestyle="--"),
        ),
        y_label="capacity (b/s/Hz)",
        title="Capacity vs. node transmit power",
    ),
    "fig7": FigureLayout(
        series=(
            Series("dmimo_throughput_hz_mean", "two-phase D-MIMO"),
            Series("c_baseline_mean", "BS-only baseline", linestyle="--"),
        ),
        y_label="delivered throughput (b/s/Hz)",
        title="Two-phase throughput vs. distance",
    ),
}

# Drop timestamps and tool tags; everything else savefig writes is a pure
# function of the figure contents and the pinned library version.
_METADATA = {
    ".png": {"Software": None},
    ".svg": {"Date": None},
    ".pdf": {"CreationDate": None},
}


@dataclass(frozen=True)
class FigureSpec:
    """One render request: which figure, from which CSV, to which file."""

    csv_path: str
    figure_id: str
    out_path: str
    log_y: bool = False
    bands: bool = True

    def __post_init__(self):
        if self.figure_id not in FIGURES:
            raise FigureError(
                f"unknown figure id {self.figure_id!r} "
                f"(expected one of {', '.join(sorted(FIGURES))})"
            )


def se_column(mean_column: str) -> str:
    return mean_column.removesuffix("_mean") + "_se"


def required_columns(figure_id: str, bands: bool = True) -> tuple[str, ...]:
    """Every CSV column the figure reads, in plot order."""
    if figure_id not in FIGURES:
        raise FigureError(f"unknown figure id {figure_id!r}")
    layout = FIGURES[figure_id]
    names = [s.column for s in layout.series]
    if bands:
        names += [se_column(s.column) for s in layout.series]
    return tuple(names)


def figure_series(
    figure_id: str, data: SweepData, bands: bool = True
) -> list[tuple[str, tuple[float, ...], tuple[float, ...] | None]]:
    """The (label, means, ses) triples a figure would draw, without drawing.

    Raises MissingColumnError listing every absent column, so a bad CSV
    is rejected before any figure object exists.
    """
    missing = [
        name for name in required_columns(figure_id, bands) if name not in data.columns
    ]
    if missing:
        raise MissingColumnError(
            f"{data.path}: {figure_id} needs missing column(s) {', '.join(missing)}"
        )
    layout = FIGURES[figure_id]
    return [
        (s.label, data.column(s.column), data.column(se_column(s.column)) if bands else None)
        for s in layout.series
    ]


def _draw_series(ax, x, layout: FigureLayout, triples, log_y: bool):
    for series, (label, means, ses) in zip(layout.series, triples):
        (line,) = ax.plot(x, means, marker="o", linestyle=series.linestyle, label=label)
        if ses is not None:
            lo = [m - BAND_Z * s for m, s in zip(means, ses)]
            hi = [m + BAND_Z * s for m, s in zip(means, ses)]
            ax.fill_between(x, lo, hi, color=line.get_color(), alpha=0.2, linewidth=0)
    if log_y:
        ax.set_yscale("log")
    ax.grid(True, alpha=0.3)
    ax.legend()


def render(spec: FigureSpec) -> Path:
    """Render one figure to spec.out_path and return that path."""
    out_path = Path(spec.out_path)
    suffix = out_path.suffix.lower()
    if suffix not in _METADATA:
        raise FigureError(
            f"unsupported image format {suffix!r} (expected .png, .svg or .pdf)"
        )
    data = read_sweep_csv(spec.csv_path)
    triples = figure_series(spec.figure_id, data, spec.bands)
    layout = FIGURES[spec.figure_id]
    x = data.axis_values
    x_label = AXIS_LABELS.get(data.axis, data.axis)

    if layout.ratio_of is None:
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        panels = [ax]
    else:
        fig, (ax, ax_ratio) = plt.subplots(
            2, 1, figsize=(6.4, 6.2), sharex=True, height_ratios=[2, 1]
        )
        panels = [ax, ax_ratio]
    try:
        _draw_series(ax, x, layout, triples, spec.log_y)
        ax.set_ylabel(layout.y_label)
        ax.set_title(layout.title)
        if layout.ratio_of is not None:
            num, den = (data.column(c) for c in layout.ratio_of)
            ax_ratio.plot(x, [a / b for a, b in zip(num, den)], marker="o", color="black")
            ax_ratio.set_ylabel(layout.ratio_label)
            ax_ratio.grid(True, alpha=0.3)
        panels[-1].set_xlabel(x_label)
        fig.tight_layout()
        with plt.rc_context({"svg.hashsalt": "dmimo-figures"}):
            fig.savefig(out_path, metadata=_METADATA[suffix], dpi=150)
    finally:
        plt.close(fig)
    return out_path
