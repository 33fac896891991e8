"""Figure drawing: curves, matrix heatmaps, and flow bars.

Uses matplotlib Figure objects directly (no pyplot, no global state).
Rendering never alters data: heatmap annotations show the parsed values,
and the annotated maximum is the exact float from the CSV.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .csvio import S_COLUMNS, MalformedCSV, ParsedTable, parse_table

KINDS = ("curves", "matrix-heatmap", "flow-bars")

# Fig-2(a)-style default: both optical directions plus the eight
# optical<->mechanical pairs; the terminal-terminal pair is omitted.
DEFAULT_CURVES = ("S12", "S21", "S31", "S13", "S41", "S14", "S23", "S32", "S24", "S42")


@dataclass(frozen=True)
class FigureJob:
    """One rendering task: input CSVs, figure kind, output image."""

    inputs: tuple
    kind: str
    output: Path
    columns: tuple = DEFAULT_CURVES
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        object.__setattr__(self, "inputs", tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "output", Path(self.output))
        unknown = sorted(set(self.columns) - set(S_COLUMNS))
        if unknown:
            raise ValueError(f"unknown column(s) {unknown}; valid: S11..S44")


@dataclass(frozen=True)
class RenderInfo:
    """What was drawn; ``annotated_max`` is exact per heatmap panel."""

    output: Path
    kind: str
    panels: int
    annotated_max: tuple = field(default=())


def _label(ports, i, j) -> str:
    return f"{ports[j - 1]} to {ports[i - 1]}"


def _render_curves(job: FigureJob, tables) -> RenderInfo:
    fig = Figure(figsize=(7.0, 4.5 * len(tables)))
    axes = fig.subplots(len(tables), 1, squeeze=False)[:, 0]
    for ax, table in zip(axes, tables):
        for name in job.columns:
            idx = S_COLUMNS.index(name)
            i, j = int(name[1]), int(name[2])
            ax.plot(table.axis_values, table.s[:, idx], label=_label(table.ports, i, j), lw=1.2)
        ax.set_xlabel(table.axis_label)
        ax.set_ylabel("scattering probability")
        ax.set_title(table.path.name)
        ax.legend(ncols=2, fontsize=8, framealpha=0.6)
        ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(job.output, dpi=job.dpi)
    return RenderInfo(output=job.output, kind=job.kind, panels=len(tables))


def _render_heatmap(job: FigureJob, tables) -> RenderInfo:
    fig = Figure(figsize=(4.6 * len(tables), 4.4))
    axes = fig.subplots(1, len(tables), squeeze=False)[0]
    maxima = []
    for ax, table in zip(axes, tables):
        matrix = table.matrix(0)
        panel_max = float(matrix.max())
        maxima.append(panel_max)
        image = ax.imshow(matrix, vmin=0.0, vmax=1.0, cmap="viridis")
        ports = table.ports
        ax.set_xticks(range(4), [f"from {p}" for p in ports], rotation=45, ha="right")
        ax.set_yticks(range(4), [f"to {p}" for p in ports])
        for i in range(4):
            for j in range(4):
                value = matrix[i, j]
                ax.text(
                    j,
                    i,
                    f"{value:.3f}",
                    ha="center",
                    va="center",
                    fontsize=8,
                    color="white" if value < 0.6 else "black",
                )
        axis_value = table.axis_values[0]
        ax.set_title(f"{table.path.name}  (axis={axis_value:g})\nmax = {panel_max!r}", fontsize=9)
        fig.colorbar(image, ax=ax, fraction=0.046)
    fig.tight_layout()
    fig.savefig(job.output, dpi=job.dpi)
    return RenderInfo(
        output=job.output, kind=job.kind, panels=len(tables), annotated_max=tuple(maxima)
    )


def _render_flow_bars(job: FigureJob, tables) -> RenderInfo:
    fig = Figure(figsize=(6.5 * len(tables), 4.2))
    axes = fig.subplots(1, len(tables), squeeze=False)[0]
    for ax, table in zip(axes, tables):
        matrix = table.matrix(0)
        ports = table.ports
        x = np.arange(4)
        width = 0.38
        # outgoing: column sums without the reflection; incoming: row sums
        out_flow = matrix.sum(axis=0) - np.diag(matrix)
        in_flow = matrix.sum(axis=1) - np.diag(matrix)
        ax.bar(x - width / 2, out_flow, width, label="sent onward")
        ax.bar(x + width / 2, in_flow, width, label="received")
        ax.set_xticks(x, ports)
        ax.set_ylabel("probability (excl. reflection)")
        ax.set_title(table.path.name)
        ax.legend(fontsize=8)
        ax.grid(axis="y", alpha=0.25)
    fig.tight_layout()
    fig.savefig(job.output, dpi=job.dpi)
    return RenderInfo(output=job.output, kind=job.kind, panels=len(tables))


def render(job: FigureJob) -> RenderInfo:
    """Parse the inputs and write the image.

    Parsing happens before any drawing, so a malformed or empty CSV
    raises :class:`MalformedCSV` and no output file is written.
    """
    tables = [parse_table(path) for path in job.inputs]
    if job.kind == "curves":
        return _render_curves(job, tables)
    if job.kind == "matrix-heatmap":
        for table in tables:
            if table.s.shape[0] != 1:
                raise MalformedCSV(
                    f"{table.path}: matrix-heatmap needs single-row CSVs, got "
                    f"{table.s.shape[0]} rows"
                )
        return _render_heatmap(job, tables)
    return _render_flow_bars(job, tables)
