"""Matplotlib renderings of the classification report.

Writes publication-style summary figures next to the delimited report
files.  Import stays local to the entry point so the library core works
without a plotting stack.
"""

from __future__ import annotations

import os
from typing import Sequence

from .configurations import Configuration
from .kodaira import euler_number
from .report import ReportRow, group_name, rows_to_csv, rows_to_json

_FIBER_COLORS = {
    "II*": "#4c72b0",
    "III*": "#dd8452",
    "IV*": "#55a868",
    "I*": "#c44e52",
    "I": "#8172b3",
    "other": "#937860",
}


def _fiber_color(symbol: str) -> str:
    if symbol.endswith("*") and symbol.startswith("I") and symbol[1].isdigit():
        return _FIBER_COLORS["I*"]
    if symbol in _FIBER_COLORS:
        return _FIBER_COLORS[symbol]
    if symbol.startswith("I") and symbol[1:].isdigit():
        return _FIBER_COLORS["I"]
    return _FIBER_COLORS["other"]


def render_report_files(rows: Sequence[ReportRow], outdir: str) -> list[str]:
    """Write table1.csv, table1.json and the summary figures into outdir.

    Returns the list of paths written.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    written = []
    csv_path = os.path.join(outdir, "table1.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(tuple(rows)))
    written.append(csv_path)
    json_path = os.path.join(outdir, "table1.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(rows_to_json(tuple(rows)))
    written.append(json_path)

    written.append(_euler_decomposition_figure(rows, outdir, plt))
    written.append(_classification_table_figure(rows, outdir, plt))
    return written


def _euler_decomposition_figure(rows: Sequence[ReportRow], outdir: str, plt) -> str:
    fig, ax = plt.subplots(figsize=(9, 6))
    labels = []
    for pos, row in enumerate(reversed(rows)):
        config = Configuration.from_symbols(row.fibers)
        left = 0
        for f in config.fibers:
            e = euler_number(f)
            ax.barh(pos, e, left=left, height=0.72,
                    color=_fiber_color(f.symbol), edgecolor="white")
            ax.text(left + e / 2, pos, f.symbol, ha="center", va="center",
                    fontsize=8, color="white")
            left += e
        mw = group_name(row.final_mw) if row.final_mw is not None else "excluded"
        ax.text(24.4, pos, mw, va="center", fontsize=9)
        labels.append(f"type {row.type_index}")
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(labels)
    ax.set_xlim(0, 28)
    ax.set_xlabel("Euler number contributions (total 24)")
    ax.set_title("Singular-fiber decomposition and Mordell-Weil groups")
    ax.axvline(24, color="black", linewidth=0.8, linestyle="--")
    fig.tight_layout()
    path = os.path.join(outdir, "fiber_configurations.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _classification_table_figure(rows: Sequence[ReportRow], outdir: str, plt) -> str:
    fig, ax = plt.subplots(figsize=(8, 0.42 * len(rows) + 1.2))
    ax.axis("off")
    header = ["#", "table 1", "fiber type", "MW(f)", "existence"]
    cells = []
    for row in rows:
        mw = group_name(row.final_mw) if row.final_mw is not None else "excluded"
        cells.append([
            str(row.type_index),
            str(row.table1_index) if row.table1_index is not None else "-",
            "(" + ",".join(row.fibers) + ")",
            mw,
            row.provenance,
        ])
    table = ax.table(cellText=cells, colLabels=header, loc="center",
                     cellLoc="center")
    table.auto_set_font_size(False)
    table.set_fontsize(9)
    table.scale(1.0, 1.25)
    for (r, _c), cell in table.get_celld().items():
        if r == 0:
            cell.set_text_props(weight="bold")
            cell.set_facecolor("#e8e8e8")
    ax.set_title("Extremal elliptic K3 surfaces without semi-stable fibers")
    fig.tight_layout()
    path = os.path.join(outdir, "classification_table.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
