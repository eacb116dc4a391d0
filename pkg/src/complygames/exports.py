"""Delimited exports (CSV/JSON/plain values) and figure rendering.

Figures go through matplotlib; grids use a fixed 8-unit cell, origin at the
lower left, P cells dark; injection scatters use a square canvas with one
dot per pair.  The output format follows the file extension (.svg or .png).
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .greedysets import GreedySet
from .heapgames import NimValueTable, OutcomeTable
from .injections import GreedyInjection
from .multiheap import GridOutcomeTable

CELL_UNITS = 8  # device units per grid cell at matplotlib's 72 dpi


def outcome_csv(table: OutcomeTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["heap", "outcome"])
    for x in range(table.N + 1):
        w.writerow([x, table.outcome(x)])
    return buf.getvalue()


def outcome_json(table: OutcomeTable) -> str:
    return json.dumps({"game": table.game, "N": table.N, "P": table.p_set()})


def nim_values_csv(table: NimValueTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["heap", "g"])
    for x, g in enumerate(table.values):
        w.writerow([x, g])
    return buf.getvalue()


def greedy_set_text(gs: GreedySet) -> str:
    return "\n".join(str(x) for x in gs.elements) + "\n"


def greedy_set_json(gs: GreedySet, include_witnesses: bool = False) -> str:
    doc = {
        "condition": gs.condition,
        "seed": list(gs.seed),
        "start": gs.start,
        "N": gs.N,
        "elements": list(gs.elements),
    }
    if include_witnesses:
        doc["witnesses"] = {
            str(n): list(w[1]) for n, w in sorted(gs.witnesses.items())
        }
    return json.dumps(doc)


def injection_csv(inj: GreedyInjection) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["n", "pi"])
    for n, v in inj.pairs:
        w.writerow([n, v])
    return buf.getvalue()


def injection_json(inj: GreedyInjection) -> str:
    return json.dumps(
        {
            "condition": inj.condition.describe(),
            "mode": inj.mode.value,
            "pairs": [list(p) for p in inj.pairs],
        }
    )


def grid_csv(grid: GridOutcomeTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["x", "y", "outcome"])
    for x in range(grid.X + 1):
        for y in range(grid.Y + 1):
            w.writerow([x, y, grid.outcome(x, y)])
    return buf.getvalue()


def grid_json(grid: GridOutcomeTable) -> str:
    return json.dumps(
        {
            "condition": grid.condition,
            "mode": grid.mode.value,
            "X": grid.X,
            "Y": grid.Y,
            "P": [list(p) for p in grid.p_set()],
            "boundary_band": grid.boundary_band,
        }
    )


# ---------------------------------------------------------------------------
# figures


def injection_figure(inj: GreedyInjection, path: str) -> None:
    """Square scatter, one dot per pair, origin at the lower left."""
    top = max(inj.n_max, max(inj.images)) + 1
    side = max(2.0, top * CELL_UNITS / 72)
    fig = plt.figure(figsize=(side, side))
    ax = fig.add_axes([0, 0, 1, 1])
    xs = [n for n, _ in inj.pairs]
    ys = [v for _, v in inj.pairs]
    ax.scatter(xs, ys, s=6, c="black", marker="s")
    ax.set_xlim(-0.5, top)
    ax.set_ylim(-0.5, top)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.savefig(path)
    plt.close(fig)


def grid_figure(grid: GridOutcomeTable, path: str) -> None:
    """Heatmap with an 8-unit cell; P cells dark, origin at the lower left."""
    data = np.array(
        [[1.0 if grid.is_p[x][y] else 0.0 for x in range(grid.X + 1)]
         for y in range(grid.Y + 1)]
    )
    w = (grid.X + 1) * CELL_UNITS / 72
    h = (grid.Y + 1) * CELL_UNITS / 72
    fig = plt.figure(figsize=(w, h))
    ax = fig.add_axes([0, 0, 1, 1])
    ax.imshow(data, origin="lower", cmap="Greys", vmin=0, vmax=1, interpolation="none")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.savefig(path)
    plt.close(fig)


def set_figure(gs: GreedySet, path: str) -> None:
    """Membership strip: one dark tick per element."""
    data = np.zeros((1, gs.N + 1))
    for x in gs.elements:
        data[0, x] = 1.0
    fig = plt.figure(figsize=(max(2.0, (gs.N + 1) * CELL_UNITS / 72), 0.5))
    ax = fig.add_axes([0, 0, 1, 1])
    ax.imshow(data, origin="lower", cmap="Greys", vmin=0, vmax=1,
              interpolation="none", aspect="auto")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.savefig(path)
    plt.close(fig)
