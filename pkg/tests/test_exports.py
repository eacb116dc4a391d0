import csv
import io
import json

from complygames import exports
from complygames.conditions import AvoidanceMode as M, builtin
from complygames.greedysets import greedy_avoid_set
from complygames.heapgames import (
    DiscrepancyPairs,
    comply_number_outcomes,
    subtraction_nim_values,
)
from complygames.injections import named
from complygames.multiheap import comply_outcomes_2d


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_outcome_csv_and_json():
    t = comply_number_outcomes(DiscrepancyPairs(lambda d: True), 5)
    r = rows(exports.outcome_csv(t))
    assert r[0] == ["heap", "outcome"]
    assert r[1] == ["0", "P"] and r[3] == ["2", "N"]
    doc = json.loads(exports.outcome_json(t))
    assert doc["N"] == 5 and doc["P"] == [0, 1, 3, 4]


def test_nim_values_csv():
    r = rows(exports.nim_values_csv(subtraction_nim_values({1, 2}, 4)))
    assert r[0] == ["heap", "g"]
    assert [row[1] for row in r[1:]] == ["0", "1", "2", "0", "1"]


def test_set_exports():
    gs = greedy_avoid_set(builtin("ap", (3,)), 13)
    assert exports.greedy_set_text(gs).split() == ["0", "1", "3", "4", "9", "10", "12", "13"]
    doc = json.loads(exports.greedy_set_json(gs, include_witnesses=True))
    assert doc["elements"][:4] == [0, 1, 3, 4]
    assert doc["witnesses"]["2"]  # exclusion of 2 carries a tuple


def test_injection_exports():
    inj = named("wythoff", M.MAX_AC, 6)
    r = rows(exports.injection_csv(inj))
    assert r[0] == ["n", "pi"]
    assert r[2] == ["1", "2"]
    doc = json.loads(exports.injection_json(inj))
    assert doc["pairs"][6] == [6, 10]


def test_grid_exports():
    g = comply_outcomes_2d(builtin("empty"), M.MAX_AC, 3, 3)
    r = rows(exports.grid_csv(g))
    assert r[0] == ["x", "y", "outcome"]
    assert ["1", "1", "P"] in r and ["1", "0", "N"] in r
    doc = json.loads(exports.grid_json(g))
    assert [0, 0] in doc["P"] and doc["X"] == 3


def test_figures_render(tmp_path):
    inj = named("wythoff", M.MAX_AC, 12)
    p1 = tmp_path / "scatter.svg"
    exports.injection_figure(inj, str(p1))
    body = p1.read_text()
    assert body.startswith("<?xml") and "svg" in body

    g = comply_outcomes_2d(builtin("ap", (3,)), M.MAX_AC, 10, 10)
    p2 = tmp_path / "grid.svg"
    exports.grid_figure(g, str(p2))
    assert p2.stat().st_size > 500

    p3 = tmp_path / "grid.png"
    exports.grid_figure(g, str(p3))
    assert p3.read_bytes()[:4] == b"\x89PNG"

    gs = greedy_avoid_set(builtin("ap", (3,)), 40)
    p4 = tmp_path / "set.svg"
    exports.set_figure(gs, str(p4))
    assert p4.stat().st_size > 200


def test_grid_figure_cell_scale(tmp_path):
    # 8 device units per cell at 72 dpi: an 11-cell grid spans 88pt
    g = comply_outcomes_2d(builtin("empty"), M.MAX_AC, 10, 10)
    path = tmp_path / "cells.svg"
    exports.grid_figure(g, str(path))
    body = path.read_text()
    assert 'width="88' in body and 'height="88' in body
