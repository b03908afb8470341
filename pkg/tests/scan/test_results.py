import math
from pathlib import Path

import numpy as np
import pandas as pd

from src.scan.results import (
    MINIMA_COLUMNS,
    MinimumRecord,
    ScanResult,
    empty_rows,
    minima_frame,
    minima_path,
    write_minima_csv,
    write_rows_csv,
)


def _rows():
    return pd.DataFrame({
        "param": [0.4, 0.4],
        "gt": [0.0, 0.11107207345395915],
        "xi_x": [1.0, 0.99912345678912345],
        "xi_yprime": [1.0, 1.0008765432],
        "xi_min_plane": [1.0, 0.99912345678912345],
        "xi_q": [1.0, 1.0],
        "xi_p": [1.0, 1.0],
        "flags": ["", "degenerate"],
    })


def test_minima_path():
    assert minima_path(Path("out/fig1.csv")) == Path("out/fig1_minima.csv")
    assert minima_path(Path("run")) == Path("run_minima.csv")


def test_rows_csv_format(tmp_path):
    path = write_rows_csv(ScanResult(rows=_rows()), tmp_path / "fig1.csv")
    lines = path.read_text().split("\n")
    assert lines[0] == "param,gt,xi_x,xi_yprime,xi_min_plane,xi_q,xi_p,flags"
    assert lines[1] == "0.4,0,1,1,1,1,1,"
    assert lines[2].startswith("0.4,0.111072073454,0.999123456789,")
    assert lines[2].endswith(",degenerate")


def test_rows_csv_is_reproducible(tmp_path):
    first = write_rows_csv(ScanResult(rows=_rows()), tmp_path / "a.csv")
    second = write_rows_csv(ScanResult(rows=_rows()), tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()


def test_minima_csv(tmp_path):
    result = ScanResult(rows=empty_rows(), minima=[MinimumRecord(0.7, 2439.25, 0.78, "yprime")])
    path = write_minima_csv(result, tmp_path / "minima.csv")
    assert path.read_text().splitlines() == ["param,gt_at_min,xi_min,axis", "0.7,2439.25,0.78,yprime"]


def test_field_minima_columns_added_when_present():
    frame = minima_frame([
        MinimumRecord(0.1, 5.0, 0.99, "x"),
        MinimumRecord(0.2, 6.0, 0.98, "x", xi_q_min=0.97, gt_q_min=1.0, xi_p_min=0.96, gt_p_min=2.0),
    ])
    assert list(frame.columns) == MINIMA_COLUMNS + ["xi_q_min", "gt_q_min", "xi_p_min", "gt_p_min"]
    assert math.isnan(frame["xi_q_min"].iloc[0])
    assert frame["xi_p_min"].iloc[1] == 0.96


def test_best_skips_failed_points():
    result = ScanResult(rows=empty_rows(), minima=[
        MinimumRecord(0.1, math.nan, math.nan, "failed"),
        MinimumRecord(0.2, 3.0, 0.95, "x"),
        MinimumRecord(0.3, 4.0, 0.97, "x"),
    ])
    assert result.best().param == 0.2


def test_best_of_all_failed():
    result = ScanResult(rows=empty_rows(), minima=[MinimumRecord(0.1, math.nan, math.nan, "failed")])
    assert result.best() is None


def test_column():
    result = ScanResult(rows=_rows())
    assert np.array_equal(result.column("xi_q"), [1.0, 1.0])
