import numpy as np
import pandas as pd
import pytest

from src.hilbert.field_states import coherent_coefficients
from src.scan.engine import time_series
from src.scan.envelope import envelope_minima, lower_envelope
from src.scan.results import ScanResult
from src.scan.time_grid import TimeGrid
from src.utils.exceptions import ConfigurationError


def _series(values_of, n_atoms=4, gt_max=40.0):
    grid = TimeGrid.for_atoms(n_atoms, gt_max)
    gts = grid.points()
    rows = pd.DataFrame({"gt": gts, "xi_x": values_of(gts, np.sqrt(n_atoms))})
    return ScanResult(rows=rows, grid=grid)


def _two_dips(gts, root):
    envelope = 0.10 * np.exp(-((gts - 10.0) ** 2) / 8.0) + 0.15 * np.exp(-((gts - 30.0) ** 2) / 8.0)
    return 1.0 - envelope * np.sin(root * gts) ** 2


def test_lower_envelope():
    values = np.array([3.0, 1.0, 4.0, 1.5, 5.0, 9.0, 2.0])
    assert lower_envelope(values, 3).tolist() == [1.0, 1.0, 1.0, 1.5, 1.5, 2.0, 2.0]


def test_two_envelope_minima():
    minima = envelope_minima(_series(_two_dips))
    assert len(minima) == 2
    (gt1, xi1), (gt2, xi2) = minima
    assert gt1 == pytest.approx(10.0, abs=1.0)
    assert gt2 == pytest.approx(30.0, abs=1.0)
    assert xi1 == pytest.approx(0.90, abs=0.01)
    assert xi2 == pytest.approx(0.85, abs=0.015)


def test_ripple_below_floor_ignored():
    def dip_with_ripple(gts, root):
        envelope = 0.2 * np.exp(-((gts - 20.0) ** 2) / 30.0) * (1.0 + 1e-4 * np.cos(3.0 * gts))
        return 1.0 - envelope * np.sin(root * gts) ** 2

    minima = envelope_minima(_series(dip_with_ripple))
    assert len(minima) == 1
    assert minima[0][0] == pytest.approx(20.0, abs=1.0)


def test_monotone_series_has_no_minima():
    assert envelope_minima(_series(lambda gts, root: 1.0 + 0.01 * gts)) == []


def test_nan_rows_skipped():
    def with_gap(gts, root):
        values = _two_dips(gts, root)
        values[5] = np.nan
        return values

    assert len(envelope_minima(_series(with_gap))) == 2


def test_needs_time_grid():
    series = ScanResult(rows=pd.DataFrame({"gt": [0.0, 1.0], "xi_x": [1.0, 0.9]}))
    with pytest.raises(ConfigurationError):
        envelope_minima(series)


def test_shallow_dip_kept_beside_deep_one():
    def shallow_then_deep(gts, root):
        envelope = 0.006 * np.exp(-((gts - 10.0) ** 2) / 8.0) + 0.2 * np.exp(-((gts - 30.0) ** 2) / 8.0)
        return 1.0 - envelope * np.sin(root * gts) ** 2

    minima = envelope_minima(_series(shallow_then_deep))
    assert [round(gt) for gt, _ in minima] == [10, 30]
    assert minima[0][1] == pytest.approx(0.994, abs=1e-3)


def test_twenty_atom_envelope_minima():
    series = time_series(20, coherent_coefficients(0.6), TimeGrid.for_atoms(20, 35.0))
    minima = envelope_minima(series)
    assert len(minima) == 2
    (gt1, xi1), (gt2, xi2) = minima
    assert gt1 == pytest.approx(9.03, abs=0.15)
    assert xi1 == pytest.approx(0.906, abs=0.005)
    # the second envelope is flat to 2e-4 over gt 27.4 to 28.1
    assert gt2 == pytest.approx(28.1, abs=1.0)
    assert xi2 == pytest.approx(0.817, abs=0.005)
