import math

import pytest

from src.analytic.model_registry import ModelRegistry
from src.hilbert.field_states import coherent_coefficients, custom_coefficients, squeezed_vacuum_coefficients
from src.scan.comparison import COMPARISON_COLUMNS, compare_exact_analytic
from src.scan.time_grid import TimeGrid
from src.utils.exceptions import ConfigurationError, UnknownModelError


def _compare(model, n_atoms, field_state, gt_max):
    return compare_exact_analytic(model, n_atoms, field_state, TimeGrid.for_atoms(n_atoms, gt_max))


@pytest.mark.parametrize("model", ["squeez", "squeez_yprime", "fs_q", "fs_p"])
def test_two_atom_weak_field_models(model):
    alpha = 0.1
    result = _compare(model, 2, coherent_coefficients(alpha), 50.0)
    assert result.max_diff <= 10 * alpha ** 4


def test_many_atom_weak_field_model():
    alpha = 0.1
    result = _compare("sxln1", 20, coherent_coefficients(alpha), 30.0)
    assert result.max_diff <= 10 * alpha ** 4


@pytest.mark.parametrize("model", ["spqzn_q", "spqzn_p"])
def test_many_atom_field_models(model):
    alpha = 0.1
    result = _compare(model, 10, coherent_coefficients(alpha), 30.0)
    assert result.max_diff <= 10 * alpha ** 4


def test_squeezed_vacuum_model_against_squared_exact():
    r = 0.05
    result = _compare("sqv", 2, squeezed_vacuum_coefficients(r), 20.0)
    assert result.max_diff <= 4 * r ** 2


def test_bosonized_model_weak_field():
    alpha, n_atoms = 0.1, 60
    result = _compare("sxr", n_atoms, coherent_coefficients(alpha), 4 * math.pi * math.sqrt(n_atoms))
    assert result.max_diff <= 10 * alpha ** 4 + 10 * alpha ** 2 / n_atoms


def test_bosonized_model_outside_validity_is_reported():
    result = _compare("sxr", 2, coherent_coefficients(0.5), 4 * math.pi * math.sqrt(2))
    assert math.isfinite(result.max_diff)
    assert result.max_diff > 0.02


def test_frame_layout_and_location():
    result = _compare("squeez", 2, coherent_coefficients(0.2), 10.0)
    assert list(result.frame.columns) == COMPARISON_COLUMNS
    row = result.frame.loc[result.frame["abs_diff"].idxmax()]
    assert result.gt_at_max == row["gt"]
    assert result.frame["gt"].iloc[0] == 0.0
    assert result.frame["abs_diff"].iloc[0] == pytest.approx(0.0, abs=1e-12)


def test_write_csv(tmp_path):
    result = _compare("squeez", 2, coherent_coefficients(0.1), 5.0)
    path = result.write_csv(tmp_path / "nested" / "compare.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "gt,exact,analytic,abs_diff"
    assert len(lines) == len(result.frame) + 1


def test_unknown_model():
    with pytest.raises(UnknownModelError):
        _compare("smin", 2, coherent_coefficients(0.1), 5.0)


def test_model_applicability_checked():
    with pytest.raises(ConfigurationError):
        _compare("squeez", 3, coherent_coefficients(0.1), 5.0)
    with pytest.raises(ConfigurationError):
        _compare("squeez", 2, custom_coefficients([0.6, 0.8]), 5.0)


def test_custom_registry():
    registry = ModelRegistry()
    result = compare_exact_analytic("sxln2", 10, coherent_coefficients(0.1),
                                    TimeGrid.for_atoms(10, 5.0), registry=registry)
    assert result.model == "sxln2"
    assert result.parameter == 0.1
