import math

import pytest
from pydantic import ValidationError

from src.hilbert.field_states import FieldKind
from src.orchestration.run_orchestrator import Command, RunConfig, RunOrchestrator, RunSummary, execute_run
from src.scan.sweep import ScanAxis
from src.utils.exceptions import FieldStateError


def _config(**overrides):
    values = {
        "command": Command.OPTIMAL,
        "n_atoms": 2,
        "field_kind": FieldKind.COHERENT,
        "field_parameter": 0.1,
        "gt_max": 20.0,
    }
    values.update(overrides)
    return RunConfig(**values)


class TestRunConfig:
    def test_frozen(self):
        config = _config()
        with pytest.raises(ValidationError):
            config.n_atoms = 3

    def test_custom_needs_file(self):
        with pytest.raises(ValidationError):
            _config(field_kind=FieldKind.CUSTOM, field_parameter=None)

    def test_atom_scan_needs_field(self):
        with pytest.raises(ValidationError):
            RunConfig(command=Command.SCAN, scan_axis=ScanAxis.N_ATOMS, scan_values=[2, 3])

    def test_atom_scan_without_fixed_atoms(self):
        config = RunConfig(command=Command.SCAN, scan_axis=ScanAxis.N_ATOMS, scan_values=[2, 3],
                           field_kind=FieldKind.COHERENT, field_parameter=0.5)
        assert config.n_atoms is None


class TestRunOrchestrator:
    def test_fixed_inputs(self):
        config = RunConfig(command=Command.SCAN, n_atoms=2, scan_axis=ScanAxis.R, scan_values=[0.1])
        fixed = RunOrchestrator(config).fixed_inputs()
        assert fixed["n_atoms"] == 2
        assert "field_kind" not in fixed
        assert fixed["normalize"] is True

    def test_custom_field_from_file(self, tmp_path):
        path = tmp_path / "state.txt"
        path.write_text("0.6 0\n0 0.8\n")
        config = _config(field_kind=FieldKind.CUSTOM, field_parameter=None, custom_path=path)
        field_state = RunOrchestrator(config).field_state()
        assert field_state.coefficients[1] == pytest.approx(0.8j)

    def test_unnormalized_custom_field_rejected(self, tmp_path):
        path = tmp_path / "state.txt"
        path.write_text("0.6 0\n0 0.7\n")
        config = _config(field_kind=FieldKind.CUSTOM, field_parameter=None, custom_path=path, normalize=False)
        with pytest.raises(FieldStateError):
            execute_run(config)

    def test_custom_field_renormalized_by_default(self, tmp_path):
        path = tmp_path / "state.txt"
        path.write_text("0.6 0\n0 0.7\n")
        config = _config(field_kind=FieldKind.CUSTOM, field_parameter=None, custom_path=path)
        summary = execute_run(config)
        assert summary.details["renormalized"] is True
        assert summary.details["input_norm_sq"] == pytest.approx(0.85)
        assert summary.line().endswith("renormalized(norm2=0.850000)")

    def test_optimal_run(self):
        summary = execute_run(_config())
        assert summary.command is Command.OPTIMAL
        assert summary.xi_min < 1.0
        assert summary.details["axis"] == "x"
        assert summary.outputs == []
        assert summary.seconds > 0.0

    def test_evolve_reports_envelope_minima(self):
        summary = execute_run(_config(command=Command.EVOLVE, n_atoms=20, field_parameter=0.6, gt_max=35.0))
        assert len(summary.details["envelope_minima"]) >= 2

    def test_scan_reports_best_point(self):
        config = RunConfig(command=Command.SCAN, n_atoms=2, scan_axis=ScanAxis.ALPHA,
                           scan_values=[0.1, 0.3], gt_max=20.0)
        summary = execute_run(config)
        assert summary.details["param_at_min"] == 0.3
        assert summary.details["failed"] == 0


def test_summary_lines():
    assert RunSummary(Command.OPTIMAL, 1.5, xi_min=0.9933333, gt_at_min=7.25).line() == \
        "optimal: xi_min=0.993333 gt=7.25 wall=1.50s"
    assert RunSummary(Command.COMPARE, 0.25, gt_at_min=3.0, max_diff=1.2e-4).line() == \
        "compare: max_diff=0.00012 gt=3 wall=0.25s"
    assert "nan" in RunSummary(Command.EVOLVE, 0.0).line()
    assert math.isnan(RunSummary(Command.EVOLVE, 0.0).xi_min)
