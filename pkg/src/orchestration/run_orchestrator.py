"""
Run Orchestrator
Coordinates one CLI run: field construction, the requested computation
and CSV output
"""
import math
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from aws_lambda_powertools import Logger, Tracer
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.hilbert.field_states import (
    FieldKind,
    FieldStateSpec,
    build_field_state,
    load_custom_coefficients,
    mean_photon_number,
)
from src.scan.comparison import compare_exact_analytic
from src.scan.engine import optimal_squeezing, time_series
from src.scan.envelope import envelope_minima
from src.scan.results import (
    ScanResult,
    empty_rows,
    minima_path,
    write_minima_csv,
    write_rows_csv,
)
from src.scan.sweep import ScanAxis, scan_parameter
from src.scan.time_grid import TimeGrid
from src.utils.exceptions import ScanFailedError, SqueezeError
from src.utils.settings import get_settings

logger = Logger()
tracer = Tracer()


class Command(Enum):
    """CLI workflows"""
    EVOLVE = "evolve"
    OPTIMAL = "optimal"
    SCAN = "scan"
    COMPARE = "compare"


class RunConfig(BaseModel):
    """Validated command-line request"""
    model_config = ConfigDict(frozen=True)

    command: Command
    n_atoms: Optional[int] = Field(default=None, ge=1)
    field_kind: Optional[FieldKind] = None
    field_parameter: Optional[float] = None
    custom_path: Optional[Path] = None
    gt_max: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)
    step: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)
    scan_axis: Optional[ScanAxis] = None
    scan_values: List[float] = Field(default_factory=list)
    model: Optional[str] = None
    out: Optional[Path] = None
    eps_tail: Optional[float] = Field(default=None, gt=0.0, lt=1e-3)
    normalize: bool = True
    field_minima: bool = False

    @model_validator(mode="after")
    def check_command_inputs(self) -> "RunConfig":
        if self.field_parameter is not None and not math.isfinite(self.field_parameter):
            raise ValueError("field parameter must be finite")
        if self.field_kind is FieldKind.CUSTOM and self.custom_path is None:
            raise ValueError("custom field needs a coefficient file")

        if self.command is Command.SCAN:
            if self.scan_axis is None:
                raise ValueError("scan needs --scan <axis>:<values>")
            if not self.scan_values:
                raise ValueError("scan value list is empty")
            if self.scan_axis is not ScanAxis.N_ATOMS and self.n_atoms is None:
                raise ValueError("scan needs --atoms")
            if self.scan_axis is ScanAxis.N_ATOMS and self.field_kind is None:
                raise ValueError("scan over n_atoms needs a field state")
            return self

        if self.n_atoms is None:
            raise ValueError(f"{self.command.value} needs --atoms")
        if self.field_kind is None:
            raise ValueError(f"{self.command.value} needs one field state")
        if self.gt_max is None:
            raise ValueError(f"{self.command.value} needs --gtmax")
        if self.command is Command.COMPARE and not self.model:
            raise ValueError("compare needs --model")
        return self


@dataclass
class RunSummary:
    """What the CLI prints and which files it wrote"""
    command: Command
    seconds: float
    xi_min: float = math.nan
    gt_at_min: float = math.nan
    max_diff: Optional[float] = None
    outputs: List[Path] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def line(self) -> str:
        if self.max_diff is not None:
            head = f"max_diff={self.max_diff:.6g} gt={self.gt_at_min:.6g}"
        else:
            head = f"xi_min={self.xi_min:.6f} gt={self.gt_at_min:.6g}"
        line = f"{self.command.value}: {head} wall={self.seconds:.2f}s"
        if self.details.get("renormalized"):
            line += f" renormalized(norm2={self.details['input_norm_sq']:.6f})"
        return line


class RunOrchestrator:
    """
    Runs one RunConfig end to end
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.settings = get_settings()
        self._field_metadata: Dict[str, Any] = {}

    def field_state(self) -> FieldStateSpec:
        config = self.config
        coefficients = None
        if config.field_kind is FieldKind.CUSTOM:
            coefficients = load_custom_coefficients(config.custom_path)
        return build_field_state(
            config.field_kind,
            parameter=config.field_parameter,
            coefficients=coefficients,
            eps_tail=config.eps_tail,
            normalize=config.normalize,
        )

    def fixed_inputs(self) -> Dict[str, Any]:
        """Non-swept inputs for scan_parameter"""
        config = self.config
        fixed: Dict[str, Any] = {"eps_tail": config.eps_tail, "normalize": config.normalize}
        if config.n_atoms is not None:
            fixed["n_atoms"] = config.n_atoms
        if config.field_kind is not None:
            fixed["field_kind"] = config.field_kind
            fixed["parameter"] = config.field_parameter
            if config.field_kind is FieldKind.CUSTOM:
                fixed["coefficients"] = load_custom_coefficients(config.custom_path)
        return fixed

    @tracer.capture_method
    def execute(self) -> RunSummary:
        logger.info("Resolved run configuration", extra={
            "config": self.config.model_dump(mode="json"),
            "threads": self.settings.threads,
            "eps_tail": self.settings.truncation.eps_tail,
        })
        started = time.perf_counter()

        handlers = {
            Command.EVOLVE: self._run_evolve,
            Command.OPTIMAL: self._run_optimal,
            Command.SCAN: self._run_scan,
            Command.COMPARE: self._run_compare,
        }
        summary = handlers[self.config.command]()
        summary.seconds = time.perf_counter() - started
        if self._field_metadata.get("renormalized"):
            summary.details["renormalized"] = True
            summary.details["input_norm_sq"] = self._field_metadata["input_norm_sq"]

        logger.info("Run completed", extra={
            "command": self.config.command.value, "seconds": summary.seconds,
            "outputs": [str(p) for p in summary.outputs],
        })
        return summary

    def _log_field(self, field_state: FieldStateSpec):
        self._field_metadata = dict(field_state.metadata)
        logger.info("Initial field", extra={
            "field": field_state.label,
            "n_max": field_state.n_max,
            "tail_mass_bound": field_state.truncation.tail_mass_bound,
            "mean_photons": mean_photon_number(field_state),
            **field_state.metadata,
        })

    def _run_evolve(self) -> RunSummary:
        config = self.config
        field_state = self.field_state()
        self._log_field(field_state)

        grid = TimeGrid.for_atoms(config.n_atoms, config.gt_max, config.step)
        series = time_series(config.n_atoms, field_state, grid,
                             param=field_state.parameter if field_state.parameter is not None else math.nan)
        series.envelope_minima = envelope_minima(series)
        if series.envelope_minima:
            logger.info("Envelope minima", extra={"minima": series.envelope_minima[:10]})

        if config.field_minima and series.minima:
            series.minima = [self._with_field_minima(series)]

        summary = RunSummary(command=config.command, seconds=0.0)
        if series.minima:
            summary.xi_min = series.minima[0].xi_min
            summary.gt_at_min = series.minima[0].gt_at_min
        summary.details["envelope_minima"] = series.envelope_minima

        if config.out is not None:
            summary.outputs.append(write_rows_csv(series, config.out))
            summary.outputs.append(write_minima_csv(series, minima_path(config.out)))
        return summary

    @staticmethod
    def _with_field_minima(series: ScanResult):
        gts = series.column("gt")
        extras = {}
        for column, prefix in (("xi_q", "q"), ("xi_p", "p")):
            values = series.column(column)
            index = int(np.nanargmin(values))
            extras[f"xi_{prefix}_min"] = float(values[index])
            extras[f"gt_{prefix}_min"] = float(gts[index])
        return replace(series.minima[0], **extras)

    def _run_optimal(self) -> RunSummary:
        config = self.config
        field_state = self.field_state()
        self._log_field(field_state)

        optimum = optimal_squeezing(config.n_atoms, field_state, config.gt_max,
                                    step=config.step, field_minima=config.field_minima)
        param = field_state.parameter if field_state.parameter is not None else math.nan
        result = ScanResult(rows=empty_rows(), minima=[optimum.record(param)])

        summary = RunSummary(command=config.command, seconds=0.0,
                             xi_min=optimum.xi_min, gt_at_min=optimum.gt_at_min)
        summary.details["axis"] = optimum.axis
        if config.out is not None:
            summary.outputs.append(write_minima_csv(result, config.out))
        return summary

    def _run_scan(self) -> RunSummary:
        config = self.config
        result = scan_parameter(
            config.scan_axis,
            config.scan_values,
            self.fixed_inputs(),
            gt_max=config.gt_max,
            step=config.step,
            field_minima=config.field_minima,
        )

        best = result.best()
        if best is None:
            raise ScanFailedError(
                f"every scan point failed: {'; '.join(p.error or '' for p in result.failed)}"
            )

        summary = RunSummary(command=config.command, seconds=0.0,
                             xi_min=best.xi_min, gt_at_min=best.gt_at_min)
        summary.details["param_at_min"] = best.param
        summary.details["failed"] = len(result.failed)
        if config.out is not None:
            summary.outputs.append(write_minima_csv(result, config.out))
        return summary

    def _run_compare(self) -> RunSummary:
        config = self.config
        field_state = self.field_state()
        self._log_field(field_state)

        grid = TimeGrid.for_atoms(config.n_atoms, config.gt_max, config.step)
        comparison = compare_exact_analytic(config.model, config.n_atoms, field_state, grid)

        summary = RunSummary(command=config.command, seconds=0.0,
                             max_diff=comparison.max_diff, gt_at_min=comparison.gt_at_max)
        if config.out is not None:
            summary.outputs.append(comparison.write_csv(config.out))
        return summary


def execute_run(config: RunConfig) -> RunSummary:
    """Raises SqueezeError subclasses; the CLI maps them to exit codes"""
    try:
        return RunOrchestrator(config).execute()
    except SqueezeError:
        logger.exception("Run failed")
        raise
