"""
Parameter Sweeps
Optimal squeezing as a function of alpha, N or r, one independent task
per parameter value
"""
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from aws_lambda_powertools import Logger, Tracer

from src.hilbert.field_states import FieldKind, FieldStateSpec, build_field_state
from src.scan.engine import optimal_squeezing
from src.scan.results import MinimumRecord, PointResult, ScanResult, empty_rows
from src.scan.time_grid import modulation_period
from src.utils.exceptions import ConfigurationError
from src.utils.settings import get_settings

logger = Logger()
tracer = Tracer()


class ScanAxis(Enum):
    """Swept parameter"""
    ALPHA = "alpha"
    N_ATOMS = "n_atoms"
    R = "r"


AXIS_FIELD_KIND = {
    ScanAxis.ALPHA: FieldKind.COHERENT,
    ScanAxis.R: FieldKind.SQUEEZED_VACUUM,
}


def worker_count(tasks: int, threads: Optional[int] = None) -> int:
    """threads, else TC_SQUEEZE_THREADS, else one per CPU; never more than tasks"""
    requested = get_settings().threads if threads is None else threads
    if requested <= 0:
        requested = os.cpu_count() or 1
    return max(1, min(requested, tasks))


def _field_kind(fixed: Dict[str, Any]) -> Optional[FieldKind]:
    kind = fixed.get("field_kind")
    if kind is None or isinstance(kind, FieldKind):
        return kind
    try:
        return FieldKind(kind)
    except ValueError as e:
        raise ConfigurationError(f"unknown field kind '{kind}'") from e


def _validate(axis: ScanAxis, values: Sequence[float], fixed: Dict[str, Any]):
    if len(values) == 0:
        raise ConfigurationError("scan needs at least one parameter value")
    if any(not math.isfinite(v) for v in values):
        raise ConfigurationError("scan values must be finite")

    kind = _field_kind(fixed)
    if axis in AXIS_FIELD_KIND:
        if kind is not None and kind is not AXIS_FIELD_KIND[axis]:
            raise ConfigurationError(
                f"scan over {axis.value} needs a {AXIS_FIELD_KIND[axis].value} field, got {kind.value}"
            )
        if "n_atoms" not in fixed:
            raise ConfigurationError(f"scan over {axis.value} needs a fixed n_atoms")
    else:
        if kind is None:
            raise ConfigurationError("scan over n_atoms needs a fixed field state")
        if any(v < 1 or v != int(v) for v in values):
            raise ConfigurationError("n_atoms values must be positive integers")


def point_inputs(axis: ScanAxis, value: float, fixed: Dict[str, Any]) -> Tuple[int, FieldStateSpec]:
    """(n_atoms, field state) for one sweep point"""
    common = {
        "n_max": fixed.get("n_max"),
        "eps_tail": fixed.get("eps_tail"),
        "normalize": fixed.get("normalize", True),
    }
    if axis is ScanAxis.N_ATOMS:
        field_state = build_field_state(
            _field_kind(fixed), parameter=fixed.get("parameter"),
            coefficients=fixed.get("coefficients"), **common,
        )
        return int(value), field_state
    return int(fixed["n_atoms"]), build_field_state(AXIS_FIELD_KIND[axis], parameter=value, **common)


def _scan_point(axis: ScanAxis, value: float, fixed: Dict[str, Any], gt_max: Optional[float],
                step: Optional[float], field_minima: bool) -> PointResult:
    started = time.perf_counter()
    try:
        n_atoms, field_state = point_inputs(axis, value, fixed)
        window = modulation_period(n_atoms) if gt_max is None else gt_max
        optimum = optimal_squeezing(n_atoms, field_state, window, step=step, field_minima=field_minima)
        return PointResult(
            success=True,
            data=optimum,
            metadata={"param": value, "n_atoms": n_atoms, "gt_max": window,
                      "seconds": time.perf_counter() - started},
        )
    except Exception as e:
        logger.exception(f"Scan point {axis.value}={value} failed")
        return PointResult(
            success=False,
            data=None,
            error=f"{type(e).__name__}: {e}",
            metadata={"param": value, "seconds": time.perf_counter() - started},
        )


def _failed_record(value: float) -> MinimumRecord:
    return MinimumRecord(param=value, gt_at_min=math.nan, xi_min=math.nan, axis="failed")


@tracer.capture_method
def scan_parameter(axis: ScanAxis, values: Sequence[float], fixed: Dict[str, Any],
                   gt_max: Optional[float] = None, step: Optional[float] = None,
                   field_minima: bool = False, threads: Optional[int] = None) -> ScanResult:
    """
    optimal_squeezing for every value, gathered in input order.

    `fixed` holds the remaining inputs: n_atoms, field_kind, parameter,
    coefficients, n_max, eps_tail, normalize. gt_max defaults to one
    modulation period 4 pi sqrt(N) per point. Failed points are recorded,
    never raised.
    """
    axis = ScanAxis(axis)
    values = [float(v) for v in values]
    _validate(axis, values, fixed)

    workers = worker_count(len(values), threads)
    logger.info("Starting parameter scan", extra={
        "axis": axis.value, "points": len(values), "workers": workers,
        "gt_max": gt_max, "field_minima": field_minima,
    })

    with ThreadPoolExecutor(max_workers=workers) as executor:
        points: List[PointResult] = list(executor.map(
            lambda v: _scan_point(axis, v, fixed, gt_max, step, field_minima), values,
        ))

    minima = [
        p.data.record(v) if p.success else _failed_record(v)
        for v, p in zip(values, points)
    ]
    failures = sum(1 for p in points if not p.success)
    if failures:
        logger.warning("Scan finished with failed points", extra={"failed": failures})

    return ScanResult(rows=empty_rows(), minima=minima, axis=axis.value, points=points)
