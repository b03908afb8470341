"""
Squeezing Time Series
Exact squeezing curves on a gt grid and their refined global minima
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import pandas as pd
from aws_lambda_powertools import Logger, Tracer

from src.dynamics.propagator import SpectralPropagator
from src.hilbert.basis import initial_joint_state
from src.hilbert.field_states import FieldStateSpec
from src.observables.squeezing import SqueezingTable, squeezing_table
from src.scan.results import MinimumRecord, ScanResult
from src.scan.time_grid import TimeGrid
from src.utils.minimize import grid_minimum, refine_minimum
from src.utils.settings import get_settings

logger = Logger()
tracer = Tracer()

AXIS_TOLERANCE = 1e-3


@dataclass(frozen=True)
class OptimumResult:
    """Global minimum of xi_min_plane, optionally with quadrature minima"""
    xi_min: float
    gt_at_min: float
    axis: str
    phi: float
    grid_xi_min: float
    grid_gt_at_min: float
    xi_q_min: Optional[float] = None
    gt_q_min: Optional[float] = None
    xi_p_min: Optional[float] = None
    gt_p_min: Optional[float] = None

    def record(self, param: float) -> MinimumRecord:
        return MinimumRecord(
            param=param,
            gt_at_min=self.gt_at_min,
            xi_min=self.xi_min,
            axis=self.axis,
            xi_q_min=self.xi_q_min,
            gt_q_min=self.gt_q_min,
            xi_p_min=self.xi_p_min,
            gt_p_min=self.gt_p_min,
        )


def axis_label(phi: float) -> str:
    """Name the squeezed direction cos(phi) e1 + sin(phi) e2"""
    if abs(math.sin(phi)) < AXIS_TOLERANCE:
        return "x"
    if abs(math.cos(phi)) < AXIS_TOLERANCE:
        return "yprime"
    return f"phi={phi:.6f}"


def squeezing_series(n_atoms: int, field_state: FieldStateSpec,
                     gts: Sequence[float]) -> SqueezingTable:
    propagator = SpectralPropagator(initial_joint_state(n_atoms, field_state))
    return _series(propagator, n_atoms, gts)


def _series(propagator: SpectralPropagator, n_atoms: int, gts: Sequence[float]) -> SqueezingTable:
    tables = [squeezing_table(grid, n_atoms, chunk) for chunk, grid in propagator.batches(gts)]
    return SqueezingTable.concatenate(tables)


def _pointwise(propagator: SpectralPropagator, n_atoms: int, column: str) -> Callable[[float], float]:
    def objective(gt: float) -> float:
        table = squeezing_table(propagator.grid([gt]), n_atoms, [gt])
        value = float(getattr(table, column)[0])
        return value if math.isfinite(value) else math.inf
    return objective


def rows_frame(table: SqueezingTable, param: float = math.nan) -> pd.DataFrame:
    return pd.DataFrame({
        "param": np.full(len(table), param, dtype=float),
        "gt": table.gt,
        "xi_x": table.xi_x,
        "xi_yprime": table.xi_yprime,
        "xi_min_plane": table.xi_min_plane,
        "xi_q": table.xi_q,
        "xi_p": table.xi_p,
        "flags": np.where(table.degenerate, "degenerate", ""),
    })


@tracer.capture_method
def time_series(n_atoms: int, field_state: FieldStateSpec, grid: TimeGrid,
                param: float = math.nan) -> ScanResult:
    """
    One row per grid point. The recorded minimum is the smallest
    xi_min_plane sample, so it lies on the grid.
    """
    gts = grid.points()
    table = squeezing_series(n_atoms, field_state, gts)
    rows = rows_frame(table, param)

    minima = []
    if np.any(np.isfinite(table.xi_min_plane)):
        index, gt, value = grid_minimum(table.gt, table.xi_min_plane)
        minima.append(MinimumRecord(param=param, gt_at_min=gt, xi_min=value,
                                    axis=axis_label(float(table.phi[index]))))

    logger.info("Time series complete", extra={
        "n_atoms": n_atoms, "field": field_state.label, "points": int(gts.size),
        "degenerate": int(table.degenerate.sum()),
    })
    return ScanResult(rows=rows, minima=minima, grid=grid)


@tracer.capture_method
def optimal_squeezing(n_atoms: int, field_state: FieldStateSpec, gt_max: float,
                      step: Optional[float] = None, field_minima: bool = False) -> OptimumResult:
    """
    Global minimum of xi_min_plane over [0, gt_max], polished by
    golden-section search inside the winning grid cell
    """
    grid = TimeGrid.for_atoms(n_atoms, gt_max, step)
    gts = grid.points()
    propagator = SpectralPropagator(initial_joint_state(n_atoms, field_state))
    table = _series(propagator, n_atoms, gts)
    xtol = get_settings().optimization.refine_xtol

    _, grid_gt, grid_xi = grid_minimum(table.gt, table.xi_min_plane)
    gt_at_min, xi_min = refine_minimum(
        _pointwise(propagator, n_atoms, "xi_min_plane"), table.gt, table.xi_min_plane, xtol,
    )
    at_min = squeezing_table(propagator.grid([gt_at_min]), n_atoms, [gt_at_min])
    phi = float(at_min.phi[0])

    extras = {}
    if field_minima:
        for column, prefix in (("xi_q", "q"), ("xi_p", "p")):
            gt_f, xi_f = refine_minimum(
                _pointwise(propagator, n_atoms, column), table.gt, getattr(table, column), xtol,
            )
            extras[f"xi_{prefix}_min"] = xi_f
            extras[f"gt_{prefix}_min"] = gt_f

    logger.info("Optimal squeezing", extra={
        "n_atoms": n_atoms, "field": field_state.label, "gt_max": gt_max,
        "xi_min": xi_min, "gt_at_min": gt_at_min,
    })
    return OptimumResult(
        xi_min=xi_min,
        gt_at_min=gt_at_min,
        axis=axis_label(phi),
        phi=phi,
        grid_xi_min=grid_xi,
        grid_gt_at_min=grid_gt,
        **extras,
    )
