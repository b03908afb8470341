"""
Scan Results
Row tables, located minima and per-point outcomes of time series and
parameter sweeps, with their CSV layouts
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from aws_lambda_powertools import Logger

from src.scan.time_grid import TimeGrid
from src.utils.settings import get_settings

logger = Logger()

ROW_COLUMNS = ["param", "gt", "xi_x", "xi_yprime", "xi_min_plane", "xi_q", "xi_p", "flags"]
MINIMA_COLUMNS = ["param", "gt_at_min", "xi_min", "axis"]
FIELD_MINIMA_COLUMNS = ["xi_q_min", "gt_q_min", "xi_p_min", "gt_p_min"]


@dataclass
class PointResult:
    """Outcome of one sweep point; failures carry the error instead of raising"""
    success: bool
    data: Any
    error: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class MinimumRecord:
    param: float
    gt_at_min: float
    xi_min: float
    axis: str
    xi_q_min: Optional[float] = None
    gt_q_min: Optional[float] = None
    xi_p_min: Optional[float] = None
    gt_p_min: Optional[float] = None

    @property
    def has_field_minima(self) -> bool:
        return self.xi_q_min is not None


@dataclass
class ScanResult:
    rows: pd.DataFrame
    minima: List[MinimumRecord] = field(default_factory=list)
    envelope_minima: List[Tuple[float, float]] = field(default_factory=list)
    grid: Optional[TimeGrid] = None
    axis: Optional[str] = None
    points: List[PointResult] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return self.rows[name].to_numpy(dtype=float)

    @property
    def failed(self) -> List[PointResult]:
        return [p for p in self.points if not p.success]

    def best(self) -> Optional[MinimumRecord]:
        """Smallest finite xi_min among the recorded minima"""
        finite = [m for m in self.minima if np.isfinite(m.xi_min)]
        return min(finite, key=lambda m: m.xi_min) if finite else None


def empty_rows() -> pd.DataFrame:
    return pd.DataFrame({name: pd.Series(dtype=object if name == "flags" else float)
                         for name in ROW_COLUMNS})


def minima_frame(minima: List[MinimumRecord]) -> pd.DataFrame:
    columns = list(MINIMA_COLUMNS)
    if any(m.has_field_minima for m in minima):
        columns += FIELD_MINIMA_COLUMNS
    records = [
        {name: getattr(m, name) if getattr(m, name) is not None else np.nan for name in columns}
        for m in minima
    ]
    return pd.DataFrame.from_records(records, columns=columns)


def _float_format(float_format: Optional[str]) -> str:
    return get_settings().output.float_format if float_format is None else float_format


def write_rows_csv(result: ScanResult, path: Path, float_format: Optional[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    result.rows.to_csv(path, columns=ROW_COLUMNS, index=False,
                       float_format=_float_format(float_format), lineterminator="\n")
    logger.info("Wrote rows", extra={"path": str(path), "rows": len(result.rows)})
    return path


def write_minima_csv(result: ScanResult, path: Path, float_format: Optional[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    minima_frame(result.minima).to_csv(path, index=False,
                                       float_format=_float_format(float_format), lineterminator="\n")
    logger.info("Wrote minima", extra={"path": str(path), "minima": len(result.minima)})
    return path


def minima_path(rows_path: Path) -> Path:
    """fig1.csv -> fig1_minima.csv"""
    rows_path = Path(rows_path)
    return rows_path.with_name(f"{rows_path.stem}_minima{rows_path.suffix or '.csv'}")
