"""
Time Grids
Uniform gt sampling tied to the fastest oscillation period pi/sqrt(N)
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.utils.exceptions import ConfigurationError
from src.utils.settings import get_settings

MIN_SAMPLES_PER_PERIOD = 20


def fast_period(n_atoms: int) -> float:
    return math.pi / math.sqrt(n_atoms)


def modulation_period(n_atoms: int) -> float:
    return 4.0 * math.pi * math.sqrt(n_atoms)


@dataclass(frozen=True)
class TimeGrid:
    """gt = 0, step, 2 step, ... up to and including gt_max"""
    gt_max: float
    step: float
    period: float

    def __post_init__(self):
        if not (math.isfinite(self.gt_max) and self.gt_max >= 0.0):
            raise ConfigurationError(f"gt_max must be finite and >= 0, got {self.gt_max}")
        if not (math.isfinite(self.step) and self.step > 0.0):
            raise ConfigurationError(f"step must be finite and > 0, got {self.step}")
        limit = self.period / MIN_SAMPLES_PER_PERIOD
        if self.step > limit * (1.0 + 1e-9):
            raise ConfigurationError(
                f"step {self.step:g} is coarser than period/{MIN_SAMPLES_PER_PERIOD} = {limit:g}"
            )

    @classmethod
    def for_atoms(cls, n_atoms: int, gt_max: float, step: Optional[float] = None) -> "TimeGrid":
        period = fast_period(n_atoms)
        if step is None:
            step = period / get_settings().time_grid.samples_per_period
        return cls(gt_max=float(gt_max), step=float(step), period=period)

    @property
    def samples_per_period(self) -> float:
        return self.period / self.step

    def points(self) -> np.ndarray:
        count = int(math.floor(self.gt_max / self.step + 1e-9))
        gts = self.step * np.arange(count + 1, dtype=float)
        if self.gt_max - gts[-1] > 1e-12 * max(self.gt_max, 1.0):
            gts = np.append(gts, self.gt_max)
        return gts

    def halved(self) -> "TimeGrid":
        return TimeGrid(gt_max=self.gt_max, step=self.step / 2.0, period=self.period)
