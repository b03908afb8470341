"""
Envelope Minima
Local minima of the slowly varying lower envelope of a rapidly
oscillating squeezing curve
"""
from typing import List, Optional, Tuple

import numpy as np
from aws_lambda_powertools import Logger
from scipy.ndimage import minimum_filter1d
from scipy.signal import find_peaks

from src.scan.results import ScanResult
from src.utils.exceptions import ConfigurationError
from src.utils.settings import get_settings

logger = Logger()


def lower_envelope(values: np.ndarray, window: int) -> np.ndarray:
    """Sliding minimum over `window` samples"""
    return minimum_filter1d(values, size=max(window, 1), mode="nearest")


def envelope_minima(series: ScanResult, column: str = "xi_x",
                    prominence: Optional[float] = None) -> List[Tuple[float, float]]:
    """
    (gt, xi) of each envelope minimum below 1.

    Troughs are the samples equal to the sliding minimum over one fast
    period; minima of the trough sequence need an absolute depth
    prominence of at least `prominence`.
    """
    if series.grid is None:
        raise ConfigurationError("envelope detection needs a series sampled on a TimeGrid")

    prominence = get_settings().envelope.prominence if prominence is None else prominence
    gts = series.column("gt")
    values = series.column(column)
    values = np.where(np.isfinite(values), values, np.inf)

    window = int(round(series.grid.samples_per_period))
    envelope = lower_envelope(values, window)
    troughs = np.flatnonzero((values == envelope) & np.isfinite(values))
    if troughs.size < 3:
        return []

    depth = 1.0 - values[troughs]
    if depth.max() <= 0.0:
        return []

    peaks, _ = find_peaks(depth, prominence=prominence)
    minima = [(float(gts[troughs[p]]), float(values[troughs[p]])) for p in peaks if depth[p] > 0.0]

    logger.debug("Envelope minima", extra={"troughs": int(troughs.size), "minima": len(minima)})
    return minima
