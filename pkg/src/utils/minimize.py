"""
Minimum Refinement
Grid minimum of a sampled curve, polished by golden-section search
inside the neighbouring grid cells
"""
from typing import Callable, Tuple

import numpy as np
from aws_lambda_powertools import Logger
from scipy.optimize import minimize_scalar

from src.utils.exceptions import DegenerateDirectionError

logger = Logger()


def grid_minimum(gts: np.ndarray, values: np.ndarray) -> Tuple[int, float, float]:
    """(index, gt, value) of the smallest finite sample"""
    if values.size == 0 or not np.any(np.isfinite(values)):
        raise DegenerateDirectionError("no finite samples to minimize")
    index = int(np.nanargmin(values))
    return index, float(gts[index]), float(values[index])


def refine_minimum(objective: Callable[[float], float], gts: np.ndarray,
                   values: np.ndarray, xtol: float) -> Tuple[float, float]:
    """
    Golden-section search bracketed by the grid neighbours of the sampled
    minimum. Edge minima and non-strict brackets keep the grid value.
    """
    index, gt, value = grid_minimum(gts, values)
    if index == 0 or index == gts.size - 1:
        return gt, value

    left, right = float(values[index - 1]), float(values[index + 1])
    if not (value < left and value < right):
        return gt, value

    lo, hi = float(gts[index - 1]), float(gts[index + 1])
    try:
        result = minimize_scalar(
            objective,
            bracket=(lo, gt, hi),
            method="golden",
            options={"xtol": xtol / max(abs(gt), 1.0)},
        )
    except ValueError as e:
        logger.debug("Bracket rejected; keeping grid minimum", extra={"gt": gt, "error": str(e)})
        return gt, value

    refined_gt, refined_value = float(result.x), float(result.fun)
    if lo <= refined_gt <= hi and np.isfinite(refined_value) and refined_value <= value:
        return refined_gt, refined_value
    return gt, value
