"""
Weak-Field Closed Forms
Second-order (alpha^2 or r) squeezing formulas for two atoms and for N
atoms; gt may be a scalar or an array
"""
from typing import Tuple

import numpy as np

ArrayLike = np.ndarray


def xi_n2_small_alpha(alpha: float, gt) -> Tuple[ArrayLike, ArrayLike]:
    """
    xi_x  = 1 + alpha^2 {sin^2(sqrt(2) gt)/2 - 2 sin^2(sqrt(6) gt / 2)/3}
    xi_y' = 1 - alpha^2 {same bracket}
    """
    gt = np.asarray(gt, dtype=float)
    bracket = 0.5 * np.sin(np.sqrt(2.0) * gt) ** 2 - (2.0 / 3.0) * np.sin(np.sqrt(6.0) * gt / 2.0) ** 2
    return 1.0 + alpha ** 2 * bracket, 1.0 - alpha ** 2 * bracket


def xi_min_n2_small_alpha(alpha: float) -> float:
    """Reached where sin(sqrt(2) gt) = 0 and cos(sqrt(6) gt) = -1"""
    return 1.0 - 2.0 * alpha ** 2 / 3.0


def field_xi_n2_small_alpha(alpha: float, gt) -> Tuple[ArrayLike, ArrayLike]:
    gt = np.asarray(gt, dtype=float)
    bracket = np.cos(np.sqrt(2.0) * gt) ** 2 - (1.0 + 2.0 * np.cos(np.sqrt(6.0) * gt)) / 3.0
    return 1.0 - alpha ** 2 * bracket, 1.0 + alpha ** 2 * bracket


def xi_n2_squeezed_vacuum_small_r(r: float, gt) -> Tuple[ArrayLike, ArrayLike]:
    """
    (xi_x, xi_y) = 1 +/- (4/3) r sin^2(sqrt(3/2) gt).

    First order in r, this tracks the squared squeezing parameter of the
    exact evolution.
    """
    gt = np.asarray(gt, dtype=float)
    shift = (4.0 / 3.0) * r * np.sin(np.sqrt(1.5) * gt) ** 2
    return 1.0 + shift, 1.0 - shift


def xi_n_small_alpha(n_atoms: int, alpha: float, gt) -> ArrayLike:
    """
    xi_x = 1 + alpha^2 {(N-1)/N sin^2(sqrt(N) gt)
                        - 2(N-1)/(2N-1) sin^2(sqrt((2N-1)/2) gt)}
    """
    gt = np.asarray(gt, dtype=float)
    N = float(n_atoms)
    return 1.0 + alpha ** 2 * (
        (N - 1.0) / N * np.sin(np.sqrt(N) * gt) ** 2
        - 2.0 * (N - 1.0) / (2.0 * N - 1.0) * np.sin(np.sqrt((2.0 * N - 1.0) / 2.0) * gt) ** 2
    )


def xi_n_large_limit(n_atoms: int, alpha: float, gt) -> ArrayLike:
    """Large-N form of xi_n_small_alpha; the two differ by O(alpha^2 / N)"""
    gt = np.asarray(gt, dtype=float)
    root = np.sqrt(float(n_atoms))
    return 1.0 + alpha ** 2 * np.sin((2.0 * root - 1.0 / (4.0 * root)) * gt) * np.sin(gt / (4.0 * root))


def field_xi_n_small_alpha(n_atoms: int, alpha: float, gt) -> Tuple[ArrayLike, ArrayLike]:
    gt = np.asarray(gt, dtype=float)
    N = float(n_atoms)
    bracket = (
        np.cos(np.sqrt(N) * gt) ** 2
        - (N - 1.0 + N * np.cos(np.sqrt(4.0 * N - 2.0) * gt)) / (2.0 * N - 1.0)
    )
    return 1.0 - alpha ** 2 * bracket, 1.0 + alpha ** 2 * bracket


def field_xi_min_n_small_alpha(n_atoms: int, alpha: float) -> Tuple[float, float]:
    """(1 - 2N alpha^2 / (2N - 1), 1 - alpha^2)"""
    return 1.0 - 2.0 * n_atoms / (2.0 * n_atoms - 1.0) * alpha ** 2, 1.0 - alpha ** 2
