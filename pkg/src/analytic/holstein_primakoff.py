"""
Large-N Bosonized Solution
Spin squeezing of many atoms from the Holstein-Primakoff normal-mode
solution, its large-alpha reduction, and the optimum-vs-alpha scaling
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from aws_lambda_powertools import Logger

from src.utils.minimize import refine_minimum
from src.utils.settings import get_settings

logger = Logger()

LI_LIMIT = 0.1
PHASE_LIMIT = 0.1


@dataclass(frozen=True)
class HPParameters:
    """Normal-mode constants in units of g"""
    n_atoms: int
    alpha: float

    @property
    def lambda2(self) -> float:
        return 1.0 / (2.0 * math.sqrt(self.n_atoms))

    @property
    def lambda1(self) -> float:
        return math.sqrt(self.n_atoms) + self.lambda2

    @property
    def alpha_tilde(self) -> float:
        return self.alpha / math.sqrt(2.0)

    @property
    def sigma(self) -> float:
        return 4.0 * self.n_atoms / self.alpha ** 2

    @property
    def li_ok(self) -> bool:
        """Spin-projection variation small: alpha^2 / N < 0.1"""
        return self.alpha ** 2 / self.n_atoms < LI_LIMIT

    def phase_ok(self, gt) -> np.ndarray:
        """gt / (2 N^{3/2}) < 0.1"""
        return np.asarray(gt, dtype=float) / (2.0 * self.n_atoms ** 1.5) < PHASE_LIMIT


@dataclass(frozen=True, eq=False)
class HPEvaluation:
    xi: np.ndarray
    li_ok: bool
    phase_ok: np.ndarray

    @property
    def valid(self) -> np.ndarray:
        return np.logical_and(self.li_ok, self.phase_ok)


def xi_hp(n_atoms: int, alpha: float, gt) -> HPEvaluation:
    """
    xi_x^2 = 1 + alpha^2 [ exp(-alpha^2 sin^2 s) cos((2 sqrt(N) - l2) gt - alpha^2 sin(2s) / 2)
                           - exp(-2 alpha^2 sin^2(s/2))
                           + 1 - exp(-2 alpha^2 sin^2(s/2)) cos(2 sqrt(N) gt - alpha^2 sin s) ]
    with s = l2 gt. Values are returned outside the validity window too;
    the flags say where they can be trusted.
    """
    params = HPParameters(n_atoms, alpha)
    gt = np.asarray(gt, dtype=float)
    a2 = alpha ** 2
    l2 = params.lambda2
    root = math.sqrt(n_atoms)
    s = l2 * gt

    outer = np.exp(-2.0 * a2 * np.sin(s / 2.0) ** 2)
    bracket = (
        np.exp(-a2 * np.sin(s) ** 2) * np.cos((2.0 * root - l2) * gt - 0.5 * a2 * np.sin(2.0 * s))
        - outer
        + 1.0
        - outer * np.cos(2.0 * root * gt - a2 * np.sin(s))
    )
    xi = np.sqrt(np.clip(1.0 + a2 * bracket, 0.0, None))
    return HPEvaluation(xi=xi, li_ok=params.li_ok, phase_ok=params.phase_ok(gt))


def xi_hp_large_alpha(n_atoms: int, alpha: float, gt) -> np.ndarray:
    """{1 + z sin(sigma z - z) + z^2 sin^2[(sigma z - z)/2]}^{1/2}, z = alpha^2 gt / (2 sqrt(N))"""
    params = HPParameters(n_atoms, alpha)
    z = alpha ** 2 * np.asarray(gt, dtype=float) / (2.0 * math.sqrt(n_atoms))
    theta = (params.sigma - 1.0) * z
    return np.sqrt(np.clip(1.0 + z * np.sin(theta) + z ** 2 * np.sin(theta / 2.0) ** 2, 0.0, None))


def large_alpha_window(n_atoms: int, alpha: float) -> float:
    """Largest gt with z <= sqrt(alpha)"""
    return 2.0 * math.sqrt(n_atoms) * math.sqrt(alpha) / alpha ** 2


def optimum_window(n_atoms: int, alpha: float) -> float:
    """Search window for the bosonized optimum: 20 sqrt(N) / alpha^{3/2}"""
    return 20.0 * math.sqrt(n_atoms) / alpha ** 1.5


def hp_optimum(n_atoms: int, alpha: float, gt_max: Optional[float] = None,
               step: Optional[float] = None) -> Tuple[float, float]:
    """(xi_min, gt_at_min) of xi_hp over [0, gt_max]"""
    gt_max = optimum_window(n_atoms, alpha) if gt_max is None else gt_max
    step = math.pi / (get_settings().time_grid.samples_per_period * math.sqrt(n_atoms)) if step is None else step

    gts = np.linspace(0.0, gt_max, int(math.ceil(gt_max / step)) + 1)
    values = xi_hp(n_atoms, alpha, gts).xi
    gt_min, xi_min = refine_minimum(
        lambda t: float(xi_hp(n_atoms, alpha, t).xi),
        gts, values, get_settings().optimization.refine_xtol,
    )
    return xi_min, gt_min


def scaling_exponent(alphas: Sequence[float],
                     atoms_per_photon: float = 50.0) -> Tuple[float, List[Tuple[float, int, float, float]]]:
    """
    Log-log slope of the optimum xi_hp versus alpha with N = round(c alpha^2).

    Returns the slope and rows (alpha, N, xi_min, gt_at_min).
    """
    rows = []
    for alpha in alphas:
        n_atoms = int(round(atoms_per_photon * alpha ** 2))
        xi_min, gt_at_min = hp_optimum(n_atoms, alpha)
        rows.append((float(alpha), n_atoms, xi_min, gt_at_min))

    log_alpha = np.log([row[0] for row in rows])
    log_xi = np.log([row[2] for row in rows])
    slope = float(np.polyfit(log_alpha, log_xi, 1)[0])

    logger.info("Bosonized optimum scaling", extra={"slope": slope, "points": len(rows)})
    return slope, rows
