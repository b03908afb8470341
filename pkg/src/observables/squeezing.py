"""
Spin Squeezing
Collective-spin means, symmetrized covariance and squeezing parameters,
evaluated for one state or a whole batch of times at once
"""
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from aws_lambda_powertools import Logger

from src.hilbert.basis import JointState
from src.observables.quadratures import FieldQuadratures, field_quadrature_table
from src.utils.exceptions import DegenerateDirectionError
from src.utils.settings import get_settings

logger = Logger()

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class SpinVector:
    sx: float
    sy: float
    sz: float

    @property
    def magnitude(self) -> float:
        return math.sqrt(self.sx ** 2 + self.sy ** 2 + self.sz ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz])


@dataclass(frozen=True, eq=False)
class SqueezingReport:
    """Every squeezing quantity at one time"""
    gt: float
    spin: SpinVector
    cov: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    xi_x: float
    xi_yprime: float
    xi_min_plane: float
    phi: float
    field: FieldQuadratures

    @property
    def q_mean(self) -> float:
        return self.field.q_mean

    @property
    def p_mean(self) -> float:
        return self.field.p_mean

    @property
    def var_q(self) -> float:
        return self.field.var_q

    @property
    def var_p(self) -> float:
        return self.field.var_p

    @property
    def xi_q(self) -> float:
        return self.field.xi_q

    @property
    def xi_p(self) -> float:
        return self.field.xi_p


@dataclass(eq=False)
class SqueezingTable:
    """
    Column arrays over a batch of times.

    Rows where |<S>| is below the degenerate threshold keep their means and
    covariance but carry NaN squeezing parameters and degenerate=True.
    """
    n_atoms: int
    gt: np.ndarray
    mean: np.ndarray
    cov: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    xi_x: np.ndarray
    xi_yprime: np.ndarray
    xi_min_plane: np.ndarray
    phi: np.ndarray
    degenerate: np.ndarray
    field: FieldQuadratures = field(repr=False)

    def __len__(self) -> int:
        return self.gt.size

    @property
    def magnitude(self) -> np.ndarray:
        return np.linalg.norm(self.mean, axis=1)

    @property
    def xi_q(self) -> np.ndarray:
        return self.field.xi_q

    @property
    def xi_p(self) -> np.ndarray:
        return self.field.xi_p

    def report(self, index: int) -> SqueezingReport:
        if self.degenerate[index]:
            raise DegenerateDirectionError(
                f"|<S>| = {self.magnitude[index]:.3e} at gt={self.gt[index]:g} "
                f"defines no perpendicular plane"
            )
        sx, sy, sz = (float(v) for v in self.mean[index])
        return SqueezingReport(
            gt=float(self.gt[index]),
            spin=SpinVector(sx, sy, sz),
            cov=self.cov[index].copy(),
            e1=self.e1[index].copy(),
            e2=self.e2[index].copy(),
            xi_x=float(self.xi_x[index]),
            xi_yprime=float(self.xi_yprime[index]),
            xi_min_plane=float(self.xi_min_plane[index]),
            phi=float(self.phi[index]),
            field=self.field.row(index),
        )

    @classmethod
    def concatenate(cls, tables: Sequence["SqueezingTable"]) -> "SqueezingTable":
        first = tables[0]
        joined = {
            name: np.concatenate([getattr(t, name) for t in tables])
            for name in ("gt", "mean", "cov", "e1", "e2", "xi_x", "xi_yprime",
                         "xi_min_plane", "phi", "degenerate")
        }
        return cls(
            n_atoms=first.n_atoms,
            field=FieldQuadratures.concatenate([t.field for t in tables]),
            **joined,
        )


def _ladder_factors(n_atoms: int, rows: int) -> np.ndarray:
    """f(j) = sqrt((N - j)(j + 1)), the S+ matrix element <j+1|S+|j>"""
    j = np.arange(rows, dtype=float)
    return np.sqrt(np.clip((n_atoms - j) * (j + 1.0), 0.0, None))


def _raise(grid: np.ndarray, f: np.ndarray) -> np.ndarray:
    out = np.zeros_like(grid)
    out[1:] = f[:-1, None, None] * grid[:-1]
    return out


def _lower(grid: np.ndarray, f: np.ndarray) -> np.ndarray:
    out = np.zeros_like(grid)
    out[:-1] = f[:-1, None, None] * grid[1:]
    return out


def _inner(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """<a|b> per time slice"""
    return np.einsum("jnt,jnt->t", np.conj(a), b)


def spin_moments(grid: np.ndarray, n_atoms: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Means (T, 3) and symmetrized covariance (T, 3, 3) of (Sx, Sy, Sz) for a
    grid c[j, n, t]; second moments are Re<S_a psi|S_b psi>
    """
    rows = grid.shape[0]
    f = _ladder_factors(n_atoms, rows)
    m = np.arange(rows) - n_atoms / 2.0

    up = _raise(grid, f)
    down = _lower(grid, f)
    applied = (
        0.5 * (up + down),
        -0.5j * (up - down),
        m[:, None, None] * grid,
    )

    s_plus = _inner(grid, up)
    mean = np.stack([s_plus.real, s_plus.imag, _inner(grid, applied[2]).real], axis=1)

    second = np.empty((grid.shape[2], 3, 3))
    for a in range(3):
        for b in range(a, 3):
            second[:, a, b] = _inner(applied[a], applied[b]).real
            second[:, b, a] = second[:, a, b]

    cov = second - mean[:, :, None] * mean[:, None, :]
    return mean, cov


def perpendicular_frame(mean: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    e1 = x^ made orthogonal to <S> (y^ if x^ is parallel), e2 = e1 x n^.

    With <S> along -z this gives e1 = x^, e2 = y^.
    """
    magnitude = np.linalg.norm(mean, axis=1, keepdims=True)
    n_hat = mean / np.where(magnitude > 0.0, magnitude, 1.0)

    e1 = X_AXIS - (n_hat @ X_AXIS)[:, None] * n_hat
    parallel = np.linalg.norm(e1, axis=1) < 1e-8
    if np.any(parallel):
        e1[parallel] = Y_AXIS - (n_hat[parallel] @ Y_AXIS)[:, None] * n_hat[parallel]
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)

    e2 = np.cross(e1, n_hat)
    return e1, e2


def _quadratic(cov: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("ti,tij,tj->t", u, cov, v)


def squeezing_table(grid: np.ndarray, n_atoms: int, gts: Sequence[float],
                    degenerate_threshold: Optional[float] = None) -> SqueezingTable:
    """
    xi_u = sqrt(N u^T C u) / |<S>| along e1 (xi_x), e2 (xi_yprime) and the
    minimizing direction cos(phi) e1 + sin(phi) e2 of the perpendicular plane
    """
    threshold = (get_settings().observables.degenerate_threshold
                 if degenerate_threshold is None else degenerate_threshold)

    mean, cov = spin_moments(grid, n_atoms)
    magnitude = np.linalg.norm(mean, axis=1)
    degenerate = magnitude < threshold * n_atoms

    e1, e2 = perpendicular_frame(mean)
    a = _quadratic(cov, e1, e1)
    d = _quadratic(cov, e2, e2)
    b = _quadratic(cov, e1, e2)
    lam_min = 0.5 * (a + d) - np.sqrt((0.5 * (a - d)) ** 2 + b ** 2)
    phi = np.mod(0.5 * np.arctan2(2.0 * b, a - d) + 0.5 * np.pi, np.pi)

    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(degenerate, np.nan, 1.0 / magnitude)
        xi_x = np.sqrt(n_atoms * np.clip(a, 0.0, None)) * scale
        xi_yprime = np.sqrt(n_atoms * np.clip(d, 0.0, None)) * scale
        xi_min_plane = np.sqrt(n_atoms * np.clip(lam_min, 0.0, None)) * scale

    if np.any(degenerate):
        logger.debug("Degenerate spin direction", extra={"rows": int(degenerate.sum())})

    return SqueezingTable(
        n_atoms=n_atoms,
        gt=np.asarray(gts, dtype=float),
        mean=mean,
        cov=cov,
        e1=e1,
        e2=e2,
        xi_x=xi_x,
        xi_yprime=xi_yprime,
        xi_min_plane=np.minimum(xi_min_plane, np.minimum(xi_x, xi_yprime)),
        phi=phi,
        degenerate=degenerate,
        field=field_quadrature_table(grid),
    )


def _single(state: JointState) -> np.ndarray:
    return state.to_grid()[:, :, None]


def spin_expectations(state: JointState) -> SpinVector:
    mean, _ = spin_moments(_single(state), state.n_atoms)
    return SpinVector(*(float(v) for v in mean[0]))


def spin_covariance(state: JointState) -> np.ndarray:
    """cov_ab = <(S_a S_b + S_b S_a)/2> - <S_a><S_b>"""
    _, cov = spin_moments(_single(state), state.n_atoms)
    return cov[0]


def squeezing_parameters(state: JointState, gt: float = 0.0) -> SqueezingReport:
    """Full report for one state; raises DegenerateDirectionError if |<S>| ~ 0"""
    return squeezing_table(_single(state), state.n_atoms, [gt]).report(0)


def uncertainty_products(table: SqueezingTable) -> Tuple[np.ndarray, np.ndarray]:
    """
    Slack of the uncertainty relations per row:
    dS_e1 dS_e2 - |<S>|/2 and var_q var_p - 1/4, both >= 0 for a physical state
    """
    var_e1 = _quadratic(table.cov, table.e1, table.e1)
    var_e2 = _quadratic(table.cov, table.e2, table.e2)
    spin_slack = np.sqrt(np.clip(var_e1 * var_e2, 0.0, None)) - 0.5 * table.magnitude
    field_slack = table.field.var_q * table.field.var_p - 0.25
    return spin_slack, field_slack
