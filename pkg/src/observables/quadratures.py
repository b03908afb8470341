"""
Field Quadratures
Moments of Q = (a + a^+)/sqrt(2) and P = -i(a - a^+)/sqrt(2) from the
joint amplitudes, with the quadrature squeezing parameters
"""
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from src.hilbert.basis import JointState

ArrayOrFloat = Union[np.ndarray, float]


@dataclass(frozen=True, eq=False)
class FieldQuadratures:
    """Quadrature means and variances; arrays for batches, floats for one time"""
    q_mean: ArrayOrFloat
    p_mean: ArrayOrFloat
    var_q: ArrayOrFloat
    var_p: ArrayOrFloat
    mean_photons: ArrayOrFloat

    @property
    def xi_q(self) -> ArrayOrFloat:
        return np.sqrt(2.0 * self.var_q)

    @property
    def xi_p(self) -> ArrayOrFloat:
        return np.sqrt(2.0 * self.var_p)

    def row(self, index: int) -> "FieldQuadratures":
        return FieldQuadratures(
            q_mean=float(self.q_mean[index]),
            p_mean=float(self.p_mean[index]),
            var_q=float(self.var_q[index]),
            var_p=float(self.var_p[index]),
            mean_photons=float(self.mean_photons[index]),
        )

    def as_tuple(self):
        """(q_mean, p_mean, var_q, var_p, xi_q, xi_p)"""
        return self.q_mean, self.p_mean, self.var_q, self.var_p, self.xi_q, self.xi_p

    @classmethod
    def concatenate(cls, parts: Sequence["FieldQuadratures"]) -> "FieldQuadratures":
        return cls(**{
            name: np.concatenate([getattr(p, name) for p in parts])
            for name in ("q_mean", "p_mean", "var_q", "var_p", "mean_photons")
        })


def field_quadrature_table(grid: np.ndarray) -> FieldQuadratures:
    """
    For c[j, n, t]:
      <a>   = sum sqrt(n) conj(c[j, n-1]) c[j, n]
      <a^2> = sum sqrt(n(n-1)) conj(c[j, n-2]) c[j, n]
    """
    n = np.arange(grid.shape[1], dtype=float)
    probabilities = np.abs(grid) ** 2
    mean_photons = np.einsum("jnt,n->t", probabilities, n)

    a1 = np.einsum("jnt,jnt,n->t", np.conj(grid[:, :-1]), grid[:, 1:], np.sqrt(n[1:]))
    a2 = np.einsum("jnt,jnt,n->t", np.conj(grid[:, :-2]), grid[:, 2:],
                   np.sqrt(n[2:] * (n[2:] - 1.0)))

    q_mean = np.sqrt(2.0) * a1.real
    p_mean = np.sqrt(2.0) * a1.imag
    q2 = 0.5 + mean_photons + a2.real
    p2 = 0.5 + mean_photons - a2.real

    return FieldQuadratures(
        q_mean=q_mean,
        p_mean=p_mean,
        var_q=q2 - q_mean ** 2,
        var_p=p2 - p_mean ** 2,
        mean_photons=mean_photons,
    )


def field_quadratures(state: JointState) -> FieldQuadratures:
    return field_quadrature_table(state.to_grid()[:, :, None]).row(0)
