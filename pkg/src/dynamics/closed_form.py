"""
Two-Atom Closed Form
Analytic amplitudes for N = 2, used as an independent check of the
spectral propagator
"""
import math

import numpy as np

from src.hilbert.basis import HilbertBasis, JointState
from src.hilbert.field_states import FieldStateSpec
from src.utils.exceptions import ConfigurationError


def c1_coefficient(k: int) -> float:
    """Weight of c_{k+2} in the (j=2, n=k) amplitude, from the 3x3 block spectrum"""
    return math.sqrt((k + 1) * (k + 2)) / (2 * k + 3)


def c1_coefficient_as_printed(k: int) -> float:
    """sqrt((k+1)(k+1)) / (2k+3); differs from c1_coefficient for every k"""
    return math.sqrt((k + 1) * (k + 1)) / (2 * k + 3)


def evolve_n2_closed_form(field_state: FieldStateSpec, gt: float,
                          n_atoms: int = 2) -> JointState:
    """
    Two atoms starting in the ground state, field amplitudes c_k:

      c(0, k) = [k - 1 + k cos(sqrt(4k-2) gt)] c_k / (2k - 1),  c(0, 0) = c_0
      c(1, k) = -i sqrt((k+1)/(2k+1)) sin(sqrt(4k+2) gt) c_{k+1}
      c(2, k) = c1_coefficient(k) [cos(sqrt(4k+6) gt) - 1] c_{k+2}
    """
    if n_atoms != 2:
        raise ConfigurationError(f"closed-form propagator is only valid for N=2, got N={n_atoms}")

    c = np.asarray(field_state.coefficients, dtype=complex)
    n_max = field_state.n_max
    basis = HilbertBasis.create(2, n_max)
    amplitudes = np.zeros(basis.size, dtype=complex)

    amplitudes[basis.flat_index(0, 0)] = c[0]
    for k in range(1, n_max + 1):
        weight = (k - 1 + k * math.cos(math.sqrt(4 * k - 2) * gt)) / (2 * k - 1)
        amplitudes[basis.flat_index(0, k)] = weight * c[k]

    for k in range(n_max):
        weight = -1j * math.sqrt((k + 1) / (2 * k + 1)) * math.sin(math.sqrt(4 * k + 2) * gt)
        amplitudes[basis.flat_index(1, k)] = weight * c[k + 1]

    for k in range(n_max - 1):
        weight = c1_coefficient(k) * (math.cos(math.sqrt(4 * k + 6) * gt) - 1.0)
        amplitudes[basis.flat_index(2, k)] = weight * c[k + 2]

    return JointState(basis, amplitudes)
