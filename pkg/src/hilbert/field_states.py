"""
Initial Cavity-Field States
Photon-number amplitude vectors for coherent, squeezed-vacuum, Fock and
custom field states, with the truncation bound each one guarantees
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import numpy as np
from aws_lambda_powertools import Logger
from scipy.stats import poisson

from src.hilbert.basis import FockTruncation
from src.utils.exceptions import FieldStateError, TruncationError
from src.utils.settings import get_settings

logger = Logger()

CUSTOM_NORM_TOLERANCE = 1e-6
MAX_SQUEEZED_CUTOFF = 20_000


class FieldKind(Enum):
    """Supported initial field states"""
    COHERENT = "coherent"
    SQUEEZED_VACUUM = "squeezed_vacuum"
    FOCK = "fock"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class FieldStateSpec:
    """Initial field: amplitudes c_0 .. c_{n_max} and truncation metadata"""
    kind: FieldKind
    coefficients: np.ndarray
    truncation: FockTruncation
    parameter: Optional[float] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return self.truncation.n_max

    @property
    def label(self) -> str:
        if self.parameter is None:
            return self.kind.value
        return f"{self.kind.value}={self.parameter:g}"


def _eps(eps_tail: Optional[float]) -> float:
    return get_settings().truncation.eps_tail if eps_tail is None else eps_tail


def _normalized(coefficients: np.ndarray) -> np.ndarray:
    return coefficients / np.sqrt(np.vdot(coefficients, coefficients).real)


def coherent_cutoff(alpha: float) -> int:
    """ceil(alpha^2 + 10 alpha + 10)"""
    return int(math.ceil(alpha * alpha + 10.0 * alpha + 10.0))


def coherent_coefficients(alpha: float, n_max: Optional[int] = None,
                          eps_tail: Optional[float] = None) -> FieldStateSpec:
    """c_k = alpha^k exp(-alpha^2/2) / sqrt(k!) for real alpha >= 0"""
    if not math.isfinite(alpha) or alpha < 0:
        raise FieldStateError(f"coherent amplitude must be real and >= 0, got {alpha}")

    eps = _eps(eps_tail)
    n_max = coherent_cutoff(alpha) if n_max is None else n_max
    if n_max < 0:
        raise FieldStateError(f"n_max must be >= 0, got {n_max}")

    coefficients = np.zeros(n_max + 1, dtype=complex)
    if alpha == 0.0:
        coefficients[0] = 1.0
        tail = 0.0
    else:
        k = np.arange(1, n_max + 1)
        # log c_k = log c_{k-1} + log(alpha) - log(k)/2
        log_c = np.concatenate([[0.0], np.cumsum(math.log(alpha) - 0.5 * np.log(k))])
        coefficients[:] = np.exp(log_c - alpha * alpha / 2.0)
        tail = float(poisson.sf(n_max, alpha * alpha))

    if tail >= eps:
        raise TruncationError(
            f"n_max={n_max} leaves tail mass {tail:.3e} >= {eps:.1e} for alpha={alpha}"
        )

    return FieldStateSpec(
        kind=FieldKind.COHERENT,
        coefficients=_normalized(coefficients),
        truncation=FockTruncation(n_max=n_max, tail_mass_bound=tail),
        parameter=float(alpha),
    )


def _squeezed_even_magnitudes(r: float, last_even: int) -> np.ndarray:
    """|c_0|, |c_2|, ..., |c_last_even| via the ratio c_{k+2}/c_k"""
    t = math.tanh(r)
    k = np.arange(0, last_even, 2)
    log_ratio = math.log(t) + 0.5 * np.log((k + 1.0) / (k + 2.0))
    log_c = -0.5 * math.log(math.cosh(r)) + np.concatenate([[0.0], np.cumsum(log_ratio)])
    return np.exp(log_c)


def _squeezed_tail_bound(last_magnitude: float, r: float) -> float:
    # |c_{k+2}|^2 / |c_k|^2 < tanh^2 r, so the remainder is geometric
    return last_magnitude ** 2 * math.sinh(r) ** 2


def squeezed_cutoff(r: float, eps_tail: Optional[float] = None) -> int:
    """Smallest even cutoff whose squeezed-vacuum tail bound is below eps_tail"""
    eps = _eps(eps_tail)
    if r == 0.0:
        return 0

    t2 = math.tanh(r) ** 2
    log_mag2 = -math.log(math.cosh(r))
    cutoff = 0
    while log_mag2 + 2.0 * math.log(math.sinh(r)) >= math.log(eps):
        log_mag2 += math.log(t2) + math.log((cutoff + 1.0) / (cutoff + 2.0))
        cutoff += 2
        if cutoff > MAX_SQUEEZED_CUTOFF:
            raise TruncationError(f"no cutoff below {MAX_SQUEEZED_CUTOFF} meets eps_tail for r={r}")
    return cutoff


def squeezed_vacuum_coefficients(r: float, n_max: Optional[int] = None,
                                 eps_tail: Optional[float] = None) -> FieldStateSpec:
    """
    c_k = (k-1)!! (-1)^{k/2} tanh^{k/2}(r) / sqrt(k! cosh r) for even k,
    zero for odd k, with (-1)!! = 1
    """
    if not math.isfinite(r) or r < 0:
        raise FieldStateError(f"squeezing parameter must be real and >= 0, got {r}")

    eps = _eps(eps_tail)
    n_max = squeezed_cutoff(r, eps) if n_max is None else n_max
    if n_max < 0:
        raise FieldStateError(f"n_max must be >= 0, got {n_max}")

    coefficients = np.zeros(n_max + 1, dtype=complex)
    if r == 0.0:
        coefficients[0] = 1.0
        tail = 0.0
    else:
        last_even = n_max - (n_max % 2)
        magnitudes = _squeezed_even_magnitudes(r, last_even)
        signs = np.where(np.arange(magnitudes.size) % 2 == 0, 1.0, -1.0)
        coefficients[0:last_even + 1:2] = signs * magnitudes
        tail = _squeezed_tail_bound(float(magnitudes[-1]), r)

    if tail >= eps:
        raise TruncationError(
            f"n_max={n_max} leaves tail bound {tail:.3e} >= {eps:.1e} for r={r}"
        )

    return FieldStateSpec(
        kind=FieldKind.SQUEEZED_VACUUM,
        coefficients=_normalized(coefficients),
        truncation=FockTruncation(n_max=n_max, tail_mass_bound=tail),
        parameter=float(r),
    )


def fock_coefficients(n: int, n_max: Optional[int] = None) -> FieldStateSpec:
    """Number state |n>"""
    n_max = n if n_max is None else n_max
    if n < 0:
        raise FieldStateError(f"photon number must be >= 0, got {n}")
    if n > n_max:
        raise FieldStateError(f"photon number {n} exceeds cutoff n_max={n_max}")

    coefficients = np.zeros(n_max + 1, dtype=complex)
    coefficients[n] = 1.0

    return FieldStateSpec(
        kind=FieldKind.FOCK,
        coefficients=coefficients,
        truncation=FockTruncation(n_max=n_max),
        parameter=float(n),
    )


def custom_coefficients(coeffs: Sequence[complex], n_max: Optional[int] = None,
                        normalize: bool = True) -> FieldStateSpec:
    """
    Explicit amplitudes c_0, c_1, ...

    A vector whose norm^2 is off by more than 1e-6 is renormalized and
    flagged in metadata; with normalize=False it is rejected instead.
    """
    values = np.asarray(list(coeffs), dtype=complex)
    if values.size == 0 or not np.any(values != 0):
        raise FieldStateError("custom field state needs at least one nonzero coefficient")
    if not np.all(np.isfinite(values)):
        raise FieldStateError("custom field coefficients must be finite")

    n_max = values.size - 1 if n_max is None else n_max
    if values.size > n_max + 1:
        raise FieldStateError(f"{values.size} coefficients do not fit cutoff n_max={n_max}")

    input_norm_sq = float(np.vdot(values, values).real)
    renormalized = abs(input_norm_sq - 1.0) > CUSTOM_NORM_TOLERANCE
    if renormalized and not normalize:
        raise FieldStateError(
            f"custom coefficients have norm^2 {input_norm_sq:.6f}; pass normalize=True to rescale"
        )
    if renormalized:
        logger.warning("Renormalizing custom field state", extra={"input_norm_sq": input_norm_sq})

    coefficients = np.zeros(n_max + 1, dtype=complex)
    coefficients[: values.size] = values

    return FieldStateSpec(
        kind=FieldKind.CUSTOM,
        coefficients=_normalized(coefficients),
        truncation=FockTruncation(n_max=n_max),
        metadata={"input_norm_sq": input_norm_sq, "renormalized": renormalized},
    )


def default_cutoff(kind: FieldKind, parameter: float = 0.0,
                   eps_tail: Optional[float] = None) -> int:
    """Photon cutoff used when the caller gives none"""
    if kind is FieldKind.COHERENT:
        return coherent_cutoff(parameter)
    if kind is FieldKind.SQUEEZED_VACUUM:
        return squeezed_cutoff(parameter, eps_tail)
    if kind is FieldKind.FOCK:
        return int(parameter)
    raise FieldStateError("custom field states take their cutoff from the coefficient list")


def build_field_state(kind: FieldKind, parameter: Optional[float] = None,
                      coefficients: Optional[Sequence[complex]] = None,
                      n_max: Optional[int] = None, eps_tail: Optional[float] = None,
                      normalize: bool = True) -> FieldStateSpec:
    """Dispatch to the constructor for `kind`"""
    if kind is FieldKind.CUSTOM:
        if coefficients is None:
            raise FieldStateError("custom field state needs a coefficient list")
        return custom_coefficients(coefficients, n_max=n_max, normalize=normalize)

    if parameter is None:
        raise FieldStateError(f"{kind.value} field state needs a parameter")
    if kind is FieldKind.COHERENT:
        return coherent_coefficients(parameter, n_max=n_max, eps_tail=eps_tail)
    if kind is FieldKind.SQUEEZED_VACUUM:
        return squeezed_vacuum_coefficients(parameter, n_max=n_max, eps_tail=eps_tail)

    if float(parameter) != int(parameter):
        raise FieldStateError(f"Fock photon number must be an integer, got {parameter}")
    return fock_coefficients(int(parameter), n_max=n_max)


def load_custom_coefficients(path: Path) -> np.ndarray:
    """
    Read a custom state file: one "re im" pair per line, line order is the
    photon number, '#' starts a comment
    """
    try:
        table = np.loadtxt(path, comments="#", ndmin=2, dtype=float)
    except (OSError, ValueError) as e:
        raise FieldStateError(f"cannot read custom field file {path}: {e}") from e

    if table.size == 0:
        raise FieldStateError(f"custom field file {path} has no coefficients")
    if table.shape[1] == 1:
        return table[:, 0].astype(complex)
    if table.shape[1] != 2:
        raise FieldStateError(f"custom field file {path}: expected 're im' pairs")
    return table[:, 0] + 1j * table[:, 1]


def mean_photon_number(field_state: FieldStateSpec) -> float:
    probabilities = np.abs(field_state.coefficients) ** 2
    return float(np.dot(np.arange(probabilities.size), probabilities))


def photon_number_std(field_state: FieldStateSpec) -> float:
    probabilities = np.abs(field_state.coefficients) ** 2
    n = np.arange(probabilities.size)
    mean = float(np.dot(n, probabilities))
    return math.sqrt(max(float(np.dot(n * n, probabilities)) - mean * mean, 0.0))
