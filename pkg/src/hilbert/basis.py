"""
Joint Spin-Photon Basis
Truncated Hilbert space of N collective spins-1/2 and one cavity mode,
split into blocks of conserved total excitation M = j + n
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, List, Optional, Tuple

import numpy as np
from aws_lambda_powertools import Logger

from src.utils.exceptions import ConfigurationError

if TYPE_CHECKING:
    from src.hilbert.field_states import FieldStateSpec

logger = Logger()


@dataclass(frozen=True)
class SpinManifold:
    """Symmetric manifold S = N/2; states labelled by j = m + N/2"""
    n_atoms: int

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ConfigurationError(f"n_atoms must be >= 1, got {self.n_atoms}")

    @property
    def total_spin(self) -> Fraction:
        return Fraction(self.n_atoms, 2)

    @property
    def j_values(self) -> range:
        return range(self.n_atoms + 1)

    def m_of(self, j: int) -> float:
        """S_z eigenvalue of excitation index j"""
        return j - self.n_atoms / 2


@dataclass(frozen=True)
class FockTruncation:
    """Photon cutoff with the discarded initial probability it guarantees"""
    n_max: int
    tail_mass_bound: float = 0.0

    def __post_init__(self):
        if self.n_max < 0:
            raise ConfigurationError(f"n_max must be >= 0, got {self.n_max}")


@dataclass(frozen=True)
class ExcitationBlock:
    """Invariant subspace of fixed M; states ordered by increasing j"""
    M: int
    j_min: int
    j_max: int

    @property
    def dim(self) -> int:
        return self.j_max - self.j_min + 1

    @property
    def j(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_max + 1)

    @property
    def n(self) -> np.ndarray:
        return self.M - self.j

    @property
    def states(self) -> List[Tuple[int, int]]:
        return [(j, self.M - j) for j in range(self.j_min, self.j_max + 1)]


def build_basis(n_atoms: int, n_max: int) -> List[ExcitationBlock]:
    """Blocks M = 0 .. N + n_max partitioning the truncated product basis"""
    if n_atoms < 1:
        raise ConfigurationError(f"n_atoms must be >= 1, got {n_atoms}")
    if n_max < 0:
        raise ConfigurationError(f"n_max must be >= 0, got {n_max}")

    return [
        ExcitationBlock(M=M, j_min=max(0, M - n_max), j_max=min(n_atoms, M))
        for M in range(n_atoms + n_max + 1)
    ]


@dataclass(frozen=True, eq=False)
class HilbertBasis:
    """
    Block-ordered basis with flat indexing.

    Amplitudes of block M live in flat[offsets[M]:offsets[M + 1]];
    flat_j / flat_n give the (j, n) label of every flat position.
    """
    n_atoms: int
    n_max: int
    blocks: Tuple[ExcitationBlock, ...]
    offsets: np.ndarray = field(repr=False)
    flat_j: np.ndarray = field(repr=False)
    flat_n: np.ndarray = field(repr=False)

    @classmethod
    def create(cls, n_atoms: int, n_max: int) -> "HilbertBasis":
        return _cached_basis(n_atoms, n_max)

    @property
    def manifold(self) -> SpinManifold:
        return SpinManifold(self.n_atoms)

    @property
    def size(self) -> int:
        return int(self.offsets[-1])

    def block_slice(self, M: int) -> slice:
        return slice(int(self.offsets[M]), int(self.offsets[M + 1]))

    def flat_index(self, j: int, n: int) -> int:
        M = j + n
        block = self.blocks[M]
        if not (block.j_min <= j <= block.j_max):
            raise ConfigurationError(f"state (j={j}, n={n}) outside the truncated basis")
        return int(self.offsets[M]) + j - block.j_min


@lru_cache(maxsize=64)
def _cached_basis(n_atoms: int, n_max: int) -> HilbertBasis:
    blocks = tuple(build_basis(n_atoms, n_max))
    dims = np.array([b.dim for b in blocks], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(dims)])
    flat_j = np.concatenate([b.j for b in blocks])
    flat_n = np.concatenate([b.n for b in blocks])

    logger.debug("Built basis", extra={
        "n_atoms": n_atoms, "n_max": n_max,
        "blocks": len(blocks), "size": int(offsets[-1]),
    })

    return HilbertBasis(
        n_atoms=n_atoms,
        n_max=n_max,
        blocks=blocks,
        offsets=offsets,
        flat_j=flat_j,
        flat_n=flat_n,
    )


@dataclass(frozen=True, eq=False)
class JointState:
    """Pure state c_{j,n} stored as one flat vector in block order"""
    basis: HilbertBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (self.basis.size,):
            raise ConfigurationError(
                f"amplitude vector of length {self.amplitudes.shape} "
                f"does not match basis size {self.basis.size}"
            )

    @property
    def n_atoms(self) -> int:
        return self.basis.n_atoms

    @property
    def n_max(self) -> int:
        return self.basis.n_max

    def block_amplitudes(self, M: int) -> np.ndarray:
        return self.amplitudes[self.basis.block_slice(M)]

    def amplitude(self, j: int, n: int) -> complex:
        return complex(self.amplitudes[self.basis.flat_index(j, n)])

    def occupied_blocks(self) -> List[int]:
        return [
            b.M for b in self.basis.blocks
            if np.any(self.block_amplitudes(b.M) != 0)
        ]

    def scaled(self, factor: complex) -> "JointState":
        return JointState(self.basis, self.amplitudes * factor)

    def to_grid(self, j_rows: Optional[int] = None) -> np.ndarray:
        """
        Scatter into a dense (j, n) array.

        j_rows crops the spin axis; rows at and above it must be empty
        """
        rows = self.n_atoms + 1 if j_rows is None else j_rows
        grid = np.zeros((rows, self.n_max + 1), dtype=complex)
        keep = self.basis.flat_j < rows
        grid[self.basis.flat_j[keep], self.basis.flat_n[keep]] = self.amplitudes[keep]
        return grid


def norm(state: JointState) -> float:
    """Sum over all blocks of |c|^2"""
    return float(np.vdot(state.amplitudes, state.amplitudes).real)


def initial_joint_state(n_atoms: int, field_state: "FieldStateSpec") -> JointState:
    """
    All atoms in the ground state (j = 0), cavity in `field_state`.

    The photon-number amplitude c_n lands on (0, n), i.e. in block M = n.
    """
    n_max = field_state.truncation.n_max
    basis = HilbertBasis.create(n_atoms, n_max)
    amplitudes = np.zeros(basis.size, dtype=complex)

    coefficients = np.asarray(field_state.coefficients, dtype=complex)
    # j = 0 is the first entry of every block with M <= n_max
    amplitudes[basis.offsets[: n_max + 1]] = coefficients

    return JointState(basis, amplitudes)

