"""
Spectral Propagator
Exact resonant Tavis-Cummings evolution by diagonalizing each
conserved-excitation block once and reusing the spectrum for every time
"""
import threading
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from aws_lambda_powertools import Logger
from scipy import sparse
from scipy.linalg import eigh_tridiagonal

from src.hilbert.basis import ExcitationBlock, HilbertBasis, JointState
from src.utils.exceptions import ConfigurationError
from src.utils.settings import get_settings

logger = Logger()


@dataclass(frozen=True, eq=False)
class BlockSpectrum:
    """Eigenvalues (units of g) and orthonormal eigenvectors as columns"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(eq=False)
class BlockHamiltonian:
    """
    H restricted to one block, in units of hbar*g.

    Zero diagonal; offdiag[i] couples states j_min + i and j_min + i + 1.
    The spectrum is computed on first access and kept.
    """
    block: ExcitationBlock
    n_atoms: int
    offdiag: np.ndarray
    _spectrum: Optional[BlockSpectrum] = field(default=None, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    @property
    def dim(self) -> int:
        return self.block.dim

    @property
    def spectrum(self) -> BlockSpectrum:
        if self._spectrum is None:
            with self._lock:
                if self._spectrum is None:
                    self._spectrum = self._diagonalize()
        return self._spectrum

    def _diagonalize(self) -> BlockSpectrum:
        if self.dim == 1:
            return BlockSpectrum(np.zeros(1), np.ones((1, 1)))
        eigenvalues, eigenvectors = eigh_tridiagonal(np.zeros(self.dim), self.offdiag)
        return BlockSpectrum(eigenvalues, eigenvectors)

    def dense(self) -> np.ndarray:
        return np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def build_block_hamiltonian(block: ExcitationBlock, n_atoms: int) -> BlockHamiltonian:
    """h_j = sqrt((N - j)(j + 1)(M - j)) between (j, M - j) and (j + 1, M - j - 1)"""
    if block.j_max > n_atoms:
        raise ConfigurationError(f"block M={block.M} does not belong to N={n_atoms}")

    j = np.arange(block.j_min, block.j_max, dtype=float)
    offdiag = np.sqrt((n_atoms - j) * (j + 1.0) * (block.M - j))
    return BlockHamiltonian(block=block, n_atoms=n_atoms, offdiag=offdiag)


class SpectralCache:
    """
    Block Hamiltonians per (N, n_max), shared read-only by every
    propagator and worker thread
    """

    def __init__(self):
        self._entries: Dict[Tuple[int, int], Tuple[BlockHamiltonian, ...]] = {}
        self._lock = threading.Lock()

    def hamiltonians(self, basis: HilbertBasis) -> Tuple[BlockHamiltonian, ...]:
        key = (basis.n_atoms, basis.n_max)
        entry = self._entries.get(key)
        if entry is None:
            with self._lock:
                entry = self._entries.get(key)
                if entry is None:
                    entry = tuple(build_block_hamiltonian(b, basis.n_atoms) for b in basis.blocks)
                    self._entries[key] = entry
                    logger.debug("Cached block Hamiltonians", extra={
                        "n_atoms": basis.n_atoms, "n_max": basis.n_max, "blocks": len(entry),
                    })
        return entry

    def clear(self):
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        return len(self._entries)


spectral_cache = SpectralCache()


class SpectralPropagator:
    """
    Time-vectorised evolution of one initial state.

    The state is projected on the eigenbases of its occupied blocks once;
    a batch of times then costs one sparse product
    W (exp(-i lambda gt) * p) with W the block-diagonal eigenvector matrix.
    """

    def __init__(self, state: JointState, cache: Optional[SpectralCache] = None):
        self.state = state
        self.basis = state.basis
        hamiltonians = (cache or spectral_cache).hamiltonians(self.basis)

        self.occupied = state.occupied_blocks()
        if not self.occupied:
            raise ConfigurationError("cannot propagate the zero vector")

        vectors, eigenvalues, projections, positions = [], [], [], []
        for M in self.occupied:
            spectrum = hamiltonians[M].spectrum
            block_slice = self.basis.block_slice(M)
            vectors.append(spectrum.eigenvectors)
            eigenvalues.append(spectrum.eigenvalues)
            projections.append(spectrum.eigenvectors.T @ state.amplitudes[block_slice])
            positions.append(np.arange(block_slice.start, block_slice.stop))

        self.eigenvalues = np.concatenate(eigenvalues)
        self.projections = np.concatenate(projections)
        self.positions = np.concatenate(positions)
        self._vectors = sparse.block_diag(vectors, format="csr")

        max_M = max(self.occupied)
        # one spare j row so S+ never leaves the grid
        self.j_rows = min(self.basis.n_atoms, max_M + 1) + 1
        self._grid_j = self.basis.flat_j[self.positions]
        self._grid_n = self.basis.flat_n[self.positions]

    @property
    def grid_shape(self) -> Tuple[int, int]:
        return self.j_rows, self.basis.n_max + 1

    def batch_size(self) -> int:
        """Times per batch so one grid batch stays under batch_elements"""
        rows, cols = self.grid_shape
        per_time = max(rows * cols, self.positions.size)
        return max(1, get_settings().time_grid.batch_elements // per_time)

    def amplitudes(self, gts: Sequence[float]) -> np.ndarray:
        """Occupied-block amplitudes, shape (occupied states, len(gts))"""
        gts = np.atleast_1d(np.asarray(gts, dtype=float))
        if not np.all(np.isfinite(gts)):
            raise ConfigurationError("gt values must be finite")

        phases = np.exp(-1j * np.outer(self.eigenvalues, gts))
        return np.asarray(self._vectors @ (phases * self.projections[:, None]))

    def grid(self, gts: Sequence[float]) -> np.ndarray:
        """Amplitudes c[j, n, t] on the cropped (j, n) grid"""
        values = self.amplitudes(gts)
        rows, cols = self.grid_shape
        out = np.zeros((rows, cols, values.shape[1]), dtype=complex)
        out[self._grid_j, self._grid_n, :] = values
        return out

    def batches(self, gts: Sequence[float]):
        """Yield (gt chunk, grid chunk) pairs covering `gts` in order"""
        gts = np.asarray(gts, dtype=float)
        size = self.batch_size()
        for start in range(0, gts.size, size):
            chunk = gts[start:start + size]
            yield chunk, self.grid(chunk)

    def state_at(self, gt: float) -> JointState:
        amplitudes = np.zeros(self.basis.size, dtype=complex)
        amplitudes[self.positions] = self.amplitudes([gt])[:, 0]
        return JointState(self.basis, amplitudes)


def evolve(state: JointState, gt: float) -> JointState:
    """exp(-i H gt) applied block by block"""
    return SpectralPropagator(state).state_at(gt)

