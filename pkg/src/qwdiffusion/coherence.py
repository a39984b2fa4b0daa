"""Coherence of the walker's position degree of freedom.

Tracing the coin out of a pure joint state gives the position density
matrix ``rho(j, k) = up[j] conj(up[k]) + down[j] conj(down[k])``, which
has rank at most two. Its nonzero spectrum equals that of the 2x2 coin
overlap (Gram) matrix, so the von Neumann entropy costs O(t). The l1
measure needs every pair of sites; the kernel streams over the pairs
instead of building the ``(2t+1) x (2t+1)`` matrix.

All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from qwdiffusion import kernels
from qwdiffusion.errors import ConsistencyError, ValidationError
from qwdiffusion.observables import probability_distribution
from qwdiffusion.state import WalkerState

_EIGEN_NEGATIVE_TOL = 1e-9
_ENTROPY_NEGATIVE_TOL = 1e-12


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """Position density matrix over the sites ``positions``."""

    positions: np.ndarray
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.positions.shape[0]


def reduced_position_density(state: WalkerState) -> ReducedDensityMatrix:
    """Materialize the coin-traced density matrix on the light cone ``[-t, t]``."""
    lo, hi = state.occupied
    u = state.up[lo:hi + 1]
    d = state.down[lo:hi + 1]
    rho = np.outer(u, u.conj()) + np.outer(d, d.conj())
    return ReducedDensityMatrix(state.positions[lo:hi + 1], rho)


def l1_coherence_normalized(state: WalkerState) -> float:
    """``(1/t) * sum_{j>k} |rho(j, k)|``; defined as 0 at ``t = 0``."""
    lo, hi = state.occupied
    if hi == lo:
        return 0.0
    # 2t + 1 sites, so the 1/(n-1) normalization over j != k becomes 1/t over j > k
    t = (hi - lo) // 2
    return kernels.l1_offdiag_sum(state.up, state.down, lo, hi) / t


def gram_matrix(state: WalkerState) -> np.ndarray:
    """2x2 coin overlap ``G[s, s'] = sum_x conj(psi_s(x)) psi_s'(x)``."""
    u, d = state.up, state.down
    off = np.vdot(u, d)
    return np.array(
        [[np.vdot(u, u), off], [off.conjugate(), np.vdot(d, d)]], dtype=np.complex128
    )


def hermitian_2x2_eigenvalues(g: np.ndarray) -> tuple[float, float]:
    """Eigenvalues of a 2x2 Hermitian matrix, larger first."""
    a, d = g[0, 0].real, g[1, 1].real
    mean = 0.5 * (a + d)
    radius = math.hypot(0.5 * (a - d), abs(g[0, 1]))
    return mean + radius, mean - radius


def entropy_of_spectrum(eigenvalues) -> float:
    """``-sum lam ln lam`` with ``0 ln 0 = 0``.

    Eigenvalues are clipped to [0, 1] first; a negative eigenvalue larger
    in magnitude than 1e-9 raises :class:`ConsistencyError`.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size and lam.min() < -_EIGEN_NEGATIVE_TOL:
        raise ConsistencyError(f"density matrix has eigenvalue {lam.min()} < 0")
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log(lam)))


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)))


def relative_entropy_coherence(state: WalkerState) -> float:
    """Entropy of the dephased state minus the entropy of the state."""
    diagonal = shannon_entropy(probability_distribution(state).p)
    mixed = entropy_of_spectrum(hermitian_2x2_eigenvalues(gram_matrix(state)))
    return _entropy_gap(diagonal, mixed)


def _entropy_gap(diagonal: float, mixed: float) -> float:
    value = diagonal - mixed
    if value < 0.0:
        if value < -_ENTROPY_NEGATIVE_TOL:
            raise ConsistencyError(f"negative relative entropy of coherence {value}")
        return 0.0
    return value


def l1_coherence_of_matrix(rho) -> float:
    """``1/(n-1) * sum_{j != k} |rho(j, k)|`` for any n x n density matrix."""
    rho = getattr(rho, "matrix", rho)
    n = rho.shape[0]
    if n < 2:
        return 0.0
    mag = np.abs(rho)
    return float((mag.sum() - np.trace(mag)) / (n - 1))


def relative_entropy_of_matrix(rho) -> float:
    """Relative entropy of coherence of a density matrix by full diagonalization."""
    rho = getattr(rho, "matrix", rho)
    diagonal = shannon_entropy(np.real(np.diag(rho)))
    mixed = entropy_of_spectrum(np.linalg.eigvalsh(rho))
    return _entropy_gap(diagonal, mixed)


class CoherenceRecord(NamedTuple):
    step: int
    c_l1: float
    c_re: float


def coherence_series(trajectory) -> list[CoherenceRecord]:
    """One record per step ``1 .. T`` of a trajectory that recorded l1 and re."""
    missing = {"l1", "re"} - set(trajectory.series)
    if missing:
        raise ValidationError(
            f"trajectory did not record {sorted(missing)}; pass record=('l1', 're', ...)"
        )
    l1 = trajectory.series["l1"]
    re = trajectory.series["re"]
    return [
        CoherenceRecord(t, float(l1[t]), float(re[t]))
        for t in range(1, trajectory.steps + 1)
    ]
