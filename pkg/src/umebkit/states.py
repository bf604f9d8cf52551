"""Bipartite pure states, Schmidt analysis, and the shift-phase operator family.

A state of C^d (x) C^dprime is stored as a flat amplitude vector with the
A-major index convention ``|i>|j'> -> i * dprime + j``.  By convention A is
the smaller subsystem (d <= dprime), so reshaping the amplitudes to a
d x dprime matrix makes the Schmidt decomposition literally the SVD.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError
from .linalg import svd

__all__ = [
    "BipartiteState",
    "SchmidtDecomposition",
    "reshape_to_matrix",
    "schmidt",
    "schmidt_rank",
    "is_maximally_entangled",
    "weyl_operator",
    "standard_mes",
    "apply_local",
]


@dataclass(eq=False)
class BipartiteState:
    """Unit vector in C^d (x) C^dprime with explicit subsystem dimensions.

    Parameters
    ----------
    d : int
        Dimension of subsystem A, at least 2.
    dprime : int
        Dimension of subsystem B, at least ``d``.
    amplitudes : array_like of complex, length ``d * dprime``
        Flat amplitude vector, index convention ``|i>|j'> -> i*dprime + j``.
    """

    d: int
    dprime: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ContractViolationError(f"d must be >= 2, got {self.d}")
        if self.dprime < self.d:
            raise ContractViolationError(
                f"dprime must be >= d, got d={self.d}, dprime={self.dprime}"
            )
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape[0] != self.d * self.dprime:
            raise ContractViolationError(
                f"amplitude length {amp.shape[0]} != d*dprime = {self.d * self.dprime}"
            )
        if not np.all(np.isfinite(amp)):
            raise ContractViolationError("amplitudes contain non-finite entries")
        if abs(np.linalg.norm(amp) - 1.0) > 1e-9:
            raise ContractViolationError(
                f"state norm {np.linalg.norm(amp):.12f} is not 1 within 1e-9"
            )
        self.amplitudes = amp


@dataclass(eq=False)
class SchmidtDecomposition:
    """Schmidt data of a bipartite state: coefficients and local vectors.

    ``coefficients`` are the d singular values of the reshaped state, sorted
    descending; ``left_vectors`` (d x d) and ``right_vectors`` (dprime x d)
    hold the corresponding local basis vectors as columns.
    """

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.coefficients, dtype=float)
        if abs((s**2).sum() - 1.0) > 1e-9:
            raise ContractViolationError("squared Schmidt coefficients do not sum to 1")
        for vecs in (self.left_vectors, self.right_vectors):
            gram = vecs.conj().T @ vecs
            if np.abs(gram - np.eye(gram.shape[0])).max() > 1e-10:
                raise ContractViolationError("Schmidt vectors are not orthonormal")
        self.coefficients = s


def reshape_to_matrix(psi: BipartiteState) -> np.ndarray:
    """Return the d x dprime matrix X with X[i, j] = amplitudes[i*dprime + j]."""
    return psi.amplitudes.reshape(psi.d, psi.dprime)


def schmidt(psi: BipartiteState) -> SchmidtDecomposition:
    """Schmidt decomposition of ``psi`` via the SVD of its reshaped matrix."""
    left, s, right_dagger = svd(reshape_to_matrix(psi))
    return SchmidtDecomposition(
        coefficients=s,
        left_vectors=left,
        right_vectors=right_dagger.conj().T,
    )


def schmidt_rank(psi: BipartiteState, tol: float = 1e-8) -> int:
    """Number of Schmidt coefficients exceeding ``tol``."""
    return int((schmidt(psi).coefficients > tol).sum())


def is_maximally_entangled(
    psi: BipartiteState, tol: float = 1e-8
) -> tuple[bool, float]:
    """Test whether every Schmidt coefficient equals 1/sqrt(d).

    Returns ``(flag, deviation)`` where ``deviation`` is the largest distance
    of any of the d coefficients from 1/sqrt(d) and ``flag`` is whether that
    deviation is within ``tol``.
    """
    s = schmidt(psi).coefficients
    deviation = float(np.abs(s - 1.0 / np.sqrt(psi.d)).max())
    return deviation <= tol, deviation


def weyl_operator(d: int, n: int, m: int) -> np.ndarray:
    """The d x d shift-phase unitary ``sum_k zeta^{n k} |k+m mod d><k|``.

    ``zeta = exp(2 pi i / d)``.  The d^2 operators obtained for
    ``0 <= n, m < d`` form a trace-orthogonal basis of the operator space and
    generalize the Pauli matrices (up to phases at d = 2).
    """
    if not (0 <= n < d and 0 <= m < d):
        raise ContractViolationError(f"indices (n, m) = ({n}, {m}) out of range for d = {d}")
    zeta = np.exp(2j * np.pi / d)
    U = np.zeros((d, d), dtype=complex)
    for k in range(d):
        U[(k + m) % d, k] = zeta ** (n * k)
    return U


def standard_mes(d: int, dprime: int) -> BipartiteState:
    """The canonical maximally entangled state ``sum_p |p>|p'> / sqrt(d)``."""
    if not 2 <= d <= dprime:
        raise ContractViolationError(f"need 2 <= d <= dprime, got ({d}, {dprime})")
    amp = np.zeros(d * dprime, dtype=complex)
    for p in range(d):
        amp[p * dprime + p] = 1.0 / np.sqrt(d)
    return BipartiteState(d, dprime, amp)


def _apply_local_unchecked(
    psi: BipartiteState, opA: np.ndarray, opB: np.ndarray
) -> np.ndarray:
    """Amplitudes of (opA (x) opB)|psi>, with no unitarity or norm checks."""
    X = opA @ reshape_to_matrix(psi) @ opB.T
    return X.reshape(-1)


def apply_local(psi: BipartiteState, opA, opB) -> BipartiteState:
    """Apply the product operator ``opA (x) opB`` to a state.

    Both factors must be unitary (checked at 1e-9) so the result is again a
    valid unit state.
    """
    opA = np.asarray(opA, dtype=complex)
    opB = np.asarray(opB, dtype=complex)
    if opA.shape != (psi.d, psi.d) or opB.shape != (psi.dprime, psi.dprime):
        raise ContractViolationError(
            f"operator shapes {opA.shape}, {opB.shape} do not match "
            f"({psi.d}, {psi.d}), ({psi.dprime}, {psi.dprime})"
        )
    for name, op in (("A", opA), ("B", opB)):
        dev = np.abs(op.conj().T @ op - np.eye(op.shape[0])).max()
        if dev > 1e-9:
            raise ContractViolationError(f"operator on side {name} is not unitary ({dev:.3e})")
    return BipartiteState(psi.d, psi.dprime, _apply_local_unchecked(psi, opA, opB))
