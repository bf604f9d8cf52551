"""Construction of orthonormal maximally-entangled families and their
unextendibility certificates.

Two families are provided: the shift-phase family of d^2 states
``(U_nm (x) I)|Phi>`` for any 2 <= d < d', and two closed-form complete bases
of C^2 (x) C^3 whose first four members are maximally entangled and whose
last two are product states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError
from .linalg import hermitian_eig, partial_trace
from .states import (
    BipartiteState,
    apply_local,
    is_maximally_entangled,
    standard_mes,
    weyl_operator,
)

__all__ = [
    "BasisSet",
    "CertificateReport",
    "build_weyl_umeb",
    "build_c23_first",
    "build_c23_second",
    "gram_matrix",
    "complement_projector",
    "support_rank_certificate",
    "overlap_constraint_matrix",
    "C3_UNBIASED",
]

_SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)

#: Orthonormal basis of C^3 (rows) in which every component has magnitude
#: 1/sqrt(3), i.e. a basis unbiased to the computational one.  The second
#: 2 (x) 3 construction pairs the A-side levels with these vectors.
C3_UNBIASED = (1.0 / np.sqrt(3)) * np.array(
    [
        [1.0, (1.0 + np.sqrt(3) * 1j) / 2, 1.0],
        [(-np.sqrt(3) + 1j) / 2, 1j, -1j],
        [-1.0, 1.0, (1.0 + np.sqrt(3) * 1j) / 2],
    ],
    dtype=complex,
)


@dataclass(eq=False)
class BasisSet:
    """Ordered collection of bipartite states sharing one (d, dprime) space.

    Only structural consistency is enforced on construction (shared
    dimensions, matching label/flag lengths); orthonormality and the
    correctness of the per-state entanglement flags are semantic invariants
    checked by :meth:`validate`, so that deliberately broken sets can still be
    represented and measured (e.g. by :func:`gram_matrix`).

    Parameters
    ----------
    d, dprime : int
        Subsystem dimensions, shared by every member.
    states : list of BipartiteState
        The members, in contractual order.
    me_flags : list of bool
        Per-member flag: maximally entangled member or auxiliary product
        member.
    labels : list of str, optional
        Short display names, parallel to ``states``.
    """

    d: int
    dprime: int
    states: list
    me_flags: list
    labels: list | None = None

    def __post_init__(self) -> None:
        for s in self.states:
            if (s.d, s.dprime) != (self.d, self.dprime):
                raise ContractViolationError(
                    f"member dimensions ({s.d}, {s.dprime}) != ({self.d}, {self.dprime})"
                )
        if len(self.me_flags) != len(self.states):
            raise ContractViolationError("me_flags length does not match states")
        if self.labels is not None and len(self.labels) != len(self.states):
            raise ContractViolationError("labels length does not match states")
        self.me_flags = [bool(f) for f in self.me_flags]

    def __len__(self) -> int:
        return len(self.states)

    def me_members(self) -> list:
        """The maximally-entangled-flagged members, in order."""
        return [s for s, f in zip(self.states, self.me_flags) if f]

    def validate(self, gram_tol: float = 1e-9, me_tol: float = 1e-8) -> None:
        """Check orthonormality and flag consistency; raise on violation."""
        if self.states:
            G = gram_matrix(self)
            dev = np.abs(G - np.eye(len(self.states))).max()
            if dev > gram_tol:
                raise ContractViolationError(
                    f"basis is not orthonormal: Gram deviation {dev:.3e} > {gram_tol:g}"
                )
        for k, (s, f) in enumerate(zip(self.states, self.me_flags)):
            flag, _ = is_maximally_entangled(s, me_tol)
            if flag != f:
                raise ContractViolationError(
                    f"me_flags[{k}] = {f} inconsistent with state (measured {flag})"
                )


@dataclass(eq=False)
class CertificateReport:
    """Outcome of an unextendibility analysis of a basis' complement.

    ``b_support_rank`` and ``a_support_rank`` are the ranks of the B-side and
    A-side marginals of the complement projector; any state of the complement
    has Schmidt rank at most ``schmidt_rank_bound = min(d, a_rank, b_rank)``.
    A bound below d proves no maximally entangled state fits, hence
    ``unextendible``.  ``witness`` is present exactly when the verdict is
    ``extendible``; ``search_best_F`` records the best numeric overlap when a
    search ran without finding a witness.
    """

    method: str
    complement_dimension: int
    b_support_rank: int
    a_support_rank: int
    schmidt_rank_bound: int
    verdict: str
    witness: BipartiteState | None = None
    search_best_F: float | None = None


def build_weyl_umeb(d: int, dprime: int) -> BasisSet:
    """The d^2 orthonormal maximally entangled states ``(U_nm (x) I)|Phi>``.

    Members are ordered by (n, m) lexicographic and labelled ``"nm"``.  For
    d'/2 < d < d' this set is unextendible; for d <= d'/2 it is constructed
    all the same but its complement does contain maximally entangled states.
    """
    if not 2 <= d < dprime:
        raise ContractViolationError(f"need 2 <= d < dprime, got ({d}, {dprime})")
    mes = standard_mes(d, dprime)
    eyeB = np.eye(dprime, dtype=complex)
    states, labels = [], []
    for n in range(d):
        for m in range(d):
            states.append(apply_local(mes, weyl_operator(d, n, m), eyeB))
            labels.append(f"{n}{m}")
    return BasisSet(d, dprime, states, me_flags=[True] * (d * d), labels=labels)


def build_c23_first() -> BasisSet:
    """First complete 2 (x) 3 basis: four Pauli-rotated Bell-type members on
    the upper 2 x 2 block plus two product members on the last B level."""
    phi0 = standard_mes(2, 3)
    eye3 = np.eye(3, dtype=complex)
    states = [phi0] + [
        apply_local(phi0, sigma, eye3) for sigma in (_SIGMA_1, _SIGMA_2, _SIGMA_3)
    ]
    aux0 = np.zeros(6, dtype=complex)
    aux0[0 * 3 + 2] = 0.5
    aux0[1 * 3 + 2] = np.sqrt(3) / 2
    aux1 = np.zeros(6, dtype=complex)
    aux1[0 * 3 + 2] = np.sqrt(3) / 2
    aux1[1 * 3 + 2] = -0.5
    states.append(BipartiteState(2, 3, aux0))
    states.append(BipartiteState(2, 3, aux1))
    return BasisSet(
        2,
        3,
        states,
        me_flags=[True] * 4 + [False] * 2,
        labels=["me0", "me1", "me2", "me3", "aux0", "aux1"],
    )


def build_c23_second() -> BasisSet:
    """Second complete 2 (x) 3 basis, built on the :data:`C3_UNBIASED` B-side
    basis; mutually unbiased to the first one as a basis of C^6."""
    xp, yp, zp = C3_UNBIASED
    psi0 = np.concatenate([xp, yp]) / np.sqrt(2)
    eye3 = np.eye(3, dtype=complex)
    base = BipartiteState(2, 3, psi0)
    states = [base] + [
        apply_local(base, sigma, eye3) for sigma in (_SIGMA_1, _SIGMA_2, _SIGMA_3)
    ]
    a = (1.0 + np.sqrt(3) * 1j) / 2
    b = (np.sqrt(3) - 1j) / 2
    aux0 = np.concatenate([a * zp, b * zp]) / np.sqrt(2)
    aux1 = np.concatenate([b * zp, a * zp]) / np.sqrt(2)
    states.append(BipartiteState(2, 3, aux0))
    states.append(BipartiteState(2, 3, aux1))
    return BasisSet(
        2,
        3,
        states,
        me_flags=[True] * 4 + [False] * 2,
        labels=["me0", "me1", "me2", "me3", "aux0", "aux1"],
    )


def gram_matrix(basis: BasisSet) -> np.ndarray:
    """Matrix of pairwise inner products ``G[i, j] = <state_i|state_j>``."""
    if not basis.states:
        raise ContractViolationError("gram_matrix needs a nonempty basis")
    A = np.array([s.amplitudes for s in basis.states])
    return A.conj() @ A.T


def complement_projector(basis: BasisSet, me_only: bool = True) -> np.ndarray:
    """Projector onto the orthogonal complement of the chosen members.

    By default only the maximally-entangled-flagged members are subtracted
    (their span is what unextendibility is about); ``me_only=False`` uses all
    members.  Requires the selected members to be orthonormal.
    """
    members = basis.me_members() if me_only else list(basis.states)
    n = basis.d * basis.dprime
    P = np.eye(n, dtype=complex)
    if members:
        A = np.array([s.amplitudes for s in members])
        gram_dev = np.abs(A.conj() @ A.T - np.eye(len(members))).max()
        if gram_dev > 1e-6:
            raise ContractViolationError(
                f"selected members are not orthonormal (deviation {gram_dev:.3e})"
            )
        P -= A.T @ A.conj()
    return P


def _rank_at(H: np.ndarray, threshold: float = 1e-10) -> int:
    vals, _ = hermitian_eig(H)
    return int((vals > threshold).sum())


def support_rank_certificate(basis: BasisSet) -> CertificateReport:
    """Analytic unextendibility certificate from the complement's marginals.

    Every state in the range of the complement projector P has Schmidt rank
    at most ``min(rank Tr_B P, rank Tr_A P)``; when that bound is below d, no
    maximally entangled state (Schmidt rank d) fits and the basis is
    certified unextendible.  Otherwise the verdict is ``inconclusive`` and a
    numeric search must decide.
    """
    for k, (s, f) in enumerate(zip(basis.states, basis.me_flags)):
        if f and not is_maximally_entangled(s, 1e-6)[0]:
            raise ContractViolationError(
                f"member {k} is flagged maximally entangled but is not"
            )
    P = complement_projector(basis)
    comp_dim = int(round(np.trace(P).real))
    r_b = _rank_at(partial_trace(P, basis.d, basis.dprime, side="A"))
    r_a = _rank_at(partial_trace(P, basis.d, basis.dprime, side="B"))
    bound = min(basis.d, r_a, r_b)
    verdict = "unextendible" if bound < basis.d else "inconclusive"
    return CertificateReport(
        method="support-rank",
        complement_dimension=comp_dim,
        b_support_rank=r_b,
        a_support_rank=r_a,
        schmidt_rank_bound=bound,
        verdict=verdict,
    )


def overlap_constraint_matrix(U, lambdas) -> tuple[np.ndarray, float]:
    """The d^2 x d^2 coefficient matrix of the orthogonality constraints that
    a candidate extension state must satisfy, with its determinant magnitude.

    A candidate with Schmidt data (U, V, lambda) is orthogonal to all d^2
    shift-phase family members iff M v = 0, where v collects the entries of
    the upper d x d block of V row-major and M factors as

        (C (x) I_d) . blockdiag(I, A, ..., A^{d-1}) . (I_d (x) U) . (I_d (x) W)

    with C[r, c] = zeta^{-rc}, A the cyclic shift, and W = diag(sqrt(lambda)).
    Returns ``(M, det_magnitude)`` where the magnitude is computed from the
    factor determinants, ``d^{d^2/2} * prod(lambda)^{d/2} * |det U|^d`` — a
    strictly positive number, which is what rules the extension out.
    """
    U = np.asarray(U, dtype=complex)
    d = U.shape[0]
    if U.shape != (d, d):
        raise ContractViolationError(f"U must be square, got {U.shape}")
    if np.abs(U.conj().T @ U - np.eye(d)).max() > 1e-9:
        raise ContractViolationError("U is not unitary within 1e-9")
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.shape != (d,):
        raise ContractViolationError(f"lambdas must have length d = {d}")
    if lambdas.min() <= 0 or abs(lambdas.sum() - 1.0) > 1e-9:
        raise ContractViolationError("lambdas must be positive and sum to 1")

    zeta = np.exp(2j * np.pi / d)
    C = np.array([[zeta ** (-r * c) for c in range(d)] for r in range(d)])
    A = np.zeros((d, d), dtype=complex)
    for i in range(d):
        A[i, (i + 1) % d] = 1.0
    shift_blocks = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        shift_blocks[k * d : (k + 1) * d, k * d : (k + 1) * d] = np.linalg.matrix_power(A, k)
    W = np.diag(np.sqrt(lambdas))
    M = np.kron(C, np.eye(d)) @ shift_blocks @ np.kron(np.eye(d), U @ W)
    det_magnitude = float(
        d ** (d * d / 2)
        * np.prod(lambdas) ** (d / 2)
        * abs(np.linalg.det(U)) ** d
    )
    return M, det_magnitude
