"""Two-qubit Pauli-correlation algebra and the phase-gate state pair.

A two-qubit state is represented by the 4x4 real matrix
R[i, j] = tr(rho sigma_i (x) sigma_j) with sigma_0 = 1.  The controlled
phase gate diag(1, 1, 1, -1) swaps R[1,0]<->R[1,3], R[0,1]<->R[3,1] and
R[1,1]<->R[2,2] under conjugation.  Choosing those first four entries
equal makes the swap invisible except for R[1,1]<->R[2,2], which yields a
one-parameter family rho(r): positive for |r| <= 3/8, equal to its own
partial transpose (hence separable), while its gate image rho'(r) shares
spectrum and reductions yet is entangled for sqrt(3)/8 < |r| <= 3/8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .criteria import DEFAULT_ALPHA_GRID, CriterionReport, criterion_report
from .linalg import (
    DEFAULT_TOL,
    BipartiteState,
    LinalgError,
    hermitian_eig,
    kron,
    partial_trace,
    partial_transpose,
)

#: rho(r) is a valid state exactly for |r| <= 3/8.
POSITIVITY_BOUND = 3.0 / 8.0

#: rho'(r) is entangled exactly for |r| beyond sqrt(3)/8.
ENTANGLEMENT_THRESHOLD = math.sqrt(3.0) / 8.0

#: Grace band on the positivity bound so float noise in r does not trip
#: the parameter gate.
_R_BAND = 1e-9

_PAULIS = (
    np.eye(2, dtype=np.complex128),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
)
for _m in _PAULIS:
    _m.setflags(write=False)


def pauli(i: int) -> np.ndarray:
    """Pauli matrix sigma_i for i in {0, 1, 2, 3}, sigma_0 = identity."""
    if i not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be 0..3, got {i}")
    return _PAULIS[i]


def r_matrix(state: BipartiteState) -> np.ndarray:
    """Pauli correlation matrix R[i, j] = tr(rho sigma_i (x) sigma_j)."""
    if state.dim_a != 2 or state.dim_b != 2:
        raise ValueError("R-matrix is defined for two-qubit states only")
    r = np.empty((4, 4), dtype=np.float64)
    for i in range(4):
        for j in range(4):
            op = kron(_PAULIS[i], _PAULIS[j])
            r[i, j] = float(np.real(np.trace(state.matrix @ op)))
    return r


def rho_from_r(r_mat: np.ndarray) -> np.ndarray:
    """Matrix (1/4) sum_ij R[i,j] sigma_i (x) sigma_j.

    Inverse of :func:`r_matrix` on valid states; for arbitrary R the
    result is Hermitian with unit trace but positivity is not guaranteed
    and must be checked by the caller.
    """
    r = np.asarray(r_mat, dtype=np.float64)
    if r.shape != (4, 4):
        raise ValueError(f"R must be 4x4, got shape {r.shape}")
    if abs(r[0, 0] - 1.0) > 1e-12:
        raise ValueError(f"R[0, 0] must be 1 (normalization), got {r[0, 0]}")
    rho = np.zeros((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            if r[i, j] != 0.0:
                rho += r[i, j] * kron(_PAULIS[i], _PAULIS[j])
    return rho / 4.0


def phase_gate() -> np.ndarray:
    """Controlled phase gate |0><0| (x) 1 + |1><1| (x) sigma_3
    = diag(1, 1, 1, -1); unitary and self-inverse."""
    return np.diag([1.0, 1.0, 1.0, -1.0]).astype(np.complex128)


def family_r_matrix(r: float, transformed: bool = False) -> np.ndarray:
    """Correlation matrix of the phase-gate pair at parameter r.

    The plain member has R[0,1] = R[1,0] = R[1,3] = R[3,1] = r and
    R[1,1] = 1/2; the transformed member carries the weight on R[2,2]
    instead.  No positivity gate is applied here, so the matrix can be
    probed past the 3/8 bound (e.g. to bisect the boundary).
    """
    m = np.zeros((4, 4), dtype=np.float64)
    m[0, 0] = 1.0
    m[0, 1] = m[1, 0] = m[1, 3] = m[3, 1] = r
    if transformed:
        m[2, 2] = 0.5
    else:
        m[1, 1] = 0.5
    return m


def _check_family_parameter(r: float) -> None:
    if abs(r) > POSITIVITY_BOUND + _R_BAND:
        raise ValueError(
            f"|r| = {abs(r)} exceeds the positivity bound 3/8 = {POSITIVITY_BOUND}")


def family_state(r: float, tol: float = DEFAULT_TOL) -> BipartiteState:
    """The separable member rho(r) of the phase-gate pair.

    Correlation entries R[0,1] = R[1,0] = R[1,3] = R[3,1] = r and
    R[1,1] = 1/2.  Having no sigma_2 component it equals its own partial
    transpose exactly, hence is separable on the whole valid range.
    """
    _check_family_parameter(r)
    return BipartiteState(rho_from_r(family_r_matrix(r)), 2, 2, tol)


def family_transformed(r: float, tol: float = DEFAULT_TOL) -> BipartiteState:
    """The gate image rho'(r) = U rho(r) U^dag of the phase-gate pair.

    Computed both by conjugation and from the swapped correlation matrix
    (R[1,1] -> 0, R[2,2] -> 1/2); the two routes must agree to 1e-12,
    which pins down the sign conventions.  Shares spectrum and reductions
    with rho(r) but is entangled for |r| > sqrt(3)/8.
    """
    _check_family_parameter(r)
    u = phase_gate()
    conjugated = u @ rho_from_r(family_r_matrix(r)) @ u.conj().T
    swapped = rho_from_r(family_r_matrix(r, transformed=True))
    gap = float(np.max(np.abs(conjugated - swapped)))
    if gap > 1e-12:
        raise LinalgError(
            f"phase-gate conjugation and R-swap routes disagree by {gap:.3e}")
    return BipartiteState(conjugated, 2, 2, tol)


def det_partial_transpose(state: BipartiteState) -> float:
    """Determinant of the partial transpose, as the product of its
    eigenvalues.  A negative value certifies entanglement for two qubits."""
    if state.dim_a != 2 or state.dim_b != 2:
        raise ValueError("defined for two-qubit states only")
    vals = hermitian_eig(partial_transpose(state), state.tol).spectrum.values
    return float(np.prod(vals))


@dataclass(frozen=True)
class PairAudit:
    """Side-by-side criterion reports for rho(r) and rho'(r).

    ``spectrum_distance`` and ``reduction_distance`` confirm the pair is
    isospectral with identical reductions; the audit raises if either
    exceeds 1e-10.
    """

    r: float
    plain: CriterionReport
    transformed: CriterionReport
    spectrum_distance: float
    reduction_distance: float
    det_pt_plain: float
    det_pt_transformed: float


def qubit_pair_audit(r: float,
                     alphas: Iterable[float] = DEFAULT_ALPHA_GRID,
                     tol: float = DEFAULT_TOL) -> PairAudit:
    """Evaluate all criteria on the phase-gate pair at parameter r."""
    plain = family_state(r, tol)
    transformed = family_transformed(r, tol)

    spectrum_distance = float(np.max(np.abs(
        plain.spectrum.values - transformed.spectrum.values)))
    reduction_distance = 0.0
    for trace_out in ("A", "B"):
        gap = np.max(np.abs(partial_trace(plain, trace_out)
                            - partial_trace(transformed, trace_out)))
        reduction_distance = max(reduction_distance, float(gap))
    if spectrum_distance > 1e-10 or reduction_distance > 1e-10:
        raise LinalgError(
            f"phase-gate pair at r = {r} is not isospectral with equal "
            f"reductions: spectrum gap {spectrum_distance:.3e}, "
            f"reduction gap {reduction_distance:.3e}")

    return PairAudit(
        r=r,
        plain=criterion_report(plain, alphas),
        transformed=criterion_report(transformed, alphas),
        spectrum_distance=spectrum_distance,
        reduction_distance=reduction_distance,
        det_pt_plain=det_partial_transpose(plain),
        det_pt_transformed=det_partial_transpose(transformed),
    )
