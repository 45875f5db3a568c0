"""Dense complex linear algebra kernel.

Everything in this package runs on plain ``numpy`` arrays of complex128.
The module provides the tensor/partial operations needed for bipartite
density matrices plus a self-contained cyclic Jacobi eigensolver for
Hermitian matrices, so no external eigensolver is required at runtime.

Index convention (shared by all modules): subsystem A is the slower
(leftmost) tensor factor in row-major layout, i.e. the product basis
vector |i, k> lives at index ``i * dim_b + k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

#: Default absolute tolerance for Hermiticity / positivity / rank decisions,
#: assuming trace-normalized operators.  Double precision gives ~1e-15 per
#: operation; 1e-10 absorbs accumulation at the dimensions used here.
DEFAULT_TOL = 1e-10

#: Cap on Jacobi sweeps before giving up.
MAX_JACOBI_SWEEPS = 100

#: Module-wide alias: matrices are dense, square, complex128 numpy arrays.
ComplexMatrix = np.ndarray


class LinalgError(Exception):
    """Numerical kernel failure."""


class ConvergenceError(LinalgError):
    """The Jacobi iteration did not converge within the sweep cap."""


class InvalidStateError(ValueError):
    """A matrix failed density-matrix validation."""


def _as_square_complex(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise LinalgError(f"matrix must be square, got shape {m.shape}")
    return m


def _frobenius(matrix: np.ndarray) -> float:
    return math.sqrt(float(np.sum(np.abs(matrix) ** 2)))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product with A as the slower factor.

    ``kron(a, b)[i1 * rb + i2, j1 * cb + j2] == a[i1, j1] * b[i2, j2]``.
    """
    return np.kron(np.asarray(a, dtype=np.complex128),
                   np.asarray(b, dtype=np.complex128))


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted ascending, with the tolerance they were
    computed under."""

    values: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1:
            raise LinalgError("spectrum values must be a 1-d sequence")
        if np.any(np.diff(vals) < 0):
            raise LinalgError("spectrum values must be sorted ascending")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.tol <= 0:
            raise LinalgError("tolerance must be positive")

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])

    def sum(self) -> float:
        return float(np.sum(self.values))

    def rank(self) -> int:
        """Number of eigenvalues above the tolerance."""
        return int(np.count_nonzero(self.values > self.tol))


class EigResult(NamedTuple):
    spectrum: Spectrum
    vectors: np.ndarray


def hermitian_eig(matrix: np.ndarray, tol: float = DEFAULT_TOL,
                  max_sweeps: int = MAX_JACOBI_SWEEPS) -> EigResult:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each rotation diagonalizes one 2x2 pivot block exactly; sweeps repeat
    until the off-diagonal Frobenius mass falls below ``0.1 * tol * |M|_F``.
    Residuals ``|M v - w v|`` then stay below ``10 * tol * |M|_F`` per pair
    and the eigenvector columns are orthonormal to the same order.

    Parameters
    ----------
    matrix : array_like
        Square matrix, Hermitian within ``tol`` (relative to its norm).
    tol : float
        Tolerance context; also stored on the returned spectrum.

    Returns
    -------
    EigResult
        Ascending :class:`Spectrum` and the matching eigenvector columns.

    Raises
    ------
    LinalgError
        If the input is not Hermitian within tolerance.
    ConvergenceError
        If ``max_sweeps`` full sweeps do not reach the target.
    """
    m = _as_square_complex(matrix)
    n = m.shape[0]
    scale = _frobenius(m)
    defect = float(np.max(np.abs(m - m.conj().T))) if n else 0.0
    if defect > tol * max(1.0, scale):
        raise LinalgError(
            f"matrix is not Hermitian within tolerance: defect {defect:.3e}")

    a = (m + m.conj().T) / 2.0
    v = np.eye(n, dtype=np.complex128)
    if n <= 1 or scale == 0.0:
        w = np.diag(a).real.copy()
        return EigResult(Spectrum(np.sort(w), tol), v)

    # Skip threshold per pivot: if no pivot in a sweep exceeds it, the
    # off-diagonal Frobenius mass is already below 0.1 * tol * scale.
    skip = 0.1 * tol * scale / n
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                aapq = abs(apq)
                if aapq <= skip:
                    continue
                rotated = True
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / aapq
                tau = (aqq - app) / (2.0 * aapq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ph = phase.conjugate()
                g = np.array([[c, s], [-s * ph, c * ph]],
                             dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
        if not rotated:
            break
    else:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return EigResult(Spectrum(w[order], tol), np.ascontiguousarray(v[:, order]))


@dataclass(frozen=True)
class BipartiteState:
    """A validated density matrix on a dA x dB product space.

    Construction checks Hermiticity (max-entry defect <= tol), unit trace
    (within tol) and positive semidefiniteness (min eigenvalue >= -tol).
    The spectrum found during validation is kept on the instance since
    nearly every criterion needs it again.
    """

    matrix: np.ndarray
    dim_a: int
    dim_b: int
    tol: float = DEFAULT_TOL
    spectrum: Spectrum = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"matrix must be square, got shape {m.shape}")
        if self.dim_a < 1 or self.dim_b < 1:
            raise InvalidStateError("subsystem dimensions must be positive")
        if self.dim_a * self.dim_b != m.shape[0]:
            raise InvalidStateError(
                f"dimension mismatch: dA*dB = {self.dim_a * self.dim_b} "
                f"but matrix has size {m.shape[0]}")
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > self.tol:
            raise InvalidStateError(
                f"matrix is not Hermitian: max |M - M^dag| entry = {defect:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > self.tol:
            raise InvalidStateError(f"trace must be 1: got {tr.real:.12g}")
        eig = hermitian_eig(m, self.tol)
        if eig.spectrum.min < -self.tol:
            raise InvalidStateError(
                "matrix is not positive semidefinite: "
                f"min eigenvalue = {eig.spectrum.min:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "spectrum", eig.spectrum)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


def partial_trace(state: BipartiteState, trace_out: str = "B") -> np.ndarray:
    """Trace out one subsystem.

    ``trace_out="B"`` returns the dA x dA reduction
    ``rho_A[i, j] = sum_k <i,k| rho |j,k>``; ``trace_out="A"`` the dB x dB
    one.  The full trace is preserved.
    """
    da, db = state.dim_a, state.dim_b
    blocks = state.matrix.reshape(da, db, da, db)
    which = trace_out.upper()
    if which == "B":
        return np.einsum("ikjk->ij", blocks)
    if which == "A":
        return np.einsum("kikj->ij", blocks)
    raise ValueError(f"trace_out must be 'A' or 'B', got {trace_out!r}")


def partial_transpose(state: BipartiteState) -> np.ndarray:
    """Partial transpose on subsystem A: <kl| out |mn> = <ml| rho |kn>.

    Hermiticity and trace are preserved; applying it twice gives back the
    original matrix exactly.
    """
    da, db = state.dim_a, state.dim_b
    blocks = state.matrix.reshape(da, db, da, db)
    return np.ascontiguousarray(
        blocks.transpose(2, 1, 0, 3).reshape(da * db, da * db))


class PowerResult(NamedTuple):
    matrix: np.ndarray
    support_restricted: bool


def matrix_power(matrix: np.ndarray, alpha: float,
                 tol: float = DEFAULT_TOL) -> PowerResult:
    """Hermitian matrix power via eigendecomposition.

    The eigenvectors are unchanged; the eigenvalues are raised to ``alpha``
    with ``0 ** 0 := 0``, so the trace of the zeroth power is the rank.
    For ``alpha < 0`` the power is taken on the support only (eigenvalues
    below ``tol`` are dropped) and ``support_restricted`` reports whether
    that truncation happened.

    Raises
    ------
    ValueError
        If the input has an eigenvalue below ``-tol``.
    """
    eig = hermitian_eig(matrix, tol)
    vals = eig.spectrum.values
    if vals[0] < -tol:
        raise ValueError(
            f"matrix_power requires positive semidefinite input: "
            f"min eigenvalue = {float(vals[0]):.3e}")
    clamped = np.clip(vals, 0.0, None)
    restricted = False
    if alpha == 0.0:
        powered = (vals > tol).astype(np.float64)
    elif alpha < 0.0:
        support = vals > tol
        restricted = bool(np.any(~support))
        powered = np.zeros_like(clamped)
        powered[support] = clamped[support] ** alpha
    else:
        powered = clamped ** alpha
    v = eig.vectors
    return PowerResult((v * powered) @ v.conj().T, restricted)


def schmidt_coefficients(psi: np.ndarray, dim_a: int, dim_b: int,
                         tol: float = DEFAULT_TOL) -> np.ndarray:
    """Schmidt coefficients of a normalized pure state vector.

    Returns the eigenvalues of the A-side reduction of |psi><psi| that
    exceed ``tol``, in descending order.  They are nonnegative and sum
    to 1 up to the discarded tail.
    """
    vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if vec.size != dim_a * dim_b:
        raise ValueError(
            f"vector of length {vec.size} does not fit dimensions "
            f"({dim_a}, {dim_b})")
    norm2 = float(np.real(np.vdot(vec, vec)))
    if abs(norm2 - 1.0) > tol:
        raise ValueError(f"state vector is not normalized: <psi|psi> = {norm2:.12g}")
    m = vec.reshape(dim_a, dim_b)
    rho_a = m @ m.conj().T
    vals = hermitian_eig(rho_a, tol).spectrum.values
    kept = vals[vals > tol][::-1]
    return np.ascontiguousarray(kept)
