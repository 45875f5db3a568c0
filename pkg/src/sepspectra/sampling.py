"""Random state and operator samplers used by the test harnesses.

Pure states are complex standard normal vectors, normalized.  Mixed
states arise by tracing an ancilla of equal dimension out of a random
pure state (the induced measure, almost surely full rank).  Separable
samples are uniform mixtures of 2 * dA * dB random product pure states.
Unitaries come from two-pass Gram-Schmidt on a complex Gaussian matrix,
which keeps the kernel dependency-free.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import DEFAULT_TOL, BipartiteState, kron


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Normalized complex Gaussian vector."""
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / math.sqrt(float(np.real(np.vdot(vec, vec))))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Gaussian Hermitian matrix (A + A^dag) / 2."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via Gram-Schmidt on a Ginibre matrix.

    Orthogonalization runs twice per column, which restores orthogonality
    to machine precision at the dimensions used here.
    """
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q = g.astype(np.complex128)
    for j in range(dim):
        for _ in range(2):
            for i in range(j):
                q[:, j] -= np.vdot(q[:, i], q[:, j]) * q[:, i]
        q[:, j] /= math.sqrt(float(np.real(np.vdot(q[:, j], q[:, j]))))
    return q


def random_mixed_state(dim_a: int, dim_b: int, rng: np.random.Generator,
                       tol: float = DEFAULT_TOL) -> BipartiteState:
    """Induced-measure mixed state: ancilla of dimension dA*dB traced out
    of a random pure state."""
    n = dim_a * dim_b
    psi = random_pure(n * n, rng).reshape(n, n)
    rho = psi @ psi.conj().T
    rho = (rho + rho.conj().T) / 2.0
    return BipartiteState(rho, dim_a, dim_b, tol)


def random_product_pure(dim_a: int, dim_b: int,
                        rng: np.random.Generator) -> np.ndarray:
    """Random product pure state vector."""
    return kron(random_pure(dim_a, rng).reshape(-1, 1),
                random_pure(dim_b, rng).reshape(-1, 1)).reshape(-1)


def random_separable_state(dim_a: int, dim_b: int, rng: np.random.Generator,
                           tol: float = DEFAULT_TOL) -> BipartiteState:
    """Uniform mixture of 2 * dA * dB random product pure states."""
    n_terms = 2 * dim_a * dim_b
    n = dim_a * dim_b
    rho = np.zeros((n, n), dtype=np.complex128)
    for _ in range(n_terms):
        psi = random_product_pure(dim_a, dim_b, rng)
        rho += np.outer(psi, psi.conj())
    rho /= n_terms
    rho = (rho + rho.conj().T) / 2.0
    return BipartiteState(rho, dim_a, dim_b, tol)
