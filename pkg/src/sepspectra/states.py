"""Constructors for the named states used throughout the package.

Covers the Werner family on C^d x C^d, the maximally entangled basis and
the separable projectors built from it, isospectral separable counterparts
for states whose eigenvalue multiplicities are multiples of d, and the
low-rank two-qubit mixture whose conditional Tsallis entropies vanish at
order 0 and infinity but not at order 2.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

import numpy as np

from .linalg import DEFAULT_TOL, BipartiteState, kron

#: Eigenvalue blocks as (eigenvalue, multiplicity) pairs; multiplicities
#: must be multiples of d and sum to d*d, weighted eigenvalues sum to 1.
SpectrumBlocks = Sequence[Tuple[float, int]]


def flip_operator(d: int) -> np.ndarray:
    """Swap operator F|i,j> = |j,i> on C^d x C^d."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    f = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def symmetric_projector(d: int) -> np.ndarray:
    """Projector (1 + F)/2 onto the symmetric subspace; trace (d^2+d)/2."""
    return (np.eye(d * d, dtype=np.complex128) + flip_operator(d)) / 2.0


def antisymmetric_projector(d: int) -> np.ndarray:
    """Projector (1 - F)/2 onto the antisymmetric subspace; trace (d^2-d)/2."""
    return (np.eye(d * d, dtype=np.complex128) - flip_operator(d)) / 2.0


def werner(d: int, p: float, tol: float = DEFAULT_TOL) -> BipartiteState:
    """Werner state (1-p) P+/r+ + p P-/r- with r+- = (d^2 +- d)/2.

    Commutes with every U (x) U, has eigenvalues (1-p)/r+ and p/r- with
    multiplicities r+ and r-, both reductions equal to 1/d, and is
    entangled exactly for p > 1/2 in every dimension.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter p must lie in [0, 1], got {p}")
    r_plus = d * (d + 1) // 2
    r_minus = d * (d - 1) // 2
    rho = ((1.0 - p) / r_plus * symmetric_projector(d)
           + p / r_minus * antisymmetric_projector(d))
    return BipartiteState(rho, d, d, tol)


def me_basis_state(d: int, j: int, k: int) -> np.ndarray:
    """Maximally entangled basis vector, 1-based indices j, k in {1..d}.

    (1/sqrt d) sum_n exp(2 pi i j n / d) |n, n+k mod d>.  The d^2 vectors
    form an orthonormal basis and every one has reduction 1/d.
    """
    if not (1 <= j <= d and 1 <= k <= d):
        raise ValueError(f"indices must lie in 1..{d}, got j={j}, k={k}")
    vec = np.zeros(d * d, dtype=np.complex128)
    for n in range(d):
        vec[n * d + (n + k) % d] = np.exp(2j * math.pi * j * n / d)
    return vec / math.sqrt(d)


def separable_projector(d: int, k: int) -> np.ndarray:
    """Rank-d projector P_k = sum_n |n><n| (x) |n+k><n+k| (shift mod d).

    Equals the sum of the maximally entangled basis projectors sharing the
    shift index k, hence projects onto a separable subspace.  The d
    projectors are mutually orthogonal and sum to the identity.
    """
    if not 1 <= k <= d:
        raise ValueError(f"shift index must lie in 1..{d}, got {k}")
    p = np.zeros((d * d, d * d), dtype=np.complex128)
    for n in range(d):
        idx = n * d + (n + k) % d
        p[idx, idx] = 1.0
    return p


def isospectral_counterpart(blocks: SpectrumBlocks, d: int,
                            tol: float = DEFAULT_TOL) -> BipartiteState:
    """Separable state with a prescribed spectrum and reductions 1/d.

    Each (eigenvalue, multiplicity) block is realized on multiplicity/d
    of the separable projectors P_k, consumed in ascending k across the
    blocks in input order.  The result is diagonal in the product basis,
    has exactly the requested spectrum, and passes the PPT and reduction
    criteria by construction.
    """
    blocks = list(blocks)
    total_mult = 0
    weighted = 0.0
    for value, mult in blocks:
        if mult <= 0 or mult % d != 0:
            raise ValueError(
                f"multiplicity {mult} is not a positive multiple of d = {d}")
        if value < -tol:
            raise ValueError(f"eigenvalue {value} is negative")
        total_mult += mult
        weighted += value * mult
    if total_mult > d * d:
        raise ValueError(
            f"blocks need {total_mult // d} projectors but only {d} exist")
    if total_mult != d * d:
        raise ValueError(
            f"multiplicities must sum to d^2 = {d * d}, got {total_mult}")
    if abs(weighted - 1.0) > tol:
        raise ValueError(f"spectrum is not normalized: sums to {weighted:.12g}")

    rho = np.zeros((d * d, d * d), dtype=np.complex128)
    k = 1
    for value, mult in blocks:
        for _ in range(mult // d):
            rho += value * separable_projector(d, k)
            k += 1
    return BipartiteState(rho, d, d, tol)


def werner_counterpart(d: int, p: float, tol: float = DEFAULT_TOL) -> BipartiteState:
    """Separable state with the spectrum and reductions of werner(d, p).

    Requires odd d: the Werner multiplicities r+- = (d^2 +- d)/2 are
    multiples of d only then.  For d = 2 no such counterpart exists (the
    spectrum plus maximally chaotic reductions already decide separability
    for two qubits), so even d raises instead of falling back.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter p must lie in [0, 1], got {p}")
    if d % 2 == 0:
        raise ValueError(
            f"d must be odd: r- = {d * (d - 1) // 2} is not a multiple of {d}")
    r_plus = d * (d + 1) // 2
    r_minus = d * (d - 1) // 2
    blocks = [((1.0 - p) / r_plus, r_plus), (p / r_minus, r_minus)]
    return isospectral_counterpart(blocks, d, tol)


def rank_counterexample(tol: float = DEFAULT_TOL) -> BipartiteState:
    """Two-qubit mixture (|Phi+><Phi+| + |01><01|) / 2.

    Its reduction has eigenvalues {1/4, 3/4}; the conditional Tsallis
    entropy vanishes at orders 0 and infinity yet equals 1/5 at order 2,
    which rules out monotonicity of the entropic family in the order.
    """
    phi = np.zeros(4, dtype=np.complex128)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    e01 = np.zeros(4, dtype=np.complex128)
    e01[1] = 1.0
    rho = (np.outer(phi, phi.conj()) + np.outer(e01, e01.conj())) / 2.0
    return BipartiteState(rho, 2, 2, tol)


def maximally_entangled_state(d: int) -> np.ndarray:
    """Unit vector (1/sqrt d) sum_n |n, n>."""
    vec = np.zeros(d * d, dtype=np.complex128)
    for n in range(d):
        vec[n * d + n] = 1.0
    return vec / math.sqrt(d)


def pure_state(psi: np.ndarray, dim_a: int, dim_b: int,
               tol: float = DEFAULT_TOL) -> BipartiteState:
    """Projector |psi><psi| wrapped as a validated bipartite state."""
    vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return BipartiteState(np.outer(vec, vec.conj()), dim_a, dim_b, tol)


def product_state(rho_a: np.ndarray, rho_b: np.ndarray,
                  tol: float = DEFAULT_TOL) -> BipartiteState:
    """Tensor product rho_a (x) rho_b as a validated bipartite state."""
    a = np.asarray(rho_a, dtype=np.complex128)
    b = np.asarray(rho_b, dtype=np.complex128)
    return BipartiteState(kron(a, b), a.shape[0], b.shape[0], tol)
