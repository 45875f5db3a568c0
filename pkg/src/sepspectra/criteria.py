"""Spectrum-based separability criteria.

All quantities here depend only on the spectrum of a state and of its
reduction: Renyi entropies, the entropic gap tr(rho_A^a) - tr(rho^a) and
its sign test, conditional Tsallis entropies, plus the two operator
criteria they are compared against (reduction and PPT) and the Horodecki
CHSH quantity for two qubits.

Eigenvalues at or below the tolerance are treated as exact zeros
throughout, so rank-type quantities are stable and fractional powers do
not amplify rounding noise from true zeros.  Negative orders are then
taken on the support only; when that truncation happens the result is
marked ``support_restricted``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    BipartiteState,
    InvalidStateError,
    hermitian_eig,
    kron,
    partial_trace,
    partial_transpose,
)

#: Equality band for sign verdicts on gap quantities.  Decoupled from the
#: eigensolver tolerance because every gap accumulates error from two
#: eigendecompositions.
SIGN_TOLERANCE = 1e-8

#: Default grid of entropic orders: the classical anchor points 0, 1 and
#: infinity plus both sign regimes of the gap test.
DEFAULT_ALPHA_GRID: Tuple[float, ...] = (
    0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, math.inf)

FLAG_SUPPORT_RESTRICTED = "support_restricted"


def _support(values: np.ndarray, tol: float) -> np.ndarray:
    return values[values > tol]


def _power_sum(values: np.ndarray, alpha: float, tol: float) -> Tuple[float, bool]:
    """sum of eigenvalue^alpha over the support; flags negative-order
    truncation on rank-deficient input."""
    support = _support(values, tol)
    if alpha == 0.0:
        return float(support.size), False
    restricted = alpha < 0.0 and support.size < values.size
    return float(np.sum(support ** alpha)), restricted


def _vn_entropy(values: np.ndarray, tol: float) -> float:
    support = _support(values, tol)
    return float(-np.sum(support * np.log(support)))


def _density_spectrum(rho: np.ndarray, tol: float) -> np.ndarray:
    vals = hermitian_eig(rho, tol).spectrum.values
    if abs(float(np.sum(vals)) - 1.0) > max(tol, 1e-9):
        raise InvalidStateError(f"trace must be 1: got {float(np.sum(vals)):.12g}")
    if vals[0] < -tol:
        raise InvalidStateError(
            f"matrix is not positive semidefinite: min eigenvalue = {vals[0]:.3e}")
    return vals


def renyi_entropy(rho: np.ndarray, alpha: float, tol: float = DEFAULT_TOL) -> float:
    """Renyi entropy log tr(rho^alpha) / (1 - alpha), natural logarithm.

    Special orders: alpha = 0 gives log rank, alpha = 1 the von Neumann
    entropy -sum(l log l), alpha = inf the negative log of the largest
    eigenvalue.  Requires alpha >= 0 (or inf) and a density matrix.
    """
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0 or inf, got {alpha}")
    vals = _density_spectrum(rho, tol)
    if alpha == 0.0:
        return math.log(_support(vals, tol).size)
    if alpha == 1.0:
        return _vn_entropy(vals, tol)
    if math.isinf(alpha):
        return -math.log(float(vals[-1]))
    total, _ = _power_sum(vals, alpha, tol)
    return math.log(total) / (1.0 - alpha)


def _state_spectra(state: BipartiteState) -> Tuple[np.ndarray, np.ndarray]:
    reduced = partial_trace(state, "B")
    red_vals = hermitian_eig(reduced, state.tol).spectrum.values
    return state.spectrum.values, red_vals


def _gap_from_spectra(rho_vals: np.ndarray, red_vals: np.ndarray,
                      alpha: float, tol: float) -> Tuple[float, bool]:
    ta, fa = _power_sum(red_vals, alpha, tol)
    tr, fr = _power_sum(rho_vals, alpha, tol)
    return ta - tr, fa or fr


def entropic_gap(state: BipartiteState, alpha: float) -> float:
    """tr(rho_A^alpha) - tr(rho^alpha) for alpha >= 0.

    Nonnegative for alpha > 1 and nonpositive for 0 <= alpha < 1 on every
    state satisfying the reduction criterion, separable states included;
    the opposite sign therefore certifies entanglement.
    """
    if alpha < 0.0 or math.isinf(alpha):
        raise ValueError(f"alpha must be finite and >= 0, got {alpha}")
    rho_vals, red_vals = _state_spectra(state)
    gap, _ = _gap_from_spectra(rho_vals, red_vals, alpha, state.tol)
    return gap


def _tsallis_from_spectra(rho_vals: np.ndarray, red_vals: np.ndarray,
                          alpha: float, tol: float) -> Tuple[float, bool]:
    if math.isinf(alpha):
        # Literal limit: 0 when the largest eigenvalue does not exceed the
        # reduced one, otherwise the quantity diverges to -inf.
        if float(rho_vals[-1]) <= float(red_vals[-1]) * (1.0 + tol):
            return 0.0, False
        return -math.inf, False
    if alpha == 1.0:
        return _vn_entropy(rho_vals, tol) - _vn_entropy(red_vals, tol), False
    ta, fa = _power_sum(red_vals, alpha, tol)
    tr, fr = _power_sum(rho_vals, alpha, tol)
    return (ta - tr) / ((alpha - 1.0) * ta), fa or fr


def conditional_tsallis(state: BipartiteState, alpha: float) -> float:
    """Conditional Tsallis entropy
    (tr rho_A^alpha - tr rho^alpha) / ((alpha - 1) tr rho_A^alpha).

    Order 1 is the limit S1(rho) - S1(rho_A); order inf is the literal
    limit, 0 or the sentinel -inf.  Any real order is accepted; negative
    orders on singular states follow the support convention.
    """
    rho_vals, red_vals = _state_spectra(state)
    value, _ = _tsallis_from_spectra(rho_vals, red_vals, alpha, state.tol)
    return value


def reduction_criterion(state: BipartiteState) -> float:
    """Minimum eigenvalue of rho_A (x) 1 - rho; the criterion holds iff
    this is >= -tol."""
    reduced = partial_trace(state, "B")
    op = kron(reduced, np.eye(state.dim_b)) - state.matrix
    return hermitian_eig(op, state.tol).spectrum.min


def ppt_criterion(state: BipartiteState) -> float:
    """Minimum eigenvalue of the partial transpose; the criterion holds
    iff this is >= -tol."""
    return hermitian_eig(partial_transpose(state), state.tol).spectrum.min


def negative_alpha_bound(state: BipartiteState, alpha: float) -> float:
    """tr(rho^alpha) - tr(rho_A^alpha) for alpha < 0.

    Nonnegative for every state, entangled or not, by convexity of
    negative powers; computed on the support for singular states.
    """
    if alpha >= 0.0:
        raise ValueError(f"alpha must be negative, got {alpha}")
    rho_vals, red_vals = _state_spectra(state)
    gap, _ = _gap_from_spectra(rho_vals, red_vals, alpha, state.tol)
    return -gap


@dataclass(frozen=True)
class SignCheck:
    """Outcome of the entropic sign test on one state.

    ``applicable`` records whether the state passes the reduction
    criterion; the sign pattern is only guaranteed in that case, so on
    inapplicable states no per-order verdicts are produced.
    """

    applicable: bool
    reduction_min_eig: float
    gaps: Dict[float, float]
    ok: Dict[float, bool]
    violations: Dict[float, float]

    @property
    def passed(self) -> bool:
        return all(self.ok.values())


def entropic_sign_check(state: BipartiteState,
                        alphas: Iterable[float],
                        band: float = SIGN_TOLERANCE) -> SignCheck:
    """Check the entropic-gap sign pattern on a reduction-passing state.

    For each finite order the gap tr(rho_A^a) - tr(rho^a) must be
    >= -band when a > 1 and <= band when a < 1 (at a = 1 it vanishes
    identically).  A violation on a state that passes the reduction
    criterion signals an implementation bug, never physics.
    """
    rho_vals, red_vals = _state_spectra(state)
    red_min = reduction_criterion(state)
    applicable = red_min >= -state.tol
    gaps: Dict[float, float] = {}
    ok: Dict[float, bool] = {}
    violations: Dict[float, float] = {}
    for alpha in alphas:
        if alpha < 0.0 or math.isinf(alpha):
            raise ValueError(f"sign check orders must be finite and >= 0, got {alpha}")
        gap, _ = _gap_from_spectra(rho_vals, red_vals, alpha, state.tol)
        gaps[alpha] = gap
        if not applicable:
            continue
        if alpha > 1.0:
            good = gap >= -band
            excess = max(0.0, -gap - band)
        elif alpha < 1.0:
            good = gap <= band
            excess = max(0.0, gap - band)
        else:
            good = abs(gap) <= band
            excess = max(0.0, abs(gap) - band)
        ok[alpha] = good
        if not good:
            violations[alpha] = excess
    return SignCheck(applicable, red_min, gaps, ok, violations)


def horodecki_chsh(state: BipartiteState) -> float:
    """Horodecki CHSH quantity M(rho) for a two-qubit state.

    Sum of the two largest eigenvalues of T^t T, where T is the 3x3
    Pauli correlation block; the CHSH inequality is violated iff M > 1.
    """
    if state.dim_a != 2 or state.dim_b != 2:
        raise ValueError("CHSH quantity is defined for two-qubit states only")
    from .twoqubit import r_matrix  # deferred: twoqubit imports this module

    t_block = r_matrix(state)[1:, 1:]
    gram = t_block.T @ t_block
    vals = hermitian_eig(gram.astype(np.complex128), state.tol).spectrum.values
    return float(vals[-1] + vals[-2])


@dataclass(frozen=True)
class CriterionReport:
    """All criterion values and verdicts for one state.

    ``verdicts`` maps criterion names to "pass"/"fail"; PPT passes iff
    ``ppt_min_eig >= -tol`` and likewise for reduction.  ``chsh_m`` is
    populated for two-qubit states only.
    """

    tol: float
    ppt_min_eig: float
    reduction_min_eig: float
    entropic_gaps: Dict[float, float]
    tsallis_values: Dict[float, float]
    verdicts: Dict[str, str]
    flags: FrozenSet[str] = field(default_factory=frozenset)
    chsh_m: Optional[float] = None


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def criterion_report(state: BipartiteState,
                     alphas: Iterable[float] = DEFAULT_ALPHA_GRID) -> CriterionReport:
    """Evaluate every criterion on one state.

    The entropic gap is recorded for the finite nonnegative orders of the
    grid, the conditional Tsallis entropy for all of them (with -inf as
    the divergence sentinel).  Verdict "tsallis_sign" requires every
    Tsallis value to clear -SIGN_TOLERANCE; "renyi_inf" is the operator
    norm test |rho| <= |rho_A| reported separately.
    """
    alphas = tuple(alphas)
    tol = state.tol
    rho_vals, red_vals = _state_spectra(state)
    ppt_min = ppt_criterion(state)
    red_min = reduction_criterion(state)

    flags = set()
    gaps: Dict[float, float] = {}
    tsallis: Dict[float, float] = {}
    for alpha in alphas:
        if alpha >= 0.0 and not math.isinf(alpha):
            gap, restricted = _gap_from_spectra(rho_vals, red_vals, alpha, tol)
            gaps[alpha] = gap
            if restricted:
                flags.add(FLAG_SUPPORT_RESTRICTED)
        value, restricted = _tsallis_from_spectra(rho_vals, red_vals, alpha, tol)
        tsallis[alpha] = value
        if restricted:
            flags.add(FLAG_SUPPORT_RESTRICTED)

    tsallis_ok = all(v >= -SIGN_TOLERANCE for v in tsallis.values())
    norm_ok = float(rho_vals[-1]) <= float(red_vals[-1]) * (1.0 + tol)
    verdicts = {
        "ppt": _verdict(ppt_min >= -tol),
        "reduction": _verdict(red_min >= -tol),
        "tsallis_sign": _verdict(tsallis_ok),
        "renyi_inf": _verdict(norm_ok),
    }

    chsh = None
    if state.dim_a == 2 and state.dim_b == 2:
        chsh = horodecki_chsh(state)
        verdicts["chsh"] = _verdict(chsh <= 1.0 + tol)

    return CriterionReport(
        tol=tol,
        ppt_min_eig=ppt_min,
        reduction_min_eig=red_min,
        entropic_gaps=gaps,
        tsallis_values=tsallis,
        verdicts=verdicts,
        flags=frozenset(flags),
        chsh_m=chsh,
    )
