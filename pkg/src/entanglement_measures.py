#!/usr/bin/env python3
"""
Ququart Toolkit - Entanglement Measures

Scalar correlation measures of pure and mixed biphoton states.  Each measure
has a generic numerical implementation (eigen-solvers, Wootters procedure)
and, where one exists, a closed form in the ququart coefficients, so either
can serve as the oracle for the other.

All entropies are in bits, with 0*log(0) taken as 0.

Licensed under GPL v3
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg
import scipy.special
import scipy.stats

from biphoton_core import MixedCoeffs, PureBiphotonState, QuquartCoeffs, as_mixed_coeffs
from density_ops import (
    BasisTag,
    DensityMatrix,
    change_basis,
    partial_trace_photon,
    pure_density,
    reduce_single_qubit,
)
from errors import ConvergenceError, DimensionError, DomainError, InvariantError

CLAMP_FLOOR = -1e-10
SPECTRUM_SUM_TOLERANCE = 1e-10
# Eigenvalues below this are treated as exact zeros in the Wootters procedure
RANK_CUTOFF = 1e-14
SCHMIDT_CUTOFF = 1e-12
DEGENERACY_TOLERANCE = 1e-10
RADICAND_FLOOR = -1e-12
BELL_DIAGONAL_TOLERANCE = 1e-10

_LN2 = math.log(2.0)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_YY = np.kron(PAULI[1], PAULI[1])


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a density matrix, descending, clamped into [0, 1]."""
    eigenvalues: Tuple[float, ...]

    def __post_init__(self):
        total = sum(self.eigenvalues)
        if abs(total - 1.0) > SPECTRUM_SUM_TOLERANCE:
            raise InvariantError('trace', f"eigenvalues sum to {total:.12g}")

    def __iter__(self):
        return iter(self.eigenvalues)

    def __len__(self):
        return len(self.eigenvalues)

    def nonzero(self, cutoff: float = RANK_CUTOFF) -> Tuple[float, ...]:
        return tuple(v for v in self.eigenvalues if v > cutoff)


def _clamp(values) -> Tuple[float, ...]:
    out = []
    for v in values:
        v = float(v)
        if v < CLAMP_FLOOR:
            raise InvariantError('positive', f"eigenvalue {v:.3e} below {CLAMP_FLOOR:g}")
        out.append(min(max(v, 0.0), 1.0))
    return tuple(sorted(out, reverse=True))


def hermitian_eigenvalues(rho: Union[DensityMatrix, np.ndarray]) -> Spectrum:
    """Spectrum of a density matrix.

    2x2 matrices use the closed quadratic form; larger ones go through the
    LAPACK Hermitian solver.
    """
    m = np.asarray(getattr(rho, 'matrix', rho), dtype=complex)
    if m.shape == (2, 2):
        mean = 0.5 * (m[0, 0].real + m[1, 1].real)
        half_gap = 0.5 * (m[0, 0].real - m[1, 1].real)
        radius = math.hypot(half_gap, abs(m[0, 1]))
        return Spectrum(_clamp((mean + radius, mean - radius)))
    try:
        values = scipy.linalg.eigh(m, eigvals_only=True, check_finite=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise ConvergenceError(f"Hermitian eigen-solver failed: {e}")
    return Spectrum(_clamp(values))


def von_neumann_entropy(spec: Spectrum) -> float:
    values = np.asarray(spec.eigenvalues, dtype=float)
    if not np.any(values > 0.0):
        return 0.0
    return max(0.0, float(scipy.stats.entropy(values, base=2)))


def binary_entropy(p: float) -> float:
    return von_neumann_entropy(Spectrum(_clamp((p, 1.0 - p))))


def schmidt_parameter(rho_reduced: Union[DensityMatrix, Spectrum]) -> float:
    """K = 1 / sum(λ²) of a reduced density matrix."""
    spec = rho_reduced if isinstance(rho_reduced, Spectrum) else hermitian_eigenvalues(rho_reduced)
    return 1.0 / sum(v * v for v in spec)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Σ √λn φn ⊗ χn with modes stored as matrix columns."""
    spectrum: Spectrum
    modes_1: np.ndarray
    modes_2: np.ndarray
    degenerate: bool = False

    @property
    def rank(self) -> int:
        return len(self.spectrum)

    @property
    def K(self) -> float:
        return schmidt_parameter(self.spectrum)

    def reconstruct(self) -> np.ndarray:
        weights = np.sqrt(np.asarray(self.spectrum.eigenvalues))
        return np.einsum('n,an,bn->ab', weights, self.modes_1, self.modes_2).reshape(-1)


def schmidt_decompose(state: PureBiphotonState) -> SchmidtDecomposition:
    """Schmidt decomposition of a two-photon state via SVD of its [m1, m2] matrix.

    ``degenerate`` is set when two coefficients coincide; the mode pairs are
    then not unique.
    """
    u, s, vh = scipy.linalg.svd(state.matrix)
    keep = s > SCHMIDT_CUTOFF
    s = s[keep]
    lambdas = s * s
    lambdas = lambdas / lambdas.sum()
    degenerate = bool(np.any(np.abs(np.diff(lambdas)) < DEGENERACY_TOLERANCE))
    return SchmidtDecomposition(
        spectrum=Spectrum(tuple(float(v) for v in lambdas)),
        modes_1=u[:, keep],
        modes_2=vh[keep, :].T,
        degenerate=degenerate,
    )


def mutual_information(S_full: float, S_reduced: float) -> float:
    return 2.0 * S_reduced - S_full


# ---------------------------------------------------------------------------
# Concurrence
# ---------------------------------------------------------------------------

def _two_qubit_matrix(rho: Union[DensityMatrix, np.ndarray], what: str) -> np.ndarray:
    if isinstance(rho, DensityMatrix) and rho.basis is not BasisTag.Natural:
        raise DimensionError(f"{what} needs the natural product basis, got {rho.basis.value}")
    m = np.asarray(getattr(rho, 'matrix', rho), dtype=complex)
    if m.shape != (4, 4):
        raise DimensionError(f"{what} needs a 4x4 two-qubit matrix, got shape {m.shape}")
    return m


def spin_flip(rho: DensityMatrix) -> DensityMatrix:
    """(Y⊗Y) ρ* (Y⊗Y)."""
    m = _two_qubit_matrix(rho, "spin flip")
    return DensityMatrix(_YY @ m.conj() @ _YY)


def wootters_numbers(rho: DensityMatrix) -> Tuple[float, ...]:
    """Square roots of the eigenvalues of ρ·ρ̃, descending.

    Computed as singular values of τ = Wᵀ (Y⊗Y) W with ρ = W W†, which
    avoids taking square roots of round-off in the zero eigenvalues.
    """
    m = _two_qubit_matrix(rho, "Wootters procedure")
    try:
        values, vectors = scipy.linalg.eigh(m)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise ConvergenceError(f"Hermitian eigen-solver failed: {e}")
    weights = np.sqrt(np.where(values > RANK_CUTOFF, values, 0.0))
    w = vectors * weights
    tau = w.T @ _YY @ w
    singular = scipy.linalg.svd(tau, compute_uv=False)
    return tuple(sorted((float(v) for v in singular), reverse=True))


def wootters_concurrence(rho: DensityMatrix) -> float:
    lam = wootters_numbers(rho)
    return max(0.0, lam[0] - sum(lam[1:]))


def concurrence_pol_closed(coeffs: Union[MixedCoeffs, QuquartCoeffs]) -> float:
    """||2 C1 C4 − B+²| − |B−|²|."""
    c = as_mixed_coeffs(coeffs)
    return abs(abs(2 * c.c1 * c.c4 - c.b_plus ** 2) - abs(c.b_minus) ** 2)


def concurrence_freq_closed(coeffs: Union[MixedCoeffs, QuquartCoeffs]) -> float:
    return abs(1.0 - 2.0 * abs(as_mixed_coeffs(coeffs).b_minus) ** 2)


# ---------------------------------------------------------------------------
# Relative entropy and classical correlations
# ---------------------------------------------------------------------------

def relative_entropy_bell_diagonal(C: float) -> float:
    """Relative entropy of entanglement of a two-eigenstate Bell-diagonal mixture."""
    if not (-1e-12 <= C <= 1.0 + 1e-12):
        raise DomainError(f"concurrence {C!r} outside [0, 1]")
    C = min(max(C, 0.0), 1.0)
    plus = scipy.special.xlogy(0.5 * (1.0 + C), 1.0 + C)
    minus = scipy.special.xlogy(0.5 * (1.0 - C), 1.0 - C)
    return float(plus + minus) / _LN2


def classical_correlations(I: float, S_rel: float) -> float:
    return I - S_rel


def is_bell_diagonal(rho: DensityMatrix, tol: float = BELL_DIAGONAL_TOLERANCE) -> bool:
    bell = change_basis(rho, BasisTag.BellFreq).matrix
    off = bell - np.diag(np.diag(bell))
    return bool(np.max(np.abs(off)) <= tol)


# ---------------------------------------------------------------------------
# Polarization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StokesVector:
    xi1: float
    xi2: float
    xi3: float

    def __post_init__(self):
        if self.norm > 1.0 + 1e-10:
            raise InvariantError('stokes', f"|xi| = {self.norm:.12g} exceeds 1")

    @property
    def norm(self) -> float:
        return math.sqrt(self.xi1 ** 2 + self.xi2 ** 2 + self.xi3 ** 2)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.xi1, self.xi2, self.xi3)


def stokes_vector(rho2: DensityMatrix) -> StokesVector:
    """ξ = Tr(ρ σ); equals (2 Re z, −2 Im z, 2x − 1) for ρ = [[x, z], [z*, 1 − x]]."""
    if rho2.dim != 2:
        raise DimensionError(f"Stokes vector needs a 2x2 matrix, got {rho2.dim}x{rho2.dim}")
    xi = [float(np.real(np.trace(rho2.matrix @ sigma))) for sigma in PAULI]
    return StokesVector(*xi)


def degree_of_polarization(xi: StokesVector) -> float:
    return min(xi.norm, 1.0)


def ququart_polarization(state: PureBiphotonState) -> float:
    """P of the full ququart: Stokes vector of one photon with its frequency traced."""
    photon = partial_trace_photon(pure_density(state))
    return degree_of_polarization(stokes_vector(reduce_single_qubit(photon)))


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForms:
    lambda_pm: Tuple[float, float]
    K_pol: float
    C_pol: float
    C_freq: float
    P: float
    S_reduced: float
    spectrum_full: Tuple[float, float, float, float]
    # (1 − |B−|²)² − |2C1C4 − B+²|², equal to P² up to cancellation
    radicand: float


def closed_forms(coeffs: Union[MixedCoeffs, QuquartCoeffs]) -> ClosedForms:
    """Closed-form measures of ρ^pol.

    √((1 − |B−|²)² − |2C1C4 − B+²|²) equals |ξ| = √((2x − 1)² + 4|z|²); the
    second form is used for the root since the first cancels badly near 0.
    """
    c = as_mixed_coeffs(coeffs)
    b_sq = abs(c.b_minus) ** 2
    q_sq = abs(2 * c.c1 * c.c4 - c.b_plus ** 2) ** 2
    radicand = (1.0 - b_sq) ** 2 - q_sq
    if radicand < RADICAND_FLOOR:
        raise DomainError(f"negative radicand {radicand:.3e}; coefficients are not a valid ququart")
    x = abs(c.c1) ** 2 + 0.5 * (abs(c.b_plus) ** 2 + b_sq)
    z = (c.c1 * c.b_plus.conjugate() + c.b_plus * c.c4.conjugate()) * math.sqrt(0.5)
    root = min(math.hypot(2.0 * x - 1.0, 2.0 * abs(z)), 1.0)
    lam_plus, lam_minus = 0.5 * (1.0 + root), 0.5 * (1.0 - root)
    return ClosedForms(
        lambda_pm=(lam_plus, lam_minus),
        K_pol=2.0 / (1.0 + radicand),
        C_pol=concurrence_pol_closed(c),
        C_freq=concurrence_freq_closed(c),
        P=root,
        S_reduced=binary_entropy(lam_plus),
        spectrum_full=tuple(sorted((1.0 - b_sq, b_sq, 0.0, 0.0), reverse=True)),
        radicand=radicand,
    )


# ---------------------------------------------------------------------------
# Mixed-state report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationReport:
    """Correlation measures of one mixed two-qubit state.

    ``S_rel`` and ``C_cl`` are ``None`` unless the state is a Bell-diagonal
    mixture of at most two Bell states.
    """
    K: float
    C: float
    S_full: float
    S_reduced: float
    I: float
    stokes: StokesVector
    P: float
    S_rel: Optional[float] = None
    C_cl: Optional[float] = None
    spectrum: Tuple[float, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            'K': self.K,
            'C': self.C,
            'S_full': self.S_full,
            'S_reduced': self.S_reduced,
            'I': self.I,
            'S_rel': self.S_rel,
            'C_cl': self.C_cl,
            'stokes': list(self.stokes.as_tuple()),
            'P': self.P,
        }


def mixed_state_report(rho: DensityMatrix) -> CorrelationReport:
    """Every measure of a 4x4 mixed state given in the natural basis."""
    _two_qubit_matrix(rho, "correlation report")
    spec = hermitian_eigenvalues(rho)
    reduced = reduce_single_qubit(rho)
    spec_r = hermitian_eigenvalues(reduced)
    S_full = von_neumann_entropy(spec)
    S_reduced = von_neumann_entropy(spec_r)
    I = mutual_information(S_full, S_reduced)
    C = wootters_concurrence(rho)
    xi = stokes_vector(reduced)

    S_rel = C_cl = None
    if len(spec.nonzero()) <= 2 and is_bell_diagonal(rho):
        S_rel = relative_entropy_bell_diagonal(C)
        C_cl = classical_correlations(I, S_rel)

    return CorrelationReport(
        K=schmidt_parameter(spec_r),
        C=C,
        S_full=S_full,
        S_reduced=S_reduced,
        I=I,
        stokes=xi,
        P=degree_of_polarization(xi),
        S_rel=S_rel,
        C_cl=C_cl,
        spectrum=spec.eigenvalues,
    )
