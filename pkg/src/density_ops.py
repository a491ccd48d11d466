#!/usr/bin/env python3
"""
Ququart Toolkit - Density Operations

Density matrices of biphoton states and the partial traces that turn a pure
ququart into the mixed two-qubit states seen by detectors blind to one
degree of freedom.

Partial traces are explicit index sums over the reshaped tensor.  Layouts:

    16x16 ququart   (σ1, ω1, σ2, ω2)      photon-1-major, m = 2σ + ω
    4x4 photon      (σ, ω)
    4x4 ρ^pol       (σ1, σ2)              natural basis HH, HV, VH, VV
    4x4 ρ^freq      (ω1, ω2)              natural basis hh, hl, lh, ll

Licensed under GPL v3
"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
import scipy.linalg

from biphoton_core import BELL_VECTORS, MixedCoeffs, QuquartCoeffs, as_mixed_coeffs
from errors import DimensionError, InvariantError

HERMITIAN_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-10
PSD_FLOOR = -1e-10

VALID_DIMENSIONS = (2, 3, 4, 16)


class BasisTag(Enum):
    """Basis in which a 4x4 (or 16x16) matrix is written."""
    Natural = 'natural'
    BellFreq = 'bell'         # two-qubit Bell basis Ψ+, Ψ−, Φ+, Φ−
    BellPol = 'mixed'         # HH, Ψ+, VV, Ψ−
    QuquartMixed = 'ququart'  # ququart basis Ψ_HH, Ψ+, Ψ_VV, Ψ−


class SubsystemSelector(Enum):
    Photon1 = 'photon1'
    Photon2 = 'photon2'
    Polarization = 'polarization'
    Frequency = 'frequency'


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix.

    Construction validates all three properties and raises
    ``InvariantError`` naming the first one that fails.
    """
    matrix: np.ndarray
    basis: BasisTag = BasisTag.Natural

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got shape {m.shape}")
        if m.shape[0] not in VALID_DIMENSIONS:
            raise DimensionError(f"unsupported density matrix dimension {m.shape[0]}")
        if not np.all(np.isfinite(m)):
            raise InvariantError('finite', "density matrix has NaN or Inf entries")

        asym = float(np.max(np.abs(m - m.conj().T)))
        if asym > HERMITIAN_TOLERANCE:
            raise InvariantError('hermitian', f"max |rho - rho^dagger| = {asym:.3e}")

        trace = np.trace(m)
        if abs(trace - 1.0) > TRACE_TOLERANCE:
            raise InvariantError('trace', f"trace = {trace.real:.12g}{trace.imag:+.3e}j")

        lowest = float(scipy.linalg.eigvalsh(m)[0])
        if lowest < PSD_FLOOR:
            raise InvariantError('positive', f"smallest eigenvalue {lowest:.3e}")

        m.setflags(write=False)
        object.__setattr__(self, 'matrix', m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def entry(self, i: int, j: int) -> complex:
        return complex(self.matrix[i, j])

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def _require_dim(rho: DensityMatrix, dim: int, what: str):
    if rho.dim != dim:
        raise DimensionError(f"{what} needs a {dim}x{dim} density matrix, got {rho.dim}x{rho.dim}")


def _require_natural(rho: DensityMatrix, what: str):
    if rho.basis is not BasisTag.Natural:
        raise DimensionError(f"{what} needs a matrix in the natural basis, got {rho.basis.value}")


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def pure_density(state) -> DensityMatrix:
    """Projector onto a pure state (anything exposing ``.amplitudes``)."""
    psi = np.asarray(getattr(state, 'amplitudes', state), dtype=complex).reshape(-1)
    return DensityMatrix(np.outer(psi, psi.conj()))


def ququart_density_4x4(coeffs: Union[MixedCoeffs, QuquartCoeffs]) -> DensityMatrix:
    """Nonzero 4x4 block of the ququart density matrix.

    Ordered (C1, B+, C4, B−) over the basis Ψ_HH, Ψ+, Ψ_VV, Ψ−.
    """
    v = as_mixed_coeffs(coeffs).as_array()
    return DensityMatrix(np.outer(v, v.conj()), BasisTag.QuquartMixed)


# ---------------------------------------------------------------------------
# Partial traces
# ---------------------------------------------------------------------------

def partial_trace_photon(rho: DensityMatrix, which: SubsystemSelector = SubsystemSelector.Photon2,
                         ) -> DensityMatrix:
    """Trace out the photon named by ``which``; returns the other photon's 4x4 matrix."""
    _require_dim(rho, 16, "photon partial trace")
    which = SubsystemSelector(which)
    t = rho.matrix.reshape(4, 4, 4, 4)
    if which is SubsystemSelector.Photon2:
        reduced = np.einsum('abcb->ac', t)
    elif which is SubsystemSelector.Photon1:
        reduced = np.einsum('abad->bd', t)
    else:
        raise ValueError(f"photon partial trace needs Photon1 or Photon2, got {which.value}")
    return DensityMatrix(reduced)


def partial_trace_polarization(rho: DensityMatrix) -> DensityMatrix:
    """ρ^freq: trace both photons' polarizations; basis hh, hl, lh, ll."""
    _require_dim(rho, 16, "polarization partial trace")
    t = rho.matrix.reshape((2,) * 8)
    reduced = np.einsum('abcdaecf->bdef', t)
    return DensityMatrix(reduced.reshape(4, 4))


def partial_trace_frequency(rho: DensityMatrix) -> DensityMatrix:
    """ρ^pol: trace both photons' frequencies; basis HH, HV, VH, VV."""
    _require_dim(rho, 16, "frequency partial trace")
    t = rho.matrix.reshape((2,) * 8)
    reduced = np.einsum('abcdebfd->acef', t)
    return DensityMatrix(reduced.reshape(4, 4))


def reduce_single_qubit(rho4: DensityMatrix, keep_first: bool = True) -> DensityMatrix:
    """Trace one factor of a 2x2 product space.

    For ρ^pol or ρ^freq this gives the one-photon matrix of the remaining
    variable; for a single-photon (σ, ω) matrix it gives the polarization
    matrix of that photon.
    """
    _require_dim(rho4, 4, "single-qubit reduction")
    _require_natural(rho4, "single-qubit reduction")
    t = rho4.matrix.reshape(2, 2, 2, 2)
    reduced = np.einsum('abcb->ac', t) if keep_first else np.einsum('abad->bd', t)
    return DensityMatrix(reduced)


def partial_trace(rho: DensityMatrix, target: SubsystemSelector) -> DensityMatrix:
    """Dispatch on the traced-out subsystem of a 16x16 ququart matrix."""
    target = SubsystemSelector(target)
    if target is SubsystemSelector.Polarization:
        return partial_trace_polarization(rho)
    if target is SubsystemSelector.Frequency:
        return partial_trace_frequency(rho)
    return partial_trace_photon(rho, target)


# ---------------------------------------------------------------------------
# Basis changes
# ---------------------------------------------------------------------------

_HH = np.array([1, 0, 0, 0], dtype=complex)
_VV = np.array([0, 0, 0, 1], dtype=complex)

# Columns are the target basis vectors in natural coordinates
_BASIS_COLUMNS = {
    BasisTag.Natural: np.eye(4, dtype=complex),
    BasisTag.BellFreq: np.column_stack([
        BELL_VECTORS['psi_plus'], BELL_VECTORS['psi_minus'],
        BELL_VECTORS['phi_plus'], BELL_VECTORS['phi_minus'],
    ]),
    BasisTag.BellPol: np.column_stack([
        _HH, BELL_VECTORS['psi_plus'], _VV, BELL_VECTORS['psi_minus'],
    ]),
}


def basis_transform(basis: BasisTag) -> np.ndarray:
    """Unitary whose columns are ``basis`` vectors in the natural basis."""
    basis = BasisTag(basis)
    if basis not in _BASIS_COLUMNS:
        raise DimensionError(f"no two-qubit transform for basis {basis.value}")
    return _BASIS_COLUMNS[basis].copy()


def bell_basis_transform() -> np.ndarray:
    return basis_transform(BasisTag.BellFreq)


def mixed_basis_transform() -> np.ndarray:
    return basis_transform(BasisTag.BellPol)


def change_basis(rho: DensityMatrix, basis: BasisTag) -> DensityMatrix:
    """Rewrite a two-qubit matrix in another basis (unitary conjugation)."""
    _require_dim(rho, 4, "basis change")
    source = basis_transform(rho.basis)
    target = basis_transform(basis)
    natural = source @ rho.matrix @ source.conj().T
    return DensityMatrix(target.conj().T @ natural @ target, BasisTag(basis))
