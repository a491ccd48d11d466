#!/usr/bin/env python3
"""
Ququart Toolkit - Biphoton Core

Pure polarization-frequency biphoton ququarts as symmetric two-qudit states.

Each photon lives in a 4-dimensional one-photon space spanned by the modes
Hh, Hl, Vh, Vl (polarization H/V, frequency high/low).  The canonical
one-photon index is ``m = 2*pol + freq`` and a two-photon amplitude vector
is stored photon-1-major: ``flat = 4*m1 + m2``.  Every layout decision in
the toolkit follows from these two rules.

Licensed under GPL v3
"""

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, Union

import numpy as np

from errors import DimensionError, NormalizationError

# Coefficient sets are rescaled silently when |norm^2 - 1| is within this band
AUTO_NORMALIZE_TOLERANCE = 1e-6
NORM_TOLERANCE = 1e-10
SYMMETRY_TOLERANCE = 1e-12

SQRT1_2 = 1.0 / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Modes and labels
# ---------------------------------------------------------------------------

class Polarization(IntEnum):
    H = 0
    V = 1


class Frequency(IntEnum):
    h = 0
    l = 1  # noqa: E741


class PolFreqMode(IntEnum):
    """One-photon polarization-frequency mode, valued by its canonical index."""
    Hh = 0
    Hl = 1
    Vh = 2
    Vl = 3

    @classmethod
    def of(cls, polarization: Polarization, frequency: Frequency) -> 'PolFreqMode':
        return cls(2 * int(polarization) + int(frequency))

    @property
    def polarization(self) -> Polarization:
        return Polarization(int(self) // 2)

    @property
    def frequency(self) -> Frequency:
        return Frequency(int(self) % 2)


class BasisLabel(Enum):
    HH = 'HH'
    HV = 'HV'
    VH = 'VH'
    VV = 'VV'


class DoubleBell(Enum):
    PhiPlus = 'PhiPlus'
    PhiMinus = 'PhiMinus'
    PsiPlus = 'PsiPlus'
    PsiMinus = 'PsiMinus'


# The two occupied one-photon modes of each basis state; the high-frequency
# photon is listed first.
_BASIS_MODES = {
    BasisLabel.HH: (PolFreqMode.Hh, PolFreqMode.Hl),
    BasisLabel.HV: (PolFreqMode.Hh, PolFreqMode.Vl),
    BasisLabel.VH: (PolFreqMode.Vh, PolFreqMode.Hl),
    BasisLabel.VV: (PolFreqMode.Vh, PolFreqMode.Vl),
}


def flat_index(m1: int, m2: int) -> int:
    return 4 * int(m1) + int(m2)


# ---------------------------------------------------------------------------
# Coefficient sets
# ---------------------------------------------------------------------------

def _amplitude(value, name: str) -> complex:
    """Coerce to a finite complex amplitude."""
    try:
        z = complex(value)
    except (TypeError, ValueError):
        raise NormalizationError(f"{name} is not a number: {value!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NormalizationError(f"{name} is not finite: {value!r}")
    return z


def _rescaled(values, names, strict: bool):
    """Return ``values`` scaled to unit norm.

    With ``strict`` the deviation of the squared norm from 1 must not
    exceed ``AUTO_NORMALIZE_TOLERANCE``; otherwise any nonzero set is
    accepted.
    """
    amps = [_amplitude(v, n) for v, n in zip(values, names)]
    norm_sq = sum(abs(a) ** 2 for a in amps)
    if norm_sq == 0.0:
        raise NormalizationError("all coefficients are zero")
    if strict and abs(norm_sq - 1.0) > AUTO_NORMALIZE_TOLERANCE:
        raise NormalizationError(
            f"coefficient norm^2 = {norm_sq:.12g} deviates from 1 by more "
            f"than {AUTO_NORMALIZE_TOLERANCE:g}"
        )
    scale = 1.0 / math.sqrt(norm_sq)
    return [a * scale for a in amps]


@dataclass(frozen=True)
class QuquartCoeffs:
    """Amplitudes of the basis states HH, HV, VH, VV.

    Construction rescales sets that are within ``AUTO_NORMALIZE_TOLERANCE``
    of unit norm and rejects anything further away; use ``normalized()``
    to accept an arbitrary nonzero set.
    """
    c1: complex
    c2: complex
    c3: complex
    c4: complex

    def __post_init__(self):
        names = ('c1', 'c2', 'c3', 'c4')
        amps = _rescaled([getattr(self, n) for n in names], names, strict=True)
        for name, amp in zip(names, amps):
            object.__setattr__(self, name, amp)

    @classmethod
    def normalized(cls, c1, c2, c3, c4) -> 'QuquartCoeffs':
        return cls(*_rescaled([c1, c2, c3, c4], ('c1', 'c2', 'c3', 'c4'), strict=False))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4], dtype=complex)

    @property
    def mixed(self) -> 'MixedCoeffs':
        return to_mixed_coeffs(self)

    @property
    def bell(self) -> 'BellCoeffs':
        return to_bell_coeffs(self)


@dataclass(frozen=True)
class BellCoeffs:
    """Amplitudes of the double-Bell states Φ+, Ψ+, Ψ−, Φ−."""
    c_plus: complex
    b_plus: complex
    b_minus: complex
    c_minus: complex

    def __post_init__(self):
        names = ('c_plus', 'b_plus', 'b_minus', 'c_minus')
        amps = _rescaled([getattr(self, n) for n in names], names, strict=True)
        for name, amp in zip(names, amps):
            object.__setattr__(self, name, amp)


@dataclass(frozen=True)
class MixedCoeffs:
    """Amplitudes in the mixed basis {Ψ_HH, Ψ+, Ψ_VV, Ψ−}.

    This is the parametrization every closed-form expression uses.
    """
    c1: complex
    b_plus: complex
    c4: complex
    b_minus: complex

    def __post_init__(self):
        names = ('c1', 'b_plus', 'c4', 'b_minus')
        amps = _rescaled([getattr(self, n) for n in names], names, strict=True)
        for name, amp in zip(names, amps):
            object.__setattr__(self, name, amp)

    @classmethod
    def normalized(cls, c1, b_plus, c4, b_minus) -> 'MixedCoeffs':
        names = ('c1', 'b_plus', 'c4', 'b_minus')
        return cls(*_rescaled([c1, b_plus, c4, b_minus], names, strict=False))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.b_plus, self.c4, self.b_minus], dtype=complex)


def to_bell_coeffs(coeffs: QuquartCoeffs) -> BellCoeffs:
    return BellCoeffs(
        c_plus=(coeffs.c1 + coeffs.c4) * SQRT1_2,
        b_plus=(coeffs.c2 + coeffs.c3) * SQRT1_2,
        b_minus=(coeffs.c2 - coeffs.c3) * SQRT1_2,
        c_minus=(coeffs.c1 - coeffs.c4) * SQRT1_2,
    )


def from_bell_coeffs(bell: BellCoeffs) -> QuquartCoeffs:
    return QuquartCoeffs(
        c1=(bell.c_plus + bell.c_minus) * SQRT1_2,
        c2=(bell.b_plus + bell.b_minus) * SQRT1_2,
        c3=(bell.b_plus - bell.b_minus) * SQRT1_2,
        c4=(bell.c_plus - bell.c_minus) * SQRT1_2,
    )


def to_mixed_coeffs(coeffs: QuquartCoeffs) -> MixedCoeffs:
    return MixedCoeffs(
        c1=coeffs.c1,
        b_plus=(coeffs.c2 + coeffs.c3) * SQRT1_2,
        c4=coeffs.c4,
        b_minus=(coeffs.c2 - coeffs.c3) * SQRT1_2,
    )


def from_mixed_coeffs(mixed: MixedCoeffs) -> QuquartCoeffs:
    return QuquartCoeffs(
        c1=mixed.c1,
        c2=(mixed.b_plus + mixed.b_minus) * SQRT1_2,
        c3=(mixed.b_plus - mixed.b_minus) * SQRT1_2,
        c4=mixed.c4,
    )


def as_ququart_coeffs(coeffs: Union[QuquartCoeffs, MixedCoeffs, BellCoeffs]) -> QuquartCoeffs:
    if isinstance(coeffs, QuquartCoeffs):
        return coeffs
    if isinstance(coeffs, MixedCoeffs):
        return from_mixed_coeffs(coeffs)
    if isinstance(coeffs, BellCoeffs):
        return from_bell_coeffs(coeffs)
    raise TypeError(f"expected a coefficient set, got {type(coeffs).__name__}")


def as_mixed_coeffs(coeffs: Union[QuquartCoeffs, MixedCoeffs, BellCoeffs]) -> MixedCoeffs:
    if isinstance(coeffs, MixedCoeffs):
        return coeffs
    return to_mixed_coeffs(as_ququart_coeffs(coeffs))


def random_coeffs(rng: np.random.Generator) -> QuquartCoeffs:
    """Haar-random ququart coefficients (complex Gaussian, normalized)."""
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return QuquartCoeffs.normalized(*z)


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PureBiphotonState:
    """16 amplitudes over (σ1,ω1)⊗(σ2,ω2), photon-1-major.

    Only unit norm is enforced here; ``from_vector`` also enforces exchange
    symmetry, which every state built from coefficients satisfies.
    """
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (16,):
            raise DimensionError(f"biphoton state needs 16 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise NormalizationError("biphoton amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NormalizationError(f"biphoton state norm {norm:.12g} is not 1")
        object.__setattr__(self, 'amplitudes', _frozen(amps))

    @classmethod
    def from_vector(cls, vector: Iterable[complex], symmetric: bool = True) -> 'PureBiphotonState':
        state = cls(np.asarray(list(vector), dtype=complex))
        if symmetric and not state.is_exchange_symmetric():
            raise NormalizationError("biphoton state is not symmetric under photon exchange")
        return state

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes as a 4x4 array indexed [m1, m2]."""
        return self.amplitudes.reshape(4, 4)

    def amplitude(self, m1: int, m2: int) -> complex:
        return complex(self.amplitudes[flat_index(m1, m2)])

    def inner(self, other: 'PureBiphotonState') -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def is_exchange_symmetric(self, tol: float = SYMMETRY_TOLERANCE) -> bool:
        m = self.matrix
        return bool(np.max(np.abs(m - m.T)) <= tol)

    def max_same_frequency_amplitude(self) -> float:
        """Largest |amplitude| over pairs with ω1 = ω2 (zero for ququarts)."""
        worst = 0.0
        for m1 in PolFreqMode:
            for m2 in PolFreqMode:
                if m1.frequency == m2.frequency:
                    worst = max(worst, abs(self.amplitude(m1, m2)))
        return worst


def basis_state(label: BasisLabel) -> PureBiphotonState:
    label = BasisLabel(label)
    a, b = _BASIS_MODES[label]
    amps = np.zeros(16, dtype=complex)
    amps[flat_index(a, b)] = SQRT1_2
    amps[flat_index(b, a)] = SQRT1_2
    return PureBiphotonState(amps)


def ququart_state(coeffs: Union[QuquartCoeffs, MixedCoeffs, BellCoeffs]) -> PureBiphotonState:
    """Superpose the four basis states with the given coefficients."""
    c = as_ququart_coeffs(coeffs).as_array()
    amps = np.zeros(16, dtype=complex)
    for weight, label in zip(c, BasisLabel):
        amps = amps + weight * basis_state(label).amplitudes
    return PureBiphotonState(amps)


# Two-qubit Bell vectors over (00, 01, 10, 11)
BELL_VECTORS = {
    'psi_plus': np.array([0, 1, 1, 0], dtype=complex) * SQRT1_2,
    'psi_minus': np.array([0, 1, -1, 0], dtype=complex) * SQRT1_2,
    'phi_plus': np.array([1, 0, 0, 1], dtype=complex) * SQRT1_2,
    'phi_minus': np.array([1, 0, 0, -1], dtype=complex) * SQRT1_2,
}

# (polarization Bell state, frequency Bell state) of each double-Bell state
_DOUBLE_BELL_FACTORS = {
    DoubleBell.PhiPlus: ('phi_plus', 'psi_plus'),
    DoubleBell.PhiMinus: ('phi_minus', 'psi_plus'),
    DoubleBell.PsiPlus: ('psi_plus', 'psi_plus'),
    DoubleBell.PsiMinus: ('psi_minus', 'psi_minus'),
}


def pol_freq_to_photon_major(vector: np.ndarray) -> np.ndarray:
    """Reorder a (σ1,σ2,ω1,ω2) vector into (σ1,ω1,σ2,ω2) layout."""
    return np.asarray(vector).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(16)


def double_bell_state(which: DoubleBell) -> PureBiphotonState:
    """Polarization Bell state ⊗ frequency Bell state, in photon-major layout."""
    pol, freq = _DOUBLE_BELL_FACTORS[DoubleBell(which)]
    product = np.kron(BELL_VECTORS[pol], BELL_VECTORS[freq])
    return PureBiphotonState(pol_freq_to_photon_major(product))


def swap_photons(state: PureBiphotonState) -> PureBiphotonState:
    return PureBiphotonState(state.matrix.T.reshape(16))


def polarization_rotation(alpha: float) -> np.ndarray:
    """Coordinates of a polarization vector in the basis turned by ``alpha``.

    The rotated basis is H' = cos(a) H + sin(a) V, V' = -sin(a) H + cos(a) V.
    """
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, s], [-s, c]], dtype=complex)


def rotate_polarization_basis(state: PureBiphotonState, alpha: float) -> PureBiphotonState:
    u = np.kron(polarization_rotation(alpha), np.eye(2))
    m = state.matrix
    return PureBiphotonState((u @ m @ u.T).reshape(16))


# ---------------------------------------------------------------------------
# Polarization-only pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PolarizationPair:
    """Symmetric pure polarization state of two photons over (σ1, σ2)."""
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise DimensionError(f"polarization pair needs 4 amplitudes, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NormalizationError(f"polarization pair norm {norm:.12g} is not 1")
        m = amps.reshape(2, 2)
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOLERANCE:
            raise NormalizationError("polarization pair is not exchange symmetric")
        object.__setattr__(self, 'amplitudes', _frozen(amps))

    @property
    def matrix(self) -> np.ndarray:
        return self.amplitudes.reshape(2, 2)


def hv_pair() -> PolarizationPair:
    """|1_H, 1_V>: one H and one V photon, symmetrized."""
    return PolarizationPair(BELL_VECTORS['psi_plus'])


def rotate_polarization_pair(pair: PolarizationPair, alpha: float) -> PolarizationPair:
    r = polarization_rotation(alpha)
    return PolarizationPair((r @ pair.matrix @ r.T).reshape(4))


def coeffs_from_values(values, basis: str = 'natural', normalize: bool = False,
                       ) -> QuquartCoeffs:
    """Build coefficients from four complex values.

    ``basis`` is ``natural`` (C1..C4) or ``mixed`` (C1, B+, C4, B−).
    """
    values = list(values)
    if len(values) != 4:
        raise DimensionError(f"expected 4 coefficients, got {len(values)}")
    if basis == 'natural':
        return QuquartCoeffs.normalized(*values) if normalize else QuquartCoeffs(*values)
    if basis == 'mixed':
        mixed = MixedCoeffs.normalized(*values) if normalize else MixedCoeffs(*values)
        return from_mixed_coeffs(mixed)
    raise ValueError(f"unknown coefficient basis {basis!r}")


def describe(coeffs: QuquartCoeffs, precision: int = 6) -> str:
    """Short human-readable rendering used in log messages."""
    def fmt(z: complex) -> str:
        return f"{z.real:+.{precision}f}{z.imag:+.{precision}f}j"
    return ', '.join(f"C{i + 1}={fmt(z)}" for i, z in enumerate(coeffs.as_array()))
