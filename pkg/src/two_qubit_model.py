#!/usr/bin/env python3
"""
Ququart Toolkit - Two-Qubit Model

Broken-symmetry description of a ququart seen through a dichroic beam
splitter: the photon leaving by the high-frequency port carries the first
polarization label, the one leaving by the low-frequency port the second.
Each port order gives a pure two-qubit polarization state; these are
compared with the mixed-state picture produced by tracing frequencies.

Licensed under GPL v3
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from biphoton_core import (
    NORM_TOLERANCE,
    SQRT1_2,
    BellCoeffs,
    MixedCoeffs,
    PolFreqMode,
    PureBiphotonState,
    QuquartCoeffs,
    as_ququart_coeffs,
    flat_index,
)
from density_ops import DensityMatrix
from entanglement_measures import degree_of_polarization, stokes_vector
from errors import DimensionError, InvariantError, NormalizationError

# Agreement required between the two closed forms of C_2qb
C2QB_CROSS_TOLERANCE = 1e-10

Coefficients = Union[QuquartCoeffs, MixedCoeffs, BellCoeffs]


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Pure polarization state over (σ1, σ2) = HH, HV, VH, VV.

    Not required to be exchange symmetric.
    """
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise DimensionError(f"two-qubit state needs 4 amplitudes, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise NormalizationError(f"two-qubit state norm {norm:.12g} is not 1")
        amps.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amps)

    @property
    def matrix(self) -> np.ndarray:
        return self.amplitudes.reshape(2, 2)

    def reduced(self) -> DensityMatrix:
        """Polarization matrix of the first photon."""
        m = self.matrix
        return DensityMatrix(m @ m.conj().T)


@dataclass(frozen=True)
class ChannelPair:
    rho_h: DensityMatrix
    rho_l: DensityMatrix


@dataclass(frozen=True)
class TwoQubitMeasures:
    C_2qb: float
    K_2qb: float
    P_2qb: float


def two_qubit_states(coeffs: Coefficients) -> Tuple[TwoQubitState, TwoQubitState]:
    """(Ψ_h, Ψ_l): Ψ_h = (C1, C2, C3, C4); Ψ_l swaps C2 and C3."""
    c = as_ququart_coeffs(coeffs)
    psi_h = TwoQubitState(np.array([c.c1, c.c2, c.c3, c.c4], dtype=complex))
    psi_l = TwoQubitState(np.array([c.c1, c.c3, c.c2, c.c4], dtype=complex))
    return psi_h, psi_l


def reassemble_ququart(psi_h: TwoQubitState, psi_l: TwoQubitState) -> PureBiphotonState:
    """Rebuild the 16-amplitude ququart from the two port-ordered states.

    Ψ(σ1ω1, σ2ω2) = [Ψ_h(σ1, σ2) δ(ω1,h) δ(ω2,l) + Ψ_l(σ1, σ2) δ(ω1,l) δ(ω2,h)] / √2
    """
    amps = np.zeros(16, dtype=complex)
    for s1 in range(2):
        for s2 in range(2):
            hl = flat_index(PolFreqMode(2 * s1), PolFreqMode(2 * s2 + 1))
            lh = flat_index(PolFreqMode(2 * s1 + 1), PolFreqMode(2 * s2))
            amps[hl] = psi_h.matrix[s1, s2] * SQRT1_2
            amps[lh] = psi_l.matrix[s1, s2] * SQRT1_2
    return PureBiphotonState(amps)


def channel_reduced(coeffs: Coefficients) -> ChannelPair:
    psi_h, psi_l = two_qubit_states(coeffs)
    return ChannelPair(rho_h=psi_h.reduced(), rho_l=psi_l.reduced())


def half_sum(pair: ChannelPair) -> DensityMatrix:
    return DensityMatrix(0.5 * (pair.rho_h.matrix + pair.rho_l.matrix))


def concurrence_2qb(coeffs: Coefficients) -> float:
    """2|C1C4 − C2C3|, cross-checked against |2C1C4 − B+² + B−²|."""
    c = as_ququart_coeffs(coeffs)
    direct = 2.0 * abs(c.c1 * c.c4 - c.c2 * c.c3)
    m = c.mixed
    via_bell = abs(2 * m.c1 * m.c4 - m.b_plus ** 2 + m.b_minus ** 2)
    if abs(direct - via_bell) > C2QB_CROSS_TOLERANCE:
        raise InvariantError('c2qb', f"closed forms disagree: {direct:.15g} vs {via_bell:.15g}")
    return direct


def two_qubit_measures(coeffs: Coefficients) -> TwoQubitMeasures:
    C = min(concurrence_2qb(coeffs), 1.0)
    return TwoQubitMeasures(
        C_2qb=C,
        K_2qb=2.0 / (2.0 - C * C),
        P_2qb=math.sqrt(max(0.0, 1.0 - C * C)),
    )


def channel_polarizations(coeffs: Coefficients) -> Tuple[float, float]:
    """Degree of polarization of each channel from its Stokes vector."""
    pair = channel_reduced(coeffs)
    return (degree_of_polarization(stokes_vector(pair.rho_h)),
            degree_of_polarization(stokes_vector(pair.rho_l)))


def c2qb_phase_formula(b_minus_sq: float, phi: float) -> float:
    """C_2qb for C1 = C4 = 0, B+ = e^{iφ}√(1 − b²), real B− = b.

    √((1 − b²)² − 2(1 − b²) b² cos 2φ + b⁴)
    """
    a = 1.0 - b_minus_sq
    radicand = a * a - 2.0 * a * b_minus_sq * math.cos(2.0 * phi) + b_minus_sq ** 2
    return math.sqrt(max(radicand, 0.0))
