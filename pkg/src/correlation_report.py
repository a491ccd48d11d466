#!/usr/bin/env python3
"""
Ququart Toolkit - Correlation Report

Runs one coefficient set through every pipeline (pure state, both traced
mixed states, closed forms, two-qubit model) and collects the numeric and
closed-form value of each measure side by side.

Licensed under GPL v3
"""

from dataclasses import dataclass
from typing import Dict, Tuple, Union

from biphoton_core import BellCoeffs, MixedCoeffs, QuquartCoeffs, as_ququart_coeffs, ququart_state
from density_ops import (
    partial_trace_frequency,
    partial_trace_polarization,
    pure_density,
)
from entanglement_measures import (
    ClosedForms,
    CorrelationReport,
    closed_forms,
    mixed_state_report,
    ququart_polarization,
)
from two_qubit_model import TwoQubitMeasures, two_qubit_measures


@dataclass(frozen=True)
class Comparison:
    """A measure computed two independent ways."""
    name: str
    numeric: float
    closed: float

    @property
    def residual(self) -> float:
        return abs(self.numeric - self.closed)


@dataclass(frozen=True)
class StateAnalysis:
    coeffs: QuquartCoeffs
    pol: CorrelationReport
    freq: CorrelationReport
    closed: ClosedForms
    two_qubit: TwoQubitMeasures
    P4: float

    @property
    def b_minus_sq(self) -> float:
        return abs(self.coeffs.mixed.b_minus) ** 2

    def comparisons(self) -> Tuple[Comparison, ...]:
        return (
            Comparison('K_pol', self.pol.K, self.closed.K_pol),
            Comparison('C_pol', self.pol.C, self.closed.C_pol),
            Comparison('P', self.pol.P, self.closed.P),
            Comparison('P4', self.P4, self.closed.P),
            Comparison('S_reduced', self.pol.S_reduced, self.closed.S_reduced),
            Comparison('C_freq', self.freq.C, self.closed.C_freq),
            Comparison('K_freq', self.freq.K, 2.0),
            Comparison('S_full', self.pol.S_full, self.freq.S_full),
        )

    def max_residual(self) -> float:
        return max(c.residual for c in self.comparisons())

    def as_dict(self) -> Dict[str, object]:
        c = self.coeffs
        return {
            'coefficients': {
                name: [z.real, z.imag]
                for name, z in zip(('C1', 'C2', 'C3', 'C4'), c.as_array())
            },
            'mixed': {
                name: [z.real, z.imag]
                for name, z in zip(('C1', 'B_plus', 'C4', 'B_minus'), c.mixed.as_array())
            },
            'polarization': self.pol.as_dict(),
            'frequency': self.freq.as_dict(),
            'closed_forms': {
                'lambda_pm': list(self.closed.lambda_pm),
                'K_pol': self.closed.K_pol,
                'C_pol': self.closed.C_pol,
                'C_freq': self.closed.C_freq,
                'P': self.closed.P,
                'S_reduced': self.closed.S_reduced,
                'spectrum_full': list(self.closed.spectrum_full),
                'radicand': self.closed.radicand,
            },
            'two_qubit': {
                'C_2qb': self.two_qubit.C_2qb,
                'K_2qb': self.two_qubit.K_2qb,
                'P_2qb': self.two_qubit.P_2qb,
            },
            'P4': self.P4,
            'comparisons': [
                {'name': cmp.name, 'numeric': cmp.numeric, 'closed': cmp.closed,
                 'residual': cmp.residual}
                for cmp in self.comparisons()
            ],
        }


def analyze_coeffs(coeffs: Union[QuquartCoeffs, MixedCoeffs, BellCoeffs]) -> StateAnalysis:
    coeffs = as_ququart_coeffs(coeffs)
    state = ququart_state(coeffs)
    rho = pure_density(state)
    return StateAnalysis(
        coeffs=coeffs,
        pol=mixed_state_report(partial_trace_frequency(rho)),
        freq=mixed_state_report(partial_trace_polarization(rho)),
        closed=closed_forms(coeffs),
        two_qubit=two_qubit_measures(coeffs),
        P4=ququart_polarization(state),
    )
