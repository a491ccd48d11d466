#!/usr/bin/env python3
"""
Ququart Toolkit - Invariant Audit

Runs every cross-module identity on a seeded ensemble of random ququarts
(plus a few fixed anchor states) and on the figure grids, and reports the
largest residual seen for each.  Per-trial residuals are combined with
``max`` only, so the outcome does not depend on evaluation order or on
the number of worker threads.

Trial ``i`` draws its coefficients from ``default_rng([seed, i])``.

Licensed under GPL v3
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from biphoton_core import (
    SQRT1_2,
    PureBiphotonState,
    QuquartCoeffs,
    from_bell_coeffs,
    hv_pair,
    ququart_state,
    random_coeffs,
    rotate_polarization_basis,
    rotate_polarization_pair,
    to_bell_coeffs,
)
from correlation_report import analyze_coeffs
from datasets import FigureRunner, is_interior
from density_ops import (
    DensityMatrix,
    mixed_basis_transform,
    partial_trace_frequency,
    partial_trace_photon,
    partial_trace_polarization,
    pure_density,
    reduce_single_qubit,
)
from entanglement_measures import (
    closed_forms,
    concurrence_pol_closed,
    degree_of_polarization,
    hermitian_eigenvalues,
    mixed_state_report,
    ququart_polarization,
    schmidt_decompose,
    schmidt_parameter,
    spin_flip,
    stokes_vector,
    von_neumann_entropy,
    wootters_concurrence,
)
from errors import ConfigError, InvariantError
from grid_runner import GridRunner
from scenarios import DEFAULT_GRID_POINTS, Family, FamilyPoint, FigureId, family_coeffs, grid
from two_qubit_model import (
    channel_polarizations,
    channel_reduced,
    half_sum,
    reassemble_ququart,
    two_qubit_measures,
    two_qubit_states,
)

try:
    from build_config import DEFAULT_SEED, DEFAULT_TRIALS
except ImportError:
    DEFAULT_SEED = 42
    DEFAULT_TRIALS = 1000

DEFAULT_TOLERANCE = 1e-10
STRICT_TOLERANCE = 1e-12

ROTATION_ANGLES = (0.0, math.pi / 8, math.pi / 4, math.pi / 3)
CLASSICAL_GRID_POINTS = 101
PHASE_BREAK_MIN_GAP = 0.999999

# Anything not listed uses DEFAULT_TOLERANCE
TOLERANCES = {
    'half_sum': STRICT_TOLERANCE,
    'freq_reduction': STRICT_TOLERANCE,
    'figure_endpoints': STRICT_TOLERANCE,
    'exchange_symmetry': STRICT_TOLERANCE,
    'frequency_exclusion': STRICT_TOLERANCE,
}

ANCHORS: Tuple[QuquartCoeffs, ...] = (
    QuquartCoeffs(1, 0, 0, 0),
    QuquartCoeffs(0, SQRT1_2, SQRT1_2, 0),
    QuquartCoeffs(0, SQRT1_2, -SQRT1_2, 0),
    QuquartCoeffs(SQRT1_2, 0, 0, SQRT1_2),
)


@dataclass(frozen=True)
class InvariantCheck:
    name: str
    max_residual: float
    tolerance: float
    detail: str = ''

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_residual) and self.max_residual <= self.tolerance


@dataclass(frozen=True)
class AuditResult:
    seed: int
    trials: int
    checks: Tuple[InvariantCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> Tuple[InvariantCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> InvariantCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _max_abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _spectrum_residual(rho: DensityMatrix, b_sq: float) -> float:
    expected = sorted((1.0 - b_sq, b_sq, 0.0, 0.0), reverse=True)
    return _max_abs(hermitian_eigenvalues(rho).eigenvalues, expected)


def flipped_by_substitution(coeffs: QuquartCoeffs) -> np.ndarray:
    """ρ̃^pol from C1 → −C4*, B+ → B+*, C4 → −C1*, B− → −B−*, in the natural basis."""
    m = coeffs.mixed
    qutrit = np.array([-np.conj(m.c4), np.conj(m.b_plus), -np.conj(m.c1), 0.0], dtype=complex)
    singlet = np.array([0.0, 0.0, 0.0, -np.conj(m.b_minus)], dtype=complex)
    block = np.outer(qutrit, qutrit.conj()) + np.outer(singlet, singlet.conj())
    u = mixed_basis_transform()
    return u @ block @ u.conj().T


def _rotated_photon_k(state: PureBiphotonState, alpha: float) -> float:
    rotated = rotate_polarization_basis(state, alpha)
    return schmidt_parameter(partial_trace_photon(pure_density(rotated)))


def trial_residuals(coeffs: QuquartCoeffs) -> Dict[str, float]:
    """Residual of every per-state identity for one coefficient set."""
    r: Dict[str, float] = {}
    state = ququart_state(coeffs)
    rho = pure_density(state)
    rho_pol = partial_trace_frequency(rho)
    rho_freq = partial_trace_polarization(rho)
    b_sq = abs(coeffs.mixed.b_minus) ** 2
    closed = closed_forms(coeffs)

    r['bell_round_trip'] = _max_abs(from_bell_coeffs(to_bell_coeffs(coeffs)).as_array(),
                                    coeffs.as_array())
    r['exchange_symmetry'] = _max_abs(state.matrix, state.matrix.T)
    r['frequency_exclusion'] = state.max_same_frequency_amplitude()
    r['schmidt_reconstruction'] = _max_abs(schmidt_decompose(state).reconstruct(), state.amplitudes)

    r['spectrum_freq'] = _spectrum_residual(rho_freq, b_sq)
    r['spectrum_pol'] = _spectrum_residual(rho_pol, b_sq)
    r['entropy_match'] = abs(von_neumann_entropy(hermitian_eigenvalues(rho_freq))
                             - von_neumann_entropy(hermitian_eigenvalues(rho_pol)))

    reduced_pol = reduce_single_qubit(rho_pol)
    spec_r = hermitian_eigenvalues(reduced_pol)
    K = schmidt_parameter(spec_r)
    P = degree_of_polarization(stokes_vector(reduced_pol))
    r['lambda_pm'] = _max_abs(spec_r.eigenvalues, closed.lambda_pm)
    r['k_pol'] = abs(K - closed.K_pol)
    r['p_k_identity'] = abs(P * P + 2.0 * (1.0 - 1.0 / K) - 1.0)
    r['ququart_polarization'] = abs(ququart_polarization(state) - P)

    r['concurrence_pol'] = abs(wootters_concurrence(rho_pol) - concurrence_pol_closed(coeffs))
    r['concurrence_freq'] = abs(wootters_concurrence(rho_freq) - closed.C_freq)
    r['spin_flip_rules'] = _max_abs(spin_flip(rho_pol).matrix, flipped_by_substitution(coeffs))

    reduced_freq = reduce_single_qubit(rho_freq)
    r['freq_reduction'] = max(_max_abs(reduced_freq.matrix, np.eye(2) / 2.0),
                              abs(schmidt_parameter(reduced_freq) - 2.0))
    r['trace_commute'] = _max_abs(reduce_single_qubit(partial_trace_photon(rho)).matrix,
                                  reduced_pol.matrix)

    psi_h, psi_l = two_qubit_states(coeffs)
    r['reassembly'] = _max_abs(reassemble_ququart(psi_h, psi_l).amplitudes, state.amplitudes)
    r['half_sum'] = _max_abs(half_sum(channel_reduced(coeffs)).matrix, reduced_pol.matrix)
    tq = two_qubit_measures(coeffs)
    r['p2qb_channel'] = max(abs(p - tq.P_2qb) for p in channel_polarizations(coeffs))
    r['p_k_2qb'] = abs(tq.P_2qb ** 2 + 2.0 * (1.0 - 1.0 / tq.K_2qb) - 1.0)

    k0 = _rotated_photon_k(state, 0.0)
    r['basis_independence'] = max(abs(_rotated_photon_k(state, a) - k0) for a in ROTATION_ANGLES)
    return r


# ---------------------------------------------------------------------------
# Grid-wide checks
# ---------------------------------------------------------------------------

def _freq_report(b: float):
    coeffs = family_coeffs(FamilyPoint(Family.Example2a, b))
    return mixed_state_report(partial_trace_polarization(pure_density(ququart_state(coeffs))))


def classical_correlation_residuals() -> Dict[str, float]:
    """C_cl(ρ^freq) = 1 everywhere; S_rel ≤ C inside, S_rel = C at the ends."""
    cl = bound = 0.0
    values = grid(0.0, 1.0, CLASSICAL_GRID_POINTS)
    for i, b in enumerate(values):
        rep = _freq_report(float(b))
        if rep.S_rel is None or rep.C_cl is None:
            return {'classical_correlations': math.inf, 'relative_entropy_bound': math.inf}
        cl = max(cl, abs(rep.C_cl - 1.0))
        if i in (0, len(values) - 1):
            bound = max(bound, abs(rep.S_rel - rep.C))
        else:
            bound = max(bound, rep.S_rel - rep.C)
    return {'classical_correlations': cl, 'relative_entropy_bound': bound}


def figure_residuals(steps: int = DEFAULT_GRID_POINTS, jobs: int = 1) -> Dict[str, float]:
    fig3 = FigureRunner(FigureId.Fig3, jobs=jobs).table(steps)
    first, last = fig3.rows[0], fig3.rows[-1]
    endpoints = max(
        _max_abs([first[k] for k in ('K', 'C', 'P', 'I')], [1.0, 0.0, 1.0, 0.0]),
        _max_abs([last[k] for k in ('K', 'C', 'P', 'I')], [2.0, 1.0, 0.0, 2.0]),
    )

    fig4 = FigureRunner(FigureId.Fig4, jobs=jobs).table(steps)
    unpolarized = max(
        _max_abs(fig4.column('P4'), 0.0),
        _max_abs(fig4.column('K_pol'), 2.0),
    )

    fig5 = FigureRunner(FigureId.Fig5, jobs=jobs).table(steps)
    b_sq = np.asarray(fig5.column('b_minus')) ** 2
    concurrence = max(
        _max_abs(fig5.column('C_pol'), b_sq),
        _max_abs(fig5.column('C_2qb'), b_sq),
    )
    separated = all(
        abs(row['K_pol'] - row['K_2qb']) > STRICT_TOLERANCE
        for row in fig5.rows if is_interior(row['b_minus'])
    )
    return {
        'figure_endpoints': endpoints,
        'fig4_unpolarized': unpolarized,
        'fig5_concurrence': concurrence,
        'fig5_separation': 0.0 if separated else 1.0,
    }


def phase_breaking_residual() -> float:
    """C1 = C4 = 0, |B+| = |B−| = 1/√2, φ = π/2: C^pol = 0 but C_2qb = 1."""
    a = analyze_coeffs(family_coeffs(FamilyPoint(Family.Example1, SQRT1_2, phi=math.pi / 2)))
    gap = a.two_qubit.C_2qb - a.pol.C
    return max(a.pol.C, abs(1.0 - a.two_qubit.C_2qb), max(0.0, PHASE_BREAK_MIN_GAP - gap))


def hv_pair_rotation_residual() -> float:
    """|1_H, 1_V> keeps K = 2 in every rotated basis."""
    worst = 0.0
    for alpha in ROTATION_ANGLES:
        m = rotate_polarization_pair(hv_pair(), alpha).matrix
        worst = max(worst, abs(schmidt_parameter(DensityMatrix(m @ m.conj().T)) - 2.0))
    return worst


def fault_injection_check() -> InvariantCheck:
    """Feed a deliberately non-Hermitian matrix through validation."""
    corrupt = np.array([[0.5, 0.25], [0.0, 0.5]], dtype=complex)
    try:
        DensityMatrix(corrupt)
    except InvariantError as e:
        return InvariantCheck(e.invariant, math.inf, DEFAULT_TOLERANCE, detail=str(e))
    return InvariantCheck('fault_injection_check', 0.0, DEFAULT_TOLERANCE, detail="corrupt matrix accepted")


# ---------------------------------------------------------------------------
# Auditor
# ---------------------------------------------------------------------------

class Auditor(GridRunner[QuquartCoeffs, Dict[str, float]]):
    """Evaluates the invariant suite on the anchor states plus ``trials`` random ququarts."""

    def __init__(self, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS,
                 inject_fault: bool = False, **kwargs):
        super().__init__(**kwargs)
        if trials < 1:
            raise ConfigError(f"trials must be >= 1, got {trials}")
        self.seed = seed
        self.trials = trials
        self.inject_fault = inject_fault

    def ensemble(self) -> List[QuquartCoeffs]:
        randoms = [random_coeffs(np.random.default_rng([self.seed, i])) for i in range(self.trials)]
        return list(ANCHORS) + randoms

    def _pre_run(self, points: List[QuquartCoeffs]) -> bool:
        self._log(f"Auditing {len(points)} states (seed={self.seed}, trials={self.trials}) "
                  f"on {self.jobs} worker(s)")
        return True

    def _evaluate(self, coeffs: QuquartCoeffs) -> Dict[str, float]:
        return trial_residuals(coeffs)

    def audit(self) -> AuditResult:
        worst: Dict[str, float] = {}
        for residuals in self.run(self.ensemble()):
            for name, value in residuals.items():
                worst[name] = max(worst.get(name, 0.0), value)

        self._log("Checking figure grids")
        worst.update(classical_correlation_residuals())
        worst.update(figure_residuals(jobs=self.jobs))
        worst['phase_breaking'] = phase_breaking_residual()
        worst['hv_pair_rotation'] = hv_pair_rotation_residual()

        checks = [
            InvariantCheck(name, value, TOLERANCES.get(name, DEFAULT_TOLERANCE))
            for name, value in worst.items()
        ]
        if self.inject_fault:
            self._log("Injecting a non-Hermitian density matrix", 'warning')
            checks.append(fault_injection_check())

        result = AuditResult(self.seed, self.trials, tuple(checks))
        if result.all_passed:
            self._log(f"All {len(checks)} invariants hold", 'success')
        else:
            self._log(f"{len(result.failed())} of {len(checks)} invariants failed", 'error')
        return result
