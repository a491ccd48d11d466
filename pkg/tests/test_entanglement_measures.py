"""Tests for entanglement_measures: spectra, entropies, concurrence, polarization, closed forms."""

import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from biphoton_core import (
    SQRT1_2,
    BasisLabel,
    DoubleBell,
    MixedCoeffs,
    PureBiphotonState,
    QuquartCoeffs,
    basis_state,
    double_bell_state,
    hv_pair,
    ququart_state,
    rotate_polarization_basis,
    rotate_polarization_pair,
)
from density_ops import (
    DensityMatrix,
    partial_trace_frequency,
    partial_trace_photon,
    partial_trace_polarization,
    pure_density,
    reduce_single_qubit,
)
from entanglement_measures import (
    Spectrum,
    StokesVector,
    binary_entropy,
    classical_correlations,
    closed_forms,
    concurrence_pol_closed,
    degree_of_polarization,
    hermitian_eigenvalues,
    is_bell_diagonal,
    mixed_state_report,
    mutual_information,
    ququart_polarization,
    relative_entropy_bell_diagonal,
    schmidt_decompose,
    schmidt_parameter,
    spin_flip,
    stokes_vector,
    von_neumann_entropy,
    wootters_concurrence,
    wootters_numbers,
)
from errors import DimensionError, DomainError, InvariantError

PSI_MINUS = np.array([0, 1, -1, 0]) * SQRT1_2


def rho_pol(coeffs):
    return partial_trace_frequency(pure_density(ququart_state(coeffs)))


def rho_freq(coeffs):
    return partial_trace_polarization(pure_density(ququart_state(coeffs)))


def example2a(b_sq):
    return MixedCoeffs(math.sqrt(1 - b_sq), 0, 0, math.sqrt(b_sq))


def random_density(rng, dim=4, rank=4):
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m).real)


class TestSpectrum:
    def test_diagonal_qubit(self):
        assert hermitian_eigenvalues(DensityMatrix(np.diag([0.3, 0.7]))).eigenvalues == \
            pytest.approx((0.7, 0.3))

    def test_frequency_matrix(self):
        values = hermitian_eigenvalues(rho_freq(example2a(0.25))).eigenvalues
        assert values == pytest.approx((0.75, 0.25, 0, 0), abs=1e-12)

    def test_matches_characteristic_polynomial(self, rng):
        rho = random_density(rng)
        roots = np.sort(np.roots(np.poly(rho.matrix)).real)[::-1]
        assert hermitian_eigenvalues(rho).eigenvalues == pytest.approx(tuple(roots), abs=1e-10)

    def test_qubit_closed_form_matches_solver(self, rng):
        rho = random_density(rng, dim=2, rank=2)
        roots = np.sort(np.linalg.eigvalsh(rho.matrix))[::-1]
        assert hermitian_eigenvalues(rho).eigenvalues == pytest.approx(tuple(roots), abs=1e-14)

    def test_sum_checked(self):
        with pytest.raises(InvariantError):
            Spectrum((0.5, 0.6))

    def test_nonzero(self):
        assert Spectrum((0.75, 0.25, 0.0, 0.0)).nonzero() == (0.75, 0.25)


class TestEntropy:
    def test_pure(self):
        assert von_neumann_entropy(Spectrum((1.0, 0.0, 0.0, 0.0))) == 0.0

    def test_maximally_mixed_qubit(self):
        assert von_neumann_entropy(Spectrum((0.5, 0.5))) == pytest.approx(1.0)

    @pytest.mark.parametrize('p, expected', [(0.64, 0.942683), (0.75, 0.811278)])
    def test_values(self, p, expected):
        assert von_neumann_entropy(Spectrum((p, 1 - p, 0.0, 0.0))) == pytest.approx(expected, abs=1e-6)
        assert binary_entropy(p) == pytest.approx(expected, abs=1e-6)

    def test_mutual_information(self):
        assert mutual_information(0.0, 1.0) == 2.0
        assert mutual_information(1.0, 1.0) == 1.0
        assert mutual_information(0.942683, 1.0) == pytest.approx(1.057317, abs=1e-6)


class TestSchmidt:
    def test_frequency_reduction_gives_two(self, random_ensemble):
        for c in random_ensemble[:10]:
            assert schmidt_parameter(reduce_single_qubit(rho_freq(c))) == pytest.approx(2.0, abs=1e-12)

    def test_pure_reduced(self):
        assert schmidt_parameter(DensityMatrix(np.diag([1.0, 0.0]))) == 1.0

    def test_polarization_example(self):
        assert schmidt_parameter(reduce_single_qubit(rho_pol(example2a(0.5)))) == pytest.approx(1.6)

    def test_decompose_basis_state(self):
        d = schmidt_decompose(basis_state(BasisLabel.HH))
        assert d.spectrum.eigenvalues == pytest.approx((0.5, 0.5))
        assert d.degenerate
        # Modes live in span{Hh, Hl}
        assert np.allclose(d.modes_1[2:, :], 0, atol=1e-14)

    def test_decompose_product_vector(self):
        phi = np.array([1, 1j, 0, 0]) * SQRT1_2
        chi = np.array([0, 0, 0.6, 0.8])
        d = schmidt_decompose(PureBiphotonState(np.kron(phi, chi)))
        assert d.rank == 1
        assert d.spectrum.eigenvalues[0] == pytest.approx(1.0)

    def test_decompose_double_bell(self):
        d = schmidt_decompose(double_bell_state(DoubleBell.PsiMinus))
        assert d.spectrum.eigenvalues == pytest.approx((0.25,) * 4)
        assert d.K == pytest.approx(4.0)

    def test_reconstruction(self, random_ensemble):
        for c in random_ensemble[:10]:
            state = ququart_state(c)
            assert np.max(np.abs(schmidt_decompose(state).reconstruct() - state.amplitudes)) < 1e-10

    @pytest.mark.parametrize('alpha', [0.0, math.pi / 8, math.pi / 4, math.pi / 3])
    def test_basis_independence(self, random_ensemble, alpha):
        state = ququart_state(random_ensemble[2])
        k0 = schmidt_parameter(partial_trace_photon(pure_density(state)))
        rotated = rotate_polarization_basis(state, alpha)
        assert schmidt_parameter(partial_trace_photon(pure_density(rotated))) == pytest.approx(k0, abs=1e-10)

    @pytest.mark.parametrize('alpha', [0.0, math.pi / 8, math.pi / 4, math.pi / 3])
    def test_hv_pair_keeps_two_modes(self, alpha):
        m = rotate_polarization_pair(hv_pair(), alpha).matrix
        assert schmidt_parameter(DensityMatrix(m @ m.conj().T)) == pytest.approx(2.0, abs=1e-10)


class TestSpinFlip:
    def test_singlet_invariant(self):
        rho = DensityMatrix(np.outer(PSI_MINUS, PSI_MINUS))
        assert np.allclose(spin_flip(rho).matrix, rho.matrix)

    def test_hh_to_vv(self):
        assert np.allclose(spin_flip(DensityMatrix(np.diag([1.0, 0, 0, 0]))).matrix,
                           np.diag([0, 0, 0, 1.0]))

    def test_wrong_dimension(self):
        with pytest.raises(DimensionError):
            spin_flip(DensityMatrix(np.eye(2) / 2))


class TestConcurrence:
    def test_singlet(self):
        assert wootters_concurrence(DensityMatrix(np.outer(PSI_MINUS, PSI_MINUS))) == pytest.approx(1.0)

    def test_maximally_mixed(self):
        assert wootters_concurrence(DensityMatrix(np.eye(4) / 4)) == pytest.approx(0.0, abs=1e-12)

    def test_frequency_matrix(self):
        assert wootters_concurrence(rho_freq(example2a(0.25))) == pytest.approx(0.5, abs=1e-10)

    def test_wootters_numbers_sorted(self, random_ensemble):
        lam = wootters_numbers(rho_pol(random_ensemble[0]))
        assert list(lam) == sorted(lam, reverse=True)
        assert len(lam) == 4

    def test_closed_form_examples(self):
        assert concurrence_pol_closed(MixedCoeffs(0, 0.8, 0, 0.6)) == pytest.approx(abs(0.64 - 0.36))
        assert concurrence_pol_closed(example2a(0.3)) == pytest.approx(0.3)
        assert concurrence_pol_closed(MixedCoeffs(SQRT1_2, 0, SQRT1_2, 0)) == pytest.approx(1.0)
        assert wootters_concurrence(rho_pol(MixedCoeffs(SQRT1_2, 0, SQRT1_2, 0))) == pytest.approx(1.0)

    def test_closed_form_matches_wootters(self, random_ensemble):
        for c in random_ensemble:
            assert wootters_concurrence(rho_pol(c)) == pytest.approx(concurrence_pol_closed(c), abs=1e-10)

    def test_frequency_closed_form(self, random_ensemble):
        for c in random_ensemble:
            expected = abs(1 - 2 * abs(c.mixed.b_minus) ** 2)
            assert wootters_concurrence(rho_freq(c)) == pytest.approx(expected, abs=1e-10)

    def test_local_unitary_invariance(self, random_ensemble):
        rho = rho_pol(random_ensemble[4])
        u = np.kron(unitary_group.rvs(2, random_state=1), unitary_group.rvs(2, random_state=2))
        rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)
        assert wootters_concurrence(rotated) == pytest.approx(wootters_concurrence(rho), abs=1e-10)


class TestRelativeEntropy:
    @pytest.mark.parametrize('C, expected', [(0.0, 0.0), (1.0, 1.0), (0.5, 0.188722)])
    def test_values(self, C, expected):
        assert relative_entropy_bell_diagonal(C) == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize('C', [-0.1, 1.5])
    def test_domain(self, C):
        with pytest.raises(DomainError):
            relative_entropy_bell_diagonal(C)

    def test_classical_correlations(self):
        assert classical_correlations(2.0, 1.0) == 1.0
        assert classical_correlations(2 - 0.811278, 0.188722) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize('b', np.linspace(0, 1, 11))
    def test_frequency_state_has_one_bit(self, b):
        rep = mixed_state_report(rho_freq(example2a(b * b)))
        assert rep.C_cl == pytest.approx(1.0, abs=1e-10)
        assert rep.S_rel <= rep.C + 1e-12

    def test_bell_diagonal_detection(self, random_ensemble):
        assert is_bell_diagonal(rho_freq(random_ensemble[0]))
        assert not is_bell_diagonal(rho_pol(example2a(0.5)))


class TestPolarization:
    def test_stokes_vectors(self):
        assert stokes_vector(DensityMatrix(np.diag([1.0, 0.0]))).as_tuple() == pytest.approx((0, 0, 1))
        assert stokes_vector(DensityMatrix(np.eye(2) / 2)).as_tuple() == pytest.approx((0, 0, 0))

    def test_stokes_generic(self):
        x, z = 0.7, 0.1 + 0.2j
        xi = stokes_vector(DensityMatrix(np.array([[x, z], [np.conj(z), 1 - x]])))
        assert xi.as_tuple() == pytest.approx((2 * z.real, -2 * z.imag, 2 * x - 1))

    def test_stokes_wrong_dimension(self):
        with pytest.raises(DimensionError):
            stokes_vector(DensityMatrix(np.eye(4) / 4))

    def test_stokes_norm_bounded(self):
        with pytest.raises(InvariantError):
            StokesVector(1.0, 1.0, 0.0)

    def test_degree(self):
        assert degree_of_polarization(StokesVector(0, 0, 1)) == 1.0
        assert degree_of_polarization(StokesVector(0, 0, 0)) == 0.0
        reduced = reduce_single_qubit(rho_pol(example2a(0.5)))
        assert degree_of_polarization(stokes_vector(reduced)) == pytest.approx(0.5)

    def test_ququart_polarization_matches_reduced(self, random_ensemble):
        for c in random_ensemble[:10]:
            reduced = reduce_single_qubit(rho_pol(c))
            expected = degree_of_polarization(stokes_vector(reduced))
            assert ququart_polarization(ququart_state(c)) == pytest.approx(expected, abs=1e-12)

    def test_p_k_identity(self, random_ensemble):
        for c in random_ensemble:
            reduced = reduce_single_qubit(rho_pol(c))
            P = degree_of_polarization(stokes_vector(reduced))
            K = schmidt_parameter(reduced)
            assert P * P + 2 * (1 - 1 / K) == pytest.approx(1.0, abs=1e-10)


class TestClosedForms:
    def test_pure_hh(self):
        cf = closed_forms(QuquartCoeffs(1, 0, 0, 0))
        assert cf.lambda_pm == pytest.approx((1, 0))
        assert cf.K_pol == pytest.approx(1.0)
        assert cf.P == pytest.approx(1.0)

    @pytest.mark.parametrize('b_sq', [0.0, 0.3, 0.7, 1.0])
    def test_unpolarized_family(self, b_sq):
        cf = closed_forms(MixedCoeffs(0, math.sqrt(1 - b_sq), 0, math.sqrt(b_sq)))
        assert cf.K_pol == pytest.approx(2.0)
        assert cf.P == pytest.approx(0.0, abs=1e-7)

    def test_example2a(self):
        cf = closed_forms(example2a(0.5))
        assert cf.lambda_pm == pytest.approx((0.75, 0.25))
        assert cf.K_pol == pytest.approx(1.6)
        assert cf.C_pol == pytest.approx(0.5)
        assert cf.spectrum_full == pytest.approx((0.5, 0.5, 0, 0))

    def test_match_numeric(self, random_ensemble):
        for c in random_ensemble:
            cf = closed_forms(c)
            reduced = reduce_single_qubit(rho_pol(c))
            assert hermitian_eigenvalues(reduced).eigenvalues == pytest.approx(cf.lambda_pm, abs=1e-10)
            assert schmidt_parameter(reduced) == pytest.approx(cf.K_pol, abs=1e-10)
            assert von_neumann_entropy(hermitian_eigenvalues(reduced)) == \
                pytest.approx(cf.S_reduced, abs=1e-9)

    def test_radicand_root_matches_stokes_root(self, random_ensemble):
        checked = 0
        for c in random_ensemble:
            m = c.mixed
            cf = closed_forms(c)
            expected = (1 - abs(m.b_minus) ** 2) ** 2 - abs(2 * m.c1 * m.c4 - m.b_plus ** 2) ** 2
            assert cf.radicand == pytest.approx(expected, abs=1e-14)
            if cf.radicand > 1e-4:
                assert math.sqrt(cf.radicand) == pytest.approx(cf.P, abs=1e-10)
                assert cf.lambda_pm[0] - cf.lambda_pm[1] == pytest.approx(math.sqrt(cf.radicand), abs=1e-10)
                checked += 1
        assert checked > 0

    @pytest.mark.parametrize('b_sq', [0.1, 0.5, 0.9])
    def test_radicand_of_example2a(self, b_sq):
        cf = closed_forms(example2a(b_sq))
        assert cf.radicand == pytest.approx((1 - b_sq) ** 2)
        assert math.sqrt(cf.radicand) == pytest.approx(cf.P)


class TestReport:
    def test_frequency_report(self):
        rep = mixed_state_report(rho_freq(example2a(0.36)))
        assert rep.K == pytest.approx(2.0)
        assert rep.S_full == pytest.approx(0.942683, abs=1e-6)
        assert rep.I == pytest.approx(1.057317, abs=1e-6)
        assert rep.I == pytest.approx(2 * rep.S_reduced - rep.S_full, abs=1e-10)
        assert rep.P == pytest.approx(0.0, abs=1e-12)

    def test_polarization_report_has_no_relative_entropy(self):
        rep = mixed_state_report(rho_pol(example2a(0.5)))
        assert rep.S_rel is None and rep.C_cl is None
        assert rep.as_dict()['S_rel'] is None

    def test_entropies_coincide(self, random_ensemble):
        for c in random_ensemble[:10]:
            assert mixed_state_report(rho_pol(c)).S_full == \
                pytest.approx(mixed_state_report(rho_freq(c)).S_full, abs=1e-10)
