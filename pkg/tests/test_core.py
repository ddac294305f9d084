"""
量子核心测试: 算符, 哈密顿量, 传播子
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinscramble.core.hamiltonians import (
    CouplingSet,
    TogglingMode,
    TogglingParams,
    build_h_e,
    build_h_se,
    mrev8_scaling_factor,
    total_environment_magnetization,
)
from spinscramble.core.operators import (
    Axis,
    OperatorMatrix,
    SpinSystem,
    collective_x,
    initial_state,
    partial_trace_environment,
    pauli,
)
from spinscramble.core.propagation import EigenPropagator, commutator, conjugate, propagator
from spinscramble.utils.exceptions import CapExceededError, NumericalInvariantError

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2)


class TestPauli:
    def test_central_z_is_big_endian(self):
        op = pauli(0, Axis.Z, SpinSystem(1))
        assert_allclose(op.matrix, np.diag([1, 1, -1, -1]))
    
    def test_matches_kron(self):
        sys = SpinSystem(2)
        assert_allclose(pauli(1, Axis.X, sys).matrix, np.kron(np.kron(I2, X), I2))
        assert_allclose(pauli(2, Axis.Y, sys).matrix, np.kron(np.kron(I2, I2), Y))
    
    def test_involution(self):
        op = pauli(1, Axis.X, SpinSystem(1))
        assert_allclose(op.matrix @ op.matrix, np.eye(4))
    
    def test_orthogonality(self):
        sys = SpinSystem(3)
        product = pauli(0, Axis.X, sys) @ pauli(0, Axis.Y, sys)
        assert abs(np.trace(product)) == 0
    
    def test_hermitian_unitary_traceless(self):
        sys = SpinSystem(2)
        for site in range(3):
            for axis in Axis:
                op = pauli(site, axis, sys)
                assert op.hermiticity_error() == 0
                assert op.unitarity_error() < 1e-12
                assert abs(op.trace()) == 0
    
    def test_site_out_of_range(self):
        with pytest.raises(ValueError):
            pauli(3, Axis.Z, SpinSystem(2))
    
    def test_cap(self):
        with pytest.raises(CapExceededError):
            pauli(0, Axis.Z, SpinSystem(3, max_env=2))


class TestInitialState:
    def test_single_environment_spin(self):
        rho = initial_state(SpinSystem(1))
        assert_allclose(rho.matrix, np.kron(X, I2) / 4)
    
    def test_normalization(self):
        sys = SpinSystem(3)
        rho = initial_state(sys).matrix
        x_cs = pauli(0, Axis.X, sys).matrix
        assert abs(np.trace(rho)) < 1e-15
        assert_allclose(np.trace(rho @ x_cs), 1.0)
        assert_allclose(np.trace(rho @ rho) * sys.dim, 1.0)
    
    def test_partial_trace(self):
        reduced = partial_trace_environment(initial_state(SpinSystem(2)))
        assert_allclose(reduced, X / 2)


class TestHeteronuclear:
    def test_ideal_single_spin(self):
        h = build_h_se(CouplingSet.from_hetero([1.0]), SpinSystem(1), TogglingParams.ideal())
        assert_allclose(h.matrix, np.diag([1, -1, -1, 1]))
        assert h.diagonal
    
    def test_ideal_is_diagonal(self, random_couplings):
        c = random_couplings(3, seed=1)
        h = build_h_se(c, SpinSystem(3), TogglingParams.ideal()).matrix
        assert np.max(np.abs(h - np.diag(np.diag(h)))) == 0
    
    def test_scaled_linearity(self):
        sys = SpinSystem(1)
        scaled = build_h_se(CouplingSet.from_hetero([2.0]), sys, TogglingParams.scaled(alpha=0.5))
        ideal = build_h_se(CouplingSet.from_hetero([1.0]), sys, TogglingParams.ideal())
        assert_allclose(scaled.matrix, ideal.matrix)
    
    def test_full_toggling(self):
        h = build_h_se(CouplingSet.from_hetero([1.0]), SpinSystem(1), TogglingParams.full_toggling())
        expected = 0.36 * (np.kron(Z, X) + np.kron(Z, Z))
        assert_allclose(h.matrix, expected)
        assert not h.diagonal
    
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            build_h_se(CouplingSet.from_hetero([1.0, 2.0]), SpinSystem(1), TogglingParams.ideal())
    
    def test_invalid_mode(self):
        with pytest.raises(ValueError):
            build_h_se(CouplingSet.from_hetero([1.0]), SpinSystem(1), "ideal")
        with pytest.raises(ValueError):
            TogglingParams(mode="pulsed")


class TestToggling:
    def test_mrev8_ideal_pulses(self):
        assert_allclose(mrev8_scaling_factor(0.0, 1.0), np.sqrt(2.0) / 3.0)
    
    def test_scaled_alpha_from_pulses(self):
        tog = TogglingParams(mode=TogglingMode.SCALED, t_p=0.05, tau_c=1.0)
        assert_allclose(tog.alpha, mrev8_scaling_factor(0.05, 1.0))
        assert 0 < tog.alpha < 1
    
    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            TogglingParams(t_p=1.0, tau_c=1.0)
        with pytest.raises(ValueError):
            TogglingParams.scaled(alpha=1.5)
    
    def test_full_toggling_not_analytic(self):
        assert not TogglingParams.full_toggling().analytic
        assert TogglingParams.ideal().alpha == 1.0


class TestHomonuclear:
    def test_two_spin_hand_matrix(self):
        c = CouplingSet(hetero=np.zeros(2), homo=np.array([[0.0, 1.0], [1.0, 0.0]]))
        h = build_h_e(c, SpinSystem(2), include_central=False)
        expected = np.array([[1, 0, 0, 0],
                             [0, -1, -1, 0],
                             [0, -1, -1, 0],
                             [0, 0, 0, 1]], dtype=complex)
        assert_allclose(h.matrix, expected)
    
    def test_matches_pauli_construction(self, random_couplings):
        c = random_couplings(3, seed=4)
        sys = SpinSystem(3)
        expected = np.zeros((sys.dim, sys.dim), dtype=complex)
        for j in range(1, 4):
            for k in range(j + 1, 4):
                zz = pauli(j, Axis.Z, sys) @ pauli(k, Axis.Z, sys)
                xx = pauli(j, Axis.X, sys) @ pauli(k, Axis.X, sys)
                yy = pauli(j, Axis.Y, sys) @ pauli(k, Axis.Y, sys)
                expected += c.homo[j - 1, k - 1] * (zz - 0.5 * (xx + yy))
        assert_allclose(build_h_e(c, sys).matrix, expected, atol=1e-12)
    
    def test_conserves_magnetization(self, random_couplings):
        c = random_couplings(4, seed=2)
        sys = SpinSystem(4)
        h = build_h_e(c, sys).matrix
        mz = total_environment_magnetization(sys).matrix
        assert np.max(np.abs(commutator(h, mz))) < 1e-12
    
    def test_zero_couplings(self):
        h = build_h_e(CouplingSet.from_hetero([0.5, 0.3]), SpinSystem(2))
        assert np.max(np.abs(h.matrix)) == 0
    
    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            CouplingSet(hetero=np.zeros(2), homo=np.array([[0.0, 1.0], [0.5, 0.0]]))
    
    def test_zz_only_is_diagonal(self, random_couplings):
        h = build_h_e(random_couplings(3, seed=5), SpinSystem(3), flip_flop=False)
        assert h.diagonal


class TestPropagator:
    def test_identity_at_zero(self, random_couplings):
        h = build_h_e(random_couplings(2, seed=0), SpinSystem(2))
        assert_allclose(propagator(h, 0.0).matrix, np.eye(8), atol=1e-12)
    
    def test_pauli_z(self):
        h = OperatorMatrix(Z, hermitian=True, n_sites=1, diagonal=True)
        u = propagator(h, np.pi / 2).matrix
        assert_allclose(u, np.diag([np.exp(-1j * np.pi / 2), np.exp(1j * np.pi / 2)]))
    
    def test_group_property(self, random_couplings):
        h = build_h_e(random_couplings(3, seed=7), SpinSystem(3))
        forward = propagator(h, 0.8).matrix
        backward = propagator(h, -0.8).matrix
        assert_allclose(forward @ backward, np.eye(16), atol=1e-10)
    
    def test_non_hermitian_rejected(self):
        with pytest.raises(NumericalInvariantError):
            EigenPropagator(OperatorMatrix(np.array([[0.0, 1.0], [0.0, 0.0]])))
    
    def test_energy_conservation(self, random_couplings):
        sys = SpinSystem(3)
        h = build_h_e(random_couplings(3, seed=8), sys).matrix
        rho = initial_state(sys).matrix + collective_x(sys).matrix / sys.dim
        u = EigenPropagator(OperatorMatrix(h, hermitian=True)).evolve(1.3)
        assert abs(np.trace(h @ conjugate(u, rho)) - np.trace(h @ rho)) < 1e-9
    
    def test_short_time_expansion(self, random_couplings):
        sys = SpinSystem(2)
        c = random_couplings(2, seed=9)
        h = (build_h_se(c, sys, TogglingParams.full_toggling()).matrix
             + build_h_e(c, sys).matrix)
        rho = initial_state(sys).matrix
        prop = EigenPropagator(OperatorMatrix(h, hermitian=True))
        
        def error(t):
            first = commutator(rho, h)
            expansion = rho + 1j * t * first - 0.5 * t ** 2 * commutator(first, h)
            return np.max(np.abs(conjugate(prop.evolve(t), rho) - expansion))
        
        t = 0.01 / np.max(np.abs(h))
        ratio = error(t) / error(t / 2)
        assert 6.0 < ratio < 10.0
