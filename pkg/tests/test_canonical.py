import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import bell_psi_plus, hs_states, random_unitary
from qdiscord import (conditional_entropy_closed, correlation_matrix,
                      is_canonical, mcdm_direction, mutual_information,
                      off_axis_x_state, quantum_discord, reconstruct,
                      state_blocks, su2_from_so3, to_canonical)
from qdiscord.measures import X_AXIS


def conjugate(rho, u1, u2):
    w = np.kron(u1, u2)
    return w @ rho @ w.conj().T


class TestToCanonical:
    def test_already_canonical_is_fixed(self):
        rho = off_axis_x_state()
        d = to_canonical(rho)
        assert np.max(np.abs(d.canonical_state - rho)) < 1e-12
        assert np.allclose(np.abs(d.u1), np.eye(2), atol=1e-12)  # identity up to phase
        assert_allclose(d.lambda_diag, [0.2, 0.2, 0.14787644], atol=1e-12)

    def test_bell_state(self):
        d = to_canonical(bell_psi_plus())
        assert_allclose(d.lambda_diag, [1.0, 1.0, -1.0], atol=1e-12)

    def test_invariants_on_random_states(self, rng):
        for rho in hs_states(41, 50):
            d = to_canonical(rho)
            lam = correlation_matrix(d.canonical_state)
            off = np.max(np.abs(lam - np.diag(np.diag(lam))))
            assert off < 1e-9
            l1, l2, l3 = d.lambda_diag
            assert l1 >= l2 - 1e-10
            assert l2 >= abs(l3) - 1e-10
            # determinant of the correlation matrix is preserved
            det_orig = np.linalg.det(correlation_matrix(rho))
            assert np.linalg.det(lam) == pytest.approx(det_orig, abs=1e-10)
            if abs(det_orig) > 1e-12:
                assert np.sign(l1 * l2 * l3) == np.sign(det_orig)
            # the stored unitaries actually produce the canonical state
            rebuilt = conjugate(rho, d.u1, d.u2)
            assert np.max(np.abs(rebuilt - d.canonical_state)) < 1e-12

    def test_rotated_state_same_triple(self, rng):
        for rho in hs_states(43, 20):
            u1, u2 = random_unitary(rng), random_unitary(rng)
            d0 = to_canonical(rho)
            d1 = to_canonical(conjugate(rho, u1, u2))
            assert_allclose(d0.lambda_diag, d1.lambda_diag, atol=1e-9)


class TestIsCanonical:
    def test_off_axis_state(self):
        assert is_canonical(off_axis_x_state())

    def test_ordering_violation(self):
        rho = reconstruct(np.diag([1.0, 0.1, 0.5, 0.2]))
        assert not is_canonical(rho)

    def test_maximally_mixed(self):
        assert is_canonical(np.eye(4) / 4)

    def test_off_diagonal_violation(self, rng):
        rho = reconstruct(np.diag([1.0, 0.6, 0.4, -0.2]))
        u = np.kron(random_unitary(rng), np.eye(2))
        assert not is_canonical(u @ rho @ u.conj().T, tol=1e-6)


class TestMcdmDirection:
    def test_canonical_input_gives_x(self):
        d = to_canonical(off_axis_x_state())
        assert_allclose(mcdm_direction(d), [1.0, 0.0, 0.0], atol=1e-12)

    def test_axis_swap_bookkeeping(self, rng):
        # rotate qubit A so that the dominant correlation axis moves onto z
        rho = reconstruct(np.diag([1.0, 0.5, 0.3, -0.2]))
        o = np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]])  # y-rotation by pi/2
        u1 = su2_from_so3(o)
        rotated = conjugate(rho, u1, np.eye(2))
        n = mcdm_direction(to_canonical(rotated))
        assert abs(abs(n @ np.array([0.0, 0.0, 1.0])) - 1.0) < 1e-10

    def test_entropy_matches_canonical_x(self):
        for rho in hs_states(47, 30):
            d = to_canonical(rho)
            n = mcdm_direction(d)
            ce_original = conditional_entropy_closed(state_blocks(rho), n)
            ce_canonical = conditional_entropy_closed(state_blocks(d.canonical_state), X_AXIS)
            assert abs(ce_original - ce_canonical) < 1e-10


class TestLocalUnitaryInvariance:
    def test_measures_invariant(self, rng):
        for rho in hs_states(53, 10):
            u1, u2 = random_unitary(rng), random_unitary(rng)
            r0 = quantum_discord(rho)
            r1 = quantum_discord(conjugate(rho, u1, u2))
            assert abs(r0.mutual_information - r1.mutual_information) < 1e-10
            assert abs(r0.classical_correlation - r1.classical_correlation) < 1e-7
            assert abs(r0.discord - r1.discord) < 1e-7
