import numpy as np
import pytest

from edtradeoff.errors import DimensionError, UnsupportedInputError, ValidationError
from edtradeoff.quantum import (Basis, ProbDist, QuantumState, Scenario, born_distribution,
                                depolarize, disturbed_distribution, phase_align,
                                post_measurement_state, qubit_state, random_scenario,
                                scenario_with_distributions, sigma_x_basis, sigma_z_basis)


def test_probdist_clamps_roundoff():
    P = ProbDist([1.0 + 5e-16, -5e-16])
    assert P.values[1] == 0.0 and abs(P.values.sum() - 1) < 1e-15


def test_probdist_rejects():
    with pytest.raises(ValidationError):
        ProbDist([1.1, -0.1])
    with pytest.raises(ValidationError):
        ProbDist([0.5, 0.4])
    with pytest.raises(DimensionError):
        ProbDist([0.5, 0.5], labels=("a",))


def test_state_validation():
    with pytest.raises(ValidationError):
        QuantumState.pure([1, 1])
    with pytest.raises(ValidationError):
        QuantumState.mixed([[0.5, 0.1], [0.2, 0.5]])
    with pytest.raises(ValidationError):
        QuantumState.mixed([[1.2, 0], [0, -0.2]])


def test_basis_gram_check():
    with pytest.raises(ValidationError, match="Gram residual"):
        Basis(np.array([[1, 1e-3], [0, 1]]))
    with pytest.raises(DimensionError):
        Basis(np.ones((2, 3)))


def test_qubit_sigma_statistics():
    s = Scenario(qubit_state(np.pi / 3), sigma_z_basis(), sigma_x_basis())
    assert s.P.values == pytest.approx([0.75, 0.25], abs=1e-15)
    assert s.Q.values[0] == pytest.approx(0.933012701892, abs=1e-12)


def test_bloch_vector():
    r = qubit_state(np.pi / 2).bloch_vector()
    assert r == pytest.approx([1, 0, 0], abs=1e-15)
    with pytest.raises(UnsupportedInputError):
        QuantumState.pure([1, 0, 0]).bloch_vector()


def test_measuring_in_b_leaves_q_intact():
    s = random_scenario(4, 0)
    Qt = disturbed_distribution(s.state, s.basis_b, s.basis_b)
    assert np.allclose(Qt.values, s.Q.values, atol=1e-14)


def test_post_measurement_state_is_dephased():
    s = random_scenario(3, 1)
    rho = post_measurement_state(s.state, s.basis_a)
    M = s.basis_a.matrix
    inner = M.conj().T @ rho.data @ M
    assert np.allclose(inner, np.diag(s.P.values), atol=1e-14)
    Qt = born_distribution(rho, s.basis_b)
    assert np.allclose(Qt.values, disturbed_distribution(s.state, s.basis_a, s.basis_b).values)


def test_phase_align():
    s = random_scenario(3, 2)
    B = phase_align(s.state, s.basis_b).matrix
    amps = B.conj().T @ s.state.data
    assert np.allclose(amps, np.sqrt(s.Q.values), atol=1e-14)


def test_depolarize():
    psi = qubit_state(0.3)
    assert np.allclose(depolarize(psi, 1.0).data, np.eye(2) / 2)
    assert np.allclose(depolarize(psi, 0.0).data, psi.density)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_scenario_with_distributions(d):
    rng = np.random.default_rng(d)
    P, Q = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
    s = scenario_with_distributions(P, Q, rng)
    assert np.allclose(s.P.values, P, atol=1e-13)
    assert np.allclose(s.Q.values, Q, atol=1e-13)


def test_scenario_dimension_mismatch():
    with pytest.raises(DimensionError):
        Scenario(qubit_state(0.1), Basis.computational(3), sigma_x_basis())
