import numpy as np
import pytest

from _gen import majorizing_pair, non_majorizing_pair
from edtradeoff import synthesis
from edtradeoff.errors import NoZEZDError, PreconditionError, UnsupportedInputError
from edtradeoff.numerics import unitarity_residual
from edtradeoff.quantum import (QuantumState, Scenario, born_distribution, depolarize,
                                disturbed_distribution, qubit_state, random_basis,
                                random_scenario, scenario_with_distributions, sigma_x_basis,
                                sigma_z_basis)
from edtradeoff.divergence import relative_entropy
from edtradeoff.synthesis import (_block_residuals, _closed_form_block, _triangle_block,
                                  all_solutions, depolarized_zezd_check, mixed_qubit_zezd,
                                  parse_signs, sign_strings, synthesize, synthesize_base2,
                                  verify_conditions, zezd_basis)


def _err_dis(s, B):
    Pp = born_distribution(s.state, B)
    Qt = disturbed_distribution(s.state, B, s.basis_b)
    return relative_entropy(s.P, Pp), relative_entropy(s.Q, Qt)


def test_parse_signs():
    assert parse_signs(None, 3) == [1, 1]
    assert parse_signs("01", 3) == [1, -1]
    assert parse_signs([-1, 1], 3) == [-1, 1]
    with pytest.raises(PreconditionError):
        parse_signs("012", 4)
    with pytest.raises(PreconditionError):
        parse_signs("0", 3)
    with pytest.raises(PreconditionError):
        parse_signs([0, 1], 3)
    assert sign_strings(3) == ["00", "01", "10", "11"]


@pytest.mark.parametrize("sign", [1, -1])
def test_base2_example(sign):
    U = synthesize_base2([0.8, 0.2], [0.6, 0.4], sign)
    r1, r2 = verify_conditions(U, [0.8, 0.2], [0.6, 0.4])
    assert unitarity_residual(U) < 1e-14 and r1 < 1e-14 and r2 < 1e-14


def test_base2_rejects_non_majorizing():
    with pytest.raises(PreconditionError):
        synthesize_base2([0.6, 0.4], [0.8, 0.2])


def test_triangle_block_solves_conditions_and_matches_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(500):
        p1, p2 = np.sort(rng.random(2))[::-1]
        t1 = rng.uniform(p2, p1)
        t2 = p1 + p2 - t1
        for sign in (1, -1):
            U = _triangle_block(p1, p2, t1, t2, sign)
            assert unitarity_residual(U) < 1e-13
            assert _block_residuals(U, np.array([p1, p2]), np.array([t1, t2])) < 1e-13
        C = _closed_form_block(p1, p2, t1, t2, 1)
        T = _triangle_block(p1, p2, t1, t2, 1)
        ph = np.vdot(C.ravel(), T.ravel())
        assert np.allclose(T, C * ph / abs(ph), atol=1e-9)


def test_degenerate_blocks():
    # equal entries and boundary targets
    for p, q in [([0.5, 0.5], [0.5, 0.5]), ([1.0, 0.0], [1.0, 0.0]), ([1.0, 0.0], [0.5, 0.5]),
                 ([0.7, 0.3], [0.7, 0.3])]:
        for sign in (1, -1):
            U = synthesize_base2(p, q, sign)
            r1, r2 = verify_conditions(U, p, q)
            assert unitarity_residual(U) < 1e-12 and r1 < 1e-12 and r2 < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_synthesize_all_branches(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        p, q = majorizing_pair(d, rng)
        sols = all_solutions(p, q)
        assert len(sols) == 2 ** (d - 1)
        for sol in sols:
            assert sol.unitarity < 1e-12 and sol.residual1 < 1e-12 and sol.residual2 < 1e-12


def test_branches_differ():
    p, q = [0.5, 0.3, 0.2], [0.4, 0.35, 0.25]
    Us = [s.U for s in all_solutions(p, q)]
    for i in range(len(Us)):
        for j in range(i):
            assert not np.allclose(Us[i], Us[j])


def test_synthesize_boundary_cases():
    for p, q in [([1, 0, 0], [1 / 3] * 3), ([1, 0, 0], [1, 0, 0]), ([0.25] * 4, [0.25] * 4),
                 ([0.5, 0.5, 0, 0], [0.25] * 4), ([0.6, 0.2, 0.2], [0.4, 0.4, 0.2])]:
        for bits in sign_strings(len(p)):
            sol = synthesize(p, q, bits)
            assert sol.unitarity < 1e-12 and sol.residual1 < 1e-12 and sol.residual2 < 1e-12


def test_synthesize_rejects():
    with pytest.raises(PreconditionError):
        synthesize([0.5, 0.3, 0.2], [0.6, 0.2, 0.2])
    with pytest.raises(PreconditionError):
        synthesize([0.2, 0.8], [0.5, 0.5])


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_zezd_basis_unsorted_labels(d):
    rng = np.random.default_rng(10 + d)
    p, q = majorizing_pair(d, rng)
    s = scenario_with_distributions(rng.permutation(p), rng.permutation(q), rng)
    for bits in sign_strings(d):
        B = zezd_basis(s, bits)
        err, dis = _err_dis(s, B)
        assert err + dis < 1e-13
        assert np.allclose(born_distribution(s.state, B).values, s.P.values, atol=1e-13)


def test_zezd_refuses_tradeoff_regime():
    rng = np.random.default_rng(3)
    p, q = non_majorizing_pair(3, rng)
    with pytest.raises(NoZEZDError):
        zezd_basis(scenario_with_distributions(p, q, rng))


def test_qubit_example_pi_over_5():
    s = Scenario(qubit_state(np.pi / 5), sigma_z_basis(), sigma_x_basis())
    err, dis = _err_dis(s, zezd_basis(s))
    assert err + dis < 1e-14


def test_mixed_qubit():
    rng = np.random.default_rng(4)
    n = 0
    while n < 30:
        s = random_scenario(2, rng, mixed=True)
        if not synthesis.majorizes(s.P, s.Q):
            with pytest.raises(NoZEZDError):
                mixed_qubit_zezd(s)
            continue
        err, dis = _err_dis(s, mixed_qubit_zezd(s))
        assert max(err, dis) < 1e-12
        n += 1


def test_maximally_mixed_qubit_returns_a():
    s = Scenario(QuantumState.mixed(np.eye(2) / 2), sigma_z_basis(), sigma_x_basis())
    assert mixed_qubit_zezd(s) is s.basis_a


def test_depolarized_state_uses_pure_core():
    rng = np.random.default_rng(5)
    p, q = majorizing_pair(3, rng)
    s = scenario_with_distributions(p, q, rng)
    noisy = s.with_state(depolarize(s.state, 0.3))
    err, dis = _err_dis(noisy, zezd_basis(noisy))
    assert max(err, dis) < 1e-12
    err, dis = depolarized_zezd_check(s, 0.3, zezd_basis(s))
    assert max(err, dis) < 1e-12


def test_generic_mixed_state_unsupported():
    s = random_scenario(3, 6, mixed=True)
    with pytest.raises(UnsupportedInputError):
        zezd_basis(s)


def test_closed_form_used_in_random_runs():
    synthesis.block_stats.update(closed_form=0, triangle=0, trivial=0)
    rng = np.random.default_rng(7)
    for _ in range(50):
        p, q = majorizing_pair(4, rng)
        synthesize(p, q)
    assert synthesis.block_stats["closed_form"] > 0
