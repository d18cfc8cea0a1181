import math

import numpy as np
import pytest

from edtradeoff.bound import tradeoff_bound
from edtradeoff.errors import PreconditionError
from edtradeoff.oracle import (qubit_scenario, s2_min_numeric, sample_sequential, sweep_qubit,
                               verdict)
from edtradeoff.quantum import (Basis, born_distribution, disturbed_distribution,
                                random_scenario, scenario_with_distributions)
from edtradeoff.divergence import err_dis_sum
from edtradeoff.synthesis import zezd_basis


def test_zero_when_majorizing_qubit():
    assert s2_min_numeric(qubit_scenario(np.pi / 5), 10_000, 0).min_value <= 1e-10


def test_zero_when_majorizing_d3():
    s = scenario_with_distributions([0.5, 0.3, 0.2], [0.4, 0.35, 0.25], 1)
    assert s2_min_numeric(s, 10_000, 0).min_value <= 1e-10


def test_sound_at_half_pi():
    r = s2_min_numeric(qubit_scenario(np.pi / 2), 20_000, 0)
    assert r.min_value >= 0.431523108677671 - 1e-6


def test_deterministic_and_monotone_in_budget():
    s = random_scenario(3, 2)
    a = s2_min_numeric(s, 3000, 5)
    b = s2_min_numeric(s, 3000, 5)
    assert a.min_value == b.min_value and np.array_equal(a.argmin_params, b.argmin_params)
    c = s2_min_numeric(s, 6000, 5)
    assert c.min_value <= a.min_value
    assert a.evaluations == 3000


def test_basis_reproduces_value():
    for d in (2, 3):
        s = random_scenario(d, 8)
        r = s2_min_numeric(s, 4000, 1)
        B = r.basis(s)
        Pp = np.sort(born_distribution(s.state, B).values)[::-1]
        Qt = np.sort(disturbed_distribution(s.state, B, s.basis_b).values)[::-1]
        val = err_dis_sum(np.sort(s.P.values)[::-1], np.sort(s.Q.values)[::-1], Pp, Qt)
        assert val == pytest.approx(r.min_value, abs=1e-10)


def test_guards():
    with pytest.raises(PreconditionError):
        s2_min_numeric(qubit_scenario(1.0), 0)
    with pytest.raises(PreconditionError):
        s2_min_numeric(random_scenario(7, 0), 10)


def test_verdict():
    assert verdict([0.75, 0.25], [0.93, 0.07]) == "Q>P"
    assert verdict([0.9, 0.1], [0.6, 0.4]) == "P>Q"
    assert verdict([0.5, 0.3, 0.2], [0.6, 0.2, 0.2]) == "Q>P"
    assert verdict([0.5, 0.5, 0.0], [0.6, 0.2, 0.2]) == "incomparable"


def test_sweep_small():
    rows = sweep_qubit(math.pi / 4, math.pi / 2, 5, 5000, 3)
    assert len(rows) == 5
    assert rows[0].blue == 0.0 and rows[0].red <= 1e-8
    for r in rows:
        assert r.red >= r.blue - 1e-6
    assert rows == sweep_qubit(math.pi / 4, math.pi / 2, 5, 5000, 3)


def test_pi_over_3_instance():
    s = qubit_scenario(np.pi / 3)
    assert verdict(s.P, s.Q) == "Q>P"
    assert s.Q.values[0] == pytest.approx(0.933012701892, abs=1e-12)


def test_sample_determinism_and_certainty():
    s = random_scenario(3, 0)
    a = sample_sequential(s, s.basis_a, 1000, 9)
    b = sample_sequential(s, s.basis_a, 1000, 9)
    assert np.array_equal(a[0].values, b[0].values) and np.array_equal(a[1].values, b[1].values)
    # psi is an eigenvector of the measured basis: the first outcome is certain
    from edtradeoff.numerics import householder_to
    meas = Basis(householder_to(s.state.data))
    empP, _ = sample_sequential(s, meas, 500, 1)
    assert empP.values[0] == 1.0
    with pytest.raises(PreconditionError):
        sample_sequential(s, s.basis_a, 0, 1)


@pytest.mark.slow
def test_sample_concentration():
    s = scenario_with_distributions([0.5, 0.3, 0.2], [0.4, 0.35, 0.25], 2)
    B = zezd_basis(s)
    Pp = born_distribution(s.state, B).values
    bad = 0
    for seed in range(100):
        empP, _ = sample_sequential(s, B, 1_000_000, seed)
        bad += 0.5 * np.abs(empP.values - Pp).sum() > 5e-3
    assert bad <= 1


def test_oracle_above_bound_small_batch():
    rng = np.random.default_rng(11)
    for d in (2, 3):
        for _ in range(5):
            s = random_scenario(d, rng)
            assert s2_min_numeric(s, 2000, rng).min_value >= tradeoff_bound(s.P, s.Q).bound - 1e-9
