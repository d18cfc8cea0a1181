import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edtradeoff.divergence import err_dis_sum, js_divergence, relative_entropy, shannon_entropy
from edtradeoff.errors import DimensionError

# references evaluated with mpmath at 40 digits
H_3_4 = 0.562335144618808      # H(3/4, 1/4)
JS_HALF_VS_CERTAIN = 0.431523108677671
JS_5_6 = 0.010118779858      # js((0.5, 0.3, 0.2) coarse {1}{2,3}) = js((.5,.5), (.6,.4))


def test_entropy_values():
    assert shannon_entropy([1, 0]) == 0.0
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(math.log(2), abs=1e-15)
    assert shannon_entropy([0.75, 0.25]) == pytest.approx(H_3_4, abs=1e-14)


def test_relative_entropy_support():
    assert relative_entropy([0.5, 0.5], [1.0, 0.0]) == math.inf
    assert relative_entropy([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2))
    assert relative_entropy([0.3, 0.7], [0.3, 0.7]) == 0.0


def test_js_values():
    assert js_divergence([0.5, 0.5], [1, 0]) == pytest.approx(JS_HALF_VS_CERTAIN, abs=1e-14)
    assert js_divergence([0.5, 0.5], [0.6, 0.4]) == pytest.approx(JS_5_6, abs=1e-11)
    assert js_divergence([1, 0], [0, 1]) == pytest.approx(2 * math.log(2), abs=1e-15)


def test_js_matches_entropy_form():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
        m = (p + q) / 2
        alt = 2 * shannon_entropy(m) - shannon_entropy(p) - shannon_entropy(q)
        assert js_divergence(p, q) == pytest.approx(alt, abs=1e-13)


def test_err_dis_sum():
    assert err_dis_sum([1, 0], [0.5, 0.5], [1, 0], [0.5, 0.5]) == 0.0


def test_length_mismatch():
    with pytest.raises(DimensionError):
        relative_entropy([1.0], [0.5, 0.5])


simplex = st.integers(2, 6).flatmap(
    lambda d: st.tuples(*[st.lists(st.floats(0, 1), min_size=d, max_size=d)
                          .filter(lambda v: sum(v) > 1e-3) for _ in range(2)]))


@settings(max_examples=200, deadline=None)
@given(simplex)
def test_js_symmetric_and_bounded(pair):
    p, q = (np.array(v) / sum(v) for v in pair)
    a, b = js_divergence(p, q), js_divergence(q, p)
    assert a == pytest.approx(b, abs=1e-14)
    assert -1e-15 <= a <= 2 * math.log(2) + 1e-12
