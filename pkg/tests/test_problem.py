import json

import numpy as np
import pytest

from edtradeoff.errors import ParseError, ValidationError
from edtradeoff.oracle import qubit_scenario
from edtradeoff.problem import dump_problem, load_problem, parse_problem
from edtradeoff.quantum import random_scenario


def _doc(**over):
    s = 2 ** -0.5
    doc = {"dimension": 2,
           "state": {"type": "pure", "data": [[1, 0], [0, 0]]},
           "basisA": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
           "basisB": [[[s, 0], [s, 0]], [[s, 0], [-s, 0]]]}
    doc.update(over)
    return json.dumps(doc)


def test_happy_path():
    s = parse_problem(_doc())
    assert s.dim == 2
    assert s.P.values == pytest.approx([1, 0])
    assert s.Q.values == pytest.approx([0.5, 0.5])


def test_bytes_input():
    assert parse_problem(_doc().encode()).dim == 2


def test_wrong_vector_length_names_index():
    with pytest.raises(ParseError, match=r"basisA\[1\]"):
        parse_problem(_doc(basisA=[[[1, 0], [0, 0]], [[0, 0]]]))


def test_gram_residual_reported():
    with pytest.raises(ValidationError, match="Gram residual 1.0"):
        parse_problem(_doc(basisA=[[[1, 0], [0, 0]], [[1e-3, 0], [1, 0]]]))


@pytest.mark.parametrize("bad, where", [
    ('{"dimension": 2', "line 1"),
    ('[]', "top level"),
    (_doc(dimension=1), "dimension"),
    (_doc(dimension="2"), "dimension"),
    (_doc(state={"type": "weird", "data": []}), "state.type"),
    (_doc(state={"type": "pure"}), "state.data"),
    (_doc(state={"type": "pure", "data": [[1, 0], [0]]}), r"state.data\[1\]"),
    (_doc(state={"type": "pure", "data": [[1, 0], ["x", 0]]}), r"state.data\[1\]\[0\]"),
    (_doc(extra=1), "extra"),
    (_doc(eta="a"), "eta"),
])
def test_schema_errors(bad, where):
    with pytest.raises(ParseError, match=where):
        parse_problem(bad)


def test_unnormalized_state():
    with pytest.raises(ValidationError, match="state.data"):
        parse_problem(_doc(state={"type": "pure", "data": [[1, 0], [1, 0]]}))


def test_eta_out_of_range():
    with pytest.raises(ValidationError, match="eta"):
        parse_problem(_doc(eta=1.5))


def test_eta_applies_depolarization():
    pf = load_problem(_doc(eta=0.2))
    assert pf.eta == 0.2 and pf.base.state.is_pure
    assert pf.scenario.P.values == pytest.approx([0.9, 0.1])


@pytest.mark.parametrize("mixed", [False, True])
def test_roundtrip_idempotent(mixed):
    text = dump_problem(random_scenario(3, 4, mixed=mixed))
    again = dump_problem(load_problem(text))
    assert again == text
    s1, s2 = parse_problem(text), parse_problem(again)
    assert np.array_equal(s1.basis_a.matrix, s2.basis_a.matrix)


def test_roundtrip_with_eta():
    text = dump_problem(qubit_scenario(0.4), eta=0.25)
    assert dump_problem(load_problem(text)) == text
