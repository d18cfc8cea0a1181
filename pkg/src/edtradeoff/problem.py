"""Problem files: a JSON description of a state and the two measurement bases.

Complex numbers are written as ``[re, im]`` pairs::

    {
      "dimension": 2,
      "state": {"type": "pure", "data": [[0.92, 0.0], [0.38, 0.0]]},
      "basisA": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
      "basisB": [[[0.707, 0], [0.707, 0]], [[0.707, 0], [-0.707, 0]]],
      "eta": 0.1
    }

``state.data`` is a vector for ``"pure"`` and a list of rows for ``"mixed"``.
Each basis is a list of ``dimension`` vectors. The optional ``eta`` mixes a
pure state with white noise, ``eta/d I + (1 - eta)|psi><psi|``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, TradeoffError, ValidationError
from .quantum import Basis, QuantumState, Scenario, depolarize, gram_residual

KNOWN_KEYS = {"dimension", "state", "basisA", "basisB", "eta"}


@dataclass(frozen=True, eq=False)
class ProblemFile:
    """Parsed problem. ``base`` keeps the state as written; ``scenario`` applies ``eta``."""

    base: Scenario
    eta: float | None = None

    @property
    def scenario(self) -> Scenario:
        if self.eta is None:
            return self.base
        return self.base.with_state(depolarize(self.base.state, self.eta))

    @property
    def dim(self) -> int:
        return self.base.dim


def _number(x, path) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"expected a number, got {type(x).__name__}", path)
    if not math.isfinite(x):
        raise ParseError("number is not finite", path)
    return float(x)


def _complex(x, path) -> complex:
    if not isinstance(x, list) or len(x) != 2:
        raise ParseError("expected a [re, im] pair", path)
    return complex(_number(x[0], f"{path}[0]"), _number(x[1], f"{path}[1]"))


def _vector(x, d, path) -> np.ndarray:
    if not isinstance(x, list):
        raise ParseError("expected a list of [re, im] pairs", path)
    if len(x) != d:
        raise ParseError(f"expected {d} entries, got {len(x)}", path)
    return np.array([_complex(c, f"{path}[{i}]") for i, c in enumerate(x)])


def _matrix_rows(x, d, path) -> np.ndarray:
    if not isinstance(x, list) or len(x) != d:
        raise ParseError(f"expected {d} rows", path)
    return np.array([_vector(row, d, f"{path}[{i}]") for i, row in enumerate(x)])


def _basis(x, d, path) -> Basis:
    if not isinstance(x, list) or len(x) != d:
        raise ParseError(f"expected {d} basis vectors", path)
    M = np.column_stack([_vector(v, d, f"{path}[{i}]") for i, v in enumerate(x)])
    res = gram_residual(M)
    try:
        return Basis(M)
    except ValidationError as exc:
        raise ValidationError(f"{path}: basis not orthonormal (Gram residual {res:.3e})") from exc


def _state(x, d) -> QuantumState:
    if not isinstance(x, dict):
        raise ParseError("expected an object with 'type' and 'data'", "state")
    kind = x.get("type")
    if kind not in ("pure", "mixed"):
        raise ParseError(f"type must be 'pure' or 'mixed', got {kind!r}", "state.type")
    if "data" not in x:
        raise ParseError("missing field", "state.data")
    try:
        if kind == "pure":
            return QuantumState.pure(_vector(x["data"], d, "state.data"))
        return QuantumState.mixed(_matrix_rows(x["data"], d, "state.data"))
    except ValidationError as exc:
        raise ValidationError(f"state.data: {exc}") from exc


def load_problem(text) -> ProblemFile:
    """Parse and validate a problem file given as ``str`` or UTF-8 ``bytes``."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    extra = sorted(set(doc) - KNOWN_KEYS)
    if extra:
        raise ParseError(f"unknown field {extra[0]!r}", extra[0])
    for key in ("dimension", "state", "basisA", "basisB"):
        if key not in doc:
            raise ParseError("missing field", key)
    d = doc["dimension"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise ParseError("must be an integer >= 2", "dimension")
    state = _state(doc["state"], d)
    A = _basis(doc["basisA"], d, "basisA")
    B = _basis(doc["basisB"], d, "basisB")
    eta = None
    if doc.get("eta") is not None:
        eta = _number(doc["eta"], "eta")
        if not 0.0 <= eta <= 1.0:
            raise ValidationError(f"eta: must lie in [0, 1], got {eta}")
        if not state.is_pure:
            raise ParseError("eta applies to pure states only", "eta")
    try:
        return ProblemFile(Scenario(state, A, B), eta)
    except TradeoffError as exc:
        raise ParseError(str(exc)) from exc


def parse_problem(text) -> Scenario:
    """Scenario described by a problem file, with any ``eta`` noise applied."""
    return load_problem(text).scenario


def _pairs(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v).ravel()]


def problem_to_dict(pf: ProblemFile | Scenario, eta: float | None = None) -> dict:
    if isinstance(pf, Scenario):
        pf = ProblemFile(pf, eta)
    s = pf.base
    if s.state.is_pure:
        data = _pairs(s.state.data)
    else:
        data = [_pairs(row) for row in s.state.data]
    doc = {
        "dimension": s.dim,
        "state": {"type": s.state.kind, "data": data},
        "basisA": [_pairs(v) for v in s.basis_a.vectors],
        "basisB": [_pairs(v) for v in s.basis_b.vectors],
    }
    if pf.eta is not None:
        doc["eta"] = float(pf.eta)
    return doc


def dump_problem(pf: ProblemFile | Scenario, eta: float | None = None) -> str:
    """Serialize to the problem-file format; floats are written exactly (repr)."""
    return json.dumps(problem_to_dict(pf, eta), indent=2, sort_keys=True) + "\n"
