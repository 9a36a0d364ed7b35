"""Shared fixtures: gates, contexts and circuit files."""

import json
from fractions import Fraction

import pytest

from grc.circuits import builtin_gate
from grc.matrices import from_function, make_matrix


@pytest.fixture(autouse=True)
def grc_home(tmp_path, monkeypatch):
    """Keep every test away from the user's ~/.grc."""
    home = tmp_path / "grc-home"
    monkeypatch.setenv("GRC_HOME", str(home))
    monkeypatch.delenv("GRC_LOG_LEVEL", raising=False)
    return home


@pytest.fixture
def merge():
    """The computational 2-to-1 merge a, b -> c."""
    return from_function(("a", "b"), ("c",), {"a": "c", "b": "c"})


@pytest.fixture
def cnot_matrix():
    states = ("00", "01", "10", "11")
    return from_function(states, states, {"00": "00", "01": "01", "10": "11", "11": "10"})


@pytest.fixture
def noisy():
    """A row-substochastic matrix that is neither deterministic nor total."""
    return make_matrix(("a", "b"), ("y0", "y1"), {
        "a": {"y0": Fraction(1, 2), "y1": Fraction(1, 2)},
        "b": {"y0": Fraction(1, 3)},
    })


@pytest.fixture
def erase():
    return builtin_gate("erase", multiplicity=2)


@pytest.fixture
def cnot():
    return builtin_gate("cnot")


UNIFORM_BIT = {"0": "1/4", "0~1": "1/4", "1": "1/4", "1~1": "1/4"}
ZERO_BLOCK = {"0": "1/2", "0~1": "1/2"}


def _landauer(dist):
    return {
        "format": 1,
        "spaces": {"bit": {"states": ["0", "1"], "multiplicity": 2}},
        "gates": {"erase": {"builtin": "erase", "multiplicity": 2}},
        "context": {"space": "bit", "dist": dist},
        "pipeline": ["erase"],
    }


@pytest.fixture
def landauer_doc():
    """Landauer erasure (multiplicity 2) on the uniform bit."""
    return _landauer(UNIFORM_BIT)


@pytest.fixture
def landauer_zero_doc():
    """The same erasure on a context supported on block 0."""
    return _landauer(ZERO_BLOCK)


@pytest.fixture
def cnot_doc():
    states = ["00", "01", "10", "11"]
    return {
        "format": 1,
        "spaces": {"pair": {"elements": states}},
        "gates": {"cnot": {"builtin": "cnot"}},
        "context": {"space": "pair", "dist": {s: "1/4" for s in states}},
        "pipeline": ["cnot", "cnot"],
    }


@pytest.fixture
def write_circuit(tmp_path):
    """Write a circuit document (dict or raw text) and return its path."""
    def write(doc, name="circuit.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=2))
        return path
    return write


@pytest.fixture
def landauer_file(write_circuit, landauer_doc):
    return write_circuit(landauer_doc, "landauer.json")


@pytest.fixture
def landauer_zero_file(write_circuit, landauer_zero_doc):
    return write_circuit(landauer_zero_doc, "landauer-zero.json")


@pytest.fixture
def cnot_file(write_circuit, cnot_doc):
    return write_circuit(cnot_doc, "cnot.json")
