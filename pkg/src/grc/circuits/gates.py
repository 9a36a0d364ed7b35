"""Builtin gate library with physical microstate encodings.

Computational states of an n-bit gate are bit strings. With multiplicity m each
state x is carried by the microstates x, x~1, ..., x~(m-1). Reversible gates act as
x~i -> g(x)~i; ``erase`` is a bijection into a single block twice as large;
``merge`` is the uniform lift of the 2-to-1 merge.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable
from dataclasses import dataclass, field

from ..errors import InvalidMultiplicity, UnknownGate
from ..labels import micro_label
from ..matrices import from_function
from ..partitioned import PMatrix, lift, make_pmatrix, pset_from_multiplicity

BitFunction = Callable[[tuple[int, ...]], tuple[int, ...]]


@dataclass
class GateDef:
    """A registered builtin gate."""

    name: str
    description: str
    build: Callable[[int, int], PMatrix]
    bits: int | None = None  # None: caller chooses
    tags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "bits": self.bits,
            "tags": self.tags,
        }


class GateRegistry:
    """Registry for builtin gates."""

    def __init__(self):
        self._gates: dict[str, GateDef] = {}

    def register(self, g: GateDef) -> None:
        self._gates[g.name] = g

    def get(self, name: str) -> GateDef | None:
        return self._gates.get(name)

    def list(self, tag: str | None = None) -> list[GateDef]:
        gates = list(self._gates.values())
        if tag:
            gates = [g for g in gates if tag in g.tags]
        return sorted(gates, key=lambda g: g.name)


_registry = GateRegistry()


def gate(
    name: str,
    description: str | None = None,
    bits: int | None = None,
    tags: list[str] | None = None,
):
    """Decorator registering a builder ``(multiplicity, bits) -> PMatrix``."""
    def decorator(func: Callable[[int, int], PMatrix]) -> Callable[[int, int], PMatrix]:
        _registry.register(GateDef(
            name=name,
            description=(description or func.__doc__ or "").strip().split("\n")[0],
            build=func,
            bits=bits,
            tags=tags or [],
        ))
        return func
    return decorator


def get_gate_registry() -> GateRegistry:
    return _registry


def bit_states(n: int) -> list[str]:
    return ["".join(map(str, bits)) for bits in itertools.product((0, 1), repeat=n)]


def _permutation_gate(fn: BitFunction, n: int, multiplicity: int) -> PMatrix:
    states = bit_states(n)
    pset = pset_from_multiplicity(states, multiplicity)
    mapping = {}
    for x in states:
        y = "".join(map(str, fn(tuple(int(c) for c in x))))
        for i in range(multiplicity):
            mapping[micro_label(x, i)] = micro_label(y, i)
    return make_pmatrix(from_function(pset.elements, pset.elements, mapping), pset, pset)


@gate("id", "Identity on n bits", tags=["reversible"])
def _identity(multiplicity: int, bits: int) -> PMatrix:
    return _permutation_gate(lambda b: b, bits, multiplicity)


@gate("not", "Bit flip", bits=1, tags=["reversible"])
def _not(multiplicity: int, bits: int) -> PMatrix:
    return _permutation_gate(lambda b: (1 - b[0],), 1, multiplicity)


@gate("cnot", "Controlled NOT: (c, t) -> (c, t xor c)", bits=2, tags=["reversible"])
def _cnot(multiplicity: int, bits: int) -> PMatrix:
    return _permutation_gate(lambda b: (b[0], b[1] ^ b[0]), 2, multiplicity)


@gate("toffoli", "Controlled-controlled NOT: (a, b, t) -> (a, b, t xor ab)", bits=3,
      tags=["reversible"])
def _toffoli(multiplicity: int, bits: int) -> PMatrix:
    return _permutation_gate(lambda b: (b[0], b[1], b[2] ^ (b[0] & b[1])), 3, multiplicity)


@gate("fredkin", "Controlled swap: (c, a, b) -> (c, b, a) when c = 1", bits=3,
      tags=["reversible"])
def _fredkin(multiplicity: int, bits: int) -> PMatrix:
    return _permutation_gate(lambda b: (b[0], b[2], b[1]) if b[0] else b, 3, multiplicity)


@gate("erase", "Landauer erasure: bijection of both blocks into one block of 2m microstates",
      bits=1, tags=["irreversible", "bijective"])
def _erase(multiplicity: int, bits: int) -> PMatrix:
    dom = pset_from_multiplicity(["0", "1"], multiplicity)
    cod = pset_from_multiplicity(["0"], 2 * multiplicity)
    mapping = {
        micro_label(b, i): micro_label("0", int(b) * multiplicity + i)
        for b in ("0", "1")
        for i in range(multiplicity)
    }
    return make_pmatrix(from_function(dom.elements, cod.elements, mapping), dom, cod)


@gate("merge", "Uniform lift of the 2-to-1 merge", bits=1, tags=["irreversible", "lifted"])
def _merge(multiplicity: int, bits: int) -> PMatrix:
    dom = pset_from_multiplicity(["0", "1"], multiplicity)
    cod = pset_from_multiplicity(["0"], multiplicity)
    mbar = from_function(("0", "1"), ("0",), {"0": "0", "1": "0"})
    return lift(mbar, dom, cod)


def builtin_gate(name: str, multiplicity: int = 1, bits: int | None = None) -> PMatrix:
    """Build a builtin gate's partitioned matrix."""
    g = _registry.get(name)
    if g is None:
        known = ", ".join(d.name for d in _registry.list())
        raise UnknownGate(f"unknown gate {name!r} (known: {known})")
    if isinstance(multiplicity, bool) or not isinstance(multiplicity, int) or multiplicity < 1:
        raise InvalidMultiplicity(f"multiplicity must be a positive integer, got {multiplicity!r}")
    if g.bits is not None:
        if bits is not None and bits != g.bits:
            raise UnknownGate(f"gate {name!r} acts on {g.bits} bit(s), not {bits}")
        bits = g.bits
    elif bits is None:
        bits = 1
    elif bits < 1:
        raise UnknownGate(f"gate {name!r} needs at least one bit")
    return g.build(multiplicity, bits)
