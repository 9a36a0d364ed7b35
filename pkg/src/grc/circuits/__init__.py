"""
Circuits - circuit files over partitioned state spaces.

A circuit document declares spaces, gates (explicit or builtin), an initial physical
context and a pipeline of steps. Steps run in sequence; a parallel block is the
Kronecker product of its gates.
"""

from .analysis import analyze
from .gates import builtin_gate, get_gate_registry
from .loader import CircuitSpec, elaborate, load_circuit_text, parse_circuit
from .models import AnalysisReport, CircuitDocument, StepReport
from .transform import aggregate_circuit, canonical_document, dump_document, lift_circuit

__all__ = [
    "AnalysisReport",
    "CircuitDocument",
    "CircuitSpec",
    "StepReport",
    "aggregate_circuit",
    "analyze",
    "builtin_gate",
    "canonical_document",
    "dump_document",
    "elaborate",
    "get_gate_registry",
    "lift_circuit",
    "load_circuit_text",
    "parse_circuit",
]
