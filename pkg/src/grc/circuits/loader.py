"""Loading, elaborating and serializing circuit documents."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path

from pydantic import ValidationError

from ..entropy import PhysContext, make_phys_context
from ..errors import GrcError, ParseError, ShapeMismatch
from ..labels import parse_label
from ..matrices import from_function, make_matrix, subdist_from_doc
from ..partitioned import (
    PMatrix,
    PSet,
    make_pmatrix,
    make_pset,
    pkron,
    product_pset,
    pset_from_multiplicity,
)
from ..rational import parse_rational
from .gates import builtin_gate
from .models import CircuitDocument, GateDoc, SpaceDoc

logger = logging.getLogger(__name__)

StepRef = str | tuple[str, ...]


@dataclass
class CircuitSpec:
    """A validated circuit: spaces, gates, initial context and pipeline."""

    spaces: dict[str, PSet]
    gates: dict[str, PMatrix]
    context: PhysContext
    context_space: str
    pipeline: list[StepRef]
    # spaces declared as products of other spaces
    products: dict[str, tuple[str, ...]] = field(default_factory=dict)
    # declared dom/cod names of explicit gates
    gate_spaces: dict[str, tuple[str, str]] = field(default_factory=dict)
    source: str | None = None

    def step_name(self, step: StepRef) -> str:
        return step if isinstance(step, str) else " || ".join(step)


def parse_circuit(path: Path) -> CircuitSpec:
    """Read and fully validate a circuit file."""
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return load_circuit_text(text, source=str(path))


def load_circuit_text(text: str, source: str | None = None) -> CircuitSpec:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, position=(e.lineno, e.colno)) from None
    return load_document(parse_document(raw), source=source)


def parse_document(raw: object) -> CircuitDocument:
    try:
        return CircuitDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        path = ".".join(str(part) for part in first["loc"])
        raise ParseError(first["msg"], position=path or None) from None


def _build_space(name: str, doc: SpaceDoc, spaces: dict[str, PSet]) -> PSet:
    if doc.product is not None:
        missing = [n for n in doc.product if n not in spaces]
        if missing:
            raise ParseError(
                f"product refers to {missing[0]!r}, which is not declared before it",
                position=f"spaces.{name}.product",
            )
        return reduce(product_pset, (spaces[n] for n in doc.product))
    if doc.states is not None:
        return pset_from_multiplicity(
            [parse_label(s) for s in doc.states], doc.multiplicity or 1
        )
    elements = [parse_label(x) for x in doc.elements]
    if doc.partition is None:
        return make_pset(elements, [[x] for x in elements])
    return make_pset(elements, [[parse_label(x) for x in block] for block in doc.partition])


def _space_ref(name: str, spaces: dict[str, PSet], where: str) -> PSet:
    if name not in spaces:
        raise ParseError(f"unknown space {name!r}", position=where)
    return spaces[name]


def _build_gate(name: str, doc: GateDoc, spaces: dict[str, PSet]) -> PMatrix:
    if doc.builtin is not None:
        return builtin_gate(doc.builtin, doc.multiplicity or 1, doc.bits)
    dom = _space_ref(doc.dom, spaces, f"gates.{name}.dom")
    cod = _space_ref(doc.cod, spaces, f"gates.{name}.cod")
    if doc.mapping is not None:
        mapping = {parse_label(x): parse_label(y) for x, y in doc.mapping.items()}
        matrix = from_function(dom.elements, cod.elements, mapping)
    else:
        rows = {
            parse_label(x): {parse_label(y): parse_rational(v) for y, v in row.items()}
            for x, row in doc.rows.items()
        }
        matrix = make_matrix(dom.elements, cod.elements, rows)
    return make_pmatrix(matrix, dom, cod)


def load_document(doc: CircuitDocument, source: str | None = None) -> CircuitSpec:
    """Validate a parsed document; every partitioned-matrix condition is checked here."""
    spaces: dict[str, PSet] = {}
    products: dict[str, tuple[str, ...]] = {}
    for name, space_doc in doc.spaces.items():
        try:
            spaces[name] = _build_space(name, space_doc, spaces)
        except GrcError as e:
            raise e.located(subject=f"space {name!r}")
        if space_doc.product is not None:
            products[name] = tuple(space_doc.product)

    gates: dict[str, PMatrix] = {}
    gate_spaces: dict[str, tuple[str, str]] = {}
    for name, gate_doc in doc.gates.items():
        try:
            gates[name] = _build_gate(name, gate_doc, spaces)
        except GrcError as e:
            raise e.located(subject=f"gate {name!r}")
        if gate_doc.builtin is None:
            gate_spaces[name] = (gate_doc.dom, gate_doc.cod)

    pipeline: list[StepRef] = []
    for i, step in enumerate(doc.pipeline, start=1):
        names = [step] if isinstance(step, str) else step
        if not names:
            raise ParseError("empty parallel block", position=f"pipeline.{i - 1}")
        for gate_name in names:
            if gate_name not in gates:
                raise ParseError(f"unknown gate {gate_name!r}", position=f"pipeline.{i - 1}")
        pipeline.append(step if isinstance(step, str) else tuple(step))

    context_space = _space_ref(doc.context.space, spaces, "context.space")
    try:
        dist = subdist_from_doc(context_space.elements, doc.context.dist)
        context = make_phys_context(context_space, dist)
    except GrcError as e:
        raise e.located(subject="context")

    spec = CircuitSpec(
        spaces=spaces,
        gates=gates,
        context=context,
        context_space=doc.context.space,
        pipeline=pipeline,
        products=products,
        gate_spaces=gate_spaces,
        source=source,
    )
    steps = elaborate(spec)
    if steps[0].dom != context.pspace:
        raise ShapeMismatch("context space differs from the first step's domain", step=1)
    logger.debug(f"loaded circuit with {len(spaces)} spaces, {len(gates)} gates, "
                 f"{len(pipeline)} steps")
    return spec


def elaborate(spec: CircuitSpec) -> list[PMatrix]:
    """One partitioned matrix per step; parallel blocks are Kronecker products (left-assoc)."""
    steps: list[PMatrix] = []
    for i, step in enumerate(spec.pipeline, start=1):
        if isinstance(step, str):
            m = spec.gates[step]
        else:
            m = reduce(pkron, (spec.gates[name] for name in step))
        if steps and steps[-1].cod != m.dom:
            raise ShapeMismatch(
                f"{spec.step_name(step)!r} does not accept the output of the previous step",
                step=i,
            )
        steps.append(m)
    return steps
