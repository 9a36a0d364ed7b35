"""File-to-file transformations: canonical form, aggregation and lifting.

All three rebuild the document the same way. Spaces declared as products stay
products of their (transformed) components; every other space is written out as
``elements`` + ``partition``; every gate becomes explicit ``rows`` between named
spaces. Builtin gates get spaces named ``<gate>.dom`` / ``<gate>.cod`` unless an equal
space is already declared.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from functools import reduce

from ..entropy import PhysContext
from ..matrices import Matrix, Subdist, matrix_to_doc, subdist_to_doc
from ..partitioned import (
    PMatrix,
    PSet,
    aggregate,
    aggregate_dist,
    aggregate_set,
    discrete_pset,
    lift,
    lift_dist,
    product_pset,
    pset_from_multiplicity,
    pset_to_doc,
)
from .loader import CircuitSpec
from .models import CircuitDocument, ContextDoc, GateDoc, SpaceDoc

SpaceFn = Callable[[PSet], PSet]
GateFn = Callable[[PMatrix, PSet, PSet], Matrix]
DistFn = Callable[[PhysContext, PSet], Subdist]


def _space_names(spec: CircuitSpec) -> tuple[dict[str, PSet], dict[str, tuple[str, str]]]:
    spaces = dict(spec.spaces)
    refs: dict[str, tuple[str, str]] = {}

    def find(pset: PSet, fallback: str) -> str:
        for name, declared in spaces.items():
            if declared == pset:
                return name
        while fallback in spaces:
            fallback += "'"
        spaces[fallback] = pset
        return fallback

    for name, g in spec.gates.items():
        if name in spec.gate_spaces:
            refs[name] = spec.gate_spaces[name]
        else:
            refs[name] = (find(g.dom, f"{name}.dom"), find(g.cod, f"{name}.cod"))
    return spaces, refs


def _rebuild(
    spec: CircuitSpec, space_fn: SpaceFn, gate_fn: GateFn, dist_fn: DistFn
) -> CircuitDocument:
    spaces, refs = _space_names(spec)

    new_spaces: dict[str, PSet] = {}
    space_docs: dict[str, SpaceDoc] = {}
    for name, pset in spaces.items():
        if name in spec.products:
            components = spec.products[name]
            new_spaces[name] = reduce(product_pset, (new_spaces[c] for c in components))
            space_docs[name] = SpaceDoc(product=list(components))
        else:
            new_spaces[name] = space_fn(pset)
            space_docs[name] = SpaceDoc(**pset_to_doc(new_spaces[name]))

    gate_docs: dict[str, GateDoc] = {}
    for name, g in spec.gates.items():
        dom_name, cod_name = refs[name]
        matrix = gate_fn(g, new_spaces[dom_name], new_spaces[cod_name])
        gate_docs[name] = GateDoc(dom=dom_name, cod=cod_name, rows=matrix_to_doc(matrix)["rows"])

    dist = dist_fn(spec.context, new_spaces[spec.context_space])
    return CircuitDocument(
        spaces=space_docs,
        gates=gate_docs,
        context=ContextDoc(space=spec.context_space, dist=subdist_to_doc(dist)),
        pipeline=[step if isinstance(step, str) else list(step) for step in spec.pipeline],
    )


def canonical_document(spec: CircuitSpec) -> CircuitDocument:
    return _rebuild(
        spec,
        space_fn=lambda p: p,
        gate_fn=lambda g, dom, cod: g.matrix,
        dist_fn=lambda ctx, space: ctx.dist,
    )


def aggregate_circuit(spec: CircuitSpec) -> CircuitDocument:
    """The computational circuit: every space replaced by its quotient."""
    return _rebuild(
        spec,
        space_fn=lambda p: discrete_pset(aggregate_set(p)),
        gate_fn=lambda g, dom, cod: aggregate(g),
        dist_fn=lambda ctx, space: aggregate_dist(ctx.dist, ctx.pspace),
    )


def lift_circuit(spec: CircuitSpec, multiplicity: int) -> CircuitDocument:
    """A physical circuit with ``multiplicity`` microstates per computational state.

    Spaces that are already partitioned are lifted from their quotient, so the
    result always aggregates back to the computational circuit.
    """
    return _rebuild(
        spec,
        space_fn=lambda p: pset_from_multiplicity(aggregate_set(p), multiplicity),
        gate_fn=lambda g, dom, cod: lift(aggregate(g), dom, cod).matrix,
        dist_fn=lambda ctx, space: lift_dist(aggregate_dist(ctx.dist, ctx.pspace), space),
    )


def dump_document(doc: CircuitDocument) -> str:
    """Canonical JSON text: declaration order, two-space indent, trailing newline."""
    data = doc.model_dump(mode="json", exclude_none=True, by_alias=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
