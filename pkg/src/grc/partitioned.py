"""Partitioned sets, partitioned matrices and the aggregation functor.

Blocks of a partitioned set are named by their least member (``label_key`` order),
and listed in order of first appearance among the elements. With this naming the
blocks of a product set are exactly the pairs of blocks, so aggregation commutes
with Kronecker products as an equality rather than up to relabelling.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cdu import copy_matrix, discard_matrix
from .errors import InvalidMultiplicity, NotAPartition, NotPartitioned, ShapeMismatch
from .labels import (
    UNIT_SPACE,
    Label,
    Space,
    format_label,
    label_key,
    make_space,
    micro_label,
    parse_label,
    product_space,
)
from .matrices import (
    ZERO,
    Matrix,
    Subdist,
    compose,
    identity,
    kron,
)
from .rational import format_rational


@dataclass(frozen=True)
class PSet:
    """A finite labelled set with a partition into blocks."""

    elements: Space
    blocks: tuple[tuple[Label, ...], ...]
    block_of: Mapping[Label, Label] = field(compare=False, hash=False, repr=False)

    @property
    def block_labels(self) -> Space:
        return tuple(self.block_of[block[0]] for block in self.blocks)

    def members(self, block_label: Label) -> tuple[Label, ...]:
        for block in self.blocks:
            if self.block_of[block[0]] == block_label:
                return block
        raise NotAPartition(f"no block named {format_label(block_label)!r}")


def make_pset(elements: Iterable[Label], blocks: Iterable[Iterable[Label]]) -> PSet:
    """Validate that ``blocks`` partition ``elements`` and assign canonical block names."""
    elements = make_space(elements)
    position = {x: i for i, x in enumerate(elements)}
    seen: set[Label] = set()
    normalised: list[tuple[Label, ...]] = []
    for raw in blocks:
        block = tuple(raw)
        if not block:
            raise NotAPartition("empty block")
        for x in block:
            if x not in position:
                raise NotAPartition(f"unknown label {format_label(x)!r} in partition")
            if x in seen:
                raise NotAPartition(f"label {format_label(x)!r} appears in two blocks")
            seen.add(x)
        normalised.append(tuple(sorted(block, key=position.__getitem__)))
    missing = [x for x in elements if x not in seen]
    if missing:
        raise NotAPartition(f"label {format_label(missing[0])!r} is in no block")
    normalised.sort(key=lambda block: position[block[0]])
    block_of: dict[Label, Label] = {}
    for block in normalised:
        name = min(block, key=label_key)
        for x in block:
            block_of[x] = name
    return PSet(elements, tuple(normalised), block_of)


def discrete_pset(elements: Iterable[Label]) -> PSet:
    elements = make_space(elements)
    return make_pset(elements, [[x] for x in elements])


def indiscrete_pset(elements: Iterable[Label]) -> PSet:
    elements = make_space(elements)
    return make_pset(elements, [elements])


def unit_pset() -> PSet:
    return discrete_pset(UNIT_SPACE)


def pset_from_multiplicity(states: Iterable[Label], multiplicity: int) -> PSet:
    """Each computational state x becomes the block {x, x~1, ..., x~(m-1)}."""
    if multiplicity < 1:
        raise InvalidMultiplicity(f"multiplicity must be at least 1, got {multiplicity}")
    blocks = [[micro_label(x, i) for i in range(multiplicity)] for x in make_space(states)]
    return make_pset([x for block in blocks for x in block], blocks)


def product_pset(p: PSet, q: PSet) -> PSet:
    """Componentwise partition of the product set."""
    blocks = [[(x, u) for x in b for u in c] for b in p.blocks for c in q.blocks]
    return make_pset(product_space(p.elements, q.elements), blocks)


def aggregate_set(p: PSet) -> Space:
    """The quotient set, as canonical block labels."""
    return p.block_labels


def _block_sums(entries: Iterable[tuple[Label, Fraction]], p: PSet) -> dict[Label, Fraction]:
    sums: dict[Label, Fraction] = defaultdict(Fraction)
    for y, value in entries:
        sums[p.block_of[y]] += value
    return {block: value for block, value in sums.items() if value}


def aggregate_dist(p: Subdist, pset: PSet) -> Subdist:
    """Block sums of p, a subdistribution on the quotient set."""
    if p.space != pset.elements:
        raise ShapeMismatch("subdistribution space differs from the partitioned set")
    return Subdist(aggregate_set(pset), _block_sums(p.items(), pset))


def lift_dist(p: Subdist, pset: PSet) -> Subdist:
    """Spread each block's mass uniformly over its members."""
    if p.space != aggregate_set(pset):
        raise ShapeMismatch("subdistribution space differs from the quotient set")
    entries = {}
    for block in pset.blocks:
        value = p.get(pset.block_of[block[0]])
        if value:
            for x in block:
                entries[x] = value / len(block)
    return Subdist(pset.elements, entries)


def dist_equiv(p: Subdist, q: Subdist, pset: PSet) -> bool:
    """Equal block sums on every block."""
    if q.space != pset.elements:
        raise ShapeMismatch("subdistribution space differs from the partitioned set")
    return aggregate_dist(p, pset) == aggregate_dist(q, pset)


def _check_shape(m: Matrix, dom: PSet, cod: PSet) -> None:
    if m.dom != dom.elements or m.cod != cod.elements:
        raise ShapeMismatch("matrix shape differs from the partitioned sets")


def _partition_violation(m: Matrix, dom: PSet, cod: PSet) -> tuple[Label, Label, Label] | None:
    for block in dom.blocks:
        reference = _block_sums(m.row(block[0]).items(), cod)
        for x in block[1:]:
            sums = _block_sums(m.row(x).items(), cod)
            if sums != reference:
                differing = next(
                    b for b in cod.block_labels if sums.get(b, ZERO) != reference.get(b, ZERO)
                )
                return block[0], x, differing
    return None


def is_partitioned(m: Matrix, dom: PSet, cod: PSet) -> bool:
    """Equivalent rows have equal codomain block sums."""
    _check_shape(m, dom, cod)
    return _partition_violation(m, dom, cod) is None


@dataclass(frozen=True)
class PMatrix:
    """A partitioned matrix. Build with :func:`make_pmatrix`."""

    dom: PSet
    cod: PSet
    matrix: Matrix


def make_pmatrix(m: Matrix, dom: PSet, cod: PSet) -> PMatrix:
    _check_shape(m, dom, cod)
    violation = _partition_violation(m, dom, cod)
    if violation is not None:
        x, x2, block = violation
        a = _block_sums(m.row(x).items(), cod).get(block, ZERO)
        b = _block_sums(m.row(x2).items(), cod).get(block, ZERO)
        raise NotPartitioned(
            f"rows {format_label(x)!r} and {format_label(x2)!r} are equivalent but send "
            f"{format_rational(a)} vs {format_rational(b)} into block {format_label(block)!r}",
            rows=(x, x2),
            block=block,
        )
    return PMatrix(dom, cod, m)


def pmatrix_equiv(m: PMatrix, n: PMatrix) -> bool:
    """Rowwise equal block sums; by linearity this decides equivalence on all inputs."""
    if m.dom != n.dom or m.cod != n.cod:
        raise ShapeMismatch("partitioned matrices have different shapes")
    return all(
        _block_sums(m.matrix.row(x).items(), m.cod) == _block_sums(n.matrix.row(x).items(), n.cod)
        for x in m.dom.elements
    )


def aggregate(m: PMatrix) -> Matrix:
    """The aggregated matrix on block labels: ([x], [y]) -> sum over [y] of M_{x,-}."""
    rows = {}
    for block in m.dom.blocks:
        sums = _block_sums(m.matrix.row(block[0]).items(), m.cod)
        if sums:
            rows[m.dom.block_of[block[0]]] = sums
    return Matrix(aggregate_set(m.dom), aggregate_set(m.cod), rows)


def lift(mbar: Matrix, dom: PSet, cod: PSet) -> PMatrix:
    """A partitioned matrix aggregating to ``mbar``: N_{x,y} = Mbar_{[x],[y]} / |[y]|."""
    if mbar.dom != aggregate_set(dom) or mbar.cod != aggregate_set(cod):
        raise ShapeMismatch("matrix shape differs from the quotient sets")
    members_of = {cod.block_of[block[0]]: block for block in cod.blocks}
    rows = {}
    for x in dom.elements:
        row = {}
        for by, value in mbar.row(dom.block_of[x]).items():
            members = members_of[by]
            for y in members:
                row[y] = value / len(members)
        if row:
            rows[x] = row
    return PMatrix(dom, cod, Matrix(dom.elements, cod.elements, rows))


def pidentity(p: PSet) -> PMatrix:
    return PMatrix(p, p, identity(p.elements))


def pcompose(m: PMatrix, n: PMatrix) -> PMatrix:
    if m.cod != n.dom:
        raise ShapeMismatch("codomain partition differs from the next domain partition")
    return PMatrix(m.dom, n.cod, compose(m.matrix, n.matrix))


def pkron(m: PMatrix, n: PMatrix) -> PMatrix:
    return PMatrix(
        product_pset(m.dom, n.dom),
        product_pset(m.cod, n.cod),
        kron(m.matrix, n.matrix),
    )


def pcopy(p: PSet) -> PMatrix:
    return PMatrix(p, product_pset(p, p), copy_matrix(p.elements))


def pdiscard(p: PSet) -> PMatrix:
    return PMatrix(p, unit_pset(), discard_matrix(p.elements))


# -- serialization --------------------------------------------------------------------


def pset_to_doc(p: PSet) -> dict[str, Any]:
    return {
        "elements": [format_label(x) for x in p.elements],
        "partition": [[format_label(x) for x in block] for block in p.blocks],
    }


def pset_from_doc(doc: Mapping[str, Sequence[Any]]) -> PSet:
    return make_pset(
        [parse_label(x) for x in doc["elements"]],
        [[parse_label(x) for x in block] for block in doc["partition"]],
    )
