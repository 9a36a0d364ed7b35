"""Copy/discard structure of the matrix category and the predicates it defines.

The predicates are decided on rows (unit rows, row masses, row collisions); the
equational definitions they agree with are checked by the law suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotSubpermutation, ShapeMismatch
from .labels import UNIT_LABEL, UNIT_SPACE, Label, Space, make_space, product_space
from .matrices import (
    ONE,
    ZERO,
    Matrix,
    compose,
    row_mass,
    transpose,
)


def copy_matrix(space: Space) -> Matrix:
    """Shape (X, X x X); row x is the unit distribution on (x, x)."""
    space = make_space(space)
    return Matrix(space, product_space(space, space), {x: {(x, x): ONE} for x in space})


def discard_matrix(space: Space) -> Matrix:
    """Shape (X, 1); every row is the unit distribution on the unit label."""
    space = make_space(space)
    return Matrix(space, UNIT_SPACE, {x: {UNIT_LABEL: ONE} for x in space})


def right_unitor(space: Space) -> Matrix:
    """X -> X x 1, x -> (x, *)."""
    space = make_space(space)
    rows = {x: {(x, UNIT_LABEL): ONE} for x in space}
    return Matrix(space, product_space(space, UNIT_SPACE), rows)


def left_unitor(space: Space) -> Matrix:
    """X -> 1 x X, x -> (*, x)."""
    space = make_space(space)
    rows = {x: {(UNIT_LABEL, x): ONE} for x in space}
    return Matrix(space, product_space(UNIT_SPACE, space), rows)


def associator(a: Space, b: Space, c: Space) -> Matrix:
    """(A x B) x C -> A x (B x C)."""
    dom = product_space(product_space(a, b), c)
    return Matrix(dom, product_space(a, product_space(b, c)),
                  {((x, y), z): {(x, (y, z)): ONE} for (x, y), z in dom})


def dom_matrix(m: Matrix) -> Matrix:
    """Domain of definition: diagonal matrix of row masses."""
    return Matrix(m.dom, m.dom, {x: {x: sum(row.values(), ZERO)} for x, row in m.rows()})


def _unit_target(row) -> Label | None:
    if len(row) == 1:
        (y, value), = row.items()
        if value == 1:
            return y
    return None


def deterministic_map(m: Matrix) -> dict[Label, Label] | None:
    """The partial function supp M -> cod carried by M, or None if M is not deterministic."""
    mapping: dict[Label, Label] = {}
    for x, row in m.rows():
        y = _unit_target(row)
        if y is None:
            return None
        mapping[x] = y
    return mapping


def is_deterministic(m: Matrix) -> bool:
    """Every nonzero row is a unit distribution."""
    return deterministic_map(m) is not None


def is_total(m: Matrix) -> bool:
    """Every row has mass exactly 1."""
    return all(row_mass(m, x) == 1 for x in m.dom)


def is_quasi_total(m: Matrix) -> bool:
    """Every row is zero or has mass 1 (equivalently dom(M) M = M)."""
    return all(sum(row.values(), ZERO) == 1 for _, row in m.rows())


def is_subpermutation(m: Matrix) -> bool:
    """Deterministic and injective on its support."""
    mapping = deterministic_map(m)
    if mapping is None:
        return False
    return len(set(mapping.values())) == len(mapping)


def is_permutation(m: Matrix) -> bool:
    """A total subpermutation whose transpose is also total, i.e. an isomorphism."""
    return (
        len(m.dom) == len(m.cod)
        and is_total(m)
        and is_subpermutation(m)
    )


def partial_inverse(m: Matrix) -> Matrix:
    """The transpose of a subpermutation matrix, which is its partial inverse."""
    if not is_subpermutation(m):
        raise NotSubpermutation("matrix is not a subpermutation, it has no partial inverse")
    return transpose(m)


@dataclass(frozen=True)
class PartialIsoWitness:
    forward: Matrix
    reverse: Matrix


def verify_partial_iso(w: PartialIsoWitness) -> bool:
    """Check f f^r = dom(f) and f^r f = dom(f^r) exactly."""
    f, r = w.forward, w.reverse
    if f.cod != r.dom or r.cod != f.dom:
        raise ShapeMismatch("reverse must have the transposed shape of forward")
    return compose(f, r) == dom_matrix(f) and compose(r, f) == dom_matrix(r)
