"""Exact subdistributions and substochastic matrices.

Values are ``Fraction`` throughout; nothing here is ever rounded. Both ``Subdist``
and ``Matrix`` are immutable once built and store only their nonzero entries.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator, Mapping
from fractions import Fraction
from typing import Any

from .errors import (
    KeyOutsideSpace,
    MassExceedsOne,
    NegativeEntry,
    NotColumnSubstochastic,
    ShapeMismatch,
)
from .labels import (
    UNIT_LABEL,
    UNIT_SPACE,
    Label,
    Space,
    format_label,
    make_space,
    parse_label,
    product_space,
)
from .rational import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


class Subdist:
    """A finitely supported weight function on ``space`` with total mass at most 1."""

    __slots__ = ("space", "_entries")

    def __init__(self, space: Space, entries: dict[Label, Fraction]):
        # Unchecked; use make_subdist for untrusted input.
        self.space = space
        self._entries = entries

    def get(self, x: Label) -> Fraction:
        return self._entries.get(x, ZERO)

    def items(self) -> Iterator[tuple[Label, Fraction]]:
        """Nonzero entries, in space order."""
        for x in self.space:
            if x in self._entries:
                yield x, self._entries[x]

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subdist):
            return NotImplemented
        return self.space == other.space and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{format_label(x)}: {format_rational(v)}" for x, v in self.items())
        return f"Subdist({{{body}}})"


class Matrix:
    """A substochastic matrix of shape (dom, cod) stored as sparse rows."""

    __slots__ = ("dom", "cod", "_rows", "_members")

    def __init__(self, dom: Space, cod: Space, rows: dict[Label, dict[Label, Fraction]]):
        # Unchecked; rows must be nonzero, entries positive. Use make_matrix otherwise.
        self.dom = dom
        self.cod = cod
        self._rows = rows
        self._members: frozenset[Label] | None = None

    @property
    def members(self) -> frozenset[Label]:
        if self._members is None:
            self._members = frozenset(self.dom)
        return self._members

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.dom), len(self.cod)

    def entry(self, x: Label, y: Label) -> Fraction:
        return self._rows.get(x, {}).get(y, ZERO)

    def row(self, x: Label) -> Subdist:
        if x not in self._rows and x not in self.members:
            raise KeyOutsideSpace(f"{format_label(x)!r} is not in the domain")
        return Subdist(self.cod, dict(self._rows.get(x, {})))

    def rows(self) -> Iterator[tuple[Label, Mapping[Label, Fraction]]]:
        """Nonzero rows in domain order."""
        for x in self.dom:
            if x in self._rows:
                yield x, self._rows[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, frozenset(
            (x, frozenset(row.items())) for x, row in self._rows.items()
        )))

    def __repr__(self) -> str:
        return f"Matrix({len(self.dom)}x{len(self.cod)}, {matrix_to_doc(self)['rows']})"


def _check_entries(space: Space, entries: Mapping[Label, Any]) -> dict[Label, Fraction]:
    members = set(space)
    clean: dict[Label, Fraction] = {}
    total = ZERO
    for x, raw in entries.items():
        if x not in members:
            raise KeyOutsideSpace(f"{format_label(x)!r} is not in the space")
        value = Fraction(raw)
        if value < 0:
            raise NegativeEntry(f"entry {format_label(x)!r} is negative ({value})")
        if value == 0:
            continue
        clean[x] = value
        total += value
    if total > 1:
        raise MassExceedsOne(f"total mass {format_rational(total)} exceeds 1")
    return clean


def make_subdist(space: Space, entries: Mapping[Label, Any]) -> Subdist:
    """Validate and normalise a subdistribution; zero entries are dropped."""
    space = make_space(space)
    return Subdist(space, _check_entries(space, entries))


def zero_subdist(space: Space) -> Subdist:
    return Subdist(make_space(space), {})


def unit(space: Space, x: Label) -> Subdist:
    """The unit distribution on x."""
    space = make_space(space)
    if x not in set(space):
        raise KeyOutsideSpace(f"{format_label(x)!r} is not in the space")
    return Subdist(space, {x: ONE})


def mass(p: Subdist) -> Fraction:
    return sum(p._entries.values(), ZERO)


def support_dist(p: Subdist) -> frozenset[Label]:
    return frozenset(p._entries)


def tensor_dist(p: Subdist, q: Subdist) -> Subdist:
    """Product subdistribution on the product space."""
    return Subdist(
        product_space(p.space, q.space),
        {(x, u): a * b for x, a in p.items() for u, b in q.items()},
    )


def make_matrix(dom: Space, cod: Space, rows: Mapping[Label, Any]) -> Matrix:
    """Build a matrix from ``{x: {y: value}}`` (or ``{x: Subdist}``); absent rows are zero."""
    dom = make_space(dom)
    cod = make_space(cod)
    members = set(dom)
    clean: dict[Label, dict[Label, Fraction]] = {}
    for x, row in rows.items():
        if x not in members:
            raise KeyOutsideSpace(f"row {format_label(x)!r} is not in the domain")
        if isinstance(row, Subdist):
            if row.space != cod:
                raise ShapeMismatch(f"row {format_label(x)!r} is not over the codomain")
            row = dict(row.items())
        try:
            entries = _check_entries(cod, row)
        except (KeyOutsideSpace, NegativeEntry, MassExceedsOne) as e:
            raise type(e)(f"row {format_label(x)!r}: {e}") from None
        if entries:
            clean[x] = entries
    return Matrix(dom, cod, clean)


def identity(space: Space) -> Matrix:
    space = make_space(space)
    return Matrix(space, space, {x: {x: ONE} for x in space})


def zero_matrix(dom: Space, cod: Space) -> Matrix:
    return Matrix(make_space(dom), make_space(cod), {})


def from_function(dom: Space, cod: Space, mapping: Mapping[Label, Label]) -> Matrix:
    """Deterministic matrix of a partial function; unmapped rows are zero."""
    return make_matrix(dom, cod, {x: {y: ONE} for x, y in mapping.items()})


def swap_matrix(left: Space, right: Space) -> Matrix:
    """Symmetry of the Kronecker product, shape (left x right, right x left)."""
    dom = product_space(left, right)
    return Matrix(dom, product_space(right, left), {(x, y): {(y, x): ONE} for x, y in dom})


def compose(m: Matrix, n: Matrix) -> Matrix:
    """Matrix product MN (first M, then N)."""
    if m.cod != n.dom:
        raise ShapeMismatch(
            f"cannot compose: codomain has {len(m.cod)} labels, domain has {len(n.dom)}"
            if len(m.cod) != len(n.dom) else "cannot compose: codomain and domain differ"
        )
    rows: dict[Label, dict[Label, Fraction]] = {}
    for x, row in m.rows():
        acc: dict[Label, Fraction] = defaultdict(Fraction)
        for y, a in row.items():
            for z, b in n._rows.get(y, {}).items():
                acc[z] += a * b
        if acc:
            rows[x] = dict(acc)
    return Matrix(m.dom, n.cod, rows)


def kron(m: Matrix, n: Matrix) -> Matrix:
    rows = {
        (x, u): {(y, v): a * b for y, a in mrow.items() for v, b in nrow.items()}
        for x, mrow in m.rows()
        for u, nrow in n.rows()
    }
    return Matrix(product_space(m.dom, n.dom), product_space(m.cod, n.cod), rows)


def column_mass(m: Matrix, y: Label) -> Fraction:
    return sum((row.get(y, ZERO) for row in m._rows.values()), ZERO)


def transpose(m: Matrix) -> Matrix:
    """Transpose; defined only when every column sums to at most 1."""
    rows: dict[Label, dict[Label, Fraction]] = defaultdict(dict)
    for x, row in m.rows():
        for y, value in row.items():
            rows[y][x] = value
    for y, column in rows.items():
        total = sum(column.values(), ZERO)
        if total > 1:
            raise NotColumnSubstochastic(
                f"column {format_label(y)!r} has mass {format_rational(total)}"
            )
    return Matrix(m.cod, m.dom, dict(rows))


def apply(p: Subdist, m: Matrix) -> Subdist:
    """Push p through M: (pM)_y = sum_x p_x M_{x,y}."""
    if p.space != m.dom:
        raise ShapeMismatch("subdistribution space differs from the matrix domain")
    acc: dict[Label, Fraction] = defaultdict(Fraction)
    for x, a in p.items():
        for y, b in m._rows.get(x, {}).items():
            acc[y] += a * b
    return Subdist(m.cod, dict(acc))


def support_matrix(m: Matrix) -> frozenset[Label]:
    return frozenset(m._rows)


def row_mass(m: Matrix, x: Label) -> Fraction:
    return sum(m._rows.get(x, {}).values(), ZERO)


def restrict_rows(m: Matrix, labels: frozenset[Label] | set[Label]) -> Matrix:
    """Submatrix on the given domain labels (kept in domain order), codomain unchanged."""
    outside = [x for x in labels if x not in m.members]
    if outside:
        raise KeyOutsideSpace(f"{format_label(outside[0])!r} is not in the domain")
    dom = tuple(x for x in m.dom if x in labels)
    return Matrix(dom, m.cod, {x: dict(m._rows[x]) for x in dom if x in m._rows})


def unit_matrix() -> Matrix:
    """The unique distribution matrix of shape (1, 1)."""
    return Matrix(UNIT_SPACE, UNIT_SPACE, {UNIT_LABEL: {UNIT_LABEL: ONE}})


# -- serialization --------------------------------------------------------------------


def subdist_to_doc(p: Subdist) -> dict[str, str]:
    return {format_label(x): format_rational(v) for x, v in p.items()}


def subdist_from_doc(space: Space, doc: Mapping[str, Any]) -> Subdist:
    return make_subdist(space, {parse_label(k): parse_rational(v) for k, v in doc.items()})


def matrix_to_doc(m: Matrix) -> dict[str, Any]:
    return {
        "dom": [format_label(x) for x in m.dom],
        "cod": [format_label(y) for y in m.cod],
        "rows": {
            format_label(x): {format_label(y): format_rational(v)
                              for y in m.cod if (v := row.get(y)) is not None}
            for x, row in m.rows()
        },
    }


def matrix_from_doc(doc: Mapping[str, Any]) -> Matrix:
    dom = make_space(parse_label(x) for x in doc["dom"])
    cod = make_space(parse_label(y) for y in doc["cod"])
    rows = {
        parse_label(x): {parse_label(y): parse_rational(v) for y, v in row.items()}
        for x, row in doc.get("rows", {}).items()
    }
    return make_matrix(dom, cod, rows)
