"""Conditional reversibility, non-entropy-ejection and the free transformations.

Reversibility is decided combinatorially (a restriction being a subpermutation);
entropies enter only where the definitions themselves are entropic: closedness of a
physical transformation and the computational-entropy comparison for ejection.
"""

from __future__ import annotations

import logging

from pydantic import BaseModel

from .cdu import is_deterministic, is_subpermutation
from .entropy import (
    DEFAULT_BASE,
    DEFAULT_TOLERANCE,
    CompContext,
    PhysContext,
    aggregate_context,
    entropy,
)
from .errors import (
    KeyOutsideSpace,
    NotClosedTransformation,
    NotDeterministic,
    ShapeMismatch,
)
from .labels import format_label
from .matrices import (
    Matrix,
    Subdist,
    apply,
    mass,
    restrict_rows,
    support_dist,
    support_matrix,
)
from .partitioned import PMatrix, aggregate, aggregate_dist
from .rational import format_rational

logger = logging.getLogger(__name__)


def is_comp_transformation(m: Matrix, p: CompContext, q: CompContext) -> bool:
    """pM = q, exactly."""
    if p.space != m.dom or q.space != m.cod:
        raise ShapeMismatch("contexts do not match the matrix shape")
    return apply(p.dist, m) == q.dist


def is_phys_transformation(
    m: PMatrix,
    p: PhysContext,
    q: PhysContext,
    tol: float = DEFAULT_TOLERANCE,
    base: float = DEFAULT_BASE,
) -> bool:
    """pM = q exactly and H(p) = H(q) within tol."""
    if p.pspace != m.dom or q.pspace != m.cod:
        raise ShapeMismatch("contexts do not match the partitioned matrix shape")
    if apply(p.dist, m.matrix) != q.dist:
        return False
    return abs(entropy(p.dist, base) - entropy(q.dist, base)) <= tol


def is_entropy_preserving(
    m: Matrix, p: Subdist, tol: float = DEFAULT_TOLERANCE, base: float = DEFAULT_BASE
) -> bool:
    return abs(entropy(apply(p, m), base) - entropy(p, base)) <= tol


def restrict(m: Matrix, p: Subdist) -> Matrix:
    """M restricted to the rows in supp p; the codomain is unchanged."""
    support = support_dist(p)
    for x in support:
        if x not in m.members:
            raise KeyOutsideSpace(f"{format_label(x)!r} is not in the matrix domain")
    return restrict_rows(m, support)


def is_conditionally_reversible(m: Matrix, p: CompContext) -> bool:
    """supp p is inside supp M and M restricted to supp p is a subpermutation."""
    if not is_deterministic(m):
        raise NotDeterministic("conditional reversibility is defined for deterministic matrices")
    if p.space != m.dom:
        raise ShapeMismatch("context is not over the matrix domain")
    if not support_dist(p.dist) <= support_matrix(m):
        return False
    return is_subpermutation(restrict(m, p.dist))


def _closed_target(
    m: PMatrix, p: PhysContext, tol: float, base: float
) -> PhysContext:
    if p.pspace != m.dom:
        raise ShapeMismatch("context is not over the partitioned matrix domain")
    q = apply(p.dist, m.matrix)
    if mass(q) != 1:
        raise NotClosedTransformation(
            f"output mass is {format_rational(mass(q))}, the transformation is not total "
            "on the context"
        )
    target = PhysContext(m.cod, q)
    if not is_phys_transformation(m, p, target, tol, base):
        raise NotClosedTransformation(
            f"physical entropy changes from {entropy(p.dist, base):.12g} "
            f"to {entropy(q, base):.12g}"
        )
    return target


def is_non_entropy_ejecting(
    m: PMatrix,
    p: PhysContext,
    tol: float = DEFAULT_TOLERANCE,
    base: float = DEFAULT_BASE,
) -> bool:
    """H_nc does not increase; for a closed transformation that is H_comp(p) <= H_comp(pM)."""
    q = _closed_target(m, p, tol, base)
    before = entropy(aggregate_dist(p.dist, p.pspace), base)
    after = entropy(aggregate_dist(q.dist, q.pspace), base)
    logger.debug(f"computational entropy {before:.12g} -> {after:.12g}")
    return before <= after + tol


def is_free_phy(
    m: PMatrix,
    p: PhysContext,
    tol: float = DEFAULT_TOLERANCE,
    base: float = DEFAULT_BASE,
) -> bool:
    """Non-entropy-ejecting with a deterministic aggregate."""
    return is_non_entropy_ejecting(m, p, tol, base) and is_deterministic(aggregate(m))


def is_free_comp(m: Matrix, p: CompContext) -> bool:
    return is_conditionally_reversible(m, p)


class FundamentalCheck(BaseModel):
    nee: bool
    condrev: bool
    agree: bool


def check_fundamental(
    m: PMatrix,
    p: PhysContext,
    tol: float = DEFAULT_TOLERANCE,
    base: float = DEFAULT_BASE,
) -> FundamentalCheck:
    """Compare non-entropy-ejection of M with conditional reversibility of its aggregate."""
    qm = aggregate(m)
    if not is_deterministic(qm):
        raise NotDeterministic("the aggregated transformation is not deterministic")
    nee = is_non_entropy_ejecting(m, p, tol, base)
    condrev = is_conditionally_reversible(qm, aggregate_context(p))
    if nee != condrev:
        logger.warning(f"fundamental check disagrees: nee={nee} condrev={condrev}")
    return FundamentalCheck(nee=nee, condrev=condrev, agree=nee == condrev)
