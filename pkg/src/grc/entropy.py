"""Shannon entropy, physical/computational contexts and the entropy ledger.

Probabilities are exact; entropies are doubles. Floating point only ever
corroborates a decision, see ``grc.reversibility``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, field_serializer

from .errors import NotADistribution, ShapeMismatch
from .labels import Space
from .matrices import Subdist, mass, tensor_dist
from .partitioned import PSet, aggregate_dist, aggregate_set, product_pset
from .rational import format_rational

Bits = float

DEFAULT_TOLERANCE = 1e-9
DEFAULT_BASE = 2.0


def _log(value: float, base: float) -> float:
    if base == 2.0:
        return math.log2(value)
    return math.log(value, base)


def entropy(p: Subdist, base: float = DEFAULT_BASE) -> Bits:
    """H(p) = -sum p_x log p_x, with 0 log 0 = 0."""
    total = 0.0
    for _, value in p.items():
        v = float(value)
        total -= v * _log(v, base)
    # -0.0 for unit distributions
    return total + 0.0


@dataclass(frozen=True)
class CompContext:
    """A distribution on a computational state space."""

    space: Space
    dist: Subdist


@dataclass(frozen=True)
class PhysContext:
    """A distribution on the microstates of a partitioned set."""

    pspace: PSet
    dist: Subdist


def _require_distribution(p: Subdist) -> None:
    total = mass(p)
    if total != 1:
        raise NotADistribution(f"context mass is {format_rational(total)}, expected 1")


def make_comp_context(dist: Subdist) -> CompContext:
    _require_distribution(dist)
    return CompContext(dist.space, dist)


def make_phys_context(pspace: PSet, dist: Subdist) -> PhysContext:
    if dist.space != pspace.elements:
        raise ShapeMismatch("context distribution is not over the partitioned set")
    _require_distribution(dist)
    return PhysContext(pspace, dist)


def aggregate_context(ctx: PhysContext) -> CompContext:
    """The computational context seen through the aggregation functor."""
    return CompContext(aggregate_set(ctx.pspace), aggregate_dist(ctx.dist, ctx.pspace))


def tensor_context(a: PhysContext, b: PhysContext) -> PhysContext:
    return PhysContext(product_pset(a.pspace, b.pspace), tensor_dist(a.dist, b.dist))


def _sig12(value: float) -> float:
    return float(f"{value:.12g}")


class EntropyLedger(BaseModel):
    """Physical, computational and non-computational entropy of a physical context."""

    model_config = ConfigDict(frozen=True)

    h_phy: Bits
    h_comp: Bits
    h_nc: Bits

    @field_serializer("h_phy", "h_comp", "h_nc")
    def _round(self, value: float) -> float:
        return _sig12(value)


def ledger(ctx: PhysContext, base: float = DEFAULT_BASE) -> EntropyLedger:
    h_phy = entropy(ctx.dist, base)
    h_comp = entropy(aggregate_dist(ctx.dist, ctx.pspace), base)
    return EntropyLedger(h_phy=h_phy, h_comp=h_comp, h_nc=h_phy - h_comp)
