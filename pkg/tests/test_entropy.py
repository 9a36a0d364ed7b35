"""Entropy, contexts and the entropy ledger."""

from fractions import Fraction as F

import pytest

from grc.entropy import (
    aggregate_context,
    entropy,
    ledger,
    make_comp_context,
    make_phys_context,
    tensor_context,
)
from grc.errors import NotADistribution, ShapeMismatch
from grc.matrices import make_subdist, unit, zero_subdist
from grc.partitioned import (
    discrete_pset,
    indiscrete_pset,
    make_pset,
    pset_from_multiplicity,
)


def _uniform(space):
    return make_subdist(space, {x: F(1, len(space)) for x in space})


class TestEntropy:
    def test_unit_is_zero(self):
        assert entropy(unit(("x", "y"), "x")) == 0.0

    def test_zero_is_zero(self):
        assert entropy(zero_subdist(("x",))) == 0.0

    def test_fair_coin(self):
        assert entropy(_uniform(("x", "y"))) == pytest.approx(1.0, abs=1e-12)

    def test_quarter(self):
        p = make_subdist(("x", "y"), {"x": F(1, 4), "y": F(3, 4)})
        assert entropy(p) == pytest.approx(0.8112781245, abs=1e-9)

    def test_base(self):
        p = _uniform(("a", "b", "c"))
        assert entropy(p, base=3.0) == pytest.approx(1.0, abs=1e-12)

    def test_subdistribution(self):
        # 0.5 * log2(2) for the single half-weight entry
        assert entropy(make_subdist(("x",), {"x": F(1, 2)})) == pytest.approx(0.5)


class TestContexts:
    def test_phys_context_requires_mass_one(self):
        pspace = discrete_pset(("a", "b"))
        with pytest.raises(NotADistribution):
            make_phys_context(pspace, make_subdist(pspace.elements, {"a": F(1, 2)}))

    def test_phys_context_space_checked(self):
        with pytest.raises(ShapeMismatch):
            make_phys_context(discrete_pset(("a", "b")), unit(("c",), "c"))

    def test_comp_context(self):
        ctx = make_comp_context(unit(("a", "b"), "b"))
        assert ctx.space == ("a", "b")
        with pytest.raises(NotADistribution):
            make_comp_context(zero_subdist(("a",)))

    def test_aggregate_context(self):
        pspace = pset_from_multiplicity(["0", "1"], 2)
        ctx = make_phys_context(pspace, _uniform(pspace.elements))
        comp = aggregate_context(ctx)
        assert comp.space == ("0", "1")
        assert comp.dist == _uniform(("0", "1"))


class TestLedger:
    def test_discrete_has_no_hidden_entropy(self):
        pspace = discrete_pset(("a", "b", "c"))
        entry = ledger(make_phys_context(pspace, _uniform(pspace.elements)))
        assert entry.h_nc == pytest.approx(0.0, abs=1e-12)
        assert entry.h_phy == pytest.approx(entry.h_comp)

    def test_two_blocks_of_two(self):
        pspace = make_pset(["a", "b", "c", "d"], [["a", "b"], ["c", "d"]])
        entry = ledger(make_phys_context(pspace, _uniform(pspace.elements)))
        assert entry.h_phy == pytest.approx(2.0)
        assert entry.h_comp == pytest.approx(1.0)
        assert entry.h_nc == pytest.approx(1.0)

    def test_single_block(self):
        pspace = indiscrete_pset(("a", "b", "c"))
        dist = make_subdist(pspace.elements, {"a": F(1, 2), "b": F(1, 4), "c": F(1, 4)})
        entry = ledger(make_phys_context(pspace, dist))
        assert entry.h_comp == 0.0
        assert entry.h_nc == pytest.approx(entry.h_phy)
        assert entry.h_phy == pytest.approx(1.5)

    def test_tensor_is_additive(self):
        left = pset_from_multiplicity(["0", "1"], 2)
        right = make_pset(["u", "v", "w"], [["u", "v"], ["w"]])
        p = make_phys_context(left, make_subdist(left.elements, {
            "0": F(1, 2), "0~1": F(1, 4), "1": F(1, 4),
        }))
        q = make_phys_context(right, make_subdist(right.elements, {
            "u": F(1, 3), "v": F(1, 6), "w": F(1, 2),
        }))
        joint = ledger(tensor_context(p, q))
        a, b = ledger(p), ledger(q)
        assert joint.h_phy == pytest.approx(a.h_phy + b.h_phy, abs=1e-9)
        assert joint.h_comp == pytest.approx(a.h_comp + b.h_comp, abs=1e-9)
        assert joint.h_nc == pytest.approx(a.h_nc + b.h_nc, abs=1e-9)

    def test_serialized_to_twelve_digits(self):
        pspace = discrete_pset(("x", "y"))
        dist = make_subdist(pspace.elements, {"x": F(1, 3), "y": F(2, 3)})
        dumped = ledger(make_phys_context(pspace, dist)).model_dump()
        assert dumped["h_phy"] == float(f"{entropy(dist):.12g}")
        assert dumped["h_nc"] == 0.0
