"""Partitioned sets, partitioned matrices and aggregation."""

from fractions import Fraction as F

import pytest

from grc.errors import InvalidMultiplicity, NotAPartition, NotPartitioned, ShapeMismatch
from grc.matrices import (
    apply,
    compose,
    from_function,
    identity,
    kron,
    make_matrix,
    make_subdist,
    unit,
    zero_subdist,
)
from grc.partitioned import (
    aggregate,
    aggregate_dist,
    aggregate_set,
    discrete_pset,
    dist_equiv,
    indiscrete_pset,
    is_partitioned,
    lift,
    lift_dist,
    make_pmatrix,
    make_pset,
    pcompose,
    pidentity,
    pkron,
    pmatrix_equiv,
    product_pset,
    pset_from_doc,
    pset_from_multiplicity,
    pset_to_doc,
    unit_pset,
)


@pytest.fixture
def a_blocks():
    return make_pset(["a0", "a1", "b"], [["a0", "a1"], ["b"]])


@pytest.fixture
def uvw():
    return make_pset(["u", "v", "w"], [["u", "v"], ["w"]])


def _rows(a1_row):
    return {
        "a0": {"u": F(1, 2), "v": F(1, 2)},
        "a1": a1_row,
        "b": {"w": F(1)},
    }


@pytest.fixture
def partitioned_matrix(a_blocks, uvw):
    return make_matrix(a_blocks.elements, uvw.elements, _rows({"u": F(1, 4), "v": F(3, 4)}))


@pytest.fixture
def leaky_matrix(a_blocks, uvw):
    return make_matrix(a_blocks.elements, uvw.elements, _rows({"u": F(1, 4), "w": F(3, 4)}))


class TestPSet:
    def test_singleton(self):
        p = make_pset(["a"], [["a"]])
        assert p.block_labels == ("a",)

    def test_blocks_named_by_least_member(self, a_blocks):
        assert aggregate_set(a_blocks) == ("a0", "b")
        assert a_blocks.block_of["a1"] == "a0"
        assert a_blocks.members("a0") == ("a0", "a1")

    def test_name_independent_of_listing(self):
        p = make_pset(["b", "a"], [["b", "a"]])
        assert p.block_labels == ("a",)

    @pytest.mark.parametrize("blocks", [
        [["a"]],
        [["a", "b"], ["b"]],
        [["a", "b"], []],
        [["a", "b", "c"]],
    ])
    def test_not_a_partition(self, blocks):
        with pytest.raises(NotAPartition):
            make_pset(["a", "b"], blocks)

    def test_product(self, a_blocks):
        q = discrete_pset(["u", "v"])
        prod = product_pset(a_blocks, q)
        assert len(prod.blocks) == 4
        assert aggregate_set(prod) == (("a0", "u"), ("a0", "v"), ("b", "u"), ("b", "v"))
        assert prod.block_of[("a1", "v")] == ("a0", "v")

    def test_product_with_unit(self, a_blocks):
        prod = product_pset(a_blocks, unit_pset())
        assert aggregate_set(prod) == (("a0", "*"), ("b", "*"))
        assert product_pset(unit_pset(), unit_pset()).elements == (("*", "*"),)

    def test_multiplicity(self):
        p = pset_from_multiplicity(["0", "1"], 2)
        assert p.elements == ("0", "0~1", "1", "1~1")
        assert p.block_labels == ("0", "1")
        with pytest.raises(InvalidMultiplicity):
            pset_from_multiplicity(["0"], 0)

    def test_doc_round_trip(self, a_blocks):
        doc = pset_to_doc(a_blocks)
        assert doc == {"elements": ["a0", "a1", "b"], "partition": [["a0", "a1"], ["b"]]}
        assert pset_from_doc(doc) == a_blocks


class TestDistEquiv:
    def test_reflexive(self, a_blocks):
        p = make_subdist(a_blocks.elements, {"a0": F(1, 3), "b": F(1, 3)})
        assert dist_equiv(p, p, a_blocks)

    def test_same_block(self, a_blocks):
        p = make_subdist(a_blocks.elements, {"a0": F(1, 2)})
        q = make_subdist(a_blocks.elements, {"a1": F(1, 2)})
        assert dist_equiv(p, q, a_blocks)

    def test_different_blocks(self, a_blocks):
        p = make_subdist(a_blocks.elements, {"a0": F(1, 2)})
        q = make_subdist(a_blocks.elements, {"b": F(1, 2)})
        assert not dist_equiv(p, q, a_blocks)

    def test_shape_mismatch(self, a_blocks):
        with pytest.raises(ShapeMismatch):
            dist_equiv(zero_subdist(("x",)), zero_subdist(("x",)), a_blocks)


class TestIsPartitioned:
    def test_discrete_domain(self, noisy):
        assert is_partitioned(noisy, discrete_pset(noisy.dom), indiscrete_pset(noisy.cod))

    def test_equal_block_sums(self, partitioned_matrix, a_blocks, uvw):
        assert is_partitioned(partitioned_matrix, a_blocks, uvw)

    def test_block_sums_differ(self, leaky_matrix, a_blocks, uvw):
        assert not is_partitioned(leaky_matrix, a_blocks, uvw)

    def test_make_pmatrix_reports_rows(self, leaky_matrix, a_blocks, uvw):
        with pytest.raises(NotPartitioned) as info:
            make_pmatrix(leaky_matrix, a_blocks, uvw)
        assert info.value.rows == ("a0", "a1")
        assert info.value.block == "u"

    def test_shape_mismatch(self, noisy, a_blocks, uvw):
        with pytest.raises(ShapeMismatch):
            is_partitioned(noisy, a_blocks, uvw)


class TestAggregate:
    def test_identity(self, a_blocks):
        assert aggregate(pidentity(a_blocks)) == identity(("a0", "b"))

    def test_block_sums(self, partitioned_matrix, a_blocks, uvw):
        agg = aggregate(make_pmatrix(partitioned_matrix, a_blocks, uvw))
        assert agg == from_function(("a0", "b"), ("u", "w"), {"a0": "u", "b": "w"})

    def test_discrete_is_unchanged(self, noisy):
        pm = make_pmatrix(noisy, discrete_pset(noisy.dom), discrete_pset(noisy.cod))
        assert aggregate(pm) == noisy

    def test_dist(self, a_blocks):
        p = make_subdist(a_blocks.elements, {"a0": F(1, 4), "a1": F(1, 4)})
        assert aggregate_dist(p, a_blocks) == make_subdist(("a0", "b"), {"a0": F(1, 2)})
        assert aggregate_dist(unit(a_blocks.elements, "b"), a_blocks) == unit(("a0", "b"), "b")
        assert aggregate_dist(zero_subdist(a_blocks.elements), a_blocks) == zero_subdist(
            ("a0", "b")
        )

    def test_apply_exchange(self, partitioned_matrix, a_blocks, uvw):
        pm = make_pmatrix(partitioned_matrix, a_blocks, uvw)
        p = make_subdist(a_blocks.elements, {"a1": F(1, 3), "b": F(1, 2)})
        assert aggregate_dist(apply(p, pm.matrix), uvw) == apply(
            aggregate_dist(p, a_blocks), aggregate(pm)
        )

    def test_functorial(self, partitioned_matrix, a_blocks, uvw):
        pm = make_pmatrix(partitioned_matrix, a_blocks, uvw)
        out = discrete_pset(["z"])
        n = make_pmatrix(make_matrix(uvw.elements, out.elements, {
            "u": {"z": F(1, 2)}, "v": {"z": F(1, 2)}, "w": {"z": F(1)},
        }), uvw, out)
        assert aggregate(pcompose(pm, n)) == compose(aggregate(pm), aggregate(n))
        assert aggregate(pkron(pm, n)) == kron(aggregate(pm), aggregate(n))


class TestEquiv:
    def test_reflexive(self, partitioned_matrix, a_blocks, uvw):
        pm = make_pmatrix(partitioned_matrix, a_blocks, uvw)
        assert pmatrix_equiv(pm, pm)

    def test_within_block(self, uvw):
        dom = discrete_pset(["x"])
        to_u = make_pmatrix(from_function(("x",), uvw.elements, {"x": "u"}), dom, uvw)
        to_v = make_pmatrix(from_function(("x",), uvw.elements, {"x": "v"}), dom, uvw)
        to_w = make_pmatrix(from_function(("x",), uvw.elements, {"x": "w"}), dom, uvw)
        assert pmatrix_equiv(to_u, to_v)
        assert not pmatrix_equiv(to_u, to_w)

    def test_shape_mismatch(self, a_blocks, uvw):
        with pytest.raises(ShapeMismatch):
            pmatrix_equiv(pidentity(a_blocks), pidentity(uvw))


class TestLift:
    def test_discrete(self, noisy):
        lifted = lift(noisy, discrete_pset(noisy.dom), discrete_pset(noisy.cod))
        assert lifted.matrix == noisy

    def test_spreads_over_codomain_block(self):
        dom = make_pset(["a0", "a1"], [["a0", "a1"]])
        cod = make_pset(["u0", "u1"], [["u0", "u1"]])
        lifted = lift(from_function(("a0",), ("u0",), {"a0": "u0"}), dom, cod)
        for x in ("a0", "a1"):
            assert lifted.matrix.row(x) == make_subdist(cod.elements, {
                "u0": F(1, 2), "u1": F(1, 2),
            })

    def test_round_trip(self, noisy):
        dom = make_pset(["a", "a~1", "b"], [["a", "a~1"], ["b"]])
        cod = pset_from_multiplicity(["y0", "y1"], 3)
        lifted = lift(noisy, dom, cod)
        assert is_partitioned(lifted.matrix, dom, cod)
        assert aggregate(lifted) == noisy

    def test_shape_mismatch(self, noisy, a_blocks, uvw):
        with pytest.raises(ShapeMismatch):
            lift(noisy, a_blocks, uvw)

    def test_lift_dist(self, a_blocks):
        p = make_subdist(("a0", "b"), {"a0": F(1, 2), "b": F(1, 2)})
        lifted = lift_dist(p, a_blocks)
        assert lifted.get("a1") == F(1, 4)
        assert aggregate_dist(lifted, a_blocks) == p
