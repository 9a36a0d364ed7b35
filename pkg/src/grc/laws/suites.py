"""The registered laws.

Law ids are ``<suite>.<name>``; the suites are ``core`` (matrices), ``cdu``
(copy/discard structure and the predicates it defines), ``part`` (partitioned
matrices and aggregation), ``ent`` (entropy) and ``rev`` (reversibility, ejection and
the resource theories). Predicates from ``grc.cdu`` are looked up on the module at
call time so a test can substitute a broken one.
"""

from __future__ import annotations

import math
from collections.abc import Callable

from hypothesis import strategies as st

from .. import cdu
from ..entropy import (
    PhysContext,
    aggregate_context,
    entropy,
    ledger,
    make_comp_context,
    tensor_context,
)
from ..errors import NotColumnSubstochastic
from ..labels import UNIT_LABEL, UNIT_SPACE, Space, product_space
from ..matrices import (
    ONE,
    Matrix,
    Subdist,
    apply,
    column_mass,
    compose,
    from_function,
    identity,
    kron,
    make_matrix,
    mass,
    support_dist,
    support_matrix,
    swap_matrix,
    tensor_dist,
    transpose,
    unit,
)
from ..partitioned import (
    PMatrix,
    aggregate,
    aggregate_dist,
    aggregate_set,
    dist_equiv,
    is_partitioned,
    lift,
    lift_dist,
    pcompose,
    pcopy,
    pdiscard,
    pidentity,
    pkron,
    pmatrix_equiv,
    product_pset,
)
from ..reversibility import (
    check_fundamental,
    is_conditionally_reversible,
    is_entropy_preserving,
    is_free_comp,
    is_free_phy,
    is_non_entropy_ejecting,
)
from . import generators as gen
from .base import LawEnv, law

# -- shared strategies ----------------------------------------------------------------


@st.composite
def _chain(draw, env: LawEnv, length: int, kind: gen.MatrixKind = "any") -> tuple:
    spaces = [draw(gen.spaces(env, prefix)) for prefix in "abcde"[: length + 1]]
    return tuple(
        draw(gen.matrices(spaces[i], spaces[i + 1], env, kind)) for i in range(length)
    )


def _concat(*strategies: st.SearchStrategy[tuple]) -> st.SearchStrategy[tuple]:
    return st.tuples(*strategies).map(lambda parts: sum(parts, ()))


def _one(env: LawEnv):
    return st.tuples(gen.any_kind_matrices(env))


def _two(env: LawEnv):
    return st.tuples(gen.any_kind_matrices(env), gen.any_kind_matrices(env))


def _small_space(env: LawEnv):
    return st.tuples(st.integers(1, 6).map(gen.space))


def _two_small_spaces(env: LawEnv):
    return st.tuples(
        st.integers(1, 6).map(lambda n: gen.space(n, "x")),
        st.integers(1, 6).map(lambda n: gen.space(n, "y")),
    )


def _kind_pair(kind: gen.MatrixKind):
    return lambda env: _chain(env, 2, kind)


@st.composite
def _pchain(draw, env: LawEnv, length: int = 2) -> tuple[PMatrix, ...]:
    psets = [draw(gen.random_psets(env, prefix)) for prefix in "abc"[: length + 1]]
    kind = draw(st.sampled_from(gen.MATRIX_KINDS))
    return tuple(
        draw(gen.pmatrices(psets[i], psets[i + 1], env, kind)) for i in range(length)
    )


def _pone(env: LawEnv):
    return _pchain(env, 1)


def _ptwo(env: LawEnv):
    return _pchain(env, 2)


def _contexts(env: LawEnv, prefix: str = "x"):
    return gen.random_psets(env, prefix).flatmap(lambda p: gen.phys_contexts(p, env))


# -- core -----------------------------------------------------------------------------


@law("core.compose_associative", strategy=lambda env: _chain(env, 3))
def _(m: Matrix, n: Matrix, k: Matrix, env: LawEnv) -> bool:
    """Matrix product is associative."""
    return compose(compose(m, n), k) == compose(m, compose(n, k))


@law("core.compose_unital", strategy=_one)
def _(m: Matrix, env: LawEnv) -> bool:
    """Identities are units for the matrix product."""
    return compose(identity(m.dom), m) == m and compose(m, identity(m.cod)) == m


@law("core.compose_total", strategy=_kind_pair("total"))
def _(m: Matrix, n: Matrix, env: LawEnv) -> bool:
    """The product of distribution matrices is a distribution matrix."""
    return not (cdu.is_total(m) and cdu.is_total(n)) or cdu.is_total(compose(m, n))


@law("core.kron_bifunctorial", strategy=lambda env: _concat(_chain(env, 2), _chain(env, 2)))
def _(m: Matrix, n: Matrix, p: Matrix, q: Matrix, env: LawEnv) -> bool:
    """(MN) (x) (PQ) = (M (x) P)(N (x) Q)."""
    return kron(compose(m, n), compose(p, q)) == compose(kron(m, p), kron(n, q))


@st.composite
def _dist_and_chain(draw, env: LawEnv) -> tuple:
    m, n = draw(_chain(env, 2))
    return (draw(gen.subdists(m.dom, env)), m, n)


@law("core.apply_compose", strategy=_dist_and_chain)
def _(p: Subdist, m: Matrix, n: Matrix, env: LawEnv) -> bool:
    """Pushing forward along M then N equals pushing forward along MN."""
    return apply(apply(p, m), n) == apply(p, compose(m, n))


@st.composite
def _dist_and_matrix(draw, env: LawEnv) -> tuple:
    m = draw(gen.any_kind_matrices(env))
    return (draw(gen.subdists(m.dom, env)), m)


@law("core.apply_mass", strategy=_dist_and_matrix)
def _(p: Subdist, m: Matrix, env: LawEnv) -> bool:
    """Pushing forward never creates mass and preserves it along total matrices."""
    pushed = mass(apply(p, m))
    return pushed <= mass(p) and (not cdu.is_total(m) or pushed == mass(p))


@law("core.transpose", strategy=_one)
def _(m: Matrix, env: LawEnv) -> bool:
    """Transpose is defined exactly when columns have mass at most 1, and is an involution."""
    substochastic = all(column_mass(m, y) <= 1 for y in m.cod)
    try:
        t = transpose(m)
    except NotColumnSubstochastic:
        return not substochastic
    return substochastic and transpose(t) == m


# -- cdu ------------------------------------------------------------------------------


@law("cdu.counit", strategy=_small_space)
def _(x: Space, env: LawEnv) -> bool:
    """Copying then discarding either copy is the identity, up to the unitors."""
    copy = cdu.copy_matrix(x)
    right = compose(copy, kron(identity(x), cdu.discard_matrix(x)))
    left = compose(copy, kron(cdu.discard_matrix(x), identity(x)))
    return right == cdu.right_unitor(x) and left == cdu.left_unitor(x)


@law("cdu.coassociative", strategy=_small_space)
def _(x: Space, env: LawEnv) -> bool:
    """Copying the left or the right copy again agree, up to the associator."""
    copy = cdu.copy_matrix(x)
    left = compose(compose(copy, kron(copy, identity(x))), cdu.associator(x, x, x))
    return left == compose(copy, kron(identity(x), copy))


@law("cdu.cocommutative", strategy=_small_space)
def _(x: Space, env: LawEnv) -> bool:
    """Swapping the two copies changes nothing."""
    copy = cdu.copy_matrix(x)
    return compose(copy, swap_matrix(x, x)) == copy


def _interchange(x: Space, y: Space) -> Matrix:
    dom = product_space(product_space(x, x), product_space(y, y))
    cod = product_space(product_space(x, y), product_space(x, y))
    return from_function(dom, cod, {((a, b), (c, d)): ((a, c), (b, d)) for (a, b), (c, d) in dom})


@law("cdu.uniformity", strategy=_two_small_spaces)
def _(x: Space, y: Space, env: LawEnv) -> bool:
    """Copy and discard on a product are built from copy and discard on the factors."""
    xy = product_space(x, y)
    copies = compose(kron(cdu.copy_matrix(x), cdu.copy_matrix(y)), _interchange(x, y))
    units = from_function(product_space(UNIT_SPACE, UNIT_SPACE), UNIT_SPACE,
                          {(UNIT_LABEL, UNIT_LABEL): UNIT_LABEL})
    discards = compose(kron(cdu.discard_matrix(x), cdu.discard_matrix(y)), units)
    return cdu.copy_matrix(xy) == copies and cdu.discard_matrix(xy) == discards


@law("cdu.dom_kron", strategy=_two)
def _(m: Matrix, n: Matrix, env: LawEnv) -> bool:
    """dom(M (x) N) = dom(M) (x) dom(N)."""
    return cdu.dom_matrix(kron(m, n)) == kron(cdu.dom_matrix(m), cdu.dom_matrix(n))


@law("cdu.quasi_total", strategy=_one)
def _(m: Matrix, env: LawEnv) -> bool:
    """Quasi-totality is dom(M) M = M; deterministic matrices are quasi-total."""
    equation = compose(cdu.dom_matrix(m), m) == m
    return cdu.is_quasi_total(m) == equation and (not cdu.is_deterministic(m) or equation)


@law("cdu.total_dom", strategy=_one)
def _(m: Matrix, env: LawEnv) -> bool:
    """M is total iff dom(M) is the identity."""
    return cdu.is_total(m) == (cdu.dom_matrix(m) == identity(m.dom))


@law("cdu.deterministic_copy", strategy=_one)
def _(m: Matrix, env: LawEnv) -> bool:
    """M is deterministic iff it commutes with copying."""
    natural = (
        compose(m, cdu.copy_matrix(m.cod)) == compose(cdu.copy_matrix(m.dom), kron(m, m))
    )
    return cdu.is_deterministic(m) == natural


def _has_partial_inverse(m: Matrix) -> bool:
    try:
        reverse = transpose(m)
    except NotColumnSubstochastic:
        return False
    return cdu.verify_partial_iso(cdu.PartialIsoWitness(m, reverse))


@law("cdu.subperm_iff_partial_iso", strategy=_one)
def _(m: Matrix, env: LawEnv) -> bool:
    """M is a subpermutation iff its transpose is a partial inverse."""
    return cdu.is_subpermutation(m) == _has_partial_inverse(m)


@law("cdu.transpose_subperm", strategy=lambda env: _chain(env, 1, "subpermutation"))
def _(m: Matrix, env: LawEnv) -> bool:
    """The transpose of a subpermutation is a subpermutation."""
    return not cdu.is_subpermutation(m) or cdu.is_subpermutation(transpose(m))


def _closure(predicate_name: str) -> Callable[..., bool]:
    def check(m: Matrix, n: Matrix, env: LawEnv) -> bool:
        predicate = getattr(cdu, predicate_name)
        if not (predicate(m) and predicate(n)):
            return True
        return predicate(compose(m, n)) and predicate(kron(m, n))
    return check


law("cdu.closed.deterministic", "Deterministic matrices are closed under product and Kronecker.",
    strategy=_kind_pair("deterministic"))(_closure("is_deterministic"))
law("cdu.closed.total", "Total matrices are closed under product and Kronecker.",
    strategy=_kind_pair("total"))(_closure("is_total"))
law("cdu.closed.subpermutation", "Subpermutations are closed under product and Kronecker.",
    strategy=_kind_pair("subpermutation"))(_closure("is_subpermutation"))


@st.composite
def _quasi_total_pair(draw, env: LawEnv) -> tuple:
    a, b, c, d = (draw(gen.spaces(env, prefix)) for prefix in "abcd")
    return (
        draw(gen.matrices(a, b, env, "quasi_total")),
        draw(gen.matrices(c, d, env, "quasi_total")),
    )


@law("cdu.closed.quasi_total", strategy=_quasi_total_pair)
def _(m: Matrix, n: Matrix, env: LawEnv) -> bool:
    """Quasi-total matrices are closed under Kronecker products."""
    return not (cdu.is_quasi_total(m) and cdu.is_quasi_total(n)) or cdu.is_quasi_total(kron(m, n))


@st.composite
def _cancel_case(draw, env: LawEnv) -> tuple:
    a, b, c = (draw(gen.spaces(env, prefix)) for prefix in "abc")
    kind = draw(st.sampled_from(("any", "total", "quasi_total")))
    return (draw(gen.matrices(a, b, env, kind)), draw(gen.matrices(b, c, env, "total")))


@law("cdu.total_cancel", strategy=_cancel_case)
def _(f: Matrix, g: Matrix, env: LawEnv) -> bool:
    """If g and fg are total then f is total."""
    if not (cdu.is_total(g) and cdu.is_total(compose(f, g))):
        return True
    return cdu.is_total(f)


# -- partitioned ----------------------------------------------------------------------


@law("part.closed", strategy=_ptwo)
def _(m: PMatrix, n: PMatrix, env: LawEnv) -> bool:
    """Partitioned matrices are closed under product and Kronecker."""
    return is_partitioned(compose(m.matrix, n.matrix), m.dom, n.cod) and is_partitioned(
        kron(m.matrix, n.matrix), product_pset(m.dom, n.dom), product_pset(m.cod, n.cod)
    )


@law("part.functor_compose", strategy=_ptwo)
def _(m: PMatrix, n: PMatrix, env: LawEnv) -> bool:
    """Aggregation preserves products."""
    return aggregate(pcompose(m, n)) == compose(aggregate(m), aggregate(n))


@law("part.functor_kron", strategy=_ptwo)
def _(m: PMatrix, n: PMatrix, env: LawEnv) -> bool:
    """Aggregation preserves Kronecker products, block labels included."""
    return aggregate(pkron(m, n)) == kron(aggregate(m), aggregate(n))


@law("part.structure", strategy=lambda env: st.tuples(gen.random_psets(env)))
def _(p, env: LawEnv) -> bool:
    """Aggregation preserves identities, copy and discard."""
    q = aggregate_set(p)
    return (
        aggregate(pidentity(p)) == identity(q)
        and aggregate(pcopy(p)) == cdu.copy_matrix(q)
        and aggregate(pdiscard(p)) == cdu.discard_matrix(q)
    )


@law("part.representative", strategy=_pone)
def _(m: PMatrix, env: LawEnv) -> bool:
    """Every member of a block has the block's aggregated row; totality is preserved."""
    qm = aggregate(m)
    for x in m.dom.elements:
        if aggregate_dist(m.matrix.row(x), m.cod) != qm.row(m.dom.block_of[x]):
            return False
    return not cdu.is_total(m.matrix) or cdu.is_total(qm)


@st.composite
def _pdist(draw, env: LawEnv) -> tuple:
    (m,) = draw(_pone(env))
    return (draw(gen.subdists(m.dom.elements, env)), m)


@law("part.apply_exchange", strategy=_pdist)
def _(p: Subdist, m: PMatrix, env: LawEnv) -> bool:
    """Aggregating after pushing forward equals pushing forward the aggregate."""
    return aggregate_dist(apply(p, m.matrix), m.cod) == apply(
        aggregate_dist(p, m.dom), aggregate(m)
    )


@st.composite
def _equiv_dists(draw, env: LawEnv) -> tuple:
    p_set = draw(gen.random_psets(env))
    p = draw(gen.subdists(p_set.elements, env))
    if draw(st.booleans()):
        return (p, draw(gen.subdists(p_set.elements, env)), p_set)
    entries = {}
    for block in p_set.blocks:
        total = sum((p.get(x) for x in block), 0)
        for x, w in zip(block, draw(gen.weights(len(block), env))):
            if total * w:
                entries[x] = total * w
    return (p, Subdist(p_set.elements, entries), p_set)


@law("part.dist_equiv", strategy=_equiv_dists)
def _(p: Subdist, q: Subdist, p_set, env: LawEnv) -> bool:
    """Equivalence of subdistributions is equality of every block sum."""
    sums_agree = all(
        sum((p.get(x) for x in block), 0) == sum((q.get(x) for x in block), 0)
        for block in p_set.blocks
    )
    return dist_equiv(p, q, p_set) == sums_agree


@st.composite
def _equiv_pmatrices(draw, env: LawEnv) -> tuple:
    (m,) = draw(_pone(env))
    if draw(st.booleans()):
        return (m, draw(gen.pmatrices(m.dom, m.cod, env)))
    return (m, draw(gen.splits(aggregate(m), m.dom, m.cod, env)))


@law("part.matrix_equiv", strategy=_equiv_pmatrices)
def _(m: PMatrix, n: PMatrix, env: LawEnv) -> bool:
    """Partitioned matrices are equivalent iff they aggregate to the same matrix."""
    return pmatrix_equiv(m, n) == (aggregate(m) == aggregate(n))


@st.composite
def _lift_case(draw, env: LawEnv) -> tuple:
    states_in = draw(gen.spaces(env, "a"))
    states_out = draw(gen.spaces(env, "b"))
    kind = draw(st.sampled_from(gen.MATRIX_KINDS))
    mbar = draw(gen.matrices(states_in, states_out, env, kind))
    dom = draw(gen.multiplicity_psets(states_in))
    cod = draw(gen.multiplicity_psets(states_out))
    return (mbar, dom, cod, draw(gen.subdists(states_in, env)))


@law("part.lift_roundtrip", strategy=_lift_case)
def _(mbar: Matrix, dom, cod, p: Subdist, env: LawEnv) -> bool:
    """Aggregating a lift gives back the computational matrix and context."""
    return aggregate(lift(mbar, dom, cod)) == mbar and aggregate_dist(lift_dist(p, dom), dom) == p


@law("part.lift_valid", strategy=_lift_case)
def _(mbar: Matrix, dom, cod, p: Subdist, env: LawEnv) -> bool:
    """A lift is a partitioned, row-substochastic matrix."""
    lifted = lift(mbar, dom, cod).matrix
    make_matrix(lifted.dom, lifted.cod, dict(lifted.rows()))
    return is_partitioned(lifted, dom, cod)


# -- entropy --------------------------------------------------------------------------


def _xlogx(v: float, base: float) -> float:
    return v * math.log(v, base) if v > 0 else 0.0


def _wide_subdists(env: LawEnv):
    sizes = st.integers(2, max(2, env.max_dim))
    return st.tuples(sizes.flatmap(lambda n: gen.subdists(gen.space(n), env)))


@law("ent.superadditive", strategy=_wide_subdists)
def _(p: Subdist, env: LawEnv) -> bool:
    """x log x is superadditive, strictly so on two or more positive parts."""
    values = [float(v) for _, v in p.items()]
    for s in values:
        for t in values:
            if _xlogx(s, env.base) + _xlogx(t, env.base) > _xlogx(s + t, env.base) + env.tol:
                return False
    if len(values) < 2:
        return True
    total = float(mass(p))
    return sum(_xlogx(v, env.base) for v in values) < _xlogx(total, env.base) - env.tol


@st.composite
def _spread(draw, env: LawEnv, prefix: str) -> Subdist:
    sp = gen.space(draw(st.integers(2, max(2, env.max_dim))), prefix)
    p = draw(gen.positive_distributions(sp, env, 2))
    if draw(st.booleans()):
        return p
    scale = draw(gen.weights(2, env))[0]
    if scale == 0:
        return p
    return Subdist(sp, {x: v * scale for x, v in p.items()})


@law("ent.tensor", strategy=lambda env: st.tuples(_spread(env, "x"), _spread(env, "y")))
def _(p: Subdist, q: Subdist, env: LawEnv) -> bool:
    """H(p (x) q) <= H(p) + H(q), with equality iff both are distributions."""
    hp, hq = entropy(p, env.base), entropy(q, env.base)
    hpq = entropy(tensor_dist(p, q), env.base)
    exact = float(mass(q)) * hp + float(mass(p)) * hq
    if abs(hpq - exact) > env.tol or hpq > hp + hq + env.tol:
        return False
    both = mass(p) == 1 and mass(q) == 1
    return (abs(hpq - hp - hq) <= env.tol) == both


@st.composite
def _kernel_case(draw, env: LawEnv) -> tuple:
    sp = draw(gen.spaces(env))
    style = draw(st.sampled_from(("zero", "unit", "random")))
    if style == "zero":
        return (Subdist(sp, {}),)
    if style == "unit":
        return (unit(sp, draw(st.sampled_from(sp))),)
    return (draw(gen.subdists(sp, env)),)


@law("ent.zero_entropy", strategy=_kernel_case)
def _(p: Subdist, env: LawEnv) -> bool:
    """Only the zero subdistribution and unit distributions have zero entropy."""
    values = [v for _, v in p.items()]
    kernel = not values or values == [ONE]
    return (entropy(p, env.base) <= env.tol) == kernel


def _fixed_samples(space: Space, support: list) -> list[Subdist]:
    """Units and uniform pairs on ``support``."""
    samples = [unit(space, x) for x in support]
    samples += [
        Subdist(space, {x: ONE / 2, y: ONE / 2})
        for i, x in enumerate(support) for y in support[i + 1:]
    ]
    return samples


def _sampled(on_support: bool):
    """A matrix with random contexts on its domain (or on supp M), topping up the fixed ones."""

    @st.composite
    def strategy(draw, env: LawEnv) -> tuple:
        m = draw(gen.any_kind_matrices(env))
        support = [x for x in m.dom if not on_support or x in support_matrix(m)]
        count = max(0, env.entropy_samples - len(_fixed_samples(m.dom, support)))
        if not support:
            count = 0
        extra = draw(st.lists(
            gen.subdists(m.dom, env, support=support), min_size=count, max_size=count
        ))
        return (m, extra)

    return strategy


@law("ent.deterministic_nonincreasing", strategy=_sampled(on_support=False))
def _(m: Matrix, extra: list[Subdist], env: LawEnv) -> bool:
    """M is deterministic iff pushing forward never increases entropy."""
    samples = _fixed_samples(m.dom, list(m.dom)) + extra
    nonincreasing = all(
        entropy(apply(p, m), env.base) <= entropy(p, env.base) + env.tol for p in samples
    )
    return cdu.is_deterministic(m) == nonincreasing


@law("ent.subperm_three_way", strategy=_sampled(on_support=True))
def _(m: Matrix, extra: list[Subdist], env: LawEnv) -> bool:
    """Subpermutation, partial inverse by transpose and entropy preservation on supp M agree."""
    support = [x for x in m.dom if x in support_matrix(m)]
    samples = _fixed_samples(m.dom, support) + extra
    preserving = all(is_entropy_preserving(m, p, env.tol, env.base) for p in samples)
    subperm = cdu.is_subpermutation(m)
    return subperm == _has_partial_inverse(m) == preserving


@law("ent.ledger_monoidal", strategy=lambda env: st.tuples(
    _contexts(env, "x"), _contexts(env, "y")
))
def _(a: PhysContext, b: PhysContext, env: LawEnv) -> bool:
    """Each ledger entry is additive over independent contexts."""
    la, lb, lab = ledger(a, env.base), ledger(b, env.base), ledger(tensor_context(a, b), env.base)
    return (
        abs(lab.h_phy - la.h_phy - lb.h_phy) <= env.tol
        and abs(lab.h_comp - la.h_comp - lb.h_comp) <= env.tol
        and abs(lab.h_nc - la.h_nc - lb.h_nc) <= env.tol
    )


@law("ent.ledger_bounds", strategy=lambda env: st.tuples(_contexts(env)))
def _(ctx: PhysContext, env: LawEnv) -> bool:
    """0 <= H_comp <= H_phy and H_nc is their difference."""
    entry = ledger(ctx, env.base)
    return (
        -env.tol <= entry.h_comp <= entry.h_phy + env.tol
        and abs(entry.h_nc - (entry.h_phy - entry.h_comp)) <= env.tol
    )


# -- reversibility --------------------------------------------------------------------


@st.composite
def _comp_case(draw, env: LawEnv) -> tuple:
    if draw(st.booleans()):
        return draw(gen.condrev_cases(env))
    dom = draw(gen.spaces(env, "x"))
    m = draw(gen.matrices(dom, draw(gen.spaces(env, "y")), env, "total_deterministic"))
    return (m, draw(gen.comp_contexts(dom, env)))


@law("rev.condrev_entropy", strategy=_comp_case)
def _(m: Matrix, p, env: LawEnv) -> bool:
    """A total deterministic M is conditionally reversible on p iff H(pM) = H(p)."""
    if not cdu.is_deterministic(m) or not support_dist(p.dist) <= support_matrix(m):
        return True
    same = abs(entropy(p.dist, env.base) - entropy(apply(p.dist, m), env.base)) <= env.tol
    return is_conditionally_reversible(m, p) == same


@st.composite
def _condrev_chain(draw, env: LawEnv) -> tuple:
    m, p = draw(gen.condrev_cases(env))
    pushed = apply(p.dist, m)
    if draw(st.booleans()):
        support = [y for y in m.cod if y in support_dist(pushed)]
        n = draw(gen.injective_on(m.cod, support, env, "z"))
    else:
        n = draw(gen.matrices(m.cod, draw(gen.spaces(env, "z")), env, "deterministic"))
    return (m, n, p)


@law("rev.condrev_compose", strategy=_condrev_chain)
def _(m: Matrix, n: Matrix, p, env: LawEnv) -> bool:
    """Conditionally reversible transformations compose."""
    if not (cdu.is_deterministic(m) and cdu.is_deterministic(n)):
        return True
    if not is_conditionally_reversible(m, p):
        return True
    q = apply(p.dist, m)
    if mass(q) != 1 or not is_conditionally_reversible(n, make_comp_context(q)):
        return True
    return is_conditionally_reversible(compose(m, n), p)


@law("rev.condrev_kron", strategy=lambda env: _concat(
    gen.condrev_cases(env, "y"), gen.condrev_cases(env, "z")
))
def _(m: Matrix, p, n: Matrix, q, env: LawEnv) -> bool:
    """Conditionally reversible transformations are closed under Kronecker products."""
    if not (cdu.is_deterministic(m) and cdu.is_deterministic(n)):
        return True
    if not (is_conditionally_reversible(m, p) and is_conditionally_reversible(n, q)):
        return True
    return is_conditionally_reversible(kron(m, n), make_comp_context(tensor_dist(p.dist, q.dist)))


@st.composite
def _nee_chain(draw, env: LawEnv) -> tuple:
    m, p = draw(gen.closed_cases(env))
    n, _ = draw(gen.injective_cases(env, context=gen.pushforward(m, p), prefix="z"))
    return (m, n, p)


@law("rev.nee_compose", strategy=_nee_chain)
def _(m: PMatrix, n: PMatrix, p: PhysContext, env: LawEnv) -> bool:
    """Non-entropy-ejecting transformations compose."""
    if not is_non_entropy_ejecting(m, p, env.tol, env.base):
        return True
    if not is_non_entropy_ejecting(n, gen.pushforward(m, p), env.tol, env.base):
        return True
    return is_non_entropy_ejecting(pcompose(m, n), p, env.tol, env.base)


@law("rev.nee_kron", strategy=lambda env: _concat(
    gen.closed_cases(env), gen.closed_cases(env, prefix="z")
))
def _(m: PMatrix, p: PhysContext, n: PMatrix, q: PhysContext, env: LawEnv) -> bool:
    """Non-entropy-ejecting transformations are closed under Kronecker products."""
    if not (is_non_entropy_ejecting(m, p, env.tol, env.base)
            and is_non_entropy_ejecting(n, q, env.tol, env.base)):
        return True
    return is_non_entropy_ejecting(pkron(m, n), tensor_context(p, q), env.tol, env.base)


@law("rev.nee_definition", strategy=gen.closed_cases)
def _(m: PMatrix, p: PhysContext, env: LawEnv) -> bool:
    """On closed transformations, ejection is an increase of non-computational entropy."""
    before = ledger(p, env.base).h_nc
    after = ledger(gen.pushforward(m, p), env.base).h_nc
    return is_non_entropy_ejecting(m, p, env.tol, env.base) == (after <= before + env.tol)


@law("rev.fundamental", strategy=gen.closed_cases)
def _(m: PMatrix, p: PhysContext, env: LawEnv) -> bool:
    """Non-entropy-ejection of M agrees with conditional reversibility of its aggregate."""
    return check_fundamental(m, p, env.tol, env.base).agree


@law("rev.resource_reflecting", strategy=gen.closed_cases)
def _(m: PMatrix, p: PhysContext, env: LawEnv) -> bool:
    """M is free among physical transformations iff its aggregate is free computationally."""
    return is_free_phy(m, p, env.tol, env.base) == is_free_comp(aggregate(m), aggregate_context(p))
