"""Hypothesis strategies for the law suite.

Probabilities drawn here share a denominator of at most ``env.max_denominator``;
spaces have at most ``env.max_dim`` elements. Everything is built from hypothesis
draws, so failing cases shrink toward small spaces and coarse rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from hypothesis import strategies as st

from ..entropy import PhysContext, make_comp_context, make_phys_context
from ..labels import Space
from ..matrices import ONE, Matrix, Subdist, apply, make_matrix, support_dist
from ..partitioned import PMatrix, PSet, make_pmatrix, make_pset
from .base import LawEnv

MatrixKind = Literal[
    "any",
    "total",
    "quasi_total",
    "deterministic",
    "total_deterministic",
    "subpermutation",
    "permutation",
]

MATRIX_KINDS: tuple[MatrixKind, ...] = (
    "any",
    "total",
    "quasi_total",
    "deterministic",
    "total_deterministic",
    "subpermutation",
)


def space(n: int, prefix: str = "x") -> Space:
    return tuple(f"{prefix}{i}" for i in range(n))


def spaces(env: LawEnv, prefix: str = "x", low: int = 1) -> st.SearchStrategy[Space]:
    return st.integers(low, max(low, env.max_dim)).map(lambda n: space(n, prefix))


@st.composite
def weights(draw, k: int, env: LawEnv, total: bool = True) -> list[Fraction]:
    """k nonnegative rationals over a common denominator; they sum to 1 when ``total``."""
    if k == 0:
        return []
    d = draw(st.integers(1, env.max_denominator))
    budget = d if total else draw(st.integers(0, d))
    cuts = sorted(draw(st.lists(st.integers(0, budget), min_size=k - 1, max_size=k - 1)))
    return [Fraction(b - a, d) for a, b in zip([0, *cuts], [*cuts, budget])]


@st.composite
def subdists(
    draw,
    sp: Space,
    env: LawEnv,
    total: bool | None = None,
    support: list | None = None,
) -> Subdist:
    labels = list(sp) if support is None else list(support)
    if total is None:
        total = draw(st.booleans())
    ws = draw(weights(len(labels), env, total))
    return Subdist(sp, {x: w for x, w in zip(labels, ws) if w})


def distributions(sp: Space, env: LawEnv, support: list | None = None):
    return subdists(sp, env, total=True, support=support)


@st.composite
def nonempty_subsets(draw, sp: Space) -> list:
    """A nonempty subset of ``sp`` in space order."""
    chosen = draw(st.sets(st.sampled_from(sp), min_size=1))
    return [x for x in sp if x in chosen]


@st.composite
def positive_distributions(draw, sp: Space, env: LawEnv, points: int = 2) -> Subdist:
    """A distribution with at least ``points`` states of positive mass.

    ``sp`` needs ``points`` elements and ``env.max_denominator`` must be at least ``points``.
    """
    most = max(points, min(len(sp), env.max_denominator))
    support = draw(st.lists(st.sampled_from(sp), min_size=points, max_size=most, unique=True))
    k = len(support)
    d = draw(st.integers(k, max(k, env.max_denominator)))
    cuts = sorted(draw(st.lists(st.integers(1, d - 1), min_size=k - 1, max_size=k - 1,
                                unique=True)))
    masses = [Fraction(b - a, d) for a, b in zip([0, *cuts], [*cuts, d])]
    return Subdist(sp, dict(zip(support, masses)))


@st.composite
def matrices(draw, dom: Space, cod: Space, env: LawEnv, kind: MatrixKind = "any") -> Matrix:
    if kind in ("subpermutation", "permutation"):
        sources = draw(st.permutations(dom))
        targets = draw(st.permutations(cod))
        k = len(dom) if kind == "permutation" else draw(st.integers(0, min(len(dom), len(cod))))
        return make_matrix(dom, cod, {x: {y: ONE} for x, y in zip(sources[:k], targets[:k])})

    rows = {}
    for x in dom:
        if kind == "any":
            style = draw(st.sampled_from(("zero", "unit", "spread")))
            if style == "unit":
                rows[x] = {draw(st.sampled_from(cod)): ONE}
            elif style == "spread":
                rows[x] = dict(draw(subdists(cod, env)).items())
        elif kind == "total":
            rows[x] = dict(draw(distributions(cod, env)).items())
        elif kind == "quasi_total":
            if draw(st.booleans()):
                rows[x] = dict(draw(distributions(cod, env)).items())
        elif kind == "deterministic":
            if draw(st.booleans()):
                rows[x] = {draw(st.sampled_from(cod)): ONE}
        elif kind == "total_deterministic":
            rows[x] = {draw(st.sampled_from(cod)): ONE}
        else:
            raise ValueError(f"unknown matrix kind {kind!r}")
    return make_matrix(dom, cod, rows)


@st.composite
def any_kind_matrices(draw, env: LawEnv, dom: Space | None = None) -> Matrix:
    """A matrix of a randomly chosen kind, so every predicate is hit both ways."""
    dom = dom or draw(spaces(env, "x"))
    kind = draw(st.sampled_from(MATRIX_KINDS))
    return draw(matrices(dom, draw(spaces(env, "y")), env, kind))


# -- partitioned ----------------------------------------------------------------------


@st.composite
def psets(draw, elements: Space) -> PSet:
    k = draw(st.integers(1, len(elements)))
    n = len(elements)
    assign = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    blocks = [[x for x, b in zip(elements, assign) if b == i] for i in range(k)]
    return make_pset(elements, [b for b in blocks if b])


def random_psets(env: LawEnv, prefix: str = "x") -> st.SearchStrategy[PSet]:
    return spaces(env, prefix).flatmap(psets)


@st.composite
def pmatrices(draw, dom: PSet, cod: PSet, env: LawEnv, kind: MatrixKind = "any") -> PMatrix:
    """A partitioned matrix whose aggregate is a random matrix of ``kind``."""
    mbar = draw(matrices(dom.block_labels, cod.block_labels, env, kind))
    return draw(splits(mbar, dom, cod, env))


@st.composite
def splits(draw, mbar: Matrix, dom: PSet, cod: PSet, env: LawEnv) -> PMatrix:
    """Some partitioned matrix aggregating to ``mbar``.

    Each block mass is split over the block's members, independently for every row.
    """
    rows = {}
    for block in dom.blocks:
        bar_row = mbar.row(dom.block_of[block[0]])
        for x in block:
            row = {}
            for by, value in bar_row.items():
                members = cod.members(by)
                for y, w in zip(members, draw(weights(len(members), env))):
                    if w:
                        row[y] = value * w
            rows[x] = row
    return make_pmatrix(make_matrix(dom.elements, cod.elements, rows), dom, cod)


@st.composite
def multiplicity_psets(draw, states: Space, max_multiplicity: int = 4) -> PSet:
    """Blocks named by ``states`` with between 1 and ``max_multiplicity`` members each."""
    blocks = []
    for x in states:
        extra = draw(st.integers(0, max_multiplicity - 1))
        blocks.append([x] + [f"{x}~{i}" for i in range(1, extra + 1)])
    return make_pset([y for block in blocks for y in block], blocks)


@st.composite
def phys_contexts(draw, p: PSet, env: LawEnv, full: bool = False) -> PhysContext:
    support = None if full else draw(nonempty_subsets(p.elements))
    return make_phys_context(p, draw(distributions(p.elements, env, support)))


@st.composite
def comp_contexts(draw, sp: Space, env: LawEnv):
    return make_comp_context(draw(distributions(sp, env, draw(nonempty_subsets(sp)))))


# -- transformations ------------------------------------------------------------------


@st.composite
def injective_transformations(
    draw,
    env: LawEnv,
    dom: PSet,
    merging: bool = True,
    prefix: str = "y",
    keep: frozenset | None = None,
) -> PMatrix:
    """An injective deterministic partitioned matrix; its aggregate is deterministic.

    Dom blocks are sent by a block map f to codomain blocks that are at least as
    large as their preimages, microstates go to distinct microstates. Without
    ``merging`` f is injective. When ``keep`` is given, rows of dom blocks disjoint
    from it are zero.
    """
    k = len(dom.blocks)
    if merging:
        raw = draw(st.lists(st.integers(0, k - 1), min_size=k, max_size=k))
        used = sorted(set(raw))
        f = [used.index(j) for j in raw]
        c = len(used)
    else:
        c = k
        f = draw(st.permutations(range(k)))

    sizes = [0] * c
    for j, block in zip(f, dom.blocks):
        sizes[j] += len(block)
    while sum(sizes) < env.max_dim and draw(st.booleans()):
        sizes[draw(st.integers(0, c - 1))] += 1
    if sum(sizes) < env.max_dim and draw(st.booleans()):
        sizes.append(1)

    cod_blocks: list[list[str]] = []
    n = 0
    for s in sizes:
        cod_blocks.append([f"{prefix}{n + i}" for i in range(s)])
        n += s
    cod = make_pset([y for block in cod_blocks for y in block], cod_blocks)

    free = [list(draw(st.permutations(block))) for block in cod_blocks]
    rows = {}
    for j, block in zip(f, dom.blocks):
        live = keep is None or any(x in keep for x in block)
        for x in block:
            target = free[j].pop()
            if live:
                rows[x] = {target: ONE}
    return make_pmatrix(make_matrix(dom.elements, cod.elements, rows), dom, cod)


@st.composite
def injective_cases(
    draw,
    env: LawEnv,
    context: PhysContext | None = None,
    merging: bool | None = None,
    prefix: str = "y",
) -> tuple[PMatrix, PhysContext]:
    """A closed transformation that moves microstates one to one, with its context."""
    if context is None:
        context = draw(random_psets(env, "x").flatmap(lambda p: phys_contexts(p, env)))
    if merging is None:
        merging = draw(st.booleans())
    keep = support_dist(context.dist) if draw(st.booleans()) else None
    m = draw(injective_transformations(env, context.pspace, merging, prefix, keep))
    return m, context


@st.composite
def mixing_cases(draw, env: LawEnv, prefix: str = "y") -> tuple[PMatrix, PhysContext]:
    """A closed transformation that splits and merges microstates, with its context.

    Every split sends a microstate of mass 2w evenly onto two microstates of one
    block and comes with a merge of two microstates of mass w into one, so the
    multiset of masses and with it the physical entropy is unchanged. Microstates
    outside the support get random rows into the image of their block.
    """
    if env.max_dim < 3 or env.max_denominator < 4:
        return draw(injective_cases(env, prefix=prefix))

    pairs = draw(st.integers(1, min(env.max_dim // 3, env.max_denominator // 4)))
    moved = draw(st.integers(0, min(env.max_dim - 3 * pairs, env.max_denominator - 4 * pairs)))
    idle = draw(st.integers(0, env.max_dim - 3 * pairs - moved))

    spare = env.max_denominator - 4 * pairs - moved
    w = []
    for _ in range(pairs):
        extra = draw(st.integers(0, spare // 4))
        spare -= 4 * extra
        w.append(1 + extra)
    v = []
    for _ in range(moved):
        extra = draw(st.integers(0, spare))
        spare -= extra
        v.append(1 + extra)
    d = 4 * sum(w) + sum(v)

    # support microstates: per pair the split source, then the two merge sources
    roles = [("split", i) for i in range(pairs)]
    roles += [("merge", i) for i in range(pairs) for _ in range(2)]
    roles += [("move", j) for j in range(moved)]
    dom_labels = [f"x{i}" for i in range(len(roles) + idle)]

    k = draw(st.integers(1, len(roles)))
    image = draw(st.lists(st.integers(0, k - 1), min_size=k, max_size=k))
    block: list[int] = []
    partner: dict[int, int] = {}
    for role, i in roles:
        if role == "merge" and i in partner:
            same = [b for b in range(k) if image[b] == image[partner[i]]]
            block.append(draw(st.sampled_from(same)))
        else:
            block.append(draw(st.integers(0, k - 1)))
            if role == "merge":
                partner[i] = block[-1]
    used = sorted(set(block))
    for _ in range(idle):
        block.append(draw(st.sampled_from(used)))

    cod_blocks: dict[int, list[str]] = {}

    def target(b: int) -> str:
        label = f"{prefix}{sum(len(ys) for ys in cod_blocks.values())}"
        cod_blocks.setdefault(image[b], []).append(label)
        return label

    rows: dict[str, dict[str, Fraction]] = {}
    dist: dict[str, Fraction] = {}
    merged: dict[int, str] = {}
    for x, (role, i), b in zip(dom_labels, roles, block):
        if role == "split":
            first, second = target(b), target(b)
            rows[x] = {first: ONE / 2, second: ONE / 2}
            dist[x] = Fraction(2 * w[i], d)
        elif role == "merge":
            if i not in merged:
                merged[i] = target(b)
            rows[x] = {merged[i]: ONE}
            dist[x] = Fraction(w[i], d)
        else:
            rows[x] = {target(b): ONE}
            dist[x] = Fraction(v[i], d)
    for x, b in zip(dom_labels[len(roles):], block[len(roles):]):
        members = cod_blocks[image[b]]
        rows[x] = {y: u for y, u in zip(members, draw(weights(len(members), env))) if u}

    dom = make_pset(dom_labels, [
        [x for x, b in zip(dom_labels, block) if b == j] for j in used
    ])
    cod = make_pset([y for ys in cod_blocks.values() for y in ys], list(cod_blocks.values()))
    m = make_pmatrix(make_matrix(dom.elements, cod.elements, rows), dom, cod)
    return m, make_phys_context(dom, Subdist(dom.elements, dist))


def closed_cases(env: LawEnv, prefix: str = "y") -> st.SearchStrategy[tuple]:
    """Closed physical transformations with deterministic aggregate, with their contexts."""
    return st.one_of(injective_cases(env, prefix=prefix), mixing_cases(env, prefix=prefix))


def pushforward(m: PMatrix, ctx: PhysContext) -> PhysContext:
    return PhysContext(m.cod, apply(ctx.dist, m.matrix))


@st.composite
def injective_on(draw, dom: Space, support: list, env: LawEnv, prefix: str) -> Matrix:
    """A deterministic matrix injective on ``support``; other rows are random units or zero."""
    n = draw(st.integers(len(support), max(len(support), env.max_dim)))
    cod = space(max(n, 1), prefix)
    targets = draw(st.permutations(cod))
    rows = {x: {y: ONE} for x, y in zip(support, targets)}
    for x in dom:
        if x not in rows and draw(st.booleans()):
            rows[x] = {draw(st.sampled_from(cod)): ONE}
    return make_matrix(dom, cod, rows)


@st.composite
def condrev_cases(draw, env: LawEnv, prefix: str = "y") -> tuple:
    """A deterministic matrix that is conditionally reversible on the returned context."""
    dom = draw(spaces(env, "x"))
    ctx = draw(comp_contexts(dom, env))
    support = [x for x in dom if x in support_dist(ctx.dist)]
    return draw(injective_on(dom, support, env, prefix)), ctx
