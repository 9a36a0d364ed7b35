"""End-to-end checks at full size: the Landauer ledger and the large law runs."""

import json

import pytest

from grc.circuits import analyze, load_circuit_text
from grc.config import LawsConfig
from grc.laws import LawEnv, get_law_registry, run_law
from grc.laws import generators as gen


def _run(law_id: str, cases: int, max_dim: int = 6):
    config = LawsConfig(cases=cases, max_dim=max_dim, max_denominator=64, seed=2024)
    result = run_law(get_law_registry().get(law_id), config)
    assert result.failed == 0, (result.error, result.counterexample)
    return result


def test_landauer_ledgers(landauer_doc, landauer_zero_doc):
    (uniform,) = analyze(load_circuit_text(json.dumps(landauer_doc))).steps
    assert uniform.delta_h_nc == pytest.approx(1.0, abs=1e-9)
    assert (uniform.flags.nee, uniform.flags.condrev, uniform.flags.fundamental_agree) == (
        False, False, True
    )

    (zero,) = analyze(load_circuit_text(json.dumps(landauer_zero_doc))).steps
    assert zero.delta_h_nc == pytest.approx(0.0, abs=1e-9)
    assert (zero.flags.nee, zero.flags.condrev, zero.flags.fundamental_agree) == (
        True, True, True
    )


def test_fundamental_fuzz():
    _run("rev.fundamental", 1000)


def test_subpermutation_three_way():
    _run("ent.subperm_three_way", 1000)


@pytest.mark.parametrize("law_id", ["part.functor_compose", "part.functor_kron"])
def test_aggregation_functorial(law_id):
    _run(law_id, 500)


def test_lift_round_trip():
    _run("part.lift_roundtrip", 500)


@pytest.mark.parametrize("law_id", [
    "cdu.closed.deterministic",
    "cdu.closed.total",
    "cdu.closed.quasi_total",
    "cdu.closed.subpermutation",
    "part.closed",
    "rev.condrev_compose",
    "rev.condrev_kron",
    "rev.nee_compose",
    "rev.nee_kron",
])
def test_closure(law_id):
    _run(law_id, 500)


@pytest.mark.parametrize("law_id", ["cdu.counit", "cdu.coassociative", "cdu.cocommutative"])
def test_comonoid_on_every_small_space(law_id):
    w = get_law_registry().get(law_id)
    for n in range(1, 7):
        assert w.holds((gen.space(n),), LawEnv()), n


def test_uniformity_on_every_small_pair():
    w = get_law_registry().get("cdu.uniformity")
    for n in range(1, 7):
        for k in range(1, 7):
            assert w.holds((gen.space(n, "x"), gen.space(k, "y")), LawEnv()), (n, k)


@pytest.mark.parametrize("law_id", ["ent.tensor", "ent.deterministic_nonincreasing"])
def test_entropy_laws(law_id):
    _run(law_id, 500)
