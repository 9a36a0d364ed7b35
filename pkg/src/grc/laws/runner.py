"""Running the law suite and reporting the outcome."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from hypothesis import HealthCheck, Phase, Verbosity, given, seed, settings
from pydantic import BaseModel

from ..config import LawsConfig
from ..entropy import CompContext, PhysContext
from ..errors import GrcError
from ..labels import format_label
from ..matrices import Matrix, Subdist, matrix_to_doc, subdist_to_doc
from ..partitioned import PMatrix, PSet, pset_to_doc
from . import suites  # noqa: F401  (registers the laws)
from .base import Law, LawEnv, get_law_registry

logger = logging.getLogger(__name__)


class LawResult(BaseModel):
    id: str
    description: str
    cases: int
    passed: int
    failed: int
    # index of the first failing case and its minimized arguments
    failing_case: int | None = None
    counterexample: list[dict[str, Any]] | None = None
    error: str | None = None


class LawReport(BaseModel):
    seed: int
    cases: int
    max_dim: int
    tolerance: float
    laws: list[LawResult]

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.laws)

    @property
    def failures(self) -> list[LawResult]:
        return [r for r in self.laws if r.failed]


class LawFailed(Exception):
    """Raised inside the hypothesis test so it shrinks the case."""


def describe(value: Any) -> dict[str, Any]:
    """JSON form of a law argument."""
    if isinstance(value, Matrix):
        return {"matrix": matrix_to_doc(value)}
    if isinstance(value, PMatrix):
        return {"pmatrix": {
            "dom": pset_to_doc(value.dom),
            "cod": pset_to_doc(value.cod),
            "rows": matrix_to_doc(value.matrix)["rows"],
        }}
    if isinstance(value, PSet):
        return {"pset": pset_to_doc(value)}
    if isinstance(value, Subdist):
        return {"subdist": {
            "space": [format_label(x) for x in value.space],
            "entries": subdist_to_doc(value),
        }}
    if isinstance(value, CompContext):
        return {"context": {"entries": subdist_to_doc(value.dist)}}
    if isinstance(value, PhysContext):
        return {"context": {"pspace": pset_to_doc(value.pspace),
                            "entries": subdist_to_doc(value.dist)}}
    if isinstance(value, tuple):
        return {"space": [format_label(x) for x in value]}
    if isinstance(value, list):
        return {"samples": [describe(v) for v in value]}
    return {"value": repr(value)}


def env_from_config(config: LawsConfig) -> LawEnv:
    return LawEnv(
        max_dim=config.max_dim,
        max_denominator=config.max_denominator,
        tol=config.tolerance,
        entropy_samples=config.entropy_samples,
    )


def _outcome(law: Law, case: tuple, env: LawEnv) -> str | None:
    """None if the law holds, otherwise a short reason."""
    try:
        if law.holds(case, env):
            return None
        return "law does not hold"
    except Exception as e:  # a crash on generated input counts as a failure
        return f"{type(e).__name__}: {e}"


def run_law(law: Law, config: LawsConfig) -> LawResult:
    """Check ``law`` on up to ``config.cases`` hypothesis examples.

    Hypothesis stops at the first failure, shrinks it and replays the minimal
    example last, so the last failing case seen is the reported counterexample.
    """
    env = env_from_config(config)
    phases = [Phase.generate, Phase.shrink] if config.shrink else [Phase.generate]
    state: dict[str, Any] = {"passed": 0, "first": None, "case": None, "reason": None}

    @settings(
        max_examples=config.cases,
        database=None,
        deadline=None,
        phases=phases,
        report_multiple_bugs=False,
        suppress_health_check=list(HealthCheck),
        verbosity=Verbosity.quiet,
    )
    @seed(config.seed)
    @given(law.strategy(env))
    def check(case: tuple) -> None:
        reason = _outcome(law, case, env)
        if reason is None:
            if state["first"] is None:
                state["passed"] += 1
            return
        if state["first"] is None:
            state["first"] = state["passed"]
        state["case"], state["reason"] = case, reason
        raise LawFailed(reason)

    try:
        check()
    except LawFailed:
        pass
    except Exception as e:
        # the strategy itself broke; report it like a failing case
        state["first"] = state["passed"] if state["first"] is None else state["first"]
        state["reason"] = state["reason"] or f"{type(e).__name__}: {e}"

    failed = 0 if state["first"] is None else 1
    counterexample = None
    if state["case"] is not None:
        counterexample = [describe(v) for v in state["case"]]
    if failed:
        logger.warning(f"{law.id} fails after {state['passed']} passing case(s): {state['reason']}")
    logger.debug(f"{law.id}: {state['passed']} passed")
    return LawResult(
        id=law.id,
        description=law.description,
        cases=state["passed"] + failed,
        passed=state["passed"],
        failed=failed,
        failing_case=state["first"],
        counterexample=counterexample,
        error=state["reason"],
    )


def _run_by_id(law_id: str, config: LawsConfig) -> LawResult:
    return run_law(get_law_registry().get(law_id), config)


def run_laws(config: LawsConfig, only: str | None = None, workers: int = 1) -> LawReport:
    """Run every registered law (or those under ``only``) and merge results by law id.

    Every law runs under hypothesis with ``seed`` and no example database, so the
    report does not depend on ``workers`` or on the order laws run in.
    """
    laws = get_law_registry().list(prefix=only)
    if not laws:
        raise GrcError(f"no law matches {only!r}")
    logger.info(f"running {len(laws)} law(s), up to {config.cases} case(s) each, "
                f"seed {config.seed}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_by_id, [w.id for w in laws], [config] * len(laws)))
    else:
        results = [run_law(w, config) for w in laws]

    return LawReport(
        seed=config.seed,
        cases=config.cases,
        max_dim=config.max_dim,
        tolerance=config.tolerance,
        laws=sorted(results, key=lambda r: r.id),
    )
