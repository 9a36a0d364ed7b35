"""Step-by-step entropy accounting and reversibility verdicts for a circuit."""

from __future__ import annotations

import logging

from ..cdu import is_deterministic, is_total
from ..entropy import DEFAULT_BASE, DEFAULT_TOLERANCE, PhysContext, aggregate_context, ledger
from ..errors import GrcError, NotDeterministic
from ..matrices import apply
from ..partitioned import aggregate, is_partitioned
from ..reversibility import is_conditionally_reversible, is_non_entropy_ejecting
from .loader import CircuitSpec, elaborate
from .models import AnalysisReport, AnalysisSummary, StepFlags, StepReport

logger = logging.getLogger(__name__)


def analyze(
    spec: CircuitSpec,
    tol: float = DEFAULT_TOLERANCE,
    base: float = DEFAULT_BASE,
    lenient: bool = False,
) -> AnalysisReport:
    """Run the context through every step, recording ledgers and verdicts.

    Raises ``NotClosedTransformation`` when a step changes the physical entropy and,
    unless ``lenient``, ``NotDeterministic`` when a step's aggregate is not deterministic
    (conditional reversibility is then undefined; lenient mode reports it as n/a).
    """
    steps = elaborate(spec)
    context = spec.context
    reports: list[StepReport] = []

    for index, (step, m) in enumerate(zip(spec.pipeline, steps), start=1):
        name = spec.step_name(step)
        try:
            before = ledger(context, base)
            nee = is_non_entropy_ejecting(m, context, tol, base)
            after_context = PhysContext(m.cod, apply(context.dist, m.matrix))
            after = ledger(after_context, base)

            qm = aggregate(m)
            deterministic = is_deterministic(qm)
            if deterministic:
                condrev: bool | None = is_conditionally_reversible(qm, aggregate_context(context))
            elif lenient:
                condrev = None
            else:
                raise NotDeterministic(
                    f"aggregate of {name!r} is not deterministic, conditional reversibility "
                    "is undefined (use --lenient to report it as n/a)"
                )
        except GrcError as e:
            raise e.located(step=index)

        flags = StepFlags(
            partitioned=is_partitioned(m.matrix, m.dom, m.cod),
            total=is_total(m.matrix),
            deterministic_aggregate=deterministic,
            nee=nee,
            condrev=condrev,
            free_phy=nee and deterministic,
            free_comp=condrev,
            fundamental_agree=(nee == condrev) if condrev is not None else None,
        )
        delta = after.h_nc - before.h_nc
        logger.info(f"step {index} {name}: dH_nc={delta:+.6g} nee={nee} condrev={condrev}")
        reports.append(StepReport(
            index=index,
            gate=name,
            before=before,
            after=after,
            flags=flags,
            delta_h_nc=delta,
        ))
        context = after_context

    summary = AnalysisSummary(
        steps=len(reports),
        total_delta_h_nc=sum(r.delta_h_nc for r in reports),
        ejecting_steps=sum(1 for r in reports if not r.flags.nee),
        free_phy=all(r.flags.free_phy for r in reports),
        fundamental_agree=all(r.flags.fundamental_agree is not False for r in reports),
    )
    return AnalysisReport(
        source=spec.source,
        tolerance=tol,
        base=base,
        steps=reports,
        summary=summary,
    )
