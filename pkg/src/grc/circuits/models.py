"""Pydantic models for circuit documents and analysis reports."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_serializer, model_validator

from ..entropy import EntropyLedger

FORMAT_VERSION = 1

Step = str | list[str]


class SpaceDoc(BaseModel):
    """A partitioned state space.

    One of three forms: explicit ``elements`` + ``partition``, ``states`` +
    ``multiplicity`` (m microstates per state), or ``product`` of declared spaces.
    """

    model_config = ConfigDict(extra="forbid")

    elements: list[str] | None = None
    partition: list[list[str]] | None = None
    states: list[str] | None = None
    multiplicity: int | None = None
    product: list[str] | None = None

    @model_validator(mode="after")
    def _one_form(self) -> "SpaceDoc":
        forms = [
            self.elements is not None,
            self.states is not None,
            self.product is not None,
        ]
        if sum(forms) != 1:
            raise ValueError("a space needs exactly one of: elements, states, product")
        if self.partition is not None and self.elements is None:
            raise ValueError("partition is only allowed together with elements")
        if self.multiplicity is not None and self.states is None:
            raise ValueError("multiplicity is only allowed together with states")
        if self.product is not None and len(self.product) < 2:
            raise ValueError("a product needs at least two spaces")
        return self


class GateDoc(BaseModel):
    """A gate: a builtin, or explicit ``rows`` / ``map`` between two declared spaces."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    builtin: str | None = None
    multiplicity: int | None = None
    bits: int | None = None
    dom: str | None = None
    cod: str | None = None
    rows: dict[str, dict[str, str | int]] | None = None
    mapping: dict[str, str] | None = Field(None, alias="map")

    @model_validator(mode="after")
    def _one_form(self) -> "GateDoc":
        if self.builtin is not None:
            if any(v is not None for v in (self.dom, self.cod, self.rows, self.mapping)):
                raise ValueError("builtin gates take no dom, cod, rows or map")
            return self
        if self.multiplicity is not None or self.bits is not None:
            raise ValueError("multiplicity and bits are only allowed for builtin gates")
        if self.dom is None or self.cod is None:
            raise ValueError("explicit gates need dom and cod")
        if (self.rows is None) == (self.mapping is None):
            raise ValueError("explicit gates need exactly one of rows, map")
        return self


class ContextDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    space: str
    dist: dict[str, str | int]


class CircuitDocument(BaseModel):
    """A circuit file (JSON)."""

    model_config = ConfigDict(extra="forbid")

    format: Literal[1] = FORMAT_VERSION
    spaces: dict[str, SpaceDoc] = Field(default_factory=dict)
    gates: dict[str, GateDoc]
    context: ContextDoc
    pipeline: list[Step] = Field(min_length=1)


def _sig12(value: float) -> float:
    return float(f"{value:.12g}")


class StepFlags(BaseModel):
    """Verdicts for one pipeline step. ``None`` means not applicable."""

    partitioned: bool
    total: bool
    deterministic_aggregate: bool
    nee: bool
    condrev: bool | None
    free_phy: bool
    free_comp: bool | None
    fundamental_agree: bool | None


class StepReport(BaseModel):
    index: int
    gate: str
    before: EntropyLedger
    after: EntropyLedger
    flags: StepFlags
    delta_h_nc: float

    @field_serializer("delta_h_nc")
    def _round(self, value: float) -> float:
        return _sig12(value)


class AnalysisSummary(BaseModel):
    steps: int
    total_delta_h_nc: float
    ejecting_steps: int
    free_phy: bool = Field(description="Every step is a free physical transformation")
    fundamental_agree: bool = Field(description="Every applicable step has nee == condrev")

    @field_serializer("total_delta_h_nc")
    def _round(self, value: float) -> float:
        return _sig12(value)


class AnalysisReport(BaseModel):
    source: str | None = None
    tolerance: float
    base: float
    steps: list[StepReport]
    summary: AnalysisSummary
