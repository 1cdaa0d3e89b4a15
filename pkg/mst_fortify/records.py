"""
Request and result models shared by the command line and the HTTP service.

Rationals serialize as "p/q" strings (integers as plain decimals) and parse back
exactly; no float ever appears in a record.
"""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator
from pydantic.json_schema import WithJsonSchema

from .errors import FortifyError
from .instance import format_rational, parse_rational


def _coerce_rational(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, str | int | Fraction):
        raise ValueError("rationals are written as integers or \"p/q\" strings")
    try:
        return parse_rational(value)
    except FortifyError as error:
        raise ValueError(error.message) from error


Rational = Annotated[
    Fraction,
    PlainValidator(_coerce_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]


class _ExactModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)


class SolveRequest(_ExactModel):
    instance: str = ""
    budget: Rational | None = None
    target: int | None = None
    eps: Rational | None = None
    clique_size: int | None = None
    source: int | None = None
    sink: int | None = None
    weights: list[Rational] | None = None
    check: bool = False


class PerturbationEntry(_ExactModel):
    edge: int
    amount: Rational


class CurveRow(_ExactModel):
    budget: Rational
    mst_weight: Rational
    slope: Rational


class StepSummary(_ExactModel):
    pivot: Rational
    edges: list[int]
    coverage: int
    cost: int
    amount: Rational
    budget_after: Rational


class TraceSummary(_ExactModel):
    steps: list[StepSummary] = Field(default_factory=list)
    breakpoints: list[Rational] = Field(default_factory=list)
    extra: dict[str, Any] = Field(default_factory=dict)


class CheckOutcome(_ExactModel):
    oracle: str
    passed: bool
    skipped: bool = False
    detail: str = ""


class ResultRecord(_ExactModel):
    solver: str
    parameters: dict[str, str] = Field(default_factory=dict)
    increase: Rational | None = None
    cost: Rational | None = None
    perturbation: list[PerturbationEntry] = Field(default_factory=list)
    curve: list[CurveRow] | None = None
    trace: TraceSummary | None = None
    instance: str | None = None
    check: CheckOutcome | None = None

    @property
    def amounts(self) -> dict[int, Fraction]:
        return {entry.edge: entry.amount for entry in self.perturbation}
