import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from mst_fortify.records import CurveRow, PerturbationEntry, ResultRecord, SolveRequest


def test_rationals_serialize_as_strings():
    record = ResultRecord(
        solver="raise",
        increase=Fraction(4, 3),
        cost=Fraction(2),
        perturbation=[PerturbationEntry(edge=0, amount=Fraction(1, 3))],
        curve=[CurveRow(budget=0, mst_weight=0, slope=Fraction(2, 3))],
    )
    payload = json.loads(record.model_dump_json(exclude_none=True))
    assert payload["increase"] == "4/3"
    assert payload["cost"] == "2"
    assert payload["perturbation"] == [{"edge": 0, "amount": "1/3"}]
    assert payload["curve"] == [{"budget": "0", "mst_weight": "0", "slope": "2/3"}]
    assert "check" not in payload


def test_records_parse_back_exactly():
    record = ResultRecord(solver="curve", increase=Fraction(7, 5), cost=3)
    parsed = ResultRecord.model_validate_json(record.model_dump_json())
    assert parsed == record
    assert isinstance(parsed.increase, Fraction)


def test_amounts():
    record = ResultRecord(
        solver="budgeted",
        perturbation=[
            PerturbationEntry(edge=2, amount="1"),
            PerturbationEntry(edge=0, amount="3/2"),
        ],
    )
    assert record.amounts == {0: Fraction(3, 2), 2: Fraction(1)}


def test_request_accepts_rational_strings():
    request = SolveRequest.model_validate({"budget": "3/2", "eps": 1, "weights": ["1", "2/3"]})
    assert request.budget == Fraction(3, 2)
    assert request.eps == 1
    assert request.weights == [1, Fraction(2, 3)]
    assert request.target is None


@pytest.mark.parametrize("value", [1.5, "1/0", True, "x"])
def test_request_rejects_inexact_rationals(value):
    with pytest.raises(ValidationError):
        SolveRequest.model_validate({"budget": value})
