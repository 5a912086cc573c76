import json
import time
from fractions import Fraction

import pytest

from qdivisor.report import IdentityReport, Mismatch, first_mismatch, make_report, rational_from_str, rational_to_str
from qdivisor.series import QSeries, XPoly


def test_rational_strings():
    assert rational_to_str(Fraction(3, 1)) == "3"
    assert rational_to_str(Fraction(-1, 24)) == "-1/24"
    assert rational_from_str("-1/24") == Fraction(-1, 24)
    assert rational_from_str("7") == 7


def test_verdict_invariant():
    with pytest.raises(ValueError):
        IdentityReport("x", 3, "pass", Mismatch(1, 1, 2))
    with pytest.raises(ValueError):
        IdentityReport("x", 3, "fail")


def test_first_mismatch_is_minimal():
    a = QSeries([1, 2, 3, 4], 3)
    b = QSeries([1, 2, 0, 0], 3)
    c = QSeries([1, 0, 3, 4], 3)
    m = first_mismatch([("late", a, b), ("early", a, c)])
    assert m.n == 1 and m.label == "early"
    xa = XPoly([a, a])
    xb = XPoly([a, b])
    assert first_mismatch([("x", xa, xb)]).label == "x x^1"
    assert first_mismatch([("", [1, 2], [1, 2])]) is None


def test_json_round_trip():
    rep = make_report("demo", 5, [("", [0, Fraction(1, 3)], [0, 1])], time.perf_counter(), detail={"k": 1})
    d = json.loads(rep.to_json())
    assert d["first_mismatch"] == {"n": 1, "lhs": "1/3", "rhs": "1"}
    back = IdentityReport.from_dict(d)
    assert back.to_dict(with_elapsed=False) == rep.to_dict(with_elapsed=False)
    assert back.first_mismatch.lhs == Fraction(1, 3)
