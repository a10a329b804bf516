import json
from fractions import Fraction

import pytest

from ehrhart.errors import UnknownClaim
from ehrhart.report import CLAIMS, check, make_report, recheck


def test_status_values():
    assert make_report("eq-1.1", "x", [check("a", 1, "==", 1)]).status == "pass"
    assert make_report("eq-1.1", "x", [check("a", 1, "==", 2)]).status == "fail"
    assert make_report("eq-1.1", "x", []).status == "n/a"
    assert make_report("conj-1.4", "x", [check("a", 1, ">", 2)], monitored=True).status == "discovery"


def test_unknown_claim():
    with pytest.raises(UnknownClaim):
        make_report("thm-9.9", "x", [])


def test_serialized_report_rechecks():
    rep = make_report("eq-4.1", "x", [check("q", Fraction(1, 3), "<", 0.5), check("b", True, "==", True)],
                      values=[Fraction(2, 3), 1.5])
    doc = json.loads(json.dumps(rep.to_json()))
    assert recheck(doc) == "pass"
    doc["detail"]["checks"][0]["lhs"] = "2/3"
    assert recheck(doc) == "fail"


def test_every_claim_has_description():
    assert all(CLAIMS.values())
