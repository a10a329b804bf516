"""Structured pass/fail records and the claim registry they refer to.

A report stores every compared quantity as a string (exact fractions as
``p/q``, floats in decimal).  Its status can always be recomputed from
those strings with :func:`recheck`, so a serialized report is auditable
without rerunning the geometry.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .errors import UnknownClaim

# claim id -> the statement it checks
CLAIMS: dict[str, str] = {
    "eq-1.1": "Ehrhart polynomial agrees with dilate counts",
    "eq-1.2": "reciprocity: interior counts from negative arguments",
    "eq-1.4": "h*-identities a_0 = 1, a_1 = G - n - 1, a_n = G(int P), sum = n! vol",
    "eq-1.5": "product and sum of negated roots from the coefficients",
    "thm-1.2": "n! vol >= n l + 1 for l interior points",
    "thm-1.2-eq": "equality with one interior point only for S_n(1)",
    "prop-1.3": "volume-extremal polytopes have h* = (1, l, ..., l)",
    "conj-1.4": "0-symmetric volume bound n! vol >= 2^(n-1) (l + 1), monitored",
    "prop-1.5": "0-symmetric volume bound for crosspolytopes",
    "lemma-1.6": "a_i + a_(n-i) >= C(n,i)(a_n + a_0) for 0-symmetric crosspolytopes",
    "rem-1.7": "a_i >= C(n,i) for 0-symmetric polytopes",
    "thm-1.8": "roots of G(s, S_n(1)) on the line re = -1/2",
    "thm-1.8-asym": "largest root of G(s, S_n(1)) grows like n(n+2)/(2 pi)",
    "braun": "roots within n(n-1)/2 of -1/2",
    "prop-1.9": "all roots on the critical line implies reflexive with vol <= 2^n",
    "prop-1.10": "critical-line criteria for reflexive polytopes, n <= 4",
    "thm-1.11": "root region of 3-polytopes and its extremal case",
    "eq-2.1": "Hibi lower bound a_i >= a_1 with interior points",
    "eq-2.3": "h* of a simplex from its half-open parallelepiped",
    "cross-hstar": "h* of C*_n(2l-1) is C(n,i) + C(n-1,i-1)(2l-2)",
    "bipyramid": "h* of a bipyramid is (1 + t) times h* of its base",
    "lemma-3.1": "equivalent characterisations of reflexive polytopes",
    "prop-4.2": "G_(n-1) <= (n k / 2) vol for the first dilate k with interior points",
    "eq-4.1": "G_(n-1) is half the sum of relative facet volumes",
    "eq-4.2": "1 <= G_2 <= (3k/2) vol in dimension 3",
    "thm-4.1": "roots of 3-polytopes without interior points",
    "thm-4.1-iii": "complex roots on the boundary of the half disc",
    "prop-4.3": "real roots of 3-polytopes with interior points",
    "lemma-4.4": "G_1 <= G_2 + G_3 + 2/3 <= (5/2) G_3 + 2/3 and G(-1/(3 vol)) >= 0",
    "bridge-2p": "doubling a real-part -1 witness gives a reflexive polytope on the critical line",
}

_OPS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


def fmt(x: Any) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x)) if isinstance(x, float) else str(x)


def _parse(s: str):
    if s in ("True", "False"):
        return s == "True"
    return Fraction(s)


@dataclass
class Check:
    name: str
    lhs: str
    op: str
    rhs: str

    def holds(self) -> bool:
        return bool(_OPS[self.op](_parse(self.lhs), _parse(self.rhs)))


def check(name: str, lhs, op: str, rhs) -> Check:
    if op not in _OPS:
        raise ValueError(op)
    return Check(name, fmt(lhs), op, fmt(rhs))


@dataclass
class VerificationReport:
    claim_id: str
    instance: str
    status: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "n/a", "discovery")


def _status(checks: list[Check], monitored: bool) -> str:
    if not checks:
        return "n/a"
    if all(c.holds() for c in checks):
        return "pass"
    return "discovery" if monitored else "fail"


def make_report(claim_id: str, instance: str, checks: list[Check],
                monitored: bool = False, **values) -> VerificationReport:
    if claim_id not in CLAIMS:
        raise UnknownClaim(f"claim {claim_id!r} has no anchor in the registry")
    detail = {"checks": [asdict(c) for c in checks], "monitored": monitored}
    if values:
        detail["values"] = {k: _jsonable(v) for k, v in values.items()}
    return VerificationReport(claim_id, instance, _status(checks, monitored), detail)


def recheck(report: VerificationReport | dict) -> str:
    """Recompute a report's status from its stored detail."""
    if isinstance(report, VerificationReport):
        report = report.to_json()
    detail = report["detail"]
    checks = [Check(**c) for c in detail.get("checks", [])]
    return _status(checks, detail.get("monitored", False))


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, int):
        return v
    return fmt(v)
