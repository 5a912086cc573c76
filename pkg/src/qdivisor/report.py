"""Verdict records shared by every checker, and exact-rational wire encoding."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .series import QSeries, XPoly


def rational_to_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def rational_from_str(s: str):
    c = Fraction(s)
    return c.numerator if c.denominator == 1 else c


@dataclass(frozen=True)
class Mismatch:
    n: int
    lhs: Any
    rhs: Any
    label: str = ""


@dataclass
class IdentityReport:
    id: str
    order_checked: int
    verdict: str
    first_mismatch: Mismatch | None = None
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if (self.verdict == "pass") != (self.first_mismatch is None):
            raise ValueError("verdict is pass iff there is no mismatch")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self, with_elapsed: bool = True) -> dict:
        d = {
            "id": self.id,
            "order_checked": self.order_checked,
            "verdict": self.verdict,
            "first_mismatch": None,
        }
        if self.first_mismatch is not None:
            m = self.first_mismatch
            d["first_mismatch"] = {"n": m.n, "lhs": rational_to_str(m.lhs), "rhs": rational_to_str(m.rhs)}
            if m.label:
                d["first_mismatch"]["label"] = m.label
        if with_elapsed:
            d["elapsed_ms"] = round(self.elapsed * 1000, 3)
        if self.detail:
            d["detail"] = self.detail
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityReport":
        fm = d.get("first_mismatch")
        mm = None
        if fm is not None:
            mm = Mismatch(fm["n"], rational_from_str(fm["lhs"]), rational_from_str(fm["rhs"]), fm.get("label", ""))
        return cls(
            id=d["id"],
            order_checked=d["order_checked"],
            verdict=d["verdict"],
            first_mismatch=mm,
            elapsed=d.get("elapsed_ms", 0.0) / 1000,
            detail=d.get("detail", {}),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _pairs(lhs, rhs, label: str):
    if isinstance(lhs, XPoly):
        d = min(lhs.xdeg, rhs.xdeg)
        for t in range(d + 1):
            yield from _pairs(lhs[t], rhs[t], f"{label} x^{t}".strip())
    elif isinstance(lhs, QSeries):
        yield label, lhs, rhs
    else:
        yield label, list(lhs), list(rhs)


def first_mismatch(comparisons: Sequence[tuple]) -> Mismatch | None:
    """Minimal differing index over a list of (label, lhs, rhs) comparisons.

    Sides may be QSeries, XPoly, or plain sequences indexed by n.
    """
    best = None
    for label, lhs, rhs in comparisons:
        for sub, a, b in _pairs(lhs, rhs, label):
            if isinstance(a, QSeries):
                if a.shift != b.shift:
                    return Mismatch(0, a.shift, b.shift, f"{sub} (shift)")
                m = min(a.order, b.order)
                seq_a, seq_b = a.coeffs[: m + 1], b.coeffs[: m + 1]
            else:
                if len(a) != len(b):
                    raise ValueError(f"length mismatch in {sub}")
                seq_a, seq_b = a, b
            for n, (x, y) in enumerate(zip(seq_a, seq_b)):
                if best is not None and n >= best.n:
                    break
                if x != y:
                    best = Mismatch(n, x, y, sub)
                    break
    return best


def make_report(id: str, order: int, comparisons: Sequence[tuple], started: float, detail=None) -> IdentityReport:
    mm = first_mismatch(comparisons)
    return IdentityReport(
        id=id,
        order_checked=order,
        verdict="pass" if mm is None else "fail",
        first_mismatch=mm,
        elapsed=time.perf_counter() - started,
        detail=detail or {},
    )
