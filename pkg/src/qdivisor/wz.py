"""Exact WZ-pair verification on integer grids.

``f1``/``g1`` form the pair behind the identity sum_k f1(n,k) = 1; the second
binomial identity has no published certificate, so it is checked by direct
summation, with :func:`check_certificate` as the hook for a supplied one.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path

from .chebyshev import _sign, binom, c_n_closed
from .report import IdentityReport, make_report


class DenominatorVanishes(ZeroDivisionError):
    def __init__(self, n: int, k: int):
        super().__init__(f"denominator vanishes at n={n}, k={k}")
        self.n = n
        self.k = k


def f1(n: int, k: int, t: int) -> Fraction:
    """(-1)^(n+k) (2n+1)/(n+k+1) C(n+k+1,2k+1) C(k,t) / C(n+t,2t) 4^(k-t)."""
    if k < t or k > n:
        return Fraction(0)
    return Fraction(
        _sign(n + k) * (2 * n + 1) * binom(n + k + 1, 2 * k + 1) * binom(k, t) * 4 ** (k - t),
        (n + k + 1) * binom(n + t, 2 * t),
    )


def g1(n: int, k: int, t: int) -> Fraction:
    """The certificate f1 * 2(n+1)(k-t)(2k+1) / ((2n+1)(n+t+1)(n-k+1)), cancelled.

    With (n-k+1) absorbed into the factorials this reads
    (-1)^(n+k) 2(n+1)(k-t) C(k,t) 4^(k-t) (n+k)! / ((n+t+1) C(n+t,2t) (2k)! (n-k+1)!),
    which stays finite at the support edge k = n+1.
    """
    if k < t or k > n + 1 or k == t:
        return Fraction(0)
    num = _sign(n + k) * 2 * (n + 1) * (k - t) * binom(k, t) * 4 ** (k - t) * factorial(n + k)
    den = (n + t + 1) * binom(n + t, 2 * t) * factorial(2 * k) * factorial(n - k + 1)
    return Fraction(num, den)


def g1_naive(n: int, k: int, t: int) -> Fraction:
    """f1 times the printed rational factor; raises at the 0/0 boundary."""
    den = (2 * n + 1) * (n + t + 1) * (n - k + 1)
    if den == 0:
        raise DenominatorVanishes(n, k)
    return f1(n, k, t) * Fraction(2 * (n + 1) * (k - t) * (2 * k + 1), den)


def wz1_check(t: int, n_max: int) -> IdentityReport:
    """Pair relation on t <= n <= n_max, 0 <= k <= n+1, and sum_k f1(n,k) = 1."""
    started = time.perf_counter()
    rel_l, rel_r, sums, ones, tele = [], [], [], [], []
    for n in range(t, n_max + 1):
        for k in range(0, n + 2):
            rel_l.append(f1(n + 1, k, t) - f1(n, k, t))
            rel_r.append(g1(n, k + 1, t) - g1(n, k, t))
        sums.append(sum(f1(n, k, t) for k in range(0, n + 1)))
        ones.append(Fraction(1))
        tele.append(sum(f1(n + 1, k, t) - f1(n, k, t) for k in range(0, n + 2)))
    return make_report(
        f"wz1[t={t}]",
        n_max,
        [("pair relation", rel_l, rel_r), ("sum_k f1 = 1", sums, ones), ("telescoped", tele, [0] * len(tele))],
        started,
        detail={"grid_cells": len(rel_l)},
    )


def wz2_sum(n: int):
    """(2n+1) sum_k (-1)^(n+k) C(n+k+1,2k+1)/(n+k+1) C(k,2) 3^(k-2)."""
    total = Fraction(0)
    for k in range(2, n + 1):
        total += Fraction(_sign(n + k) * binom(n + k + 1, 2 * k + 1), n + k + 1) * binom(k, 2) * 3 ** (k - 2)
    total *= 2 * n + 1
    return total.numerator if total.denominator == 1 else total


def wz2_direct_check(n_max: int) -> IdentityReport:
    started = time.perf_counter()
    ns = range(0, n_max + 1)
    return make_report(
        "wz2-direct", n_max, [("", [wz2_sum(n) for n in ns], [c_n_closed(n) for n in ns])], started
    )


def f2(n: int, k: int) -> Fraction:
    """Summand for the n -> 3n case; sum_k f2(n,k) = 1/2 for every n >= 1."""
    if n < 1:
        raise ValueError("f2 is defined for n >= 1")
    if k < 2 or k > 3 * n:
        return Fraction(0)
    return Fraction(
        _sign(k - 1) * (6 * n + 1) * binom(3 * n + k + 1, 2 * k + 1) * binom(k, 2) * 3 ** (k - 2),
        n * (3 * n + 1) * (3 * n + k + 1),
    )


@dataclass(frozen=True)
class RationalFunction:
    """Ratio of integer polynomials in (n, k), stored as {(i, j): coeff}."""

    numerator: dict
    denominator: dict

    @staticmethod
    def _eval(poly: dict, n: int, k: int) -> int:
        return sum(c * n**i * k**j for (i, j), c in poly.items())

    def __call__(self, n: int, k: int) -> Fraction:
        den = self._eval(self.denominator, n, k)
        if den == 0:
            raise DenominatorVanishes(n, k)
        return Fraction(self._eval(self.numerator, n, k), den)

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        if isinstance(data, (str, Path)):
            data = json.loads(Path(data).read_text())

        def poly(entries):
            out = {}
            for exps, c in entries:
                if len(exps) != 2:
                    raise ValueError("exponent vectors must have length 2 (n, k)")
                c = Fraction(c)
                if c.denominator != 1:
                    raise ValueError("certificate coefficients must be integers")
                key = (int(exps[0]), int(exps[1]))
                out[key] = out.get(key, 0) + int(c)
            return out

        return cls(poly(data["numerator"]), poly(data["denominator"]))

    def to_json(self) -> dict:
        return {
            "numerator": [[list(e), c] for e, c in sorted(self.numerator.items())],
            "denominator": [[list(e), c] for e, c in sorted(self.denominator.items())],
        }


def check_certificate(f, R: RationalFunction, n_values, k_values, id: str = "wz-certificate") -> IdentityReport:
    """f(n+1,k) - f(n,k) == g(n,k+1) - g(n,k) with g = f R, on a grid.

    ``k_values`` is an iterable or a callable n -> iterable. Any pole of R on
    the cells the relation touches raises DenominatorVanishes, including 0/0
    cells where f vanishes, since g there is not determined by f R.
    """
    started = time.perf_counter()

    def g(n, k):
        return f(n, k) * R(n, k)

    lhs, rhs = [], []
    for n in n_values:
        ks = k_values(n) if callable(k_values) else k_values
        for k in ks:
            lhs.append(f(n + 1, k) - f(n, k))
            rhs.append(g(n, k + 1) - g(n, k))
    return make_report(id, max(n_values, default=0), [("pair relation", lhs, rhs)], started)
