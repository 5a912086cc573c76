"""Eisenstein series, umbral expansions, and exact quasimodular fitting.

Most checks here concern U_t(a,q) at a = 2 and a = -2, where triangular-number
sums and divisor Lambert series give the structure away.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial

from .etatheta import lambert_S, qpoch, triangular_sum
from .linalg import Inconsistent, solve_exact
from .macmahon import h_r_series, u_product
from .report import IdentityReport, make_report, rational_from_str, rational_to_str
from .series import QSeries, _norm

_SIGMA_SCALE = {2: -24, 4: 240, 6: -504}


class Infeasible(ArithmeticError):
    pass


class InsufficientOrder(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EisensteinId:
    weight: int
    level_scale: int = 1

    def __post_init__(self):
        if self.weight not in (2, 4, 6):
            raise ValueError("weight must be 2, 4 or 6")
        if self.level_scale < 1:
            raise ValueError("level_scale must be positive")

    def __str__(self):
        return f"E{self.weight}" + (f"@{self.level_scale}" if self.level_scale != 1 else "")

    @classmethod
    def parse(cls, text: str) -> "EisensteinId":
        """``E2``, ``E4@3`` style names."""
        text = text.strip()
        name, _, scale = text.partition("@")
        if not name.upper().startswith("E"):
            raise ValueError(f"bad generator {text!r}")
        return cls(int(name[1:]), int(scale) if scale else 1)


def eisenstein(gid: EisensteinId, order: int) -> QSeries:
    """1 + c_k sum sigma_{k-1}(n) q^n, at q -> q^level_scale."""
    base = lambert_S(gid.weight - 1, order).scale(_SIGMA_SCALE[gid.weight]) + 1
    return base.subs(gid.level_scale) if gid.level_scale != 1 else base


def monomial_basis(generators, max_weight: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total weight <= max_weight, by (weight, lex)."""
    weights = [g.weight for g in generators]
    ranges = [range(max_weight // w + 1) for w in weights]
    out = [e for e in product(*ranges) if sum(x * w for x, w in zip(e, weights)) <= max_weight]
    out.sort(key=lambda e: (sum(x * w for x, w in zip(e, weights)), e))
    return out


@dataclass
class QMExpr:
    basis: tuple
    terms: dict
    rank: int | None = None
    detail: dict = field(default_factory=dict)

    def evaluate(self, order: int) -> QSeries:
        gens = [eisenstein(g, order) for g in self.basis]
        return _eval_terms(self.terms, gens, order)

    def partial(self, index: int) -> "QMExpr":
        """Formal derivative with respect to the generator at ``index``."""
        out = {}
        for e, c in self.terms.items():
            k = e[index]
            if k:
                e2 = e[:index] + (k - 1,) + e[index + 1:]
                out[e2] = out.get(e2, 0) + k * c
        return QMExpr(self.basis, {e: _norm(c) for e, c in out.items() if c})

    def to_dict(self) -> dict:
        return {
            "basis": [str(g) for g in self.basis],
            "monomials": [
                {
                    "exponents": list(e),
                    "numerator": Fraction(c).numerator,
                    "denominator": Fraction(c).denominator,
                }
                for e, c in sorted(self.terms.items(), key=lambda kv: (self._weight(kv[0]), kv[0]))
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "QMExpr":
        basis = tuple(EisensteinId.parse(s) for s in d["basis"])
        terms = {tuple(m["exponents"]): _norm(Fraction(m["numerator"], m["denominator"])) for m in d["monomials"]}
        return cls(basis, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def _weight(self, e) -> int:
        return sum(x * g.weight for x, g in zip(e, self.basis))

    def __str__(self):
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (self._weight(kv[0]), kv[0])):
            mono = "*".join(
                (f"{g}^{x}" if x > 1 else str(g)) for g, x in zip(self.basis, e) if x
            )
            parts.append(f"({rational_to_str(c)})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


def _eval_terms(terms: dict, gens: list, order: int) -> QSeries:
    total = QSeries.zero(order)
    powers: dict = {}
    for e, c in terms.items():
        mono = QSeries.one(order)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in powers:
                    powers[key] = gens[i] ** k
                mono = mono * powers[key]
        total = total + mono.scale(c)
    return total


def fit_quasimodular(target: QSeries, generators, max_weight: int, margin: int = 20) -> QMExpr:
    """Express ``target`` exactly as a polynomial in the generators.

    The linear system uses the first ``dim + margin`` coefficients; the
    solution is then checked against every coefficient of ``target``.
    """
    generators = tuple(generators)
    if target.shift != 0:
        raise Infeasible("target has a fractional shift")
    monos = monomial_basis(generators, max_weight)
    need = len(monos) + margin
    if target.order + 1 < need:
        raise InsufficientOrder(f"need {need} coefficients, target has {target.order + 1}")
    order = target.order
    gens = [eisenstein(g, order) for g in generators]
    columns = [_eval_terms({e: 1}, gens, order) for e in monos]
    rows = [[col[n] for col in columns] for n in range(need)]
    try:
        x, rank = solve_exact(rows, [target[n] for n in range(need)])
    except Inconsistent as exc:
        raise Infeasible(str(exc)) from None
    terms = {e: _norm(c) for e, c in zip(monos, x) if c}
    expr = QMExpr(generators, terms, rank=rank, detail={"dimension": len(monos), "rows_used": need})
    diff = expr.evaluate(order).first_difference(target)
    if diff is not None:
        raise Infeasible(f"fit leaves a residual at q^{diff}")
    return expr


def umbral_poly_h(r: int) -> list:
    """u (u^2-1^2)(u^2-2^2)...(u^2-(r-1)^2), ascending coefficients."""
    poly = [0, 1]
    for l in range(1, r):
        nxt = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            nxt[i + 2] += c
            nxt[i] -= l * l * c
        poly = nxt
    return poly


def umbral_poly_fact(t: int) -> list:
    """(u^2-1^2)(u^2-3^2)...(u^2-(2t-1)^2), ascending coefficients."""
    poly = [1]
    for l in range(1, t + 1):
        nxt = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            nxt[i + 2] += c
            nxt[i] -= (2 * l - 1) ** 2 * c
        poly = nxt
    return poly


def umbral_evaluate(poly: list, moment) -> QSeries:
    """Replace u^j by moment(j)."""
    total = None
    for j, c in enumerate(poly):
        if c:
            term = moment(j).scale(c)
            total = term if total is None else total + term
    return total


def umbral_h_r_check(r: int, order: int) -> IdentityReport:
    started = time.perf_counter()
    lhs = h_r_series(-2, r, order).scale(factorial(2 * r - 1))
    rhs = umbral_evaluate(umbral_poly_h(r), lambda j: lambert_S(j, order))
    return make_report(f"umbral-h[r={r}]", order, [("", lhs, rhs)], started)


def a_t_series(t: int, order: int) -> QSeries:
    """sum_{n>=0} (2n+1)^t q^(n(n+1)/2)."""
    return triangular_sum(lambda n: (2 * n + 1) ** t, order)


def b_series(order: int) -> QSeries:
    return triangular_sum(lambda n: 1, order)


def one_plus_8d(s: QSeries, t: int) -> QSeries:
    for _ in range(t):
        s = s + s.derive().scale(8)
    return s


def c_series(order: int) -> QSeries:
    """q^(1/8) prod (1+q^m)(1-q^(2m))."""
    body = qpoch(1, 1, order, sign=-1) * qpoch(2, 2, order)
    return QSeries(body.coeffs, order, shift=Fraction(1, 8))


def b_identity_check(t: int, order: int) -> IdentityReport:
    """(1+8D)^t B == A_{2t}."""
    started = time.perf_counter()
    return make_report(
        f"b-a2t[t={t}]", order, [("", one_plus_8d(b_series(order), t), a_t_series(2 * t, order))], started
    )


def c_series_check(t: int, order: int) -> IdentityReport:
    """8^t q^(-1/8) D^t C == (1+8D)^t B == A_{2t}, with shift-aware D."""
    started = time.perf_counter()
    C = c_series(order)
    d = C
    for _ in range(t):
        d = d.derive()
    # multiplying by q^(-1/8) drops the shift and keeps the coefficient list
    lhs = QSeries(d.coeffs, order).scale(8**t)
    mid = one_plus_8d(b_series(order), t)
    comps = [("8^t q^-1/8 D^t C vs (1+8D)^t B", lhs, mid), ("(1+8D)^t B vs A_2t", mid, a_t_series(2 * t, order))]
    if t == 0:
        comps.append(("C / q^1/8 vs B", QSeries(C.coeffs, order), b_series(order)))
    return make_report(f"c-series[t={t}]", order, comps, started)


def fact_sum_t(t: int, order: int) -> QSeries:
    """4^t sum_{n>=t} (n+t)!/(n-t)! q^(n(n+1)/2)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return triangular_sum(lambda n: 4**t * factorial(n + t) // factorial(n - t) if n >= t else 0, order)


def fact_sum_umbral_check(t: int, order: int, n_max: int = 100) -> IdentityReport:
    """FactSumT_t against its umbral factorization, as series and as integers."""
    started = time.perf_counter()
    poly = umbral_poly_fact(t)
    rhs = umbral_evaluate(poly, lambda j: a_t_series(j, order))
    ints_l = [4**t * factorial(n + t) // factorial(n - t) if n >= t else 0 for n in range(n_max + 1)]
    ints_r = []
    for n in range(n_max + 1):
        v = 1
        for l in range(1, t + 1):
            v *= (2 * n + 1) ** 2 - (2 * l - 1) ** 2
        ints_r.append(v)
    return make_report(
        f"fact-umbral[t={t}]", order, [("series", fact_sum_t(t, order), rhs), ("integers", ints_l, ints_r)], started
    )


def u1_two(order: int) -> QSeries:
    """U_1(2,q) = S_1(q) - 4 S_1(q^2)."""
    S1 = lambert_S(1, order)
    return S1 - S1.subs(2).scale(4)


def diff_difference_check(t_max: int, order: int) -> IdentityReport:
    """Rebuild U_t(2,q) from U_1 by the differential-difference recursion."""
    started = time.perf_counter()
    F = u_product(2, t_max, order)
    U1 = u1_two(order)
    B = b_series(order)
    comps = [("U_1(2,q) vs S1(q)-4S1(q^2)", F[1], U1)]
    cur = QSeries.one(order)
    for t in range(1, t_max + 1):
        step = cur.derive() + U1 * cur - cur.scale(comb(t, 2))
        cur = step.scale(Fraction(1, t * (2 * t - 1)))
        comps.append((f"recursion t={t}", cur, F[t]))
        alpha = Fraction(1, 4**t * factorial(2 * t))
        comps.append((f"alpha_t T_t / B, t={t}", (fact_sum_t(t, order) / B).scale(alpha), F[t]))
        prev_T = fact_sum_t(t - 1, order)
        comps.append(
            (f"T_t = (8D - 4t(t-1)) T_(t-1), t={t}", fact_sum_t(t, order), prev_T.derive().scale(8) - prev_T.scale(4 * t * (t - 1)))
        )
    return make_report(f"diff-difference[t<={t_max}]", order, comps, started)


def fit_u(a: int, t: int, generators, max_weight: int, order: int) -> QMExpr:
    return fit_quasimodular(u_product(a, t, order)[t], generators, max_weight)


E2, E4, E6 = EisensteinId(2), EisensteinId(4), EisensteinId(6)


def de2_proposition_check(t_max: int, order: int) -> IdentityReport:
    """Find the constant c with dU_t/dE2 == c sum_j U_{t-j} / (j^2 C(2j,j)).

    The constant is solved at t = 1 and then required to hold for every t.
    """
    if t_max > 4:
        raise ValueError("t_max is limited to 4")
    started = time.perf_counter()
    F = u_product(-2, t_max, order)
    basis = (E2, E4, E6)
    comps = []
    constant = None
    per_t = {}
    for t in range(1, t_max + 1):
        expr = fit_quasimodular(F[t], basis, 2 * t)
        lhs = expr.partial(0).evaluate(order)
        rhs = QSeries.zero(order)
        for j in range(1, t + 1):
            rhs = rhs + F[t - j].scale(Fraction(1, j * j * comb(2 * j, j)))
        if constant is None:
            nz = rhs.valuation()
            constant = Fraction(lhs[nz]) / Fraction(rhs[nz])
        resid = lhs - rhs.scale(constant)
        per_t[t] = {"fit": str(expr), "residual_zero": resid.valuation() is None}
        comps.append((f"t={t}", lhs, rhs.scale(constant)))
    rep = make_report(f"de2-proposition[t<={t_max}]", order, comps, started)
    rep.detail = {"constant": rational_to_str(constant), "per_t": per_t}
    return rep


def de2_constant(report: IdentityReport) -> Fraction:
    return Fraction(rational_from_str(report.detail["constant"]))
