"""MacMahon-type sums U_t(a, q) by three independent routes, and congruence scans.

Routes:

* ``direct``  -- the defining sum over strictly increasing index tuples, built by
  descent from the largest index down with the exponent budget pruning the tail.
* ``product`` -- the generating product prod_m (1 + Q_m x) truncated in x.
* ``cheb``    -- an eta-quotient prefactor times a triangular-number sum whose
  weights are Chebyshev coefficients.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import chebyshev as cheb
from .etatheta import qpoch, triangular_sum, trinomial_quotient
from .report import IdentityReport, Mismatch, make_report
from .series import OutOfRange, QSeries, XPoly, _norm

A_VALUES = (-2, -1, 0, 1, 2)
ROUTES = ("direct", "product", "cheb")


class UnsupportedA(ValueError):
    pass


class RouteDisagreement(ArithmeticError):
    pass


def _check_a(a: int) -> None:
    if a not in A_VALUES:
        raise UnsupportedA(f"a must be one of {A_VALUES}, got {a}")


@dataclass(frozen=True)
class MacParams:
    a: int
    t: int
    order: int

    def __post_init__(self):
        _check_a(self.a)
        if self.t < 0 or self.order < 0:
            raise ValueError("t and order must be non-negative")


@dataclass(frozen=True)
class RouteResult:
    route: str
    series: QSeries

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if self.series.shift != 0:
            raise ValueError("route output must have integer exponents")


def q_m_factor(a: int, m: int, order: int) -> QSeries:
    """Q_m(a,q) = q^m / (1 + a q^m + q^{2m})."""
    if m < 1:
        raise ValueError("m must be positive")
    return trinomial_quotient(m, a, m, order)


def _times_q_m(cs: list, a: int, m: int, order: int) -> list:
    # cs * q^m / (1 + a q^m + q^2m), solved in place of a full product
    out = [0] * (order + 1)
    for i in range(m, order + 1):
        v = cs[i - m]
        if i >= 2 * m:
            v -= a * out[i - m] + out[i - 2 * m]
        out[i] = v
    return out


def _require_integral(s: QSeries, what: str) -> QSeries:
    if not s.is_integral():
        raise ArithmeticError(f"{what} produced a non-integer coefficient")
    return s


def u_direct(p: MacParams) -> QSeries:
    a, t, N = p.a, p.t, p.order
    if t == 0:
        return QSeries.one(N)
    # tail[lo] = sum over lo <= n_1 < ... < n_k of prod Q_{n_i}, level by level in k
    prev = [[1] + [0] * N for _ in range(N + 2)]
    for k in range(1, t + 1):
        tail = [[0] * (N + 1) for _ in range(N + 2)]
        for lo in range(N, 0, -1):
            # smallest reachable exponent: lo + (lo+1) + ... + (lo+k-1)
            if k * lo + k * (k - 1) // 2 > N:
                continue
            step = _times_q_m(prev[lo + 1], a, lo, N)
            tail[lo] = [x + y for x, y in zip(tail[lo + 1], step)]
        prev = tail
    return _require_integral(QSeries(prev[1], N), "u_direct")


def u_direct_naive(p: MacParams) -> QSeries:
    """Literal tuple enumeration; only for small orders (test oracle)."""
    a, t, N = p.a, p.t, p.order
    total = QSeries.zero(N)
    if t == 0:
        return QSeries.one(N)
    qs = {m: q_m_factor(a, m, N) for m in range(1, N + 1)}

    def descend(start: int, left: int, budget: int, acc: QSeries):
        nonlocal total
        if left == 0:
            total = total + acc
            return
        m = start
        while left * m + left * (left - 1) // 2 <= budget:
            descend(m + 1, left - 1, budget - m, acc * qs[m])
            m += 1

    descend(1, t, N, QSeries.one(N))
    return total


def u_product(a: int, t_max: int, order: int) -> XPoly:
    """prod_{m>=1} (1 + Q_m(a,q) x), kept to x-degree t_max."""
    _check_a(a)
    cs = [QSeries.one(order)] + [QSeries.zero(order) for _ in range(t_max)]
    for m in range(1, order + 1):
        qm = q_m_factor(a, m, order)
        for t in range(t_max, 0, -1):
            if m + (t - 1) * t // 2 > order:
                continue
            cs[t] = cs[t] + qm * cs[t - 1]
    return XPoly(cs)


def cheb_prefactor(a: int, order: int) -> QSeries:
    """prod 1/((1 + a q^n + q^2n)(1 - q^n)) in simplified Pochhammer form."""
    _check_a(a)
    P = lambda k: qpoch(k, k, order)  # noqa: E731
    if a == -2:
        return 1 / P(1) ** 3
    if a == 2:
        return P(1) / P(2) ** 2
    if a == 1:
        return 1 / P(3)
    if a == -1:
        return P(2) * P(3) / (P(1) ** 2 * P(6))
    return P(2) / (P(1) * P(4))


def cheb_weight(a: int, t: int, n: int):
    """[x^t] to_n((x+a+2)/4), using the closed form where one is known."""
    if a == -2:
        return _norm(Fraction(cheb._sign(n + t) * (2 * n + 1), 2 * t + 1) * cheb.binom(n + t, 2 * t))
    if a == 2:
        return cheb.binom(n + t, 2 * t)
    if a == 0:
        j = (n + t) // 2
        return cheb._sign(n + j) * cheb.binom(j, t)
    return cheb.cheb_coeff_sum((n, t, a))


def u_cheb(p: MacParams) -> QSeries:
    a, t, N = p.a, p.t, p.order
    inner = triangular_sum(lambda n: cheb_weight(a, t, n), N)
    return _require_integral(cheb_prefactor(a, N) * inner, "u_cheb")


def route_series(route: str, p: MacParams) -> QSeries:
    if route == "direct":
        return u_direct(p)
    if route == "product":
        return _require_integral(u_product(p.a, p.t, p.order)[p.t], "u_product")
    if route == "cheb":
        return u_cheb(p)
    raise ValueError(f"unknown route {route!r}")


def all_routes(p: MacParams) -> list[RouteResult]:
    return [RouteResult(r, route_series(r, p)) for r in ROUTES]


def mo_coeff(a: int, t: int, n: int, order: int | None = None):
    """MO(a,t;n), computed by all three routes which must agree."""
    order = n if order is None else order
    if not 0 <= n <= order:
        raise OutOfRange(f"n={n} outside 0..{order}")
    results = all_routes(MacParams(a, t, order))
    values = {r.route: r.series.coefficient(n) for r in results}
    if len(set(values.values())) != 1:
        raise RouteDisagreement(f"MO({a},{t};{n}) differs across routes: {values}")
    return values["direct"]


def scan_congruence_2mod3(t_max: int, order: int) -> IdentityReport:
    """MO(1,t;3n+2) = 0 for 1 <= t <= t_max."""
    started = time.perf_counter()
    F = u_product(1, max(t_max, 0), order)
    checked = 0
    mismatch = None
    for t in range(1, t_max + 1):
        for n in range(2, order + 1, 3):
            checked += 1
            v = F[t][n]
            if v and (mismatch is None or n < mismatch.n):
                mismatch = Mismatch(n, v, 0, f"t={t}")
    return IdentityReport(
        id="thm-2.3",
        order_checked=order,
        verdict="pass" if mismatch is None else "fail",
        first_mismatch=mismatch,
        elapsed=time.perf_counter() - started,
        detail={"t_max": t_max, "coefficients_checked": checked},
    )


def scan_congruence_1mod3_mod3(order: int) -> IdentityReport:
    """3 | MO(1,3;3n+1)."""
    started = time.perf_counter()
    U3 = u_product(1, 3, order)[3]
    checked = 0
    mismatch = None
    first_nonzero = None
    for n in range(1, order + 1, 3):
        checked += 1
        v = U3[n]
        if v and first_nonzero is None:
            first_nonzero = {"n": n, "value": v}
        if v % 3 and mismatch is None:
            mismatch = Mismatch(n, v % 3, 0, "MO(1,3;n) mod 3")
    return IdentityReport(
        id="thm-3.2",
        order_checked=order,
        verdict="pass" if mismatch is None else "fail",
        first_mismatch=mismatch,
        elapsed=time.perf_counter() - started,
        detail={"coefficients_checked": checked, "first_nonzero": first_nonzero},
    )


def h_r_series(a: int, r: int, order: int) -> QSeries:
    """H_r(a,q) = sum_m Q_m(a,q)^r."""
    _check_a(a)
    if r < 1:
        raise ValueError("r must be positive")
    total = QSeries.zero(order)
    m = 1
    while m * r <= order:
        total = total + q_m_factor(a, m, order) ** r
        m += 1
    return total


def newton_log_check(a: int, x_deg: int, order: int) -> IdentityReport:
    """-log F(-x; a, q) against sum_r H_r(a,q) x^r / r."""
    started = time.perf_counter()
    lhs = -(u_product(a, x_deg, order).x_negate().log())
    rhs = XPoly([QSeries.zero(order)] + [h_r_series(a, r, order).scale(Fraction(1, r)) for r in range(1, x_deg + 1)])
    return make_report(f"newton-log[a={a}]", order, [("", lhs, rhs)], started)
