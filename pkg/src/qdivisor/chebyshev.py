"""The odd Chebyshev family to_n(x) = T_{2n+1}(sqrt x)/sqrt x and its coefficients.

Two independent ways of reading ``[x^t] to_n((x+a+2)/4)`` live here: a finite
hypergeometric sum and a coefficient extraction from a rational generating
function in an auxiliary variable z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .series import QSeries, _norm


def binom(p: int, r: int) -> int:
    """Binomial coefficient, zero outside 0 <= r <= p."""
    if r < 0 or p < 0 or r > p:
        return 0
    return comb(p, r)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class ChebCoeffQuery:
    n: int
    t: int
    a: int

    def __post_init__(self):
        if self.n < 0 or self.t < 0:
            raise ValueError("n and t must be non-negative")
        if self.a not in (-2, -1, 0, 1, 2):
            raise ValueError("a must be one of -2, -1, 0, 1, 2")


def to_n_poly(n: int) -> list:
    """Coefficients (ascending in x) of to_n(x); integers."""
    out = []
    for k in range(n + 1):
        c = Fraction((2 * n + 1) * _sign(n + k) * binom(n + k + 1, 2 * k + 1) * 4**k, n + k + 1)
        out.append(_norm(c))
    return out


def chebyshev_T(m: int) -> list:
    """T_m by the three-term recurrence; ascending integer coefficients."""
    prev, cur = [1], [0, 1]
    if m == 0:
        return prev
    for _ in range(m - 1):
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_compose_affine(coeffs, scale, offset) -> list:
    """Coefficients of p(scale*x + offset), ascending, exact."""
    out = [0]
    for c in reversed(coeffs):
        # out = out * (scale x + offset) + c
        nxt = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i] += v * offset
            nxt[i + 1] += v * scale
        nxt[0] += c
        out = nxt
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return [_norm(Fraction(v)) for v in out]


def cheb_coeff_sum(q: ChebCoeffQuery | tuple):
    """[x^t] to_n((x+a+2)/4) by the direct finite sum over k."""
    if not isinstance(q, ChebCoeffQuery):
        q = ChebCoeffQuery(*q)
    n, t, a = q.n, q.t, q.a
    base = a + 2
    total = Fraction(0)
    for k in range(t, n + 1):
        # base**0 == 1 in Python, which is the 0^0 convention wanted at a = -2
        term = Fraction(_sign(n + k) * binom(n + k + 1, 2 * k + 1), n + k + 1)
        total += term * binom(k, t) * base ** (k - t)
    return _norm((2 * n + 1) * total)


def _poly_series(poly: dict, order: int) -> QSeries:
    return QSeries.from_dict(poly, order)


def riordan_coeff(q: ChebCoeffQuery | tuple):
    """(-1)^(n-t) [z^n] z^t (1+z) / (1 + a z + z^2)^(t+1), via series inversion."""
    if not isinstance(q, ChebCoeffQuery):
        q = ChebCoeffQuery(*q)
    n, t, a = q.n, q.t, q.a
    if t > n:
        return 0
    order = n
    den = _poly_series({0: 1, 1: a, 2: 1}, order) ** (t + 1)
    num = _poly_series({t: 1, t + 1: 1}, order)
    val = (num / den).coefficient(n)
    return _norm(_sign(n - t) * val)


def c_n_closed(n: int):
    """Piecewise closed form of [x^2] to_n((x+3)/4)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    r = n % 3
    if r == 0:
        j = n // 3
        return _sign(j - 1) * j * (3 * j + 1) // 2
    if r == 1:
        return 0
    j = (n + 1) // 3
    return _sign(j - 1) * j * (3 * j - 1) // 2


def a128504_term(n: int):
    """[z^n] 1/(1+z+z^2)^3 by its piecewise closed form."""
    if n < 0:
        raise ValueError("n must be non-negative")
    r = n % 3
    if r == 0:
        return n // 3 + 1
    if r == 1:
        j = n // 3
        return -3 * (j + 1) * (j + 2) // 2
    j = (n + 1) // 3
    return 3 * j * (j + 1) // 2


def a128504_series(order: int) -> QSeries:
    """1/(1+z+z^2)^3 expanded directly, the oracle for :func:`a128504_term`."""
    return 1 / (_poly_series({0: 1, 1: 1, 2: 1}, order) ** 3)


def c_n_via_a128504(n: int):
    """(-1)^n (a_{n-2} + a_{n-3}), with a_m = 0 for m < 0."""
    s = sum(a128504_term(m) for m in (n - 2, n - 3) if m >= 0)
    return _sign(n) * s


def f_t_eval(t: int, n: int):
    """sum_k (-1)^k (2n+1) C(2n+1-k, k)/(2n+1-k) C(n-k, t) 3^(n-k-t)."""
    if t < 0 or n < 0:
        raise ValueError("t and n must be non-negative")
    total = Fraction(0)
    for k in range(0, n - t + 1):
        total += Fraction(_sign(k) * binom(2 * n + 1 - k, k), 2 * n + 1 - k) * binom(n - k, t) * 3 ** (n - k - t)
    return _norm((2 * n + 1) * total)
