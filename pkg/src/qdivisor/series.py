"""Exact truncated power series in q, plus polynomials in a marker x over them.

Coefficients are Python ints or :class:`fractions.Fraction`; a value whose
denominator is 1 is always stored as an int so integer-only series run at
integer speed.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "SeriesError",
    "ShiftMismatch",
    "NonUnitConstantTerm",
    "OutOfRange",
    "QSeries",
    "XPoly",
    "add",
    "mul",
    "invert",
    "derive",
    "substitute_power",
    "coefficient",
]

ALLOWED_SHIFT_DENOMINATORS = (1, 2, 4, 8, 24)


class SeriesError(ValueError):
    pass


class ShiftMismatch(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class OutOfRange(SeriesError, IndexError):
    pass


def _norm(c):
    """Canonical exact scalar: int when integral, Fraction otherwise."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational required, got {type(c).__name__}")


def _as_shift(s) -> Fraction:
    s = Fraction(s)
    if 24 % s.denominator:
        raise SeriesError(f"shift {s} has denominator outside {ALLOWED_SHIFT_DENOMINATORS}")
    return s


class QSeries:
    """Truncated series ``sum_{n<=order} c_n q^(shift+n)``.

    Instances are immutable. Any integral part of ``shift`` is folded into the
    coefficient list, so ``shift`` always lies in ``[0, 1)``.
    """

    __slots__ = ("_order", "_shift", "_coeffs")

    def __init__(self, coeffs: Iterable, order: int | None = None, shift=0):
        cs = [_norm(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise SeriesError("order must be non-negative")
        if len(cs) < order + 1:
            cs.extend([0] * (order + 1 - len(cs)))
        del cs[order + 1:]
        shift = _as_shift(shift)
        whole = shift.numerator // shift.denominator
        if whole > 0:
            cs = [0] * whole + cs[: order + 1 - whole] if whole <= order else [0] * (order + 1)
        elif whole < 0:
            drop = -whole
            if any(cs[:drop]):
                raise SeriesError("negative exponent with nonzero coefficient")
            cs = cs[drop:] + [0] * drop
        self._order = order
        self._shift = shift - whole
        self._coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list, order: int, shift: Fraction) -> "QSeries":
        # trusted constructor: coeffs already normalized, len == order+1, 0 <= shift < 1
        obj = object.__new__(cls)
        obj._order = order
        obj._shift = shift
        obj._coeffs = tuple(coeffs)
        return obj

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls._raw([0] * (order + 1), order, Fraction(0))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.constant(1, order)

    @classmethod
    def constant(cls, c, order: int) -> "QSeries":
        cs = [0] * (order + 1)
        cs[0] = _norm(c)
        return cls._raw(cs, order, Fraction(0))

    @classmethod
    def monomial(cls, exponent, order: int, c=1) -> "QSeries":
        """``c * q**exponent``; a fractional exponent becomes the shift."""
        exponent = Fraction(exponent)
        whole = exponent.numerator // exponent.denominator
        cs = [0] * (order + 1)
        if 0 <= whole <= order:
            cs[whole] = _norm(c)
        elif whole < 0:
            raise SeriesError("negative exponent")
        return cls._raw(cs, order, _as_shift(exponent - whole))

    @classmethod
    def from_dict(cls, terms: dict, order: int) -> "QSeries":
        cs = [0] * (order + 1)
        for e, c in terms.items():
            if 0 <= e <= order:
                cs[e] += c
        return cls(cs, order)

    @property
    def order(self) -> int:
        return self._order

    @property
    def shift(self) -> Fraction:
        return self._shift

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __len__(self):
        return self._order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def coefficient(self, n: int):
        if not 0 <= n <= self._order:
            raise OutOfRange(f"coefficient {n} outside 0..{self._order}")
        return self._coeffs[n]

    def valuation(self) -> int | None:
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return None

    def nonzero(self) -> list[tuple[int, object]]:
        return [(i, c) for i, c in enumerate(self._coeffs) if c]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self._order:
            raise OutOfRange(f"cannot extend order {self._order} to {order}")
        return QSeries._raw(list(self._coeffs[: order + 1]), order, self._shift)

    # -- comparison -------------------------------------------------------

    def equal_to(self, other: "QSeries", order: int) -> bool:
        if self._shift != other._shift:
            return False
        return self._coeffs[: order + 1] == other._coeffs[: order + 1]

    def first_difference(self, other: "QSeries") -> int | None:
        """Smallest index where the two series differ, up to the common order."""
        if self._shift != other._shift:
            raise ShiftMismatch(f"shifts {self._shift} and {other._shift}")
        for i in range(min(self._order, other._order) + 1):
            if self._coeffs[i] != other._coeffs[i]:
                return i
        return None

    def __eq__(self, other):
        if isinstance(other, QSeries):
            m = min(self._order, other._order)
            return self.equal_to(other, m)
        if isinstance(other, (int, Fraction)):
            return self == QSeries.constant(other, self._order)
        return NotImplemented

    __hash__ = None

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self._order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-c for c in self._coeffs], self._order, self._shift)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, QSeries):
            return mul(self, invert(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return invert(self).scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise SeriesError("only non-negative integer powers")
        result = QSeries.one(self._order)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def scale(self, c) -> "QSeries":
        c = _norm(c)
        return QSeries._raw([_norm(c * x) if x else 0 for x in self._coeffs], self._order, self._shift)

    def derive(self) -> "QSeries":
        return derive(self)

    def subs(self, k: int) -> "QSeries":
        return substitute_power(self, k)

    def __repr__(self):
        return f"QSeries({self.to_str(8)})"

    def to_str(self, terms: int = 10) -> str:
        parts = []
        shown = 0
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            if shown == terms:
                break
            e = self._shift + i
            parts.append(f"{c}*q^{e}" if e else f"{c}")
            shown += 1
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{self._shift + self._order + 1})"


def add(a: QSeries, b: QSeries) -> QSeries:
    if a.shift != b.shift:
        raise ShiftMismatch(f"cannot add series with shifts {a.shift} and {b.shift}")
    order = min(a.order, b.order)
    ca, cb = a.coeffs, b.coeffs
    return QSeries._raw([_norm(ca[i] + cb[i]) for i in range(order + 1)], order, a.shift)


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product; loops over the nonzero terms of the sparser factor."""
    order = min(a.order, b.order)
    na = [(i, c) for i, c in enumerate(a.coeffs[: order + 1]) if c]
    nb = [(j, c) for j, c in enumerate(b.coeffs[: order + 1]) if c]
    if len(nb) < len(na):
        na, nb = nb, na
    out = [0] * (order + 1)
    for i, ci in na:
        lim = order - i
        for j, cj in nb:
            if j > lim:
                break
            out[i + j] += ci * cj
    shift = a.shift + b.shift
    whole = shift.numerator // shift.denominator
    if whole:
        out = [0] * whole + out[: order + 1 - whole]
        shift -= whole
    return QSeries._raw([_norm(c) for c in out], order, shift)


def invert(a: QSeries) -> QSeries:
    if a.shift != 0:
        raise NonUnitConstantTerm("cannot invert a series with fractional shift")
    c0 = a.coeffs[0]
    if c0 == 0:
        raise NonUnitConstantTerm("constant term is zero")
    order = a.order
    nz = [(i, c) for i, c in enumerate(a.coeffs) if c and i > 0]
    integral = c0 in (1, -1) and all(isinstance(c, int) for _, c in nz)
    inv0 = c0 if integral else Fraction(1) / c0
    out = [0] * (order + 1)
    out[0] = _norm(inv0)
    for n in range(1, order + 1):
        s = 0
        for i, c in nz:
            if i > n:
                break
            s += c * out[n - i]
        out[n] = _norm(-s * inv0) if s else 0
    return QSeries._raw(out, order, Fraction(0))


def derive(a: QSeries) -> QSeries:
    """The operator D = q d/dq, honouring a fractional shift."""
    s = a.shift
    if s == 0:
        cs = [n * c for n, c in enumerate(a.coeffs)]
    else:
        cs = [_norm((s + n) * c) if c else 0 for n, c in enumerate(a.coeffs)]
    return QSeries._raw(cs, a.order, s)


def substitute_power(a: QSeries, k: int) -> QSeries:
    """q -> q^k, keeping the truncation order."""
    if a.shift != 0:
        raise ShiftMismatch("substitute_power needs an integer-exponent series")
    if k < 1:
        raise SeriesError("k must be a positive integer")
    order = a.order
    out = [0] * (order + 1)
    for n in range(0, order // k + 1):
        out[n * k] = a.coeffs[n]
    return QSeries._raw(out, order, Fraction(0))


def coefficient(a: QSeries, n: int):
    return a.coefficient(n)


class XPoly:
    """Polynomial in x with QSeries coefficients, truncated at ``xdeg``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[QSeries]):
        coeffs = list(coeffs)
        if not coeffs:
            raise SeriesError("XPoly needs at least the x^0 coefficient")
        order = min(c.order for c in coeffs)
        for c in coeffs:
            if c.shift != 0:
                raise ShiftMismatch("XPoly coefficients must have shift 0")
        self._coeffs = tuple(c if c.order == order else c.truncate(order) for c in coeffs)

    @classmethod
    def one(cls, xdeg: int, order: int) -> "XPoly":
        return cls([QSeries.one(order)] + [QSeries.zero(order)] * xdeg)

    @property
    def xdeg(self) -> int:
        return len(self._coeffs) - 1

    @property
    def order(self) -> int:
        return self._coeffs[0].order

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def __getitem__(self, t: int) -> QSeries:
        return self._coeffs[t]

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        d = min(self.xdeg, other.xdeg)
        return all(self[t] == other[t] for t in range(d + 1))

    __hash__ = None

    def __add__(self, other: "XPoly") -> "XPoly":
        d = min(self.xdeg, other.xdeg)
        return XPoly([self[t] + other[t] for t in range(d + 1)])

    def __sub__(self, other: "XPoly") -> "XPoly":
        d = min(self.xdeg, other.xdeg)
        return XPoly([self[t] - other[t] for t in range(d + 1)])

    def __neg__(self):
        return XPoly([-c for c in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return XPoly([c * other for c in self._coeffs])
        if isinstance(other, (int, Fraction)):
            return XPoly([c.scale(other) for c in self._coeffs])
        if not isinstance(other, XPoly):
            return NotImplemented
        d = min(self.xdeg, other.xdeg)
        order = min(self.order, other.order)
        out = [QSeries.zero(order) for _ in range(d + 1)]
        for i in range(d + 1):
            if self[i].valuation() is None:
                continue
            for j in range(d + 1 - i):
                if other[j].valuation() is None:
                    continue
                out[i + j] = out[i + j] + self[i] * other[j]
        return XPoly(out)

    __rmul__ = __mul__

    def x_negate(self) -> "XPoly":
        """x -> -x."""
        return XPoly([c if t % 2 == 0 else -c for t, c in enumerate(self._coeffs)])

    def log(self) -> "XPoly":
        """Formal log of a polynomial with constant x^0 coefficient 1.

        Uses ``log F = -sum_k (1-F)^k / k``; (1-F) has no x^0 part, so the sum
        stops at k = xdeg.
        """
        one = XPoly.one(self.xdeg, self.order)
        if self[0] != QSeries.one(self.order):
            raise SeriesError("log needs x^0 coefficient equal to 1")
        g = one - self
        term = one
        total = XPoly([QSeries.zero(self.order)] * (self.xdeg + 1))
        for k in range(1, self.xdeg + 1):
            term = term * g
            total = total - term * Fraction(1, k)
        return total

    def __repr__(self):
        return "XPoly(" + ", ".join(f"x^{t}: {c.to_str(4)}" for t, c in enumerate(self._coeffs)) + ")"
