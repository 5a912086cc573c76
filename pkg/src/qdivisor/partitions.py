"""Two-part partitions n1^f1 n2^f2 with multiplicities prime to 3, and the
bijection between the congruent (P0) and incongruent (P1) classes.

The bijection is defined on P1 and misses exactly the P0 partitions of shape
(2d)^f1 d^f2, which is how P0(n) - P1(n) picks up sigma(n/3).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .etatheta import sigma


class PartitionClass(Enum):
    P0 = "P0"
    P1 = "P1"


class NotInP0(ValueError):
    pass


class NotInP1(ValueError):
    pass


class _Exceptional:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EXCEPTIONAL"


EXCEPTIONAL = _Exceptional()


@dataclass(frozen=True, order=True)
class TwoPartPartition:
    """Canonical form keeps n1 < n2."""

    n1: int
    f1: int
    n2: int
    f2: int

    def __post_init__(self):
        if min(self.n1, self.f1, self.n2, self.f2) < 1:
            raise ValueError("parts and multiplicities must be positive")
        if self.n1 == self.n2:
            raise ValueError("the two parts must differ")

    @classmethod
    def of(cls, n1: int, f1: int, n2: int, f2: int) -> "TwoPartPartition":
        if n1 > n2:
            n1, f1, n2, f2 = n2, f2, n1, f1
        return cls(n1, f1, n2, f2)

    @property
    def weight(self) -> int:
        return self.f1 * self.n1 + self.f2 * self.n2

    def classify(self) -> PartitionClass | None:
        if self.f1 % 3 == 0 or self.f2 % 3 == 0:
            return None
        return PartitionClass.P0 if self.f1 % 3 == self.f2 % 3 else PartitionClass.P1

    def parts(self) -> list[int]:
        """Parts in weakly decreasing order, e.g. 7,1,1."""
        return [self.n2] * self.f2 + [self.n1] * self.f1

    def __str__(self):
        ps = self.parts()
        if all(p < 10 for p in ps):
            return "".join(map(str, ps))
        return f"{self.n2}^{self.f2} {self.n1}^{self.f1}"


def enumerate_class(n: int, cls: PartitionClass) -> list[TwoPartPartition]:
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for n1 in range(1, n + 1):
        for f1 in range(1, n // n1 + 1):
            if f1 % 3 == 0:
                continue
            rest = n - f1 * n1
            if rest <= 0:
                break
            for n2 in range(n1 + 1, rest + 1):
                if rest % n2:
                    continue
                f2 = rest // n2
                if f2 % 3 == 0:
                    continue
                p = TwoPartPartition(n1, f1, n2, f2)
                if p.classify() is cls:
                    out.append(p)
    return sorted(out)


def class_counts(n: int) -> tuple[int, int]:
    return len(enumerate_class(n, PartitionClass.P0)), len(enumerate_class(n, PartitionClass.P1))


def forward_map(p: TwoPartPartition) -> TwoPartPartition:
    """P1 -> P0: with f2 > f1, n1^f1 n2^f2 -> (n1+n2)^f1 n2^(f2-f1)."""
    if p.classify() is not PartitionClass.P1:
        raise NotInP1(f"{p} is not in P1")
    # role "n2" goes to whichever part has the larger multiplicity
    if p.f2 > p.f1:
        a, fa, b, fb = p.n1, p.f1, p.n2, p.f2
    else:
        a, fa, b, fb = p.n2, p.f2, p.n1, p.f1
    return TwoPartPartition.of(a + b, fa, b, fb - fa)


def inverse_map(p: TwoPartPartition):
    """P0 -> P1: with n1 > n2, n1^f1 n2^f2 -> (n1-n2)^f1 n2^(f1+f2).

    Returns :data:`EXCEPTIONAL` when n1 = 2 n2, where the image would repeat a part.
    """
    if p.classify() is not PartitionClass.P0:
        raise NotInP0(f"{p} is not in P0")
    big, fbig, small, fsmall = p.n2, p.f2, p.n1, p.f1
    if big == 2 * small:
        return EXCEPTIONAL
    return TwoPartPartition.of(big - small, fbig, small, fbig + fsmall)


def is_exceptional(p: TwoPartPartition) -> bool:
    return p.n2 == 2 * p.n1


def exceptional_count(n: int) -> int:
    return sum(1 for p in enumerate_class(n, PartitionClass.P0) if is_exceptional(p))


def expected_difference(n: int) -> int:
    """0 unless 3 | n, in which case sigma(n/3)."""
    return sigma(n // 3) if n % 3 == 0 else 0
