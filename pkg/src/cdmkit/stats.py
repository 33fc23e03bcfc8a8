"""Exact McNemar test for comparing two paired binary result vectors.

The discordant counts are b (method 1 correct where method 2 is wrong)
and c (the reverse). Under the null the b + c discordant items split
50/50, so the one-sided p-value for "method 2 is better" is the exact
binomial tail

    p = 2^-(b+c) * sum_{k=0}^{b} C(b+c, k)

computed in rational arithmetic; no normal approximation anywhere.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .classify import LooResult


@dataclass(frozen=True)
class ConfusionCounts:
    """Paired-outcome counts: a both correct, b only method 1 correct,
    c only method 2 correct, d both incorrect."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    @property
    def accuracy_1(self) -> Fraction:
        return Fraction(self.a + self.b, self.n)

    @property
    def accuracy_2(self) -> Fraction:
        return Fraction(self.a + self.c, self.n)


def confusion_from_results(x: list[bool], y: list[bool]) -> ConfusionCounts:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    a = b = c = d = 0
    for xi, yi in zip(x, y):
        if xi and yi:
            a += 1
        elif xi:
            b += 1
        elif yi:
            c += 1
        else:
            d += 1
    return ConfusionCounts(a=a, b=b, c=c, d=d)


def mcnemar_exact(b: int, c: int) -> Fraction:
    """One-sided exact p-value from the discordant counts."""
    if b < 0 or c < 0:
        raise ValueError("counts must be >= 0")
    n = b + c
    if n == 0:
        return Fraction(1)
    return Fraction(sum(comb(n, k) for k in range(b + 1)), 2**n)


@dataclass(frozen=True)
class MethodComparison:
    counts: ConfusionCounts
    p_value: Fraction

    @property
    def better(self) -> str | None:
        """Which method scored higher, or None on an exact tie."""
        if self.counts.b > self.counts.c:
            return "method1"
        if self.counts.c > self.counts.b:
            return "method2"
        return None


def compare_methods(x: LooResult, y: LooResult) -> MethodComparison:
    """Confusion counts and the one-sided p for "method 2 is better"."""
    ids_x = [item.item_id for item in x.per_item]
    ids_y = [item.item_id for item in y.per_item]
    if ids_x != ids_y:
        raise ValueError("results cover different corpora or item orders")
    counts = confusion_from_results(x.outcomes, y.outcomes)
    return MethodComparison(counts=counts, p_value=mcnemar_exact(counts.b, counts.c))
