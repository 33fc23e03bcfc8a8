"""Exact McNemar test and paired-outcome bookkeeping."""

from fractions import Fraction
from itertools import product

import pytest

from cdmkit.classify import LooItem, LooResult
from cdmkit.stats import (
    ConfusionCounts,
    MethodComparison,
    compare_methods,
    confusion_from_results,
    mcnemar_exact,
)


def _loo(outcomes: list[bool], prefix="i") -> LooResult:
    items = tuple(
        LooItem(
            item_id=f"{prefix}/{n}",
            true_label="t",
            predicted_label="t" if ok else "f",
            correct=ok,
        )
        for n, ok in enumerate(outcomes)
    )
    return LooResult(per_item=items, k=1)


def test_confusion_counts_properties():
    counts = ConfusionCounts(a=40, b=1, c=8, d=26)
    assert counts.n == 75
    assert counts.accuracy_1 == Fraction(41, 75)
    assert counts.accuracy_2 == Fraction(48, 75)


def test_confusion_counts_validation():
    with pytest.raises(ValueError):
        ConfusionCounts(a=1, b=-1, c=0, d=0)


def test_confusion_from_results():
    x = [True, True, False, False, True]
    y = [True, False, True, False, True]
    counts = confusion_from_results(x, y)
    assert (counts.a, counts.b, counts.c, counts.d) == (2, 1, 1, 1)


def test_confusion_length_mismatch():
    with pytest.raises(ValueError):
        confusion_from_results([True], [True, False])


def test_mcnemar_exact_golden_one_eight():
    # 9 discordant items, 1 favoring method 1: p = (C(9,0)+C(9,1)) / 2^9
    assert mcnemar_exact(1, 8) == Fraction(10, 512)
    assert float(mcnemar_exact(1, 8)) == 0.01953125


def test_mcnemar_exact_golden_ten_twentyone():
    p = mcnemar_exact(10, 21)
    assert p == Fraction(75973189, 2**31)
    assert float(p) == pytest.approx(0.035377772990614176, abs=1e-15)


def test_mcnemar_no_discordance():
    assert mcnemar_exact(0, 0) == Fraction(1)


def test_mcnemar_zero_b():
    assert mcnemar_exact(0, 1) == Fraction(1, 2)
    assert mcnemar_exact(0, 4) == Fraction(1, 16)


def test_mcnemar_symmetric_split_exceeds_half():
    # equal discordance can never look significant
    for n in (1, 2, 5, 10):
        assert mcnemar_exact(n, n) > Fraction(1, 2)


def test_mcnemar_validation():
    with pytest.raises(ValueError):
        mcnemar_exact(-1, 5)
    with pytest.raises(ValueError):
        mcnemar_exact(5, -1)


def test_mcnemar_brute_force_oracle():
    # enumerate all 2^(b+c) null outcomes and count the tail directly
    for b, c in [(0, 3), (1, 8), (2, 2), (3, 5), (4, 8), (6, 6), (0, 12)]:
        n = b + c
        tail = sum(1 for bits in product([0, 1], repeat=n) if sum(bits) <= b)
        assert mcnemar_exact(b, c) == Fraction(tail, 2**n)


def test_mcnemar_monotone_in_b():
    # with total discordance fixed, more wins for method 1 weakens the
    # evidence that method 2 is better
    n = 14
    last = Fraction(0)
    for b in range(n + 1):
        p = mcnemar_exact(b, n - b)
        assert p > last
        last = p


def test_compare_methods():
    x = _loo([True, True, True, False, False, False, False, False, False])
    y = _loo([True, False, True, True, True, True, True, True, True])
    comparison = compare_methods(x, y)
    assert (comparison.counts.a, comparison.counts.b) == (2, 1)
    assert (comparison.counts.c, comparison.counts.d) == (6, 0)
    assert comparison.p_value == mcnemar_exact(1, 6)
    assert comparison.better == "method2"


def test_compare_methods_direction():
    assert compare_methods(_loo([True, True]), _loo([False, False])).better == (
        "method1"
    )
    assert compare_methods(_loo([True, False]), _loo([False, True])).better is None


def test_compare_methods_id_mismatch():
    with pytest.raises(ValueError):
        compare_methods(_loo([True]), _loo([True], prefix="other"))


def test_method_comparison_is_plain_data():
    comparison = MethodComparison(
        counts=ConfusionCounts(a=1, b=2, c=3, d=4), p_value=Fraction(1, 2)
    )
    assert comparison.counts.n == 10
    assert comparison.p_value == Fraction(1, 2)
