import itertools
import time
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import weighted_models
from quadwalk.model import WeightedModel, named_model
from quadwalk.walks import (
    TruncatedSeries,
    check_functional_equation,
    count_walks,
    functional_equation_residual,
)


def brute_force(steps, n):
    """Endpoint counts of unweighted n-step quadrant walks by listing every word."""
    out = Counter()
    for word in itertools.product(steps, repeat=n):
        x = y = 0
        for a, b in word:
            x, y = x + a, y + b
            if x < 0 or y < 0:
                break
        else:
            out[(x, y)] += 1
    return out


@pytest.mark.parametrize("name", ["simple", "IB.6", "GB", "IIB.3"])
def test_counts_match_enumeration(name):
    m = named_model(name)
    steps = sorted(m.support)
    table = count_walks(m, 6)
    for n in range(7):
        bf = brute_force(steps, n)
        got = {(i, j): v for (i, j, k), v in table.q.items() if k == n}
        assert got == {key: Fraction(v) for key, v in bf.items()}


def test_simple_walk_known_values():
    table = count_walks(named_model("simple"), 4)
    assert table[(0, 0, 2)] == 2
    assert table[(0, 0, 4)] == 10
    assert [table.total(n) for n in range(5)] == [1, 2, 6, 18, 60]


def test_weights_multiply():
    m = WeightedModel({(0, 1): 2, (0, -1): Fraction(1, 3), (1, 0): 1, (-1, 0): 1})
    assert count_walks(m, 2)[(0, 0, 2)] == 2 * Fraction(1, 3) + 1


@settings(max_examples=15)
@given(weighted_models())
def test_counts_nonnegative(m):
    assert all(v >= 0 for v in count_walks(m, 6).q.values())


@settings(max_examples=15)
@given(weighted_models())
def test_transposed_table(m):
    a, b = count_walks(m, 6), count_walks(m.transpose(), 6)
    assert {(j, i, n): v for (i, j, n), v in a.q.items()} == b.q


@pytest.mark.parametrize("name", ["simple", "wIIC.2", "IB.6", "GB"])
def test_functional_equation(name):
    start = time.perf_counter()
    assert check_functional_equation(named_model(name), 12)
    assert time.perf_counter() - start < 10


@settings(max_examples=10)
@given(weighted_models())
def test_functional_equation_random(m):
    assert check_functional_equation(m, 8)


@pytest.mark.parametrize("key", [(0, 0, 2), (1, 0, 3), (0, 2, 6)])
def test_corrupted_table_detected(key):
    m = named_model("simple")
    table = count_walks(m, 8)
    assert not check_functional_equation(m, 8, table.corrupted(key))
    assert not functional_equation_residual(m, 8, table.corrupted(key)).is_zero()


def test_series_arithmetic():
    a = TruncatedSeries(3, {(1, 1, 0): Fraction(2)})
    b = TruncatedSeries(3, {(2, 0, 1): Fraction(1), (3, 0, 0): Fraction(5)})
    prod = a * b
    assert prod.terms == {(3, 1, 1): Fraction(2)}  # t^4 term truncated
    assert (a - a).is_zero()
    assert (b.restrict(y_zero=True)).terms == {(3, 0, 0): Fraction(5)}


def test_rejects_bad_orders():
    with pytest.raises(ValueError):
        count_walks(named_model("simple"), -1)
    with pytest.raises(ValueError):
        functional_equation_residual(named_model("simple"), 0)
