from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from trimser.exact import as_rational, binom, enumerate_index_sets, enumerate_multi_indices

from oracle import binom_oracle, brute_multi_indices


def test_binom_examples():
    assert binom(4, 2) == 6
    assert binom(1, 2) == 0
    for r in range(1, 6):
        assert binom(r - 1, -1) == 0
    assert binom(-1, 0) == 0
    assert binom(0, 0) == 1


@given(st.integers(-10, 30), st.integers(-10, 30))
def test_binom_matches_factorial_oracle(a, b):
    assert binom(a, b) == binom_oracle(a, b)


@given(st.integers(1, 40), st.integers(-5, 45))
def test_pascal_rule(a, b):
    assert binom(a, b) == binom(a - 1, b - 1) + binom(a - 1, b)


def test_multi_index_examples():
    assert enumerate_multi_indices(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert enumerate_multi_indices(3, 0) == [(0, 0, 0)]
    assert len(enumerate_multi_indices(3, 2)) == 6 == binom(4, 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_multi_index_counts(n):
    for r in range(11):
        got = enumerate_multi_indices(n, r)
        assert len(got) == binom(n + r - 1, r)
        assert sorted(got, reverse=True) == got
        if n <= 4 and r <= 6:
            assert set(got) == set(brute_multi_indices(n, r))


def test_index_set_examples():
    assert enumerate_index_sets(3, 2) == [(0, 1), (0, 2), (1, 2)]
    assert enumerate_index_sets(5, 0) == [()]
    assert len(enumerate_index_sets(4, 2)) == 6


@pytest.mark.parametrize("n", range(1, 7))
def test_index_set_counts(n):
    for k in range(n + 1):
        got = enumerate_index_sets(n, k)
        assert len(got) == binom(n, k)
        assert got == sorted(got)
        assert set(got) == {s for s in itertools.combinations(range(n), k)}


fractions = st.fractions(max_denominator=50)


@given(fractions, fractions, fractions)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    x = a * b + c
    assert x.denominator > 0
    from math import gcd

    assert gcd(abs(x.numerator), x.denominator) == 1


def test_as_rational():
    assert as_rational(3) == Fraction(3)
    assert as_rational("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_rational(0.5)
