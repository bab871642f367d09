import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import partitions_brute, qbinomial_by_division
from sl2fusion.errors import UsageError
from sl2fusion.qseries import (BiSeries, euler_inverse, format_series, monomial_shift,
                               q_binomial, q_factorial, series_add, series_mul,
                               specialize_q1_z1)

Q = 40


def qpoly(*coeffs, qmax4=Q):
    return BiSeries.from_qpoly(coeffs, qmax4)


def test_add_examples():
    assert series_add(qpoly(1, 1), qpoly(0, 1)) == qpoly(1, 2)
    a = qpoly(3, 0, 5)
    assert series_add(a, BiSeries.zero(Q)) == a
    top = BiSeries.monomial(Q, 0, Q) + BiSeries({(Q + 4, 0): 1}, Q)
    assert top == BiSeries.monomial(Q, 0, Q)


def test_mismatched_bounds_rejected():
    with pytest.raises(UsageError):
        series_add(qpoly(1, qmax4=8), qpoly(1, qmax4=12))


def test_mul_examples():
    assert series_mul(qpoly(1, 1), qpoly(1, -1)) == qpoly(1, 0, -1)
    a = BiSeries({(1, 1): 2, (8, -3): 1}, Q)
    assert series_mul(a, BiSeries.one(Q)) == a
    half = BiSeries.monomial(1, 1, Q)
    assert series_mul(half, half) == BiSeries.monomial(2, 2, Q)


def test_shift_examples():
    assert monomial_shift(BiSeries.one(Q), -1, 0) == BiSeries.monomial(-1, 0, Q)
    a = BiSeries({(0, 0): 1, (4, 2): 1}, Q)
    assert monomial_shift(a, 4, 2) == BiSeries({(4, 2): 1, (8, 4): 1}, Q)
    assert monomial_shift(a, 0, 0) == a
    assert format_series(monomial_shift(a, 4, 1)) == "z^(1/2) q + z^(3/2) q^2"


def test_q_factorial():
    assert q_factorial(0, Q) == BiSeries.one(Q)
    assert q_factorial(2, Q) == qpoly(1, -1, -1, 1)
    assert specialize_q1_z1(q_factorial(3, Q)) == 0


def test_q_binomial_examples():
    for n in range(6):
        assert q_binomial(n, 0, Q) == BiSeries.one(Q)
    assert q_binomial(2, 1, Q) == qpoly(1, 1)
    assert q_binomial(4, 2, Q) == qpoly(*qbinomial_by_division(4, 2))
    assert q_binomial(4, 2, Q) == qpoly(1, 1, 2, 1, 1)
    assert q_binomial(3, 5, Q) == BiSeries.zero(Q)
    assert q_binomial(3, -1, Q) == BiSeries.zero(Q)


@pytest.mark.parametrize("n", range(9))
def test_q_binomial_matches_division(n):
    for k in range(n + 1):
        assert q_binomial(n, k, 200) == qpoly(*qbinomial_by_division(n, k), qmax4=200)


def test_euler_inverse_partitions():
    e = euler_inverse(4 * 20)
    assert [e.coefficient(4 * n) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert [e.coefficient(4 * n) for n in range(21)] == [partitions_brute(n) for n in range(21)]
    assert e.coefficient(-4) == 0


def test_euler_reciprocal():
    N = 12
    prod = euler_inverse(4 * N) * q_factorial(N, 4 * N)
    assert prod == BiSeries.one(4 * N)


def test_specialize():
    assert specialize_q1_z1(BiSeries({(0, 0): 1, (0, 2): 1, (4, 2): 1, (8, 4): 1}, Q)) == 4
    assert specialize_q1_z1(BiSeries.zero(Q)) == 0
    assert specialize_q1_z1(q_binomial(2, 1, Q)) == 2
    with pytest.raises(UsageError):
        specialize_q1_z1(euler_inverse(Q))


def test_truncation_marks_nonpolynomial():
    s = BiSeries({(0, 0): 1, (Q + 1, 0): 1}, Q)
    assert not s.polynomial
    with pytest.raises(UsageError):
        specialize_q1_z1(s)


def test_json_roundtrip_and_order():
    s = BiSeries({(8, -2): 3, (0, 4): -1, (0, -4): 10**30}, Q)
    text = s.to_json()
    obj = json.loads(text)
    assert [(t["q4"], t["z2"]) for t in obj["terms"]] == sorted((t["q4"], t["z2"]) for t in obj["terms"])
    assert obj["terms"][0]["c"] == str(10**30)
    assert BiSeries.from_json(text) == s


def test_inexact_operations_rejected():
    cut = BiSeries({(0, 0): 1, (12, 0): 1}, 8)
    low = BiSeries.monomial(-1, 0, 8)
    with pytest.raises(UsageError):
        cut * low
    with pytest.raises(UsageError):
        cut.shift(-4, 0)
    assert (cut * BiSeries.monomial(1, 0, 8)).coefficient(1) == 1


def test_coefficient_above_bound_rejected():
    with pytest.raises(UsageError):
        BiSeries.one(8).coefficient(12)


# properties

exps = st.tuples(st.integers(-8, 24), st.integers(-6, 6))
series = st.dictionaries(exps, st.integers(-5, 5), max_size=8).map(lambda d: BiSeries(d, 24))


nonneg = st.dictionaries(st.tuples(st.integers(0, 24), st.integers(-6, 6)),
                         st.integers(-5, 5), max_size=8).map(lambda d: BiSeries(d, 24))


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_additive_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == BiSeries.zero(24)


@settings(max_examples=60, deadline=None)
@given(nonneg, nonneg, nonneg)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(nonneg, nonneg, st.integers(0, 24))
def test_truncation_coherence(a, b, lower):
    assert (a * b).restrict(lower) == a.restrict(lower) * b.restrict(lower)
    assert (a + b).restrict(lower) == a.restrict(lower) + b.restrict(lower)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10), st.integers(0, 10))
def test_q_binomial_symmetry_and_pascal(n, k):
    k = min(k, n)
    assert q_binomial(n, k, 400) == q_binomial(n, n - k, 400)
    if n >= 1 and k >= 1:
        rhs = q_binomial(n - 1, k - 1, 400) + q_binomial(n - 1, k, 400).shift(4 * k, 0)
        assert q_binomial(n, k, 400) == rhs


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 30))
def test_euler_truncation_coherence(low):
    assert euler_inverse(160).restrict(4 * low) == euler_inverse(4 * low)
