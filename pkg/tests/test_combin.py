import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import exact, f64
from qbern.combin import (
    bernoulli_higher,
    bernoulli_poly_higher,
    q_power_expand,
    q_power_expand_multi,
    q_stirling2,
    q_stirling2_difference,
    q_stirling2_gf,
    stirling2,
    stirling2_difference,
    stirling2_gf,
)
from qbern.qcore import Domain, QContext, q_number
from qbern.series import coeff_extract


def block_counts(n):
    """Number of set partitions of {0..n-1} by block count, by enumeration."""
    counts = [0] * (n + 1)

    def place(i, blocks):
        if i == n:
            counts[blocks] += 1
            return
        for _ in range(blocks):
            place(i + 1, blocks)
        place(i + 1, blocks + 1)

    place(0, 0)
    return counts


def test_stirling_examples():
    for n in range(11):
        assert stirling2(n, n) == 1
    assert stirling2(4, 2) == 7
    assert stirling2(2, 5) == 0
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]


def test_stirling_brute_force():
    for n in range(11):
        assert [stirling2(n, k) for k in range(n + 1)] == block_counts(n)


def test_stirling_recurrence_difference_gf():
    for n in range(1, 13):
        for k in range(n + 1):
            prev = stirling2(n - 1, k - 1) if k else 0
            assert stirling2(n, k) == k * stirling2(n - 1, k) + prev
    for k in range(7):
        gf = stirling2_gf(k, 12)
        for n in range(13):
            assert stirling2_difference(n, k) == stirling2(n, k)
            assert coeff_extract(gf, n) == stirling2(n, k)


def test_stirling_big_n_exact():
    assert stirling2(25, 3) == (3 ** 25 - 3 * 2 ** 25 + 3) // 6


def test_q_stirling_examples():
    for q in (F(1, 5), F(1, 2), F(3, 4)):
        ctx = exact(q)
        assert q_stirling2(0, 0, ctx) == 1
        assert q_stirling2(1, 1, ctx) == 1
    ctx1 = exact(1)
    for n in range(13):
        for k in range(n + 1):
            assert q_stirling2(n, k, ctx1) == stirling2(n, k)


def test_q_stirling_recurrence():
    # independent oracle: S(n,k;q) = S(n-1,k-1;q) + [k]_q S(n-1,k;q)
    ctx = exact("2/7")
    for n in range(1, 10):
        for k in range(1, n + 1):
            rhs = q_stirling2(n - 1, k - 1, ctx) + q_number(k, ctx) * q_stirling2(n - 1, k, ctx)
            assert q_stirling2(n, k, ctx) == rhs


def test_q_stirling_three_forms():
    for q in (F(1, 5), F(1, 2), F(3, 4)):
        ctx = exact(q)
        for k in range(6):
            gf = q_stirling2_gf(k, 10, ctx)
            for n in range(11):
                s = q_stirling2(n, k, ctx)
                assert q_stirling2_difference(n, k, ctx) == s
                assert coeff_extract(gf, n) == s


def test_bernoulli_tables():
    assert bernoulli_higher(5, 0).values == (1, 0, 0, 0, 0, 0)
    assert bernoulli_higher(2, 1).values == (1, F(-1, 2), F(1, 6))
    assert bernoulli_higher(6, 2)[0] == 1
    # classical Bernoulli numbers with B_1 = -1/2
    b = bernoulli_higher(12, 1)
    assert [b[n] for n in (4, 6, 8, 10, 12)] == [F(-1, 30), F(1, 42), F(-1, 30), F(5, 66), F(-691, 2730)]
    assert all(b[n] == 0 for n in (3, 5, 7, 9, 11))


def test_bernoulli_classical_recurrence():
    # sum_{j<n+1} C(n+1, j) B_j = 0 for n >= 1
    b = bernoulli_higher(15, 1)
    for n in range(1, 15):
        assert sum(math.comb(n + 1, j) * b[j] for j in range(n + 1)) == 0


def test_bernoulli_poly():
    y = F(3, 7)
    for n in range(6):
        assert bernoulli_poly_higher(n, 0, y) == y ** n
        assert bernoulli_poly_higher(0, n, y) == 1
    assert bernoulli_poly_higher(1, 1, y) == y - F(1, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 8), st.integers(0, 4), st.fractions(-3, 3, max_denominator=9))
def test_bernoulli_poly_difference(n, k, y):
    # B_n^(k)(y+1) - B_n^(k)(y) = n B_{n-1}^(k-1)(y)
    if k == 0 or n == 0:
        return
    lhs = bernoulli_poly_higher(n, k, y + 1) - bernoulli_poly_higher(n, k, y)
    assert lhs == n * bernoulli_poly_higher(n - 1, k - 1, y)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10), st.integers(1, 4), st.integers(1, 4))
def test_bernoulli_order_addition(n, a, b):
    # (t/(e^t-1))^(a+b) = product of the two powers
    ta, tb, tab = bernoulli_higher(n, a), bernoulli_higher(n, b), bernoulli_higher(n, a + b)
    assert tab[n] == sum(math.comb(n, j) * ta[j] * tb[n - j] for j in range(n + 1))


def test_q_power_expand_examples():
    ctx = exact("1/2")
    assert q_power_expand(0, 5, ctx) == 1
    assert q_power_expand(1, 4, ctx) == q_number(4, ctx)
    assert q_power_expand(3, 2, ctx) == F(27, 8)


def test_q_power_expand_exact_grid():
    for q in (F(1, 5), F(1, 2), F(3, 4), F(1)):
        ctx = exact(q)
        for x in range(7):
            for n in range(9):
                assert q_power_expand(n, x, ctx) == q_number(x, ctx) ** n


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 0.99), st.integers(0, 8), st.sampled_from([0.2, 0.5, 0.75]))
def test_q_power_expand_real_x(x, n, q):
    # cancellation among q^-C(k,2) terms needs extra working precision
    ctx = QContext(F(q), Domain.FLOAT, precision=256)
    val = q_power_expand(n, x, ctx)
    assert float(val) == pytest.approx(float(q_number(x, f64(q))) ** n, rel=1e-9)


def test_q_power_expand_multi():
    ctx = exact("1/4")
    for xs in ([2], [1, 3], [2, 0, 4]):
        for m in range(5):
            prod = 1
            for x in xs:
                prod *= q_number(x, ctx)
            assert q_power_expand_multi(m, xs, ctx) == prod ** m
