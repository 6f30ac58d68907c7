import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import exact, f64
from qbern import bernstein
from qbern.bernstein import (
    BUILTIN_TARGETS,
    bernoulli_stirling_repr,
    bernstein_classical,
    degree_index_relation_check,
    index_grid,
    moment_identity_check,
    partition_closed_form,
    partition_sum,
    power_basis_expand,
    q_bernstein,
    q_bernstein_operator,
    q_bernstein_recurrence,
    q_bernstein_symmetry_check,
)
from qbern.combin import bernoulli_poly_higher, stirling2, stirling2_difference
from qbern.errors import DimensionMismatch, DomainUnsupported, DivisionByZero, InvalidDegree, InvalidIndex
from qbern.qcore import Domain, QContext, QPoint

LATTICE = [F(j, 8) for j in range(1, 8)]
EXACT_Q = [F(1, 16), F(1, 4), F(1)]


def oracle(k, n, us, vs):
    """Product of C(n_i,k_i) u_i^k_i v_i^(n_i-k_i), zero when some k_i > n_i."""
    out = F(1)
    for ki, ni, u, v in zip(k, n, us, vs):
        if ki > ni:
            return 0
        out *= math.comb(ni, ki) * u ** ki * v ** (ni - ki)
    return out


@st.composite
def exact_cases(draw, wmax=3, nmax=8):
    """(ctx, point, n) with q = base^-8 and q^x = base^-j rational."""
    w = draw(st.integers(1, wmax))
    base = draw(st.sampled_from([1, 2, 3]))
    ctx = exact(F(1, base ** 8))
    js = [draw(st.integers(1, 7)) for _ in range(w)]
    pt = QPoint.from_x([F(j, 8) for j in js], ctx)
    n = [draw(st.integers(0, nmax)) for _ in range(w)]
    return ctx, pt, n


def test_univariate_examples(quarter):
    ctx, pt = quarter
    assert q_bernstein([1], [2], pt, ctx) == F(8, 9)
    assert q_bernstein([3], [2], pt, ctx) == 0
    assert q_bernstein_recurrence([1], [2], pt, ctx) == F(8, 9)
    assert q_bernstein_recurrence([1], [1], pt, ctx) == pt.us[0]


def test_multivariate_examples():
    ctx = exact("1/4")
    pt = QPoint.from_x([F(1, 2), F(1, 2)], ctx)
    assert q_bernstein([0, 0], [0, 0], pt, ctx) == 1
    assert q_bernstein([1, 0], [1, 1], pt, ctx) == pt.us[0] * pt.vs[1]


def test_classical_examples():
    assert bernstein_classical([1], [2], [F(1, 2)]) == F(1, 2)
    assert bernstein_classical([2, 0], [1, 3], [F(1, 3), F(1, 5)]) == 0
    assert bernstein_classical([0, 0], [0, 0], [F(1, 3), F(1, 5)]) == 1


def test_dimension_and_degree_errors(quarter):
    ctx, pt = quarter
    with pytest.raises(DimensionMismatch):
        q_bernstein([1, 1], [2, 2], pt, ctx)
    with pytest.raises(InvalidDegree):
        q_bernstein_recurrence([0], [0], pt, ctx)
    with pytest.raises(InvalidDegree):
        q_bernstein_operator(BUILTIN_TARGETS["one"], [0], pt, ctx)


@settings(max_examples=50, deadline=None)
@given(exact_cases())
def test_direct_matches_oracle_and_recurrence(case):
    ctx, pt, n = case
    n = [max(ni, 1) for ni in n]
    for k in index_grid(n):
        direct = q_bernstein(k, n, pt, ctx)
        assert direct == oracle(k, n, pt.us, pt.vs)
        assert q_bernstein_recurrence(k, n, pt, ctx) == direct


@settings(max_examples=50, deadline=None)
@given(exact_cases())
def test_symmetry(case):
    ctx, pt, n = case
    mirrored = QPoint.from_x([1 - x for x in pt.xs], ctx)
    for k in index_grid(n):
        lhs, rhs = q_bernstein_symmetry_check(k, n, pt, ctx)
        assert lhs == rhs
        flipped = [ni - ki for ki, ni in zip(k, n)]
        assert q_bernstein(flipped, n, mirrored, ctx) == rhs


def test_symmetry_degenerate():
    ctx = exact("1/4")
    pt = QPoint.from_x([0, 0], ctx)
    lhs, rhs = q_bernstein_symmetry_check([0, 0], [3, 2], pt, ctx)
    assert lhs == rhs == 1


@settings(max_examples=50, deadline=None)
@given(exact_cases())
def test_partition_closed_form(case):
    ctx, pt, n = case
    total = sum(q_bernstein(k, n, pt, ctx) for k in index_grid(n))
    assert partition_sum(n, pt, ctx) == total
    expected = 1
    for ni, u, v in zip(n, pt.us, pt.vs):
        expected *= (1 + (1 - ctx.q) * u * v) ** ni
    assert total == expected
    # the kernel identity makes each factor u + v
    assert total == math.prod((u + v) ** ni for ni, u, v in zip(n, pt.us, pt.vs))


def test_partition_examples(quarter):
    ctx, pt = quarter
    assert partition_sum([2], pt, ctx) == F(16, 9)
    assert partition_sum([1], pt, ctx) == pt.us[0] + pt.vs[0]
    one = exact(1)
    for xs in ([F(1, 3)], [F(2, 7), F(5, 9)]):
        assert partition_sum([5] * len(xs), QPoint.from_x(xs, one), one) == 1


def test_partition_near_one():
    q = 1 - 1e-6
    ctx = f64(q)
    for xs in ([0.3], [0.5, 0.9], [0.1, 0.4, 0.7]):
        n = [6] * len(xs)
        pt = QPoint.from_x(xs, ctx)
        assert abs(partition_sum(n, pt, ctx) - 1) <= 4 * (1 - q) * len(xs) * max(n)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.01, 0.99), min_size=1, max_size=2), st.floats(0.05, 1.0), st.data())
def test_power_basis_float(xs, q, data):
    # the alternating sum loses digits when v is small; extra precision keeps rel 1e-9
    ctx = QContext(F(q), Domain.FLOAT, precision=256)
    pt = QPoint.from_x([F(x) for x in xs], ctx)
    n = [data.draw(st.integers(0, 6)) for _ in xs]
    k = [data.draw(st.integers(0, ni)) for ni in n]
    direct = q_bernstein(k, n, pt, ctx)
    assert abs(power_basis_expand(k, n, pt, ctx) - direct) <= 1e-9 * abs(direct)


def test_power_basis_f64_error_tracks_term_magnitude():
    # in plain f64 the error is bounded by rounding of the largest summand, not by the result
    ctx = f64(0.05)
    pt = QPoint.from_x([0.97], ctx)
    k, n = [0], [6]
    direct = q_bernstein(k, n, pt, ctx)
    u, p = pt.us[0], ctx.q_power(1 - 0.97)
    terms = sum(math.comb(6, l) * p ** l * u ** l for l in range(7))
    assert abs(power_basis_expand(k, n, pt, ctx) - direct) <= 64 * 2 ** -52 * terms


def test_power_basis_exact_examples(quarter):
    ctx, pt = quarter
    assert power_basis_expand([0], [1], pt, ctx) == F(2, 3)
    assert power_basis_expand([3], [3], pt, ctx) == F(8, 27)
    one = exact(1)
    x = F(2, 7)
    for j in range(6):
        assert power_basis_expand([0], [j], QPoint.from_x([x], one), one) == (1 - x) ** j


@settings(max_examples=40, deadline=None)
@given(exact_cases(wmax=2, nmax=6), st.integers(0, 3))
def test_moment_identity(case, m):
    ctx, pt, n = case
    n = [max(ni, m) for ni in n]
    lhs, rhs = moment_identity_check(m, n, pt, ctx)
    assert lhs == rhs == math.prod(pt.us) ** m


def test_moment_examples(quarter):
    ctx, pt = quarter
    assert moment_identity_check(2, [2], pt, ctx) == (F(4, 9), F(4, 9))
    assert moment_identity_check(0, [3], pt, ctx) == (1, 1)
    with pytest.raises(InvalidDegree):
        moment_identity_check(4, [3], pt, ctx)


def test_operator_linear_function(quarter):
    ctx, pt = quarter
    # f(t) = t: u (u + v)^(n-1)
    for n in range(1, 7):
        got = q_bernstein_operator(BUILTIN_TARGETS["coord-product"], [n], pt, ctx)
        assert got == pt.us[0] * (pt.us[0] + pt.vs[0]) ** (n - 1)
    one = exact(1)
    for x in LATTICE:
        assert q_bernstein_operator(BUILTIN_TARGETS["coord-product"], [3], QPoint.from_x([x], one), one) == x


def test_operator_one_is_partition_closed_form():
    ctx = exact("1/2")
    pt = QPoint.from_qpower([F(1, 2), F(3, 4)], ctx)
    assert q_bernstein_operator(BUILTIN_TARGETS["one"], [2, 3], pt, ctx) == partition_closed_form([2, 3], pt, ctx)


@settings(max_examples=40, deadline=None)
@given(exact_cases(nmax=6))
def test_degree_index_relation(case):
    ctx, pt, n = case
    n = [max(ni, 1) for ni in n]
    for k in index_grid(n, [1] * len(n)):
        lhs, rhs = degree_index_relation_check(k, n, pt, ctx)
        assert lhs == rhs


def test_degree_index_errors(quarter):
    ctx, pt = quarter
    with pytest.raises(InvalidIndex):
        degree_index_relation_check([0], [2], pt, ctx)
    edge = QPoint.from_x([1], ctx)
    with pytest.raises(DivisionByZero):
        degree_index_relation_check([1], [2], edge, ctx)


@settings(max_examples=30, deadline=None)
@given(exact_cases(wmax=2, nmax=6))
def test_bernoulli_stirling_representation(case):
    ctx, pt, n = case
    for k in index_grid(n):
        direct = q_bernstein(k, n, pt, ctx)
        assert bernoulli_stirling_repr(k, n, pt, ctx) == direct
        assert bernoulli_stirling_repr(k, n, pt, ctx, stirling=stirling2_difference) == direct


def test_bernoulli_stirling_examples(quarter):
    ctx, pt = quarter
    assert bernoulli_stirling_repr([0], [0], pt, ctx) == 1
    assert bernoulli_stirling_repr([1], [1], pt, ctx) == pt.us[0]
    assert bernoulli_stirling_repr([1], [2], pt, ctx) == F(8, 9)


def test_bernoulli_stirling_needs_u_to_the_k(quarter):
    # weighting term l by u^l instead of u^k already fails for k = n = 1
    ctx, pt = quarter
    u, v = pt.us[0], pt.vs[0]
    wrong = sum(
        u ** l * math.comb(1, l) * bernoulli_poly_higher(l, 1, v) * stirling2(1 - l, 1) for l in range(2)
    )
    assert wrong == 1
    assert bernoulli_stirling_repr([1], [1], pt, ctx) == u != wrong


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=3), st.floats(0.01, 1.0), st.data())
def test_positivity(xs, q, data):
    ctx = f64(q)
    pt = QPoint.from_x(xs, ctx)
    n = [data.draw(st.integers(0, 6)) for _ in xs]
    for k in index_grid(n):
        assert q_bernstein(k, n, pt, ctx) >= 0
    assert q_bernstein_operator(BUILTIN_TARGETS["runge"], [max(ni, 1) for ni in n], pt, ctx) >= 0


def test_classical_reduction():
    ctx = exact(1)
    for xs in ([F(1, 3)], [F(2, 7), F(5, 9)], [F(1, 8), F(1, 2), F(7, 8)]):
        pt = QPoint.from_x(xs, ctx)
        n = [4] * len(xs)
        for k in index_grid(n):
            want = bernstein_classical(k, n, xs)
            assert q_bernstein(k, n, pt, ctx) == want
            assert q_bernstein_recurrence(k, n, pt, ctx) == want
            assert power_basis_expand(k, n, pt, ctx) == want
            assert bernoulli_stirling_repr(k, n, pt, ctx) == want


def test_floats_rejected_in_exact_mode(quarter):
    ctx, pt = quarter
    with pytest.raises(DomainUnsupported):
        q_bernstein_operator(BUILTIN_TARGETS["exp-sum"], [2], pt, ctx)


def test_recurrence_uses_module_lookup(monkeypatch, quarter):
    # the verify driver relies on module-level lookup for fault injection
    ctx, pt = quarter
    monkeypatch.setattr(bernstein, "q_bernstein_recurrence", lambda *a: -1)
    assert bernstein.q_bernstein_recurrence([1], [2], pt, ctx) == -1
