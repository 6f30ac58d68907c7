"""Stirling numbers (ordinary and q-extended) and higher-order Bernoulli numbers."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import IdentityViolation
from .qcore import (
    QContext,
    gauss_binomial,
    q_difference,
    q_factorial,
    q_number,
    shift_difference,
)
from .series import EgfSeries, egf_exp, egf_invert, egf_pow, egf_shifted_exp


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> Fraction:
    """S(n, k) = (1/k!) sum_l C(k,l) (-1)^(k-l) l^n, in exact integers."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs n, k >= 0")
    total = sum(math.comb(k, l) * (-1) ** (k - l) * l ** n for l in range(k + 1))
    q, r = divmod(total, math.factorial(k))
    assert r == 0
    return Fraction(q)


def stirling2_difference(n: int, k: int) -> Fraction:
    """S(n, k) as Delta^k 0^n / k!, the k-th difference of j -> j^n at 0."""
    return Fraction(shift_difference(lambda j: j ** n, k), math.factorial(k))


def stirling2_gf(k: int, N: int) -> EgfSeries:
    """(e^t - 1)^k / k! to order N; its EGF coefficients are S(n, k)."""
    one = Fraction(1)
    base = egf_exp(one, N) - egf_exp(one * 0, N)
    return egf_pow(base, k) * Fraction(1, math.factorial(k))


def q_stirling2(n: int, k: int, ctx: QContext):
    """S(n, k; q) = q^-C(k,2) / [k]_q! * sum_i (-1)^i q^C(i,2) C(k,i)_q [k-i]_q^n."""
    if n < 0 or k < 0:
        raise ValueError("q_stirling2 needs n, k >= 0")
    q = ctx.q
    total = ctx.real(0)
    for i in range(k + 1):
        term = q ** math.comb(i, 2) * gauss_binomial(k, i, ctx) * q_number(k - i, ctx) ** n
        total += -term if i % 2 else term
    return total / (q ** math.comb(k, 2) * q_factorial(k, ctx))


def q_stirling2_difference(n: int, k: int, ctx: QContext):
    """S(n, k; q) as q^-C(k,2) / [k]_q! * Delta_q^k applied to j -> [j]_q^n at 0."""
    diff = q_difference(lambda j: q_number(j, ctx) ** n, k, ctx)
    return diff / (ctx.q ** math.comb(k, 2) * q_factorial(k, ctx))


def q_stirling2_gf(k: int, N: int, ctx: QContext) -> EgfSeries:
    """q^-C(k,2)/[k]_q! * sum_i (-1)^(k-i) C(k,i)_q q^C(k-i,2) e^([i]_q t)."""
    q = ctx.q
    acc = egf_exp(ctx.real(0), N) * ctx.real(0)
    for i in range(k + 1):
        c = gauss_binomial(k, i, ctx) * q ** math.comb(k - i, 2)
        acc = acc + egf_exp(q_number(i, ctx), N) * (-c if (k - i) % 2 else c)
    return acc * (1 / (q ** math.comb(k, 2) * q_factorial(k, ctx)))


@dataclass(frozen=True)
class BernoulliTable:
    order: int
    values: tuple

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


@lru_cache(maxsize=64)
def bernoulli_higher(N: int, k: int) -> BernoulliTable:
    """B_0^(k) .. B_N^(k): EGF coefficients of (t / (e^t - 1))^k.

    Built by inverting (e^t - 1)/t as a truncated series and raising to the
    k-th power.
    """
    if N < 0 or k < 0:
        raise ValueError("bernoulli_higher needs N, k >= 0")
    base = egf_invert(egf_shifted_exp(Fraction(1), N))
    return BernoulliTable(k, egf_pow(base, k).coeffs)


def bernoulli_poly_higher(n: int, k: int, y, table: BernoulliTable | None = None):
    """B_n^(k)(y) = sum_j C(n,j) B_j^(k) y^(n-j)."""
    if table is None or len(table) <= n or table.order != k:
        table = bernoulli_higher(n, k)
    total = y * 0
    for j in range(n + 1):
        total += math.comb(n, j) * table[j] * y ** (n - j)
    return total


def q_power_expand(n: int, x, ctx: QContext):
    """sum_k q^C(k,2) C(x,k)_q [k]_q! S(n,k;q), checked against [x]_q^n."""
    q = ctx.q
    total = ctx.real(0)
    for k in range(n + 1):
        total += q ** math.comb(k, 2) * gauss_binomial(x, k, ctx) * q_factorial(k, ctx) * q_stirling2(n, k, ctx)
    direct = q_number(x, ctx) ** n
    if not ctx.close(total, direct, scale=1):
        raise IdentityViolation("q-power expansion", total, direct)
    return total


def q_power_expand_multi(m: int, xs: Sequence, ctx: QContext):
    """Joint sum over l in [0, m]^w of q^(sum C(l_i,2)) prod_i C(x_i,l_i)_q [l_i]_q! S(m,l_i;q).

    The summand factorises, so the joint sum equals the product of
    one-dimensional expansions and hence (prod_i [x_i]_q)^m, which is checked.
    """
    q = ctx.q
    factors = [
        [gauss_binomial(x, l, ctx) * q_factorial(l, ctx) * q_stirling2(m, l, ctx) for l in range(m + 1)]
        for x in xs
    ]
    total = ctx.real(0)
    for ls in itertools.product(range(m + 1), repeat=len(xs)):
        term = q ** sum(math.comb(l, 2) for l in ls)
        for row, l in zip(factors, ls):
            term *= row[l]
        total += term
    direct = ctx.real(1)
    for x in xs:
        direct *= q_number(x, ctx)
    direct = direct ** m
    if not ctx.close(total, direct, scale=1):
        raise IdentityViolation("multivariate q-power expansion", total, direct)
    return total
