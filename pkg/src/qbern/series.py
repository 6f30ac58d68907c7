"""Truncated exponential generating series.

A series of order N stores c_0..c_N and represents sum c_n t^n / n!.
Products are binomial convolutions, so EGF coefficients come out directly
and ``coeff_extract`` is plain indexing: n! [t^n] F, which is what the
Cauchy integral (n! / 2 pi i) \\oint F(xi) xi^-(n+1) d xi evaluates to.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import DimensionMismatch, IdentityViolation, OrderExceeded, OrderMismatch, ZeroConstantTerm
from .qcore import QContext, QPoint, multi_index


@dataclass(frozen=True)
class EgfSeries:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "EgfSeries") -> "EgfSeries":
        _same_order(self, other)
        return EgfSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "EgfSeries") -> "EgfSeries":
        _same_order(self, other)
        return EgfSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, EgfSeries):
            return egf_mul(self, other)
        return EgfSeries(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "EgfSeries":
        return egf_pow(self, k)


def _same_order(f: EgfSeries, g: EgfSeries):
    if f.order != g.order:
        raise OrderMismatch(f"series orders differ: {f.order} vs {g.order}")


def egf_one(N: int, one=Fraction(1)) -> EgfSeries:
    return EgfSeries([one] + [one * 0] * N)


def egf_monomial(k: int, N: int, one=Fraction(1)) -> EgfSeries:
    """t^k / k!, whose only EGF coefficient is c_k = 1."""
    return EgfSeries(one if n == k else one * 0 for n in range(N + 1))


def egf_exp(a, N: int) -> EgfSeries:
    """e^(a t): c_n = a^n."""
    out = [a ** 0]
    for _ in range(N):
        out.append(out[-1] * a)
    return EgfSeries(out)


def egf_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    _same_order(f, g)
    N = f.order
    return EgfSeries(
        sum((math.comb(n, j) * f[j] * g[n - j] for j in range(1, n + 1)), f[0] * g[n])
        for n in range(N + 1)
    )


def egf_invert(f: EgfSeries) -> EgfSeries:
    """Multiplicative inverse to the same order."""
    if f[0] == 0:
        raise ZeroConstantTerm("series with zero constant term has no inverse")
    g = [1 / f[0]]
    for n in range(1, f.order + 1):
        acc = sum((math.comb(n, j) * f[j] * g[n - j] for j in range(1, n + 1)), f[0] * 0)
        g.append(-acc / f[0])
    return EgfSeries(g)


def egf_pow(f: EgfSeries, k: int) -> EgfSeries:
    if k < 0:
        return egf_pow(egf_invert(f), -k)
    result = egf_one(f.order, f[0] ** 0)
    base = f
    while k:
        if k & 1:
            result = egf_mul(result, base)
        k >>= 1
        if k:
            base = egf_mul(base, base)
    return result


def egf_shifted_exp(a, N: int) -> EgfSeries:
    """(e^(a t) - 1) / t: the ordinary coefficients a^(n+1)/(n+1)!, i.e. c_n = a^(n+1)/(n+1)."""
    return EgfSeries(a ** (n + 1) / (n + 1) for n in range(N + 1))


def bernstein_gf(k: int, u, v, N: int) -> EgfSeries:
    """(t u)^k / k! * e^(t v) to order N, built as a series product."""
    if N < k:
        raise OrderExceeded(f"order {N} is below k = {k}")
    one = u ** 0
    return egf_mul(egf_monomial(k, N, one) * u ** k, egf_exp(v, N))


def coeff_extract(f: EgfSeries, n: int):
    """n! [t^n] f."""
    if not 0 <= n <= f.order:
        raise OrderExceeded(f"coefficient {n} requested from a series of order {f.order}")
    return f[n]


def compositions(N: int, lower: Sequence[int]):
    """All (n_1..n_w) with sum N and n_i >= lower_i."""
    w = len(lower)
    slack = N - sum(lower)
    if slack < 0:
        return
    for cuts in itertools.combinations(range(slack + w - 1), w - 1):
        parts, prev = [], -1
        for c in cuts + (slack + w - 1,):
            parts.append(c - prev - 1)
            prev = c
        yield tuple(lo + p for lo, p in zip(lower, parts))


def multivariate_gf_coeff(N: int, k: Sequence[int], pt: QPoint, ctx: QContext) -> Any:
    """N! [t^N] of prod_i (t u_i)^k_i / k_i! * e^(t sum_i v_i).

    With one formal variable shared by every dimension this coefficient equals
    the sum over compositions n_1 + ... + n_w = N of N! prod_i B_{k_i,n_i} / n_i!;
    the two are compared and a mismatch raises :class:`IdentityViolation`.
    """
    from .bernstein import q_bernstein

    k = multi_index(k)
    if len(k) != pt.w:
        raise DimensionMismatch(f"k has {len(k)} entries, point has {pt.w}")
    one = ctx.real(1)
    if N < sum(k):
        return one * 0
    series = egf_exp(sum(pt.vs, one * 0), N)
    for ki, ui in zip(k, pt.us):
        series = egf_mul(series, egf_monomial(ki, N, one) * ui ** ki)
    lhs = coeff_extract(series, N)

    rhs = one * 0
    for ns in compositions(N, k):
        multinom = math.factorial(N)
        for ni in ns:
            multinom //= math.factorial(ni)
        term = one * multinom
        for ki, ni, c in zip(k, ns, pt.coords):
            term *= q_bernstein((ki,), (ni,), QPoint((c,)), ctx)
        rhs += term
    if not ctx.close(lhs, rhs):
        raise IdentityViolation("single-t generating function", lhs, rhs)
    return lhs
