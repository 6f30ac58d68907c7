"""Classical and modified q-Bernstein polynomials of several variables and
the structural identities they satisfy.

Indices are passed as two equal-length sequences ``k`` and ``n``; a point is
a :class:`~qbern.qcore.QPoint` carrying u_i = [x_i]_q and v_i = [1 - x_i]_q.
Multi-index sums run in lexicographic order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Sequence

from .combin import BernoulliTable, bernoulli_higher, bernoulli_poly_higher, stirling2
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    DomainUnsupported,
    IdentityViolation,
    InvalidDegree,
    InvalidIndex,
)
from .qcore import QContext, QPoint, multi_index


@dataclass(frozen=True)
class BernsteinSpec:
    k: tuple
    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", multi_index(self.k))
        object.__setattr__(self, "n", multi_index(self.n))
        if len(self.k) != len(self.n):
            raise DimensionMismatch(f"k has {len(self.k)} entries, n has {len(self.n)}")

    @property
    def w(self) -> int:
        return len(self.k)


def _spec(k, n, w: int | None = None) -> BernsteinSpec:
    spec = BernsteinSpec(tuple(k), tuple(n))
    if w is not None and spec.w != w:
        raise DimensionMismatch(f"indices have {spec.w} entries, point has {w}")
    return spec


def _b1(k: int, n: int, u, v):
    """Univariate C(n,k) u^k v^(n-k), zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return u * 0
    return math.comb(n, k) * u ** k * v ** (n - k)


def _coerce(value, ctx: QContext):
    if ctx.exact:
        if isinstance(value, float):
            raise DomainUnsupported("target function returned a float in the exact domain")
        return Fraction(value)
    return ctx.num(value) if isinstance(value, Fraction) else value


def index_grid(upper: Sequence[int], lower: Sequence[int] | None = None):
    """Lexicographic iteration over lower <= k <= upper."""
    lower = lower or [0] * len(upper)
    return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper)))


# -- evaluation --------------------------------------------------------------

def bernstein_classical(k: Sequence[int], n: Sequence[int], x: Sequence) -> Any:
    """prod_i C(n_i,k_i) x_i^k_i (1 - x_i)^(n_i - k_i)."""
    spec = _spec(k, n, len(x))
    out = x[0] ** 0
    for ki, ni, xi in zip(spec.k, spec.n, x):
        if ki > ni:
            return out * 0
        out *= math.comb(ni, ki) * xi ** ki * (1 - xi) ** (ni - ki)
    return out


def q_bernstein(k: Sequence[int], n: Sequence[int], pt: QPoint, ctx: QContext) -> Any:
    """prod_i C(n_i,k_i) [x_i]_q^k_i [1 - x_i]_q^(n_i - k_i); 0 if some n_i < k_i."""
    spec = _spec(k, n, pt.w)
    out = ctx.real(1)
    for ki, ni, c in zip(spec.k, spec.n, pt.coords):
        out *= _b1(ki, ni, c.u, c.v)
    return out


@lru_cache(maxsize=4096)
def _recurrence_rows(n: int, u, v) -> tuple:
    """Rows B_{., m} for m = 0..n built only from B_{k,m} = v B_{k,m-1} + u B_{k-1,m-1}."""
    zero = u * 0
    rows = [(zero + 1,)]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = []
        for kk in range(m + 1):
            left = prev[kk] if kk < m else zero
            right = prev[kk - 1] if kk >= 1 else zero
            row.append(v * left + u * right)
        rows.append(tuple(row))
    return tuple(rows)


def q_bernstein_recurrence(k: Sequence[int], n: Sequence[int], pt: QPoint, ctx: QContext) -> Any:
    """prod_i ([1-x_i]_q B_{k_i,n_i-1} + [x_i]_q B_{k_i-1,n_i-1}), recursing to B_{0,0} = 1."""
    spec = _spec(k, n, pt.w)
    if any(ni == 0 for ni in spec.n):
        raise InvalidDegree("the recurrence needs every n_i >= 1")
    out = ctx.real(1)
    for ki, ni, c in zip(spec.k, spec.n, pt.coords):
        if ki > ni:
            return out * 0
        rows = _recurrence_rows(ni - 1, c.u, c.v)
        prev = rows[ni - 1]
        left = prev[ki] if ki <= ni - 1 else c.u * 0
        right = prev[ki - 1] if ki >= 1 else c.u * 0
        out *= c.v * left + c.u * right
    return out


def q_bernstein_symmetry_check(k, n, pt: QPoint, ctx: QContext) -> tuple:
    """(B_{n-k;n}(1-x; q), B_{k;n}(x; q)).

    Reflecting x -> 1 - x swaps u and v, which :meth:`QPoint.reflect` does
    exactly, so x itself is not needed.
    """
    spec = _spec(k, n, pt.w)
    reflected = pt.reflect()
    lhs = ctx.real(1)
    for ki, ni, c in zip(spec.k, spec.n, reflected.coords):
        lhs *= _b1(ni - ki, ni, c.u, c.v)
    return lhs, q_bernstein(spec.k, spec.n, pt, ctx)


# -- operator ----------------------------------------------------------------

@dataclass(frozen=True)
class TargetFunction:
    """A function on [0,1]^w, called with a tuple of exact rational nodes."""

    name: str
    fn: Callable[[tuple], Any]
    arity: int | None = None

    def __call__(self, nodes: tuple):
        if self.arity is not None and len(nodes) != self.arity:
            raise DimensionMismatch(f"{self.name} takes {self.arity} coordinates")
        return self.fn(nodes)


def q_bernstein_operator(f: Callable[[tuple], Any], n: Sequence[int], pt: QPoint, ctx: QContext) -> Any:
    """sum_{k <= n} f(k_1/n_1, ..., k_w/n_w) B_{k;n}(x; q)."""
    n = multi_index(n)
    if len(n) != pt.w:
        raise DimensionMismatch(f"n has {len(n)} entries, point has {pt.w}")
    if any(ni < 1 for ni in n):
        raise InvalidDegree("operator nodes k/n need every n_i >= 1")
    total = ctx.real(0)
    for k in index_grid(n):
        nodes = tuple(Fraction(ki, ni) for ki, ni in zip(k, n))
        total += _coerce(f(nodes), ctx) * q_bernstein(k, n, pt, ctx)
    return total


def partition_closed_form(n: Sequence[int], pt: QPoint, ctx: QContext) -> Any:
    """prod_i (1 + (1 - q) u_i v_i)^n_i."""
    out = ctx.real(1)
    for ni, c in zip(n, pt.coords):
        out *= (1 + (1 - ctx.q) * c.u * c.v) ** ni
    return out


def partition_sum(n: Sequence[int], pt: QPoint, ctx: QContext) -> Any:
    """Sum of all B_{k;n} over k <= n, checked against the closed form."""
    n = multi_index(n)
    if len(n) != pt.w:
        raise DimensionMismatch(f"n has {len(n)} entries, point has {pt.w}")
    total = ctx.real(0)
    for k in index_grid(n):
        total += q_bernstein(k, n, pt, ctx)
    closed = partition_closed_form(n, pt, ctx)
    if not ctx.close(total, closed):
        raise IdentityViolation("partition closed form", total, closed)
    return total


# -- identities ---------------------------------------------------------------

def degree_index_relation_check(k, n, pt: QPoint, ctx: QContext) -> tuple:
    """(prod_i ((n_i-k_i+1)/k_i) (u_i/v_i) * B_{k-1;n}, B_{k;n})."""
    spec = _spec(k, n, pt.w)
    if any(ki == 0 for ki in spec.k):
        raise InvalidIndex("the degree-index relation needs every k_i >= 1")
    if any(c.v == 0 for c in pt.coords):
        raise DivisionByZero("[1 - x_i]_q vanishes at x_i = 1")
    lower = tuple(ki - 1 for ki in spec.k)
    factor = ctx.real(1)
    for ki, ni, c in zip(spec.k, spec.n, pt.coords):
        factor *= Fraction(ni - ki + 1, ki) * c.u / c.v if ctx.exact else (ni - ki + 1) / ki * c.u / c.v
    return factor * q_bernstein(lower, spec.n, pt, ctx), q_bernstein(spec.k, spec.n, pt, ctx)


def _q_pow_one_minus_x(c, ctx: QContext):
    """q^(1 - x) for one coordinate.

    Taken from x when it is known in a float domain; otherwise recovered
    exactly as 1 - (1 - q) [1 - x]_q.
    """
    if not ctx.exact and c.x is not None:
        return ctx.q_power(1 - c.x)
    return 1 - (1 - ctx.q) * c.v


def power_basis_expand(k, n, pt: QPoint, ctx: QContext) -> Any:
    """sum_{k <= l <= n} prod_i C(n_i,l_i) C(l_i,k_i) (-1)^(l_i-k_i) q^((l_i-k_i)(1-x_i)) [x_i]_q^l_i."""
    spec = _spec(k, n, pt.w)
    if any(ki > ni for ki, ni in zip(spec.k, spec.n)):
        return ctx.real(0)
    p = [_q_pow_one_minus_x(c, ctx) for c in pt.coords]
    total = ctx.real(0)
    for ls in index_grid(spec.n, spec.k):
        term = ctx.real(1)
        for li, ki, ni, pi, c in zip(ls, spec.k, spec.n, p, pt.coords):
            d = li - ki
            term *= math.comb(ni, li) * math.comb(li, ki) * (-1) ** d * pi ** d * c.u ** li
        total += term
    return total


def moment_identity_check(m: int, n: Sequence[int], pt: QPoint, ctx: QContext) -> tuple:
    """((prod u_i)^m, prod_i (u_i+v_i)^-(n_i-m) * sum_{k >= m} prod_i C(k_i,m)/C(n_i,m) B_{k;n})."""
    n = multi_index(n)
    if len(n) != pt.w:
        raise DimensionMismatch(f"n has {len(n)} entries, point has {pt.w}")
    if m < 0 or any(ni < m for ni in n):
        raise InvalidDegree(f"need 0 <= m <= n_i, got m = {m}, n = {n}")
    lhs = ctx.real(1)
    for c in pt.coords:
        lhs *= c.u
    lhs = lhs ** m
    acc = ctx.real(0)
    for k in index_grid(n, [m] * len(n)):
        weight = Fraction(1)
        for ki, ni in zip(k, n):
            weight *= Fraction(math.comb(ki, m), math.comb(ni, m))
        acc += _coerce(weight, ctx) * q_bernstein(k, n, pt, ctx)
    for ni, c in zip(n, pt.coords):
        acc /= (c.u + c.v) ** (ni - m)
    return lhs, acc


def bernoulli_stirling_repr(k, n, pt: QPoint, ctx: QContext, stirling: Callable[[int, int], Fraction] = stirling2) -> Any:
    """sum_{0 <= l <= n} prod_i [x_i]_q^k_i C(n_i,l_i) B_{l_i}^(k_i)([1-x_i]_q) S(n_i-l_i, k_i).

    ``stirling`` may be swapped for the difference form Delta^k 0^m / k!.
    """
    spec = _spec(k, n, pt.w)
    tables: list[BernoulliTable] = [bernoulli_higher(ni, ki) for ki, ni in zip(spec.k, spec.n)]
    total = ctx.real(0)
    for ls in index_grid(spec.n):
        term = ctx.real(1)
        for li, ki, ni, tab, c in zip(ls, spec.k, spec.n, tables, pt.coords):
            s = stirling(ni - li, ki)
            if s == 0:
                term = ctx.real(0)
                break
            b = bernoulli_poly_higher(li, ki, c.v, _cast_table(tab, ctx))
            term *= c.u ** ki * math.comb(ni, li) * b * _coerce(s, ctx)
        total += term
    return total


def _cast_table(tab: BernoulliTable, ctx: QContext) -> BernoulliTable:
    if ctx.exact:
        return tab
    return BernoulliTable(tab.order, tuple(ctx.num(b) for b in tab.values))


# -- builtin targets -----------------------------------------------------------

def _runge(nodes):
    r = sum((2 * t - 1) ** 2 for t in nodes)
    return 1 / (1 + 25 * r)


def _exp_sum(nodes):
    return math.exp(sum(float(t) for t in nodes))


BUILTIN_TARGETS = {
    "one": TargetFunction("one", lambda nodes: Fraction(1)),
    "coord-product": TargetFunction("coord-product", lambda nodes: math.prod(nodes)),
    "sum": TargetFunction("sum", lambda nodes: sum(nodes)),
    "exp-sum": TargetFunction("exp-sum", _exp_sum),
    "runge": TargetFunction("runge", _runge),
}
