"""Interpolation function of the modified q-Bernstein polynomials.

    D_q(s; k; x) = (-1)^(sum k_i) prod_i [x_i]_q^k_i / k_i! * [1 - x_i]_q^(-s_i)

``s`` is either one complex number shared by all coordinates (s_i = s) or
a sequence with one exponent per coordinate.  The per-coordinate form is
what a coordinate-wise Mellin transform of the generating function
produces, and it is the form in which negative integers reproduce the
Bernstein polynomials for any dimension.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Complex, Integral
from typing import Sequence

from scipy import integrate, special

from .bernstein import q_bernstein
from .errors import DimensionMismatch, NonPositiveInteger, PoleAtOne
from .qcore import Domain, QContext, QPoint, multi_index

_LIMIT_CTX = QContext(1, Domain.COMPLEX)


def _exponents(s, w: int) -> list:
    if isinstance(s, (str, bytes)):
        raise TypeError("s must be a number or a sequence of numbers")
    if isinstance(s, Sequence):
        if len(s) != w:
            raise DimensionMismatch(f"{len(s)} exponents for a {w}-dimensional point")
        return list(s)
    return [s] * w


def _as_int(z):
    """The integer value of ``z`` if it has one, else None."""
    if isinstance(z, Integral):
        return int(z)
    if isinstance(z, Fraction):
        return int(z) if z.denominator == 1 else None
    if isinstance(z, Complex) and z.imag == 0 and float(z.real).is_integer():
        return int(z.real)
    return None


def _check_poles(pt: QPoint):
    for i, c in enumerate(pt.coords):
        if c.v == 0:
            raise PoleAtOne(f"coordinate {i}: [1 - x]_q = 0 at x = 1, D_q diverges")


def interp_q(s, k: Sequence[int], pt: QPoint, ctx: QContext):
    """D_q at ``s``.

    Exact (a Fraction) when the context is exact and every exponent is an
    integer; otherwise complex, via the principal branch v^(-s) = exp(-s ln v).
    """
    k = multi_index(k)
    if len(k) != pt.w:
        raise DimensionMismatch(f"k has {len(k)} entries, point has {pt.w}")
    _check_poles(pt)
    exps = _exponents(s, pt.w)
    ints = [_as_int(e) for e in exps]

    if ctx.exact and all(e is not None for e in ints):
        out = Fraction(-1) ** sum(k)
        for ki, si, c in zip(k, ints, pt.coords):
            out *= c.u ** ki / math.factorial(ki) * c.v ** (-si)
        return out

    out = ctx.complex((-1) ** sum(k))
    for ki, si, c in zip(k, exps, pt.coords):
        u, v = ctx.complex(c.u), ctx.complex(c.v)
        out *= u ** ki / math.factorial(ki) * ctx.exp(-ctx.complex(si) * ctx.log(v))
    return out


def special_value_check(n: Sequence[int], k: Sequence[int], pt: QPoint, ctx: QContext) -> tuple:
    """(D_q at s_i = -n_i, prod_i (-1)^k_i n_i!/(n_i+k_i)! * B_{k; n+k}(x; q))."""
    n, k = multi_index(n), multi_index(k)
    if len(n) != len(k):
        raise DimensionMismatch("n and k lengths differ")
    lhs = interp_q([-ni for ni in n], k, pt, ctx)
    factor = Fraction(1)
    for ni, ki in zip(n, k):
        factor *= Fraction((-1) ** ki * math.factorial(ni), math.factorial(ni + ki))
    if not ctx.exact:
        factor = ctx.num(factor)
    rhs = factor * q_bernstein(k, [ni + ki for ni, ki in zip(n, k)], pt, ctx)
    return lhs, rhs


def _limit_point(x: Sequence, ctx: QContext) -> QPoint:
    for i, xi in enumerate(x):
        if xi >= 1:
            raise PoleAtOne(f"coordinate {i}: x = {xi}, D diverges at x = 1")
    return QPoint.from_x(x, ctx)


def interp_limit(s, k: Sequence[int], x: Sequence, ctx: QContext | None = None):
    """D = lim_{q->1} D_q = (-1)^(sum k) prod_i x_i^k_i / k_i! (1 - x_i)^(-s)."""
    ctx = _LIMIT_CTX if ctx is None else ctx.with_q(1)
    return interp_q(s, k, _limit_point(x, ctx), ctx)


def interp_derivative(i: int, s, k: Sequence[int], x: Sequence, ctx: QContext | None = None):
    """i-th derivative in s of D: log^i(1 / prod_j (1 - x_j)) * D."""
    if i < 0:
        raise ValueError("derivative order must be >= 0")
    ctx = _LIMIT_CTX if ctx is None else ctx.with_q(1)
    pt = _limit_point(x, ctx)
    prod = ctx.real(1)
    for xi in pt.xs:
        prod *= 1 - xi
    return ctx.log(1 / prod) ** i * interp_q(s, k, pt, ctx)


def _mellin_tail_cutoff(s: int, v: float, tail: float = 1e-12) -> float:
    # upper limit T with Gamma(s, vT) / Gamma(s) below the requested tail
    return float(special.gammainccinv(s, tail)) / v


def mellin_quad(s: int, k: int, u: float, v: float) -> float:
    """(1/Gamma(s)) int_0^inf t^(s-k-1) (-t u)^k / k! e^(-t v) dt by adaptive quadrature."""
    coef = (-u) ** k / math.factorial(k)

    def integrand(t):
        # t^(s-k-1) * t^k folded to t^(s-1) so t = 0 is harmless
        return coef * t ** (s - 1) * math.exp(-t * v)

    upper = _mellin_tail_cutoff(s, v)
    peak = (s - 1) / v
    points = [peak] if 0 < peak < upper else None
    val, _err = integrate.quad(integrand, 0.0, upper, epsabs=0.0, epsrel=1e-13, limit=400, points=points)
    return val / math.factorial(s - 1)


def mellin_check(s: int, k: Sequence[int], pt: QPoint, ctx: QContext) -> tuple:
    """(coordinate-wise Mellin quadrature of the generating function, D_q(s)).

    Coordinate i contributes (1/Gamma(s)) int t^(s-k_i-1) F^(k_i)(-t) dt with
    F^(k)(t) = (t u)^k / k! e^(t v); the product over coordinates is D_q(s).
    """
    if not isinstance(s, Integral) or s < 1:
        raise NonPositiveInteger(f"mellin_check needs a positive integer s, got {s!r}")
    k = multi_index(k)
    if len(k) != pt.w:
        raise DimensionMismatch(f"k has {len(k)} entries, point has {pt.w}")
    _check_poles(pt)
    quad = 1.0
    for ki, c in zip(k, pt.coords):
        quad *= mellin_quad(int(s), ki, float(c.u), float(c.v))
    closed = interp_q(int(s), k, pt, ctx)
    closed = float(closed) if isinstance(closed, Fraction) else complex(closed).real
    return quad, closed


def mellin_single_t(s: int, k: Sequence[int], pt: QPoint) -> float:
    """The Mellin transform with one variable t shared by every coordinate.

    Its closed form is (-1)^(sum k) prod_i u_i^k_i / k_i! * (sum_i v_i)^(-s),
    which differs from D_q for w >= 2 (products versus sums of the v_i).
    """
    k = multi_index(k)
    _check_poles(pt)
    coef = 1.0
    for ki, c in zip(k, pt.coords):
        coef *= (-float(c.u)) ** ki / math.factorial(ki)
    vsum = sum(float(c.v) for c in pt.coords)
    return coef * mellin_quad(int(s), 0, 1.0, vsum)
