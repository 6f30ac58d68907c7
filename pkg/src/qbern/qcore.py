"""q-calculus primitives: q-numbers, q-factorials, Gaussian binomials and
the shift / q-difference operators.

Every function takes a :class:`QContext` that fixes the deformation
parameter ``q`` and the numeric domain.  In the exact domain values are
:class:`fractions.Fraction`; in the float domains they are Python
``float``/``complex`` at 53 bits and mpmath numbers at any other precision.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from numbers import Integral, Rational
from typing import Any, Callable, Iterable, Sequence, Union

from mpmath.ctx_mp import MPContext

from .errors import DimensionMismatch, DomainUnsupported, NonIntegerArgument

MultiIndex = tuple  # tuple[int, ...]
Values = Union[Sequence[Any], Callable[[int], Any]]


class Domain(str, Enum):
    EXACT = "exact"
    FLOAT = "float"
    COMPLEX = "complex"


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (Integral, str)):
        return Fraction(x)
    if isinstance(x, float):
        # shortest repr, so 0.1 -> 1/10 rather than its binary expansion
        return Fraction(repr(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise DomainUnsupported(f"cannot represent {x!r} exactly")


def _iroot(n: int, d: int) -> int | None:
    """Exact integer d-th root of n >= 0, or None."""
    if n < 2:
        return n
    r = 1 << ((n.bit_length() + d - 1) // d)
    while True:
        s = ((d - 1) * r + n // r ** (d - 1)) // d
        if s >= r:
            break
        r = s
    return r if r ** d == n else None


def rational_power(base: Fraction, exponent: Fraction) -> Fraction:
    """``base ** exponent`` for positive rational ``base``, when the result is rational."""
    exponent = _to_fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    d = exponent.denominator
    num, den = _iroot(base.numerator, d), _iroot(base.denominator, d)
    if num is None or den is None:
        raise DomainUnsupported(f"{base}^{exponent} is irrational; use a float domain")
    return Fraction(num, den) ** exponent.numerator


@dataclass(frozen=True)
class QContext:
    """Deformation parameter plus numeric domain.

    ``q = 1`` is admitted and selects the classical limit everywhere.
    """

    q: Any = Fraction(1)
    domain: Domain = Domain.EXACT
    precision: int = 53
    rel_tol: float = 1e-9
    q_exact: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        domain = Domain(self.domain)
        object.__setattr__(self, "domain", domain)
        try:
            qx = _to_fraction(self.q)
        except DomainUnsupported:
            if domain is Domain.EXACT:
                raise
            qx = None
        if domain is Domain.EXACT and qx is None:
            raise DomainUnsupported("exact domain requires a rational q")
        qf = float(self.q) if qx is None else float(qx)
        if not 0 < qf <= 1:
            raise ValueError(f"q must lie in (0, 1], got {self.q!r}")
        if self.precision < 2:
            raise ValueError("precision must be at least 2 bits")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        object.__setattr__(self, "q_exact", qx)
        object.__setattr__(self, "q", qx if domain is Domain.EXACT else self.real(self.q if qx is None else qx))

    @property
    def exact(self) -> bool:
        return self.domain is Domain.EXACT

    @property
    def is_classical(self) -> bool:
        return self.q == 1

    @cached_property
    def mp(self) -> MPContext | None:
        """Private mpmath context for precisions other than IEEE double."""
        if self.exact or self.precision == 53:
            return None
        ctx = MPContext()
        ctx.prec = self.precision
        return ctx

    def with_q(self, q) -> "QContext":
        return QContext(q, self.domain, self.precision, self.rel_tol)

    def num(self, x):
        """Coerce ``x`` into the active domain."""
        if self.exact:
            return _to_fraction(x)
        mp = self.mp
        if isinstance(x, Fraction):
            x = x.numerator / x.denominator if mp is None else mp.mpf(x.numerator) / x.denominator
        if mp is None:
            return complex(x) if self.domain is Domain.COMPLEX else float(x)
        return mp.mpc(x) if self.domain is Domain.COMPLEX else mp.mpf(x)

    def real(self, x):
        """Like :meth:`num` but never promotes to complex."""
        if self.exact:
            return _to_fraction(x)
        mp = self.mp
        if isinstance(x, Fraction):
            return x.numerator / x.denominator if mp is None else mp.mpf(x.numerator) / x.denominator
        return float(x) if mp is None else mp.mpf(x)

    def complex(self, z):
        mp = self.mp
        if isinstance(z, Fraction):
            z = float(z) if mp is None else mp.mpf(z.numerator) / z.denominator
        return complex(z) if mp is None else mp.mpc(z)

    def log(self, x):
        mp = self.mp
        if mp is not None:
            return mp.log(x)
        return cmath.log(x) if isinstance(x, complex) else math.log(x)

    def exp(self, x):
        mp = self.mp
        if mp is not None:
            return mp.exp(x)
        return cmath.exp(x) if isinstance(x, complex) else math.exp(x)

    def q_power(self, x):
        """``q ** x`` for real ``x``; exact when the result is rational."""
        if self.exact:
            return rational_power(self.q, _to_fraction(x))
        if isinstance(x, Integral):
            return self.q ** int(x)
        return self.exp(self.real(x) * self.log(self.q))

    def close(self, a, b, scale=0) -> bool:
        """Equality in the exact domain, relative closeness otherwise.

        ``scale`` widens the reference magnitude for sums with cancellation.
        """
        if self.exact and isinstance(a, Fraction) and isinstance(b, Fraction):
            return a == b
        return abs(a - b) <= self.rel_tol * max(abs(a), abs(b), abs(scale))


def rel_error(a, b) -> float:
    """Relative discrepancy ``|a - b| / max(|a|, |b|)``, 0 when both vanish."""
    d = abs(a - b)
    if d == 0:
        return 0.0
    return float(d / max(abs(a), abs(b)))


def multi_index(entries: Iterable[int]) -> MultiIndex:
    out = tuple(entries)
    if not out:
        raise DimensionMismatch("a multi-index needs at least one entry")
    for e in out:
        if not isinstance(e, Integral) or e < 0:
            raise ValueError(f"multi-index entries must be nonnegative integers, got {e!r}")
    return tuple(int(e) for e in out)


# -- q-numbers ---------------------------------------------------------------

def q_number(x, ctx: QContext):
    """[x]_q = (1 - q^x) / (1 - q); equals ``x`` at q = 1."""
    if ctx.is_classical:
        return ctx.real(x)
    if ctx.exact:
        return (1 - ctx.q_power(x)) / (1 - ctx.q)
    mp = ctx.mp
    lnq = ctx.log(ctx.q)
    x = ctx.real(x)
    if mp is None:
        return math.expm1(x * lnq) / math.expm1(lnq)
    return mp.expm1(x * lnq) / mp.expm1(lnq)


def q_number_neg(x, ctx: QContext):
    """[x]_{-q} = (1 - (-q)^x) / (1 + q) for integer ``x``."""
    if isinstance(x, float) and x.is_integer():
        x = int(x)
    elif isinstance(x, Fraction) and x.denominator == 1:
        x = int(x)
    if not isinstance(x, Integral):
        raise NonIntegerArgument(f"[x]_(-q) needs an integer x, got {x!r}")
    q = ctx.q
    return (1 - (-q) ** int(x)) / (1 + q)


def q_factorial(n: int, ctx: QContext):
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ctx.real(1)
    for i in range(2, n + 1):
        out *= q_number(i, ctx)
    return out


def gauss_binomial(n, k: int, ctx: QContext):
    """Gaussian binomial [n]_q [n-1]_q ... [n-k+1]_q / [k]_q!.

    The upper argument may be real; for integer ``0 <= n < k`` the product
    contains [0]_q and the result is 0.
    """
    if k < 0:
        raise ValueError("gauss_binomial needs k >= 0")
    if isinstance(n, Integral) and ctx.exact and ctx.is_classical and n >= 0:
        return Fraction(math.comb(n, k))
    if not isinstance(n, Integral):
        n = ctx.real(n)
    num = ctx.real(1)
    for i in range(k):
        num *= q_number(n - i, ctx)
    return num / q_factorial(k, ctx)


# -- difference operators ----------------------------------------------------

def _samples(f: Values, n: int) -> list:
    if callable(f):
        return [f(k) for k in range(n + 1)]
    if len(f) < n + 1:
        raise ValueError(f"need f(0..{n}), got {len(f)} values")
    return list(f[: n + 1])


def shift_difference(f: Values, n: int):
    """n-th forward difference at 0: sum C(n,k) (-1)^(n-k) f(k)."""
    vals = _samples(f, n)
    return sum((math.comb(n, k) * (-1) ** (n - k) * vals[k] for k in range(n + 1)), 0)


def q_difference(f: Values, n: int, ctx: QContext):
    """Delta_q^n f(0) = sum_k C(n,k)_q (-1)^k q^C(k,2) f(n-k).

    The q-power carries the summation index; with a constant q^C(n,2) the sum
    would disagree with the operator product prod_{i<n} (E - q^i I).
    """
    vals = _samples(f, n)
    total = 0
    for k in range(n + 1):
        c = gauss_binomial(n, k, ctx) * ctx.q ** math.comb(k, 2)
        total += (-c if k % 2 else c) * vals[n - k]
    return total


def q_difference_product(f: Values, n: int, ctx: QContext):
    """Delta_q^n f(0) by literally applying (E - q^i I) for i = 0..n-1."""
    seq = _samples(f, n)
    for i in range(n):
        qi = ctx.q ** i
        seq = [seq[j + 1] - qi * seq[j] for j in range(len(seq) - 1)]
    return seq[0]


# -- evaluation points -------------------------------------------------------

@dataclass(frozen=True)
class QCoord:
    """One coordinate: u = [x]_q and v = [1 - x]_q (x kept when known)."""

    u: Any
    v: Any
    x: Any = None


@dataclass(frozen=True)
class QPoint:
    coords: tuple

    @property
    def w(self) -> int:
        return len(self.coords)

    @property
    def us(self) -> tuple:
        return tuple(c.u for c in self.coords)

    @property
    def vs(self) -> tuple:
        return tuple(c.v for c in self.coords)

    @property
    def xs(self) -> tuple:
        return tuple(c.x for c in self.coords)

    @classmethod
    def from_x(cls, xs: Iterable, ctx: QContext) -> "QPoint":
        coords = []
        for x in xs:
            x = ctx.real(x)
            if not 0 <= x <= 1:
                raise ValueError(f"coordinates must lie in [0, 1], got {x}")
            coords.append(QCoord(q_number(x, ctx), q_number(1 - x, ctx), x))
        if not coords:
            raise DimensionMismatch("a point needs at least one coordinate")
        return cls(tuple(coords))

    @classmethod
    def from_uv(cls, us: Sequence, vs: Sequence, xs: Sequence | None = None) -> "QPoint":
        if len(us) != len(vs) or (xs is not None and len(xs) != len(us)):
            raise DimensionMismatch("u, v (and x) must have equal lengths")
        if not us:
            raise DimensionMismatch("a point needs at least one coordinate")
        xs = xs if xs is not None else [None] * len(us)
        return cls(tuple(QCoord(u, v, x) for u, v, x in zip(us, vs, xs)))

    @classmethod
    def from_qpower(cls, rs: Iterable, ctx: QContext) -> "QPoint":
        """Point given by r_i = q^(x_i), which keeps u and v rational for rational r.

        Uses [1 - x]_q = (1 - q / q^x) / (1 - q).  Requires q < 1 and q <= r <= 1.
        """
        if ctx.is_classical:
            raise ValueError("from_qpower needs q < 1; use from_x at q = 1")
        q = ctx.q
        coords = []
        for r in rs:
            r = ctx.real(r)
            if not q <= r <= 1:
                raise ValueError(f"q^x must lie in [q, 1] for x in [0, 1], got {r}")
            coords.append(QCoord((1 - r) / (1 - q), (1 - q / r) / (1 - q)))
        if not coords:
            raise DimensionMismatch("a point needs at least one coordinate")
        return cls(tuple(coords))

    def reflect(self) -> "QPoint":
        """The point 1 - x: swaps [x]_q and [1 - x]_q in every coordinate."""
        return QPoint(tuple(
            QCoord(c.v, c.u, None if c.x is None else 1 - c.x) for c in self.coords
        ))

    def kernel_defects(self, ctx: QContext) -> list:
        """u + v - 1 - (1 - q) u v per coordinate; identically 0 for a valid point."""
        return [c.u + c.v - 1 - (1 - ctx.q) * c.u * c.v for c in self.coords]
