"""Identity-verification suite.

Each identity is a function that draws cases from a seeded generator and
records comparisons on a :class:`Cases` recorder.  Suites get independent
generators (``seed ^ suite_id``), so running one suite alone or inside
``all`` gives the same results.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import bernstein, combin, interp, qcore, series
from .errors import PoleAtOne, QBernError
from .qcore import Domain, QContext, QPoint, rel_error

SUITE_IDS = {"bernstein": 1, "combin": 2, "series": 3, "interp": 4}
SUITES = tuple(SUITE_IDS)

Q_EXACT = (Fraction(1, 5), Fraction(1, 2), Fraction(3, 4), 1 - Fraction(1, 10**6), Fraction(1))
Q_FLOAT = (0.2, 0.5, 0.75, 1 - 1e-6, 1.0)
LATTICE = tuple(Fraction(j, 8) for j in range(1, 8))
# alternating expansions cancel heavily in IEEE double; these checks run wider
WIDE_PREC = 256

ALL_OPS = (
    "q_number", "q_number_neg", "q_factorial", "gauss_binomial", "shift_difference", "q_difference",
    "stirling2", "q_stirling2", "bernoulli_higher", "bernoulli_poly_higher", "q_power_expand",
    "egf_exp", "egf_mul", "egf_invert", "bernstein_gf", "coeff_extract", "multivariate_gf_coeff",
    "bernstein_classical", "q_bernstein", "q_bernstein_recurrence", "q_bernstein_symmetry_check",
    "q_bernstein_operator", "partition_sum", "degree_index_relation_check", "power_basis_expand",
    "moment_identity_check", "bernoulli_stirling_repr",
    "interp_q", "special_value_check", "interp_limit", "interp_derivative", "mellin_check",
)


class CaseFailure(Exception):
    pass


@dataclass
class IdentityResult:
    id: str
    anchor: str
    suite: str
    cases: int = 0
    passed: int = 0
    worst_rel_error: float = 0.0
    elapsed_ms: float = 0.0
    ops: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cases > 0 and self.passed == self.cases and not self.failures


@dataclass
class VerifyReport:
    suite: str
    seed: int
    cases: int
    identities: list
    coverage: dict

    @property
    def coverage_complete(self) -> bool:
        return all(self.coverage.values())

    @property
    def passed(self) -> bool:
        ok = all(r.ok for r in self.identities)
        return ok and (self.suite != "all" or self.coverage_complete)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "coverage_complete": self.coverage_complete,
            "coverage": self.coverage,
            "identities": [dict(asdict(r), passed_all=r.ok) for r in self.identities],
        }


class Cases:
    """Records comparisons for one identity."""

    def __init__(self, result: IdentityResult):
        self.result = result

    def check(self, lhs, rhs, tol: float | None = None, scale=0, label: str = "") -> bool:
        """Exact equality when ``tol`` is None, relative closeness otherwise."""
        self.result.cases += 1
        if tol is None:
            ok = lhs == rhs
            err = 0.0 if ok else rel_error(lhs, rhs)
        else:
            diff = abs(lhs - rhs)
            ref = max(abs(lhs), abs(rhs), abs(scale))
            err = float(diff / ref) if ref else float(diff)
            ok = diff <= tol * ref
        self.result.worst_rel_error = max(self.result.worst_rel_error, err)
        if ok:
            self.result.passed += 1
        elif len(self.result.failures) < 5:
            self.result.failures.append(f"{label}: {lhs!r} != {rhs!r}")
        return ok

    def pair(self, pair: tuple, tol: float | None = None, scale=0, label: str = "") -> bool:
        return self.check(pair[0], pair[1], tol, scale, label)

    def expect(self, cond: bool, label: str = "", err: float = 0.0) -> bool:
        self.result.cases += 1
        self.result.worst_rel_error = max(self.result.worst_rel_error, err)
        if cond:
            self.result.passed += 1
        elif len(self.result.failures) < 5:
            self.result.failures.append(label or "condition failed")
        return cond


@dataclass(frozen=True)
class Identity:
    id: str
    suite: str
    anchor: str
    ops: tuple
    run: Callable


IDENTITIES: list[Identity] = []


def identity(id: str, suite: str, anchor: str, ops: tuple):
    def deco(fn):
        IDENTITIES.append(Identity(id, suite, anchor, ops, fn))
        return fn
    return deco


# -- random cases --------------------------------------------------------------

def exact_ctx(q) -> QContext:
    return QContext(q, Domain.EXACT)


def exact_point(rng: random.Random, w: int, ctx: QContext) -> QPoint:
    """Random rational point.

    At q = 1, x is drawn from {1/8..7/8}.  For q < 1 the lattice is placed on
    q^x instead (q^x = q + (1-q) j/8), which keeps [x]_q and [1-x]_q rational.
    """
    picks = [rng.choice(LATTICE) for _ in range(w)]
    if ctx.is_classical:
        return QPoint.from_x(picks, ctx)
    q = ctx.q
    return QPoint.from_qpower([q + (1 - q) * j for j in picks], ctx)


def float_point(rng: random.Random, w: int, ctx: QContext) -> QPoint:
    return QPoint.from_x([rng.random() for _ in range(w)], ctx)


def random_exact_case(rng, wmax: int):
    ctx = exact_ctx(rng.choice(Q_EXACT))
    return ctx, exact_point(rng, rng.randint(1, wmax), ctx)


# -- qcore / combin ---------------------------------------------------------------

@identity("q-pascal", "combin", "Eq. 95 Gaussian binomial (q-Pascal rule)", ("gauss_binomial", "q_number", "q_factorial"))
def _q_pascal(rng, cases, rec: Cases):
    for q in (Fraction(1, 5), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
        ctx = exact_ctx(q)
        for n in range(1, 13):
            for k in range(1, n + 1):
                lhs = qcore.gauss_binomial(n, k, ctx)
                rhs = qcore.gauss_binomial(n - 1, k - 1, ctx) + q ** k * qcore.gauss_binomial(n - 1, k, ctx)
                rec.check(lhs, rhs, label=f"q={q} n={n} k={k}")


@identity("q-number-kernel", "combin", "Sec. 1 q-number definition", ("q_number", "q_number_neg"))
def _q_kernel(rng, cases, rec: Cases):
    for _ in range(2 * cases):
        x, q = rng.random(), rng.uniform(1e-3, 1 - 1e-3)
        ctx = QContext(q, Domain.FLOAT)
        u, v = qcore.q_number(x, ctx), qcore.q_number(1 - x, ctx)
        rec.check(u + v, 1 + (1 - q) * u * v, tol=1e-12, label=f"x={x} q={q}")
    for q in Q_EXACT:
        ctx = exact_ctx(q)
        for n in range(0, 8):
            rec.check(qcore.q_number_neg(n, ctx), sum((-q) ** j for j in range(n)), label=f"[{n}]_-q")
            rec.check(qcore.q_number(n, ctx), sum(q ** j for j in range(n)), label=f"[{n}]_q")


@identity("classical-limit-qcore", "combin", "Sec. 1 lim q->1 [x]_q = x", ("q_number", "q_factorial", "gauss_binomial", "q_difference", "shift_difference"))
def _classical_qcore(rng, cases, rec: Cases):
    ctx = exact_ctx(1)
    for x in LATTICE:
        rec.check(qcore.q_number(x, ctx), x, label="q_number")
    for n in range(0, 13):
        rec.check(qcore.q_factorial(n, ctx), math.factorial(n), label="q_factorial")
        for k in range(0, n + 1):
            rec.check(qcore.gauss_binomial(n, k, ctx), math.comb(n, k), label="gauss_binomial")
    for _ in range(cases):
        n = rng.randint(0, 8)
        f = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n + 1)]
        rec.check(qcore.q_difference(f, n, ctx), qcore.shift_difference(f, n), label=f"n={n}")


@identity("q-difference-operator", "combin", "Eq. 93 operator product vs Eq. 94 expansion (per-term q^C(k,2))", ("q_difference", "gauss_binomial"))
def _q_difference(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx = exact_ctx(rng.choice(Q_EXACT))
        for n in range(0, 9):
            f = [Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(n + 1)]
            rec.check(qcore.q_difference(f, n, ctx), qcore.q_difference_product(f, n, ctx), label=f"q={ctx.q} n={n}")


def set_partition_counts(n: int) -> list[int]:
    """Number of partitions of {1..n} into k blocks, k = 0..n, by enumeration."""
    counts = [0] * (n + 1)
    if n == 0:
        counts[0] = 1
        return counts

    def walk(i, blocks):
        if i == n:
            counts[blocks] += 1
            return
        for b in range(blocks + 1):
            walk(i + 1, blocks + (b == blocks))

    walk(1, 1)
    return counts


@identity("stirling-brute-force", "combin", "Eq. 91 S(n,k) vs set-partition enumeration", ("stirling2",))
def _stirling_brute(rng, cases, rec: Cases):
    for n in range(0, 11):
        for k, count in enumerate(set_partition_counts(n)):
            rec.check(combin.stirling2(n, k), count, label=f"S({n},{k})")


@identity("stirling-difference", "combin", "Eq. 92 S(n,k) = Delta^k 0^n / k!", ("stirling2", "shift_difference"))
def _stirling_diff(rng, cases, rec: Cases):
    for n in range(0, 13):
        for k in range(0, 13):
            rec.check(combin.stirling2(n, k), combin.stirling2_difference(n, k), label=f"S({n},{k})")


@identity("stirling-gf", "combin", "Eq. 150 (e^t-1)^k/k! generating function", ("stirling2", "egf_exp", "egf_mul"))
def _stirling_gf(rng, cases, rec: Cases):
    for k in range(0, 7):
        gf = combin.stirling2_gf(k, 12)
        for n in range(0, 13):
            rec.check(series.coeff_extract(gf, n), combin.stirling2(n, k), label=f"S({n},{k})")
    for n in range(1, 13):
        for k in range(0, n + 1):
            rhs = k * combin.stirling2(n - 1, k) + (combin.stirling2(n - 1, k - 1) if k else 0)
            rec.check(combin.stirling2(n, k), rhs, label=f"recurrence S({n},{k})")


@identity("q-stirling", "combin", "Eq. 97 q-Stirling sum = q-difference form = generating function", ("q_stirling2", "q_difference", "q_factorial", "stirling2"))
def _q_stirling(rng, cases, rec: Cases):
    for q in Q_EXACT[:3]:
        ctx = exact_ctx(q)
        for k in range(0, 6):
            gf = combin.q_stirling2_gf(k, 10, ctx)
            for n in range(0, 11):
                s = combin.q_stirling2(n, k, ctx)
                rec.check(s, combin.q_stirling2_difference(n, k, ctx), label=f"diff q={q} ({n},{k})")
                rec.check(s, series.coeff_extract(gf, n), label=f"gf q={q} ({n},{k})")
    ctx = exact_ctx(1)
    for n in range(0, 13):
        for k in range(0, n + 1):
            rec.check(combin.q_stirling2(n, k, ctx), combin.stirling2(n, k), label=f"q=1 ({n},{k})")


@identity("q-power-expansion", "combin", "Eq. 98 [x]_q^n via q-Stirling numbers", ("q_power_expand", "gauss_binomial", "q_stirling2"))
def _q_power(rng, cases, rec: Cases):
    for q in Q_EXACT:
        ctx = exact_ctx(q)
        for x in range(0, 7):
            for n in range(0, 9):
                rec.check(combin.q_power_expand(n, x, ctx), qcore.q_number(x, ctx) ** n, label=f"q={q} x={x} n={n}")
    for _ in range(2 * cases):
        ctx = QContext(rng.choice(Q_FLOAT), Domain.FLOAT, precision=WIDE_PREC)
        x, n = rng.random(), rng.randint(0, 8)
        rec.check(combin.q_power_expand(n, x, ctx), qcore.q_number(x, ctx) ** n, tol=1e-9, scale=1, label=f"x={x} n={n}")


@identity("q-power-multivariate", "combin", "Eq. 99 (prod [x_i]_q)^m joint expansion", ("q_power_expand",))
def _q_power_multi(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx = exact_ctx(rng.choice(Q_EXACT))
        w, m = rng.randint(1, 3), rng.randint(0, 4)
        xs = [rng.randint(0, 6) for _ in range(w)]
        direct = math.prod((qcore.q_number(x, ctx) for x in xs), start=Fraction(1)) ** m
        rec.check(combin.q_power_expand_multi(m, xs, ctx), direct, label=f"xs={xs} m={m}")


@identity("bernoulli-higher-order", "combin", "Sec. 2 Bernoulli numbers of order k, (t/(e^t-1))^k", ("bernoulli_higher", "bernoulli_poly_higher", "egf_invert"))
def _bernoulli(rng, cases, rec: Cases):
    table = combin.bernoulli_higher(16, 1)
    for n in range(1, 16):
        # classical recurrence sum_{j<=n} C(n+1, j) B_j = 0
        rec.check(sum(math.comb(n + 1, j) * table[j] for j in range(n + 1)), 0, label=f"B_{n}")
    for k in range(0, 6):
        tab = combin.bernoulli_higher(10, k)
        rec.check(tab[0], 1, label=f"B_0^({k})")
        for n in range(0, 11):
            if k == 0:
                rec.check(tab[n], 1 if n == 0 else 0, label=f"B_{n}^(0)")
                continue
            y = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            # (y+1) - (y) difference lowers the order by one
            lhs = combin.bernoulli_poly_higher(n, k, y + 1) - combin.bernoulli_poly_higher(n, k, y)
            rhs = n * combin.bernoulli_poly_higher(n - 1, k - 1, y) if n else 0
            rec.check(lhs, rhs, label=f"difference n={n} k={k}")
            rec.check(combin.bernoulli_poly_higher(n, k, k - y), (-1) ** n * combin.bernoulli_poly_higher(n, k, y), label=f"reflection n={n} k={k}")


# -- series ----------------------------------------------------------------------

@identity("generating-function", "series", "Def. 2.1 / Cor. 2.2 n![t^n] F^(k) = Eq. 59", ("bernstein_gf", "coeff_extract", "egf_mul", "egf_exp", "q_bernstein"))
def _gf_roundtrip(rng, cases, rec: Cases):
    for _ in range(25):
        ctx, pt = random_exact_case(rng, 1)
        c = pt.coords[0]
        for k in range(0, 13):
            gf = series.bernstein_gf(k, c.u, c.v, 12)
            for n in range(0, 13):
                rec.check(series.coeff_extract(gf, n), bernstein.q_bernstein([k], [n], pt, ctx), label=f"k={k} n={n}")


@identity("single-t-generating-function", "series", "Eq. 58 single-t convolution", ("multivariate_gf_coeff",))
def _gf_multi(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        N = rng.randint(0, 8)
        k = [rng.randint(0, 3) for _ in range(pt.w)]
        value = series.multivariate_gf_coeff(N, k, pt, ctx)
        # independent: expand prod (t u_i)^k_i/k_i! e^{t v_i} as ordinary coefficients
        K = sum(k)
        if N < K:
            rec.check(value, 0, label="below valuation")
            continue
        coef = Fraction(1)
        for ki, ui in zip(k, pt.us):
            coef *= ui ** ki / math.factorial(ki)
        vs = sum(pt.vs)
        rhs = coef * vs ** (N - K) / math.factorial(N - K) * math.factorial(N)
        rec.check(value, rhs, label=f"N={N} k={k}")


def _random_series(rng, N):
    return series.EgfSeries(Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(N + 1))


@identity("egf-algebra", "series", "truncated EGF arithmetic (binomial convolution)", ("egf_mul", "egf_invert", "egf_exp"))
def _egf_algebra(rng, cases, rec: Cases):
    for _ in range(cases):
        f, g, h = (_random_series(rng, 8) for _ in range(3))
        rec.check(series.egf_mul(f, g), series.egf_mul(g, f), label="commutative")
        rec.check(series.egf_mul(series.egf_mul(f, g), h), series.egf_mul(f, series.egf_mul(g, h)), label="associative")
        if f[0] != 0:
            rec.check(series.egf_mul(f, series.egf_invert(f)), series.egf_one(8), label="inverse")
        a, b = Fraction(rng.randint(-5, 5), 3), Fraction(rng.randint(-5, 5), 7)
        rec.check(series.egf_mul(series.egf_exp(a, 8), series.egf_exp(b, 8)), series.egf_exp(a + b, 8), label="exp law")


# -- bernstein ----------------------------------------------------------------------

def _random_degrees(rng, w, nmax, nmin=0):
    return [rng.randint(nmin, nmax) for _ in range(w)]


@identity("recurrence", "bernstein", "Eq. 60 recurrence", ("q_bernstein", "q_bernstein_recurrence"))
def _recurrence(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        n = _random_degrees(rng, pt.w, 8, 1)
        for k in bernstein.index_grid(n):
            rec.check(bernstein.q_bernstein(k, n, pt, ctx), bernstein.q_bernstein_recurrence(k, n, pt, ctx), label=f"k={k} n={n}")


@identity("symmetry", "bernstein", "Eq. 151 symmetry", ("q_bernstein_symmetry_check",))
def _symmetry(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        n = _random_degrees(rng, pt.w, 8)
        for k in bernstein.index_grid(n):
            rec.pair(bernstein.q_bernstein_symmetry_check(k, n, pt, ctx), label=f"k={k} n={n}")


@identity("partition-closed-form", "bernstein", "Eq. 199 partition", ("partition_sum", "q_bernstein_operator"))
def _partition(rng, cases, rec: Cases):
    one = bernstein.BUILTIN_TARGETS["one"]
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        n = _random_degrees(rng, pt.w, 8, 1)
        total = bernstein.partition_sum(n, pt, ctx)
        rec.check(total, bernstein.partition_closed_form(n, pt, ctx), label=f"n={n}")
        rec.check(bernstein.q_bernstein_operator(one, n, pt, ctx), total, label=f"operator n={n}")
        ctx1 = exact_ctx(1)
        pt1 = exact_point(rng, pt.w, ctx1)
        rec.check(bernstein.partition_sum(n, pt1, ctx1), 1, label=f"q=1 n={n}")


@identity("partition-near-one", "bernstein", "Cor. 2.8 lim q->1 partition = 1", ("partition_sum",))
def _partition_near_one(rng, cases, rec: Cases):
    q = 1 - 1e-6
    ctx = QContext(q, Domain.FLOAT)
    for _ in range(cases):
        w = rng.randint(1, 3)
        n = _random_degrees(rng, w, 8, 1)
        pt = float_point(rng, w, ctx)
        dev = abs(bernstein.partition_sum(n, pt, ctx) - 1)
        bound = 4 * (1 - q) * w * max(n)
        rec.expect(dev <= bound, f"n={n} deviation {dev} > {bound}", err=dev)


@identity("power-basis", "bernstein", "Thm. 2.11 power-basis expansion", ("power_basis_expand", "q_bernstein"))
def _power_basis(rng, cases, rec: Cases):
    for _ in range(2 * cases):
        ctx = QContext(rng.choice(Q_FLOAT), Domain.FLOAT, precision=WIDE_PREC)
        w = rng.randint(1, 2)
        pt = float_point(rng, w, ctx)
        n = _random_degrees(rng, w, 6)
        k = [rng.randint(0, ni) for ni in n]
        direct = bernstein.q_bernstein(k, n, pt, ctx)
        rec.check(bernstein.power_basis_expand(k, n, pt, ctx), direct, tol=1e-9, label=f"k={k} n={n}")


@identity("moment", "bernstein", "Thm. 2.12 moment identity", ("moment_identity_check", "q_bernstein_operator"))
def _moment(rng, cases, rec: Cases):
    coord = bernstein.BUILTIN_TARGETS["coord-product"]
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        m = rng.randint(0, 3)
        n = _random_degrees(rng, pt.w, 6, max(m, 1))
        rec.pair(bernstein.moment_identity_check(m, n, pt, ctx), label=f"m={m} n={n}")
        lin = math.prod((c.u * (c.u + c.v) ** (ni - 1) for c, ni in zip(pt.coords, n)), start=Fraction(1))
        rec.check(bernstein.q_bernstein_operator(coord, n, pt, ctx), lin, label=f"operator f=prod x n={n}")


@identity("degree-index", "bernstein", "Thm. 2.10 degree-index relation", ("degree_index_relation_check",))
def _degree_index(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        n = _random_degrees(rng, pt.w, 6, 1)
        k = [rng.randint(1, ni + 1) for ni in n]
        rec.pair(bernstein.degree_index_relation_check(k, n, pt, ctx), label=f"k={k} n={n}")


@identity("bernoulli-stirling", "bernstein", "Thm. 2.13 Bernoulli-Stirling representation", ("bernoulli_stirling_repr", "bernoulli_poly_higher", "stirling2"))
def _bernoulli_stirling(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 2)
        n = _random_degrees(rng, pt.w, 6)
        k = [rng.randint(0, ni) for ni in n]
        direct = bernstein.q_bernstein(k, n, pt, ctx)
        rec.check(bernstein.bernoulli_stirling_repr(k, n, pt, ctx), direct, label=f"k={k} n={n}")
        rec.check(bernstein.bernoulli_stirling_repr(k, n, pt, ctx, stirling=combin.stirling2_difference), direct, label=f"Delta k={k} n={n}")


@identity("positivity", "bernstein", "operator positivity on [0,1]^w", ("q_bernstein", "q_bernstein_operator"))
def _positivity(rng, cases, rec: Cases):
    runge = bernstein.BUILTIN_TARGETS["runge"]
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        n = _random_degrees(rng, pt.w, 5, 1)
        vals = [bernstein.q_bernstein(k, n, pt, ctx) for k in bernstein.index_grid(n)]
        rec.expect(min(vals) >= 0, f"negative basis value at n={n}")
        rec.expect(bernstein.q_bernstein_operator(runge, n, pt, ctx) >= 0, f"negative operator value at n={n}")


@identity("classical-reduction", "bernstein", "Remarks 2.4/2.6 q -> 1 classical Bernstein", ("bernstein_classical", "q_bernstein", "q_bernstein_recurrence", "q_bernstein_symmetry_check"))
def _classical(rng, cases, rec: Cases):
    ctx = exact_ctx(1)
    for _ in range(cases):
        w = rng.randint(1, 3)
        x = [rng.choice(LATTICE) for _ in range(w)]
        pt = QPoint.from_x(x, ctx)
        n = _random_degrees(rng, w, 6, 1)
        for k in bernstein.index_grid(n):
            oracle = math.prod((math.comb(ni, ki) * xi ** ki * (1 - xi) ** (ni - ki) for ki, ni, xi in zip(k, n, x)), start=Fraction(1))
            rec.check(bernstein.bernstein_classical(k, n, x), oracle, label=f"classical k={k}")
            rec.check(bernstein.q_bernstein(k, n, pt, ctx), oracle, label=f"q=1 k={k}")
            rec.check(bernstein.q_bernstein_recurrence(k, n, pt, ctx), oracle, label=f"recurrence k={k}")
            flipped = [ni - ki for ki, ni in zip(k, n)]
            rec.check(bernstein.bernstein_classical(flipped, n, [1 - xi for xi in x]), oracle, label=f"symmetry k={k}")


# -- interp ----------------------------------------------------------------------------

@identity("special-values", "interp", "Sec. 3 special values", ("special_value_check", "interp_q"))
def _special_values(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx, pt = random_exact_case(rng, 3)
        n = _random_degrees(rng, pt.w, 5)
        k = _random_degrees(rng, pt.w, 4)
        rec.pair(interp.special_value_check(n, k, pt, ctx), label=f"n={n} k={k}")


def _random_s(rng, radius=5.0):
    r, th = radius * math.sqrt(rng.random()), 2 * math.pi * rng.random()
    return complex(r * math.cos(th), r * math.sin(th))


@identity("q-limit", "interp", "Eq. 51 q -> 1 limit", ("interp_q", "interp_limit"))
def _q_limit(rng, cases, rec: Cases):
    ctx = QContext(1 - 1e-8, Domain.COMPLEX)
    for _ in range(cases):
        w = rng.randint(1, 3)
        x = [rng.uniform(0.05, 0.95) for _ in range(w)]
        k = _random_degrees(rng, w, 4)
        s = _random_s(rng)
        rec.check(interp.interp_q(s, k, QPoint.from_x(x, ctx), ctx), interp.interp_limit(s, k, x), tol=1e-6, label=f"s={s}")


def _central_difference(fn, s, h, order):
    if order == 1:
        return (fn(s + h) - fn(s - h)) / (2 * h)
    return (fn(s + h) - 2 * fn(s) + fn(s - h)) / (h * h)


@identity("s-derivative", "interp", "Eq. 52 s-derivatives", ("interp_derivative", "interp_limit"))
def _derivative(rng, cases, rec: Cases):
    h = 1e-5
    for _ in range(cases):
        w = rng.randint(1, 2)
        x = [rng.uniform(0.05, 0.9) for _ in range(w)]
        k = _random_degrees(rng, w, 3)
        s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for order in (1, 2):
            fd = _central_difference(lambda z: interp.interp_limit(z, k, x), s, h, order)
            # second differences lose about half the digits; compare against the scale of D
            scale = abs(interp.interp_limit(s, k, x)) if order == 2 else 0
            rec.check(interp.interp_derivative(order, s, k, x), fd, tol=1e-5, scale=scale, label=f"order={order} s={s}")


@identity("mellin", "interp", "Sec. 3 Mellin transform of Eq. 58", ("mellin_check", "interp_q"))
def _mellin(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx = QContext(rng.choice(Q_FLOAT), Domain.FLOAT)
        w = rng.randint(1, 2)
        pt = float_point(rng, w, ctx)
        k = _random_degrees(rng, w, 3)
        for s in (1, 2, 3):
            rec.pair(interp.mellin_check(s, k, pt, ctx), tol=1e-8, label=f"s={s} k={k}")


@identity("exponential-in-s", "interp", "Eq. 50 functional form in s", ("interp_q",))
def _exponential(rng, cases, rec: Cases):
    for _ in range(cases):
        ctx = QContext(rng.choice(Q_FLOAT), Domain.COMPLEX)
        w = rng.randint(1, 3)
        pt = float_point(rng, w, ctx)
        k = _random_degrees(rng, w, 3)
        s1, s2 = _random_s(rng, 3), _random_s(rng, 3)
        lhs = interp.interp_q(s1 + s2, k, pt, ctx) * interp.interp_q(0, k, pt, ctx)
        rhs = interp.interp_q(s1, k, pt, ctx) * interp.interp_q(s2, k, pt, ctx)
        rec.check(lhs, rhs, tol=1e-10, label=f"s1={s1} s2={s2}")


@identity("pole-at-one", "interp", "Sec. 3 divergence at x_i = 1", ("interp_q", "interp_limit"))
def _pole(rng, cases, rec: Cases):
    ctx = exact_ctx(Fraction(1, 4))
    for w in (1, 2, 3):
        x = [Fraction(1, 2)] * (w - 1) + [Fraction(1)]
        for fn in (lambda: interp.interp_q(0, [0] * w, QPoint.from_x(x, ctx), ctx), lambda: interp.interp_limit(1, [1] * w, x)):
            try:
                fn()
            except PoleAtOne:
                rec.expect(True)
            else:
                rec.expect(False, f"no PoleAtOne for x={x}")


# -- driver ------------------------------------------------------------------------------

def run(suite: str = "all", seed: int = 42, cases: int = 50, only: tuple = ()) -> VerifyReport:
    if suite != "all" and suite not in SUITE_IDS:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    if cases < 1:
        raise ValueError("cases must be >= 1")
    chosen = SUITES if suite == "all" else (suite,)
    results = []
    for name in chosen:
        rng = random.Random(seed ^ SUITE_IDS[name])
        for ident in IDENTITIES:
            if ident.suite != name or (only and ident.id not in only):
                continue
            res = IdentityResult(ident.id, ident.anchor, ident.suite, ops=list(ident.ops))
            start = time.perf_counter()
            try:
                ident.run(rng, cases, Cases(res))
            except (QBernError, ArithmeticError, ValueError) as exc:
                res.failures.append(f"aborted: {type(exc).__name__}: {exc}")
            res.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
            results.append(res)
    covered = {op for r in results for op in r.ops}
    relevant = ALL_OPS if suite == "all" else sorted(covered)
    coverage = {op: op in covered for op in relevant}
    return VerifyReport(suite, seed, cases, results, coverage)
