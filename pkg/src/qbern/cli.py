"""``qbern`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import bernstein, combin, interp, qcore, series, verify
from .errors import PoleAtOne, QBernError
from .qcore import Domain, QContext, QPoint


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: Fraction = Fraction(1)
    domain: str = "f64"
    rel_tol: float = 1e-9
    seed: int = 42
    output: str | None = None
    trunc_order: int = 16

    def __post_init__(self):
        if not 0 < self.q <= 1:
            raise UsageError(f"q must lie in (0, 1], got {self.q}")
        if self.rel_tol <= 0:
            raise UsageError("--tol must be positive")
        if self.trunc_order < 1:
            raise UsageError("--order must be >= 1")
        self.domain_spec()

    def domain_spec(self) -> tuple[Domain, int]:
        if self.domain == "exact":
            return Domain.EXACT, 53
        if self.domain == "f64":
            return Domain.FLOAT, 53
        if self.domain.startswith("bigfloat:"):
            bits = self.domain.partition(":")[2]
            if bits.isdigit() and int(bits) >= 2:
                return Domain.FLOAT, int(bits)
        raise UsageError(f"--domain must be exact, f64 or bigfloat:<bits>, got {self.domain!r}")

    def ctx(self, complex_values: bool = False) -> QContext:
        domain, bits = self.domain_spec()
        if complex_values and domain is Domain.FLOAT:
            domain = Domain.COMPLEX
        return QContext(self.q, domain, bits, self.rel_tol)


# -- parsing ------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational or decimal number: {text!r}")


def _flatten(values: Sequence[str], conv) -> list:
    out = []
    for v in values:
        out.extend(conv(part) for part in v.split(",") if part.strip())
    return out


def _int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}")
    if val < 0:
        raise UsageError(f"indices must be nonnegative, got {val}")
    return val


def _num(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}")


def parse_complex(text: str):
    """``a+bi`` (or ``a+bj``) to a number; integers stay ``int``."""
    t = text.strip().replace(" ", "").replace("i", "j")
    try:
        z = complex(t)
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}")
    if z.imag == 0 and z.real.is_integer():
        return int(z.real)
    return z


# -- output ------------------------------------------------------------------------

def format_value(v, for_json: bool = False):
    if isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return v if for_json else str(v)
    if isinstance(v, float):
        return v if for_json else repr(v)
    if isinstance(v, mpmath.mpf) or type(v).__name__ == "mpf":
        return mpmath.nstr(v, mpmath.libmp.prec_to_dps(v.context.prec), strip_zeros=False)
    return v if for_json else str(v)


def emit(header: list[str], rows: list[list], fmt: str, meta: dict | None = None, out=None):
    out = out or sys.stdout
    if fmt == "json":
        doc = dict(meta or {})
        doc["columns"] = header
        doc["rows"] = [{h: format_value(v, True) for h, v in zip(header, row)} for row in rows]
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    out.write(buf.getvalue())


def emit_record(record: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps({k: _json_field(v) for k, v in record.items()}, indent=2) + "\n")
        return
    flat = {}
    for key, val in record.items():
        if isinstance(val, (list, tuple)):
            for i, item in enumerate(val, 1):
                flat[f"{key}_{i}"] = item
        else:
            flat[key] = val
    emit(list(flat), [list(flat.values())], "csv", out=out)


def _json_field(v):
    if isinstance(v, (list, tuple)):
        return [format_value(x, True) for x in v]
    return format_value(v, True)


# -- commands ------------------------------------------------------------------------

def _point(x: list, cfg: RunConfig, complex_values: bool = False) -> tuple[QContext, QPoint]:
    ctx = cfg.ctx(complex_values)
    return ctx, QPoint.from_x(x, ctx)


def cmd_eval(k, n, x, cfg: RunConfig, out=None) -> int:
    if not len(k) == len(n) == len(x):
        raise UsageError(f"-k, -n and -x need equal lengths, got {len(k)}, {len(n)}, {len(x)}")
    ctx, pt = _point(x, cfg)
    value = bernstein.q_bernstein(k, n, pt, ctx)
    emit_record({"value": value, "u": list(pt.us), "v": list(pt.vs)}, cfg.output or "csv", out)
    return 0


def cmd_approximate(fname: str, n, grid: int, cfg: RunConfig, out=None) -> int:
    target = bernstein.BUILTIN_TARGETS.get(fname)
    if target is None:
        raise UsageError(f"unknown function {fname!r}; choose from {', '.join(bernstein.BUILTIN_TARGETS)}")
    if grid < 2:
        raise UsageError("--grid must be >= 2")
    if any(ni < 1 for ni in n):
        raise UsageError("operator degrees must be >= 1")
    w = len(n)
    ctx = cfg.ctx()
    rows = []
    for idx in bernstein.index_grid([grid - 1] * w):
        x = tuple(Fraction(i, grid - 1) for i in idx)
        pt = QPoint.from_x(x, ctx)
        fx = bernstein._coerce(target(x), ctx)
        value = bernstein.q_bernstein_operator(target, n, pt, ctx)
        rows.append([*(ctx.real(xi) for xi in x), fx, value, abs(value - fx)])
    header = [f"x_{i}" for i in range(1, w + 1)] + ["f", "operator", "abs_error"]
    emit(header, rows, cfg.output or "csv", {"function": fname, "n": list(n), "q": str(cfg.q)}, out)
    return 0


TABLE_FAMILIES = ("stirling", "qstirling", "bernoulli", "gaussbinom")


def cmd_table(family: str, nmax: int, kmax: int, cfg: RunConfig, out=None) -> int:
    if family not in TABLE_FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(TABLE_FAMILIES)}")
    if nmax < 0 or kmax < 0:
        raise UsageError("--nmax and --kmax must be >= 0")
    ctx = QContext(cfg.q, Domain.EXACT)
    if family == "stirling":
        entry = combin.stirling2
    elif family == "qstirling":
        entry = lambda n, k: combin.q_stirling2(n, k, ctx)  # noqa: E731
    elif family == "gaussbinom":
        entry = lambda n, k: qcore.gauss_binomial(n, k, ctx)  # noqa: E731
    else:
        tables = [combin.bernoulli_higher(nmax, k) for k in range(kmax + 1)]
        entry = lambda n, k: tables[k][n]  # noqa: E731
    rows = [[n] + [Fraction(entry(n, k)) for k in range(kmax + 1)] for n in range(nmax + 1)]
    header = ["n"] + [f"k={k}" for k in range(kmax + 1)]
    emit(header, rows, cfg.output or "csv", {"family": family, "q": str(cfg.q)}, out)
    return 0


def cmd_series(k: int, x, order: int, cfg: RunConfig, out=None) -> int:
    if order < k:
        raise UsageError(f"--order {order} is below k = {k}")
    ctx, pt = _point([x], cfg)
    c = pt.coords[0]
    gf = series.bernstein_gf(k, c.u, c.v, order)
    rows = [[n, series.coeff_extract(gf, n), bernstein.q_bernstein([k], [n], pt, ctx)] for n in range(order + 1)]
    emit(["n", "coefficient", "direct"], rows, cfg.output or "csv", {"k": k, "x": str(x), "q": str(cfg.q)}, out)
    return 0


def cmd_interp(s, k, x, cfg: RunConfig, out=None) -> int:
    if len(k) != len(x):
        raise UsageError("-k and -x need equal lengths")
    for xi in x:
        if xi >= 1:
            raise PoleAtOne(f"x = {xi}: D_q diverges at x = 1 ([1 - x]_q = 0)")
    ctx, pt = _point(x, cfg, complex_values=True)
    value = interp.interp_q(s, k, pt, ctx)
    if isinstance(value, Fraction):
        re, im = value, Fraction(0)
    else:
        re, im = value.real, value.imag
    emit_record({"re": re, "im": im}, cfg.output or "csv", out)
    return 0


def cmd_verify(suite: str, cases: int, cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    report = verify.run(suite, cfg.seed, cases)
    if (cfg.output or "json") == "json":
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        header = ["identity", "suite", "anchor", "cases", "passed", "worst_rel_error", "elapsed_ms", "ok"]
        rows = [[r.id, r.suite, r.anchor, r.cases, r.passed, r.worst_rel_error, r.elapsed_ms, r.ok] for r in report.identities]
        emit(header, rows, "csv", out=out)
    return 0 if report.passed else 1


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", "--q", type=_rational, default=Fraction(1), help="deformation parameter, e.g. 1/4 or 0.7")
    common.add_argument("--domain", default="f64", help="exact | f64 | bigfloat:<bits>")
    common.add_argument("--tol", type=float, default=1e-9, help="relative tolerance for float identity checks")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", choices=("csv", "json"), default=None)
    common.add_argument("--order", type=int, default=16, help="series truncation order")

    parser = argparse.ArgumentParser(prog="qbern", description="Modified q-Bernstein polynomials of several variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate B_{k;n}(x; q)")
    p.add_argument("-k", nargs="+", required=True)
    p.add_argument("-n", nargs="+", required=True)
    p.add_argument("-x", nargs="+", required=True)

    p = sub.add_parser("approximate", parents=[common], help="tabulate the q-Bernstein operator on a grid")
    p.add_argument("-f", "--function", required=True, help=", ".join(bernstein.BUILTIN_TARGETS))
    p.add_argument("-n", nargs="+", required=True)
    p.add_argument("--grid", type=int, default=5)

    p = sub.add_parser("table", parents=[common], help="Stirling, q-Stirling, Bernoulli or Gaussian binomial tables")
    p.add_argument("family")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--kmax", type=int, default=None, help="defaults to nmax")

    p = sub.add_parser("verify", parents=[common], help="run the identity-verification suite")
    p.add_argument("--suite", default="all", choices=("all",) + verify.SUITES)
    p.add_argument("--cases", type=int, default=50)

    p = sub.add_parser("series", parents=[common], help="generating-function coefficients vs direct evaluation")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-x", required=True)

    p = sub.add_parser("interp", parents=[common], help="interpolation function D_q(s)")
    p.add_argument("-s", required=True, help="complex argument a+bi")
    p.add_argument("-k", nargs="+", required=True)
    p.add_argument("-x", nargs="+", required=True)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.q, args.domain, args.tol, args.seed, args.out, args.order)
        if args.command == "eval":
            return cmd_eval(_flatten(args.k, _int), _flatten(args.n, _int), _flatten(args.x, _num), cfg, out)
        if args.command == "approximate":
            return cmd_approximate(args.function, _flatten(args.n, _int), args.grid, cfg, out)
        if args.command == "table":
            kmax = args.nmax if args.kmax is None else args.kmax
            return cmd_table(args.family, args.nmax, kmax, cfg, out)
        if args.command == "verify":
            if args.cases < 1:
                raise UsageError("--cases must be >= 1")
            return cmd_verify(args.suite, args.cases, cfg, out)
        if args.command == "series":
            return cmd_series(args.k, _num(args.x), cfg.trunc_order, cfg, out)
        if args.command == "interp":
            return cmd_interp(parse_complex(args.s), _flatten(args.k, _int), _flatten(args.x, _num), cfg, out)
    except PoleAtOne as exc:
        print(f"qbern: error: divergence: {exc}", file=sys.stderr)
        return 2
    except (UsageError, QBernError, ValueError) as exc:
        print(f"qbern: error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")
    return 2


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
