"""Command-line front end.

Subcommands ``n1``, ``nm2``, ``general``, ``asymptotics`` and ``verify``.
Tables go to standard output as TSV (with a header row) or JSON lines;
the effective configuration is echoed as one JSON line on standard error.
Exit codes: 0 success, 1 verification failure, 2 usage, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

DEFAULT_TABLE_ORDER = 32
GENERAL_DEFAULT_ORDER = 4
VERIFY_PARTS = ("tab1", "tab2", "general", "asymptotics")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    order: int | None
    n: str | None
    legs: int | None
    format: str
    precision: int
    threads: int
    only: list[str] | None
    golden: str | None


# -- output ------------------------------------------------------------------------


def _cell(v) -> object:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return str(v)


class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self.header: list[str] | None = None

    def columns(self, names: Iterable[str]) -> None:
        self.header = list(names)
        if self.fmt == "tsv":
            print("\t".join(self.header), file=self.out)

    def row(self, *values) -> None:
        cells = [_cell(v) for v in values]
        if self.fmt == "tsv":
            print("\t".join(str(c) for c in cells), file=self.out)
        else:
            print(json.dumps(dict(zip(self.header, cells))), file=self.out)


# -- subcommands ------------------------------------------------------------------


def cmd_n1(cfg: RunConfig, emit: Emitter) -> int:
    from .golden import LEGS
    from .n1 import tangle_table

    legs = 4 if cfg.legs is None else cfg.legs
    if legs < 4 or legs % 2:
        raise UsageError("--legs must be an even integer >= 4")
    name = next((c for c, l in LEGS.items() if l == legs), f"G{legs}c")
    emit.columns(["p", name])
    first = legs // 2 - 1  # no prime tangle with fewer crossings
    for p, v in enumerate(tangle_table(legs, cfg.order), 1):
        if p >= first:
            emit.row(p, v)
    return EXIT_OK


def cmd_nm2(cfg: RunConfig, emit: Emitter) -> int:
    from .nm2 import gamma_table

    emit.columns(["p", "Gamma"])
    for p, v in enumerate(gamma_table(cfg.order), 1):
        emit.row(p, v)
    return EXIT_OK


def _parse_n(text: str | None):
    from .renorm import FORMAL

    if text is None or text == FORMAL:
        return FORMAL
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--n must be a rational number or 'formal', got {text!r}") from exc


def cmd_general(cfg: RunConfig, emit: Emitter) -> int:
    from .planar import PlanarModel, check_budget
    from .renorm import general_table

    n = _parse_n(cfg.n)
    check_budget(cfg.order)
    if cfg.order == 0:
        emit.columns(["p", "Gamma1", "Gamma2"])
        return EXIT_OK
    sol = general_table(cfg.order, n, PlanarModel())
    emit.columns(["p", "Gamma1", "Gamma2"])
    for p in range(1, cfg.order + 1):
        emit.row(p, sol.gamma1[p], sol.gamma2[p])
    return EXIT_OK


def _n1_asymptotic_rows(p: int) -> list[tuple[str, object]]:
    import sympy

    from .n1 import asymptotics, critical_point, singular_expansion, solve_A

    cp = critical_point()
    data = singular_expansion()
    rows: list[tuple[str, object]] = [
        ("n1.g_c", sympy.sstr(cp.g_c)),
        ("n1.g_c.numeric", sympy.N(cp.g_c, 15)),
        ("n1.A_c", cp.A_c),
        ("n1.t_c", cp.t_c),
        ("n1.g0_c", cp.g0_c),
        ("n1.a2", sympy.sstr(data.a2)),
        ("n1.b", sympy.sstr(data.b)),
    ]
    sol = solve_A(p)
    for l in (2, 3, 4):
        _, cmp_ = asymptotics(sol, l, p)
        rows.append((f"n1.G{2 * l}c.p{p}.ratio", f"{cmp_.ratio:.6f}"))
    return rows


def _nm2_asymptotic_rows(cfg: RunConfig, p: int) -> list[tuple[str, object]]:
    import mpmath

    from .nm2 import asymptotic_check, find_singularities, gamma_table

    res = find_singularities(dps=cfg.precision, threads=cfg.threads)
    s = res.pair[0]
    report = asymptotic_check(gamma_table(p), s, [p])
    rel, env = report.at(p)
    fmt = lambda z: mpmath.nstr(z, 12)
    return [
        ("nm2.g_c", fmt(s.g_c)),
        ("nm2.g_c.conjugate", fmt(res.pair[1].g_c)),
        ("nm2.u_c", fmt(s.u_c)),
        ("nm2.cst", fmt(s.cst)),
        ("nm2.exponent", f"{s.exponent:.6f}"),
        ("nm2.growth_rate", f"{report.growth_rate:.6f}"),
        (f"nm2.p{p}.relative_error", f"{rel:.4f}"),
        (f"nm2.p{p}.envelope_error", f"{env:.4f}"),
    ]


def cmd_asymptotics(cfg: RunConfig, emit: Emitter) -> int:
    parts = cfg.only or ["n1", "nm2"]
    bad = set(parts) - {"n1", "nm2"}
    if bad:
        raise UsageError(f"--only for asymptotics accepts n1, nm2; got {sorted(bad)}")
    p = cfg.order or DEFAULT_TABLE_ORDER
    emit.columns(["quantity", "value"])
    if "n1" in parts:
        for k, v in _n1_asymptotic_rows(p):
            emit.row(k, v)
    if "nm2" in parts:
        for k, v in _nm2_asymptotic_rows(cfg, p):
            emit.row(k, v)
    return EXIT_OK


# -- verification -------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _first_divergence(table: str, column: str, expected: dict[int, int], got: dict[int, int]) -> str | None:
    for p in sorted(set(expected) | set(got)):
        if expected.get(p) != got.get(p):
            return f"{table} {column} p={p}: expected {expected.get(p)}, got {got.get(p)}"
    return None


def _verify_tab1(cfg: RunConfig) -> tuple[bool, str]:
    from .golden import LEGS, load_table
    from .n1 import connected, solve_A

    table = load_table("tab1", cfg.golden)
    sol = solve_A(DEFAULT_TABLE_ORDER)
    for col, values in table.columns.items():
        series = connected(LEGS[col] // 2, sol)
        got = {p: series.coefficient(p) for p in values}
        diff = _first_divergence("tab1", col, values, got)
        if diff:
            return False, diff
    return True, "G4c, G6c, G8c match for p = 1..32"


def _verify_tab2(cfg: RunConfig) -> tuple[bool, str]:
    from .golden import load_table
    from .nm2 import gamma_table

    values = load_table("tab2", cfg.golden).column("Gamma")
    got = dict(enumerate(gamma_table(max(values)), 1))
    diff = _first_divergence("tab2", "Gamma", values, {p: got[p] for p in values})
    return (False, diff) if diff else (True, "Gamma matches for p = 1..32")


def _verify_general(cfg: RunConfig) -> tuple[bool, str]:
    from .golden import load_table
    from .planar import PlanarModel
    from .renorm import general_table

    P = cfg.order or GENERAL_DEFAULT_ORDER
    sol = general_table(P, model=PlanarModel())
    checks = [
        ("tab1", "G4c", sol.specialize(1).combination(1, 2)),
        ("tab2", "Gamma", sol.specialize(-2).combination(1, -1)),
    ]
    for table, col, series in checks:
        expected = {p: v for p, v in load_table(table, cfg.golden).column(col).items() if p <= P}
        got = {p: _cell(series[p]) for p in expected}
        diff = _first_divergence(table, col, expected, got)
        if diff:
            return False, diff
    return True, f"general-n renormalization matches both tables through order {P}"


def _verify_asymptotics(cfg: RunConfig) -> tuple[bool, str]:
    import mpmath
    import sympy

    from .n1 import asymptotics, critical_point, solve_A
    from .nm2 import find_singularities

    cp = critical_point()
    if sympy.simplify(cp.g_c - (sympy.sqrt(21001) - 101) / 270) != 0:
        return False, f"n1 g_c = {cp.g_c}"
    if (cp.A_c, cp.t_c, cp.g0_c) != (3, sympy.Rational(4, 3), sympy.Rational(4, 27)):
        return False, f"n1 critical values {cp.A_c}, {cp.t_c}, {cp.g0_c}"
    sol = solve_A(DEFAULT_TABLE_ORDER)
    for l in (2, 3, 4):
        _, c = asymptotics(sol, l, DEFAULT_TABLE_ORDER)
        if abs(c.ratio - 1) > 0.10:
            return False, f"n1 asymptotics for {2 * l} legs off by {abs(c.ratio - 1):.1%}"
    s = find_singularities(dps=cfg.precision, threads=cfg.threads).pair[0]
    target_g = mpmath.mpc(-0.239, 0.135)
    target_c = mpmath.mpc(-0.237, -0.090)  # partner of the upper-half-plane g_c
    growth = 1 / abs(s.g_c)
    if abs(s.g_c.real - target_g.real) > 2e-3 or abs(s.g_c.imag - target_g.imag) > 2e-3:
        return False, f"nm2 g_c = {mpmath.nstr(s.g_c, 8)}"
    if abs(s.cst.real - target_c.real) > 5e-2 or abs(s.cst.imag - target_c.imag) > 5e-2:
        return False, f"nm2 cst = {mpmath.nstr(s.cst, 8)}"
    if abs(growth / 3.64 - 1) > 0.01:
        return False, f"nm2 growth rate {float(growth):.4f}"
    return True, (
        f"n1 g_c = {sympy.sstr(cp.g_c)}; nm2 g_c = {mpmath.nstr(s.g_c, 6)} "
        f"(conjugate pair), cst = {mpmath.nstr(s.cst, 4)}, 1/|g_c| = {float(growth):.4f}"
    )


VERIFIERS: dict[str, Callable[[RunConfig], tuple[bool, str]]] = {
    "tab1": _verify_tab1,
    "tab2": _verify_tab2,
    "general": _verify_general,
    "asymptotics": _verify_asymptotics,
}


def cmd_verify(cfg: RunConfig, emit: Emitter) -> int:
    parts = cfg.only or list(VERIFY_PARTS)
    bad = set(parts) - set(VERIFY_PARTS)
    if bad:
        raise UsageError(f"--only accepts {', '.join(VERIFY_PARTS)}; got {sorted(bad)}")
    emit.columns(["check", "status", "seconds", "detail"])
    ok_all = True
    for name in parts:
        start = time.perf_counter()
        try:
            ok, detail = VERIFIERS[name](cfg)
        except (OSError, ValueError, ArithmeticError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        ok_all &= ok
        emit.row(name, "pass" if ok else "FAIL", f"{time.perf_counter() - start:.2f}", detail)
    return EXIT_OK if ok_all else EXIT_FAIL


COMMANDS = {
    "n1": cmd_n1,
    "nm2": cmd_nm2,
    "general": cmd_general,
    "asymptotics": cmd_asymptotics,
    "verify": cmd_verify,
}


# -- argument parsing -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    from .nm2 import DEFAULT_DPS

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--precision", type=int, default=DEFAULT_DPS, help="decimal digits for numerics")
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(prog="tangles", description="Count prime alternating tangles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("n1", parents=[common], help="one-colour tangle counts")
    p.add_argument("--order", type=int, default=DEFAULT_TABLE_ORDER)
    p.add_argument("--legs", type=int, default=4)

    p = sub.add_parser("nm2", parents=[common], help="n = -2 tangle series")
    p.add_argument("--order", type=int, default=DEFAULT_TABLE_ORDER)

    p = sub.add_parser("general", parents=[common], help="general-n renormalization")
    p.add_argument("--order", type=int, default=GENERAL_DEFAULT_ORDER)
    p.add_argument("--n", default="formal", help="rational value or 'formal'")

    p = sub.add_parser("asymptotics", parents=[common], help="singularities and asymptotic constants")
    p.add_argument("--order", type=int, default=DEFAULT_TABLE_ORDER)
    p.add_argument("--only", action="append", choices=("n1", "nm2"))

    p = sub.add_parser("verify", parents=[common], help="compare against the shipped tables")
    p.add_argument("--order", type=int, default=None, help="order for the general-n cross-check")
    p.add_argument("--only", action="append", choices=VERIFY_PARTS)
    p.add_argument("--golden", default=None, help="directory with replacement golden files")
    return parser


def main(argv: list[str] | None = None) -> int:
    from .planar import BudgetError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = RunConfig(
        command=args.command,
        order=args.order,
        n=getattr(args, "n", None),
        legs=getattr(args, "legs", None),
        format=args.format,
        precision=args.precision,
        threads=args.threads,
        only=getattr(args, "only", None),
        golden=getattr(args, "golden", None),
    )
    print(json.dumps({"config": asdict(cfg)}), file=sys.stderr)
    try:
        if cfg.order is not None and cfg.order < 0:
            raise UsageError("--order must be >= 0")
        if cfg.threads < 1 or cfg.precision < 15:
            raise UsageError("--threads must be >= 1 and --precision >= 15")
        return COMMANDS[cfg.command](cfg, Emitter(cfg.format))
    except UsageError as exc:
        print(f"tangles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"tangles: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
