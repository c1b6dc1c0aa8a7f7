"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 numerical failure.

Orders are written as ``a+bi``, ``bi``, a bare real, or ``M@F`` (modulus
``M`` at argument ``F``, where ``F`` is an angle such as ``0.35pi``,
``7/20pi`` or ``1.2``).
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import re
import sys
from pathlib import Path

from .core import SheetPoint, canonicalize, macdonald_terms, zero_residual
from .errors import ContinuationStall, MacdonaldError
from .output import OutputRow, write_csv, write_json
from .replay import replay
from .solver import NuPath, find_critical_modulus, find_zero, trace_trajectory

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# value grammar


def parse_angle(text: str) -> float:
    s = text.strip().lower().replace(" ", "")
    scale = 1.0
    if s.endswith("pi"):
        s, scale = s[:-2], math.pi
        if s in ("", "+"):
            s = "1"
        elif s == "-":
            s = "-1"
        s = s.rstrip("*")
    try:
        if "/" in s:
            num, den = s.split("/")
            value = float(num) / float(den)
        else:
            value = float(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse angle {text!r}") from None
    return value * scale


def parse_nu(text: str) -> complex:
    s = text.strip().replace(" ", "")
    if "@" in s:
        mod, arg = s.split("@", 1)
        try:
            m = float(mod)
        except ValueError:
            raise UsageError(f"cannot parse modulus in {text!r}") from None
        return cmath.rect(m, parse_angle(arg))
    s = s.replace("i", "j")
    if re.fullmatch(r"[+-]?j", s):
        s = s.replace("j", "1j")
    s = re.sub(r"([+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse order {text!r}") from None


def parse_z(text: str) -> complex:
    if "," in text:
        parts = text.split(",")
        if len(parts) != 2:
            raise UsageError(f"expected 're,im', got {text!r}")
        try:
            return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise UsageError(f"cannot parse z {text!r}") from None
    return parse_nu(text)


def parse_w(text: str) -> SheetPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'rho,phi', got {text!r}")
    try:
        rho = float(parts[0])
    except ValueError:
        raise UsageError(f"cannot parse rho in {text!r}") from None
    return SheetPoint(rho, parse_angle(parts[1]))


def parse_range(text: str, conv) -> tuple:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"expected 'start:end', got {text!r}")
    return conv(parts[0]), conv(parts[1])


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse number {text!r}") from None


def _cfmt(v: complex) -> str:
    return f"{v.real:.12g} {'-' if v.imag < 0 else '+'} {abs(v.imag):.12g}i"


def _point(args) -> SheetPoint:
    if (args.z is None) == (args.w is None):
        raise UsageError("give exactly one of --z or --w")
    if args.w is not None:
        return parse_w(args.w)
    z = parse_z(args.z)
    if z == 0:
        raise UsageError("z must be nonzero")
    return SheetPoint.from_z(z, args.sheet)


def _report_canonical(nu: complex, enabled: bool) -> complex:
    if not enabled:
        return nu
    order = canonicalize(nu)
    if order.negate_applied or order.conj_applied:
        print(
            f"# canonical order {_cfmt(order.canonical_nu)} (applied: {order.describe()})",
            file=sys.stderr,
        )
    return nu


def _emit(rows, fmt: str, fh) -> None:
    if fmt == "json":
        write_json(rows, fh)
    else:
        write_csv(rows, fh)


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args) -> int:
    nu = parse_nu(args.nu)
    w = _point(args)
    nu = _report_canonical(nu, args.canonicalize)
    order = canonicalize(nu) if args.canonicalize else None
    if order is not None:
        wc = w.conjugate() if order.conj_applied else w
        t = macdonald_terms(order.canonical_nu, wc)
        k = t.prefactor * (t.minus_term - t.plus_term)
        if order.conj_applied:
            k = k.conjugate()
    else:
        t = macdonald_terms(nu, w)
        k = t.prefactor * (t.minus_term - t.plus_term)
    result = {
        "nu": [nu.real, nu.imag],
        "z": [w.z.real, w.z.imag],
        "rho": w.rho,
        "phi": w.phi,
        "sheet_index": w.sheet_index,
        "K": [k.real, k.imag],
        "series_minus": {"terms_used": t.minus_series.terms_used, "truncation_ok": t.minus_series.truncation_ok},
        "series_plus": {"terms_used": t.plus_series.terms_used, "truncation_ok": t.plus_series.truncation_ok},
    }
    if args.residual:
        res = zero_residual(nu, w)
        result["E"] = [res.value.real, res.value.imag]
        result["dE_dw"] = [res.derivative.real, res.derivative.imag]
    if args.format == "json":
        json.dump(result, sys.stdout, indent=1)
        print()
        return EXIT_OK
    print(f"nu = {_cfmt(nu)}")
    print(f"z = {_cfmt(w.z)}  (rho = {w.rho:.12g}, phi = {w.phi:.12g}, sheet {w.sheet_index})")
    print(f"K = {_cfmt(k)}")
    if args.residual:
        print(f"E = {_cfmt(res.value)}")
        print(f"dE/dw = {_cfmt(res.derivative)}")
    for name, s in (("S-", t.minus_series), ("S+", t.plus_series)):
        print(f"{name}: terms_used = {s.terms_used}, truncation_ok = {str(s.truncation_ok).lower()}")
    return EXIT_OK


def cmd_zero(args) -> int:
    nu = _report_canonical(parse_nu(args.nu), args.canonicalize)
    seed = None
    if args.seed is not None:
        seed = SheetPoint.from_z(parse_z(args.seed), args.sheet)
    elif args.seed_w is not None:
        seed = parse_w(args.seed_w)
    if seed is None and not args.canonicalize:
        order = canonicalize(nu)
        if order.negate_applied or order.conj_applied:
            raise UsageError("order outside the first quadrant needs --seed or --canonicalize")
    if args.max_step is not None and args.max_step <= 0:
        raise UsageError("--max-step must be positive")
    rec = find_zero(nu, args.label, seed=seed, max_step=args.max_step)
    _emit([OutputRow.from_record(rec)], args.format, sys.stdout)
    return EXIT_OK if rec.converged else EXIT_NUMERIC


def _build_path(args) -> NuPath:
    kw = {"detour_sign": args.detour_sign, "detour_epsilon": args.detour_epsilon}
    chosen = [x is not None for x in (args.fixed_arg, args.fixed_mod, args.segment)]
    if sum(chosen) != 1:
        raise UsageError("give exactly one of --fixed-arg, --fixed-mod, --segment")
    if args.fixed_arg is not None:
        if args.mod is None:
            raise UsageError("--fixed-arg needs --mod START:END")
        m0, m1 = parse_range(args.mod, _float)
        return NuPath.fixed_arg(parse_angle(args.fixed_arg), m0, m1, args.steps, **kw)
    if args.fixed_mod is not None:
        if args.arg is None:
            raise UsageError("--fixed-mod needs --arg START:END")
        a0, a1 = parse_range(args.arg, parse_angle)
        return NuPath.fixed_modulus(_float(args.fixed_mod), a0, a1, args.steps, **kw)
    n0, n1 = parse_range(args.segment, parse_nu)
    return NuPath.segment(n0, n1, args.steps, **kw)


def _out_path(base: Path, label: int, many: bool) -> Path:
    if not many:
        return base
    return base.with_name(f"{base.stem}_s{label}{base.suffix or '.csv'}")


def cmd_trajectory(args) -> int:
    try:
        path = _build_path(args)
    except ValueError as e:
        raise UsageError(str(e)) from None
    labels = args.label or [1]
    status = EXIT_OK
    for label in labels:
        try:
            traj = trace_trajectory(path, label)
            note = ""
        except ContinuationStall as e:
            traj = e.trajectory
            note = f"; STALLED: {e}"
            status = EXIT_NUMERIC
        rows = [OutputRow.from_record(r) for r in traj.records]
        if args.out is None:
            _emit(rows, args.format, sys.stdout)
        else:
            target = _out_path(Path(args.out), label, len(labels) > 1)
            with open(target, "w", encoding="utf-8", newline="") as fh:
                _emit(rows, args.format, fh)
        if traj.left_principal_at is not None:
            where = f"left the principal sheet at nu = {_cfmt(traj.left_principal_at)}"
        else:
            where = "did not leave the principal sheet"
        print(f"# label {label}: {len(rows)} rows; {where}{note}", file=sys.stderr)
    return status


def cmd_critical(args) -> int:
    lo, hi = (_float(x) for x in args.bracket.split(","))
    value = find_critical_modulus(
        parse_angle(args.arg_nu), args.label, (lo, hi), detour_sign=args.detour_sign
    )
    print(f"{value:.12g}")
    return EXIT_OK


def cmd_verify_table1(args) -> int:
    report = replay()
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_NUMERIC


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="macdonald", description="Zeros of the Macdonald function K_nu(z) of complex order.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def common(sp):
        sp.add_argument("--canonicalize", action=argparse.BooleanOptionalAction, default=True,
                        help="fold nu into the first quadrant and report the symmetry used")

    e = sub.add_parser("eval", help="evaluate K_nu(z)")
    e.add_argument("--nu", required=True)
    e.add_argument("--z", help="'re,im', 'a+bi' or a real")
    e.add_argument("--w", help="'rho,phi' (log-modulus, unbounded argument)")
    e.add_argument("--sheet", type=int, default=0, help="sheet to lift --z onto")
    e.add_argument("--residual", action="store_true", help="also print E_nu and dE/dw")
    e.add_argument("--format", choices=("text", "json"), default="text")
    common(e)
    e.set_defaults(func=cmd_eval)

    z = sub.add_parser("zero", help="locate one zero by Newton iteration")
    z.add_argument("--nu", required=True)
    z.add_argument("--label", type=int, default=1)
    z.add_argument("--seed", help="starting z as 're,im'")
    z.add_argument("--seed-w", help="starting point as 'rho,phi'")
    z.add_argument("--sheet", type=int, default=0, help="sheet to lift --seed onto")
    z.add_argument("--max-step", type=float, default=None, help="cap on |dw| per Newton step")
    z.add_argument("--format", choices=("csv", "json"), default="csv")
    common(z)
    z.set_defaults(func=cmd_zero)

    t = sub.add_parser("trajectory", help="follow zeros under continuation in nu")
    t.add_argument("--fixed-arg", help="angle of the ray, e.g. 7/20pi")
    t.add_argument("--mod", help="modulus range START:END for --fixed-arg")
    t.add_argument("--fixed-mod", help="modulus of the arc")
    t.add_argument("--arg", help="angle range START:END for --fixed-mod")
    t.add_argument("--segment", help="straight path NU0:NU1")
    t.add_argument("--steps", type=int, default=100)
    t.add_argument("--label", type=int, action="append", help="zero label (repeatable)")
    t.add_argument("--detour-sign", choices=("+", "-"), default="+")
    t.add_argument("--detour-epsilon", type=float, default=None)
    t.add_argument("--out", help="output file (per-label suffix added for several labels)")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    common(t)
    t.set_defaults(func=cmd_trajectory)

    c = sub.add_parser("critical", help="modulus at which a zero leaves the principal sheet")
    c.add_argument("--arg-nu", required=True)
    c.add_argument("--label", type=int, default=1)
    c.add_argument("--bracket", required=True, help="LO,HI in |nu|")
    c.add_argument("--detour-sign", choices=("+", "-"), default="+")
    common(c)
    c.set_defaults(func=cmd_critical)

    v = sub.add_parser("verify-table1", help="replay the published Newton runs at |nu| = 21")
    v.set_defaults(func=cmd_verify_table1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"macdonald: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MacdonaldError, OverflowError, ZeroDivisionError) as e:
        print(f"macdonald: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as e:
        print(f"macdonald: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
