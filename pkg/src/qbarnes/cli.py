"""Command-line front end: ``qbarnes {eval,verify,sweep,poles}``.

Exit codes: 0 success, 1 a verify check failed, 2 the point is a pole,
64 the command line could not be parsed, 65 the point lies outside the
domain of the chosen evaluator.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import re
import sys
from typing import Sequence

from ._core import PoleError, QBarnesError, TruncationPolicy
from .classical import EMConfig, barnes_zeta, hurwitz_em
from .limits import DEFAULT_Q_GRID, SweepSpec, dterm_limit_check, limit_sweep
from .qgamma import QGammaContext, gamma_q_euler, log_qgamma
from .qzeta import (
    ContinuationParams,
    qzeta1_em,
    qzeta_binomial_ac,
    qzeta_direct,
    qzeta_ladder,
    qzeta_nu,
    qzeta_nu_real_poles,
    qzeta_qbinom,
    qzeta_reduce,
    qzeta_special_value,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_POLE = 2
EXIT_USAGE = 64
EXIT_DOMAIN = 65

FUNCTIONS = ("hurwitz", "barnes", "qzeta", "qzeta-nu", "qgamma", "gamma-q", "special-value")
ROUTES = ("auto", "direct", "qbinom", "reduce", "binomial-ac", "em", "ladder")

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_re>{_NUM})|(?P<only_im>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)$"
)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi`` or ``a+bi`` (``i`` alone means 1i); '.' is always the decimal point."""
    m = _COMPLEX_RE.match(text.strip().replace(" ", ""))
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r} (use a, bi or a+bi)")

    def coef(part: str) -> float:
        return float(part + "1") if part in ("", "+", "-") else float(part)

    if m.group("only_re") is not None:
        return complex(float(m.group("only_re")), 0.0)
    if m.group("only_im") is not None:
        return complex(0.0, coef(m.group("only_im")))
    return complex(float(m.group("re")), coef(m.group("im")))


def parse_q(text: str) -> float:
    try:
        q = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be a real number, got {text!r}") from None
    if not 0.0 < q < 1.0:
        raise argparse.ArgumentTypeError(f"q must lie in (0, 1), got {text}")
    return q


def parse_r(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be an integer, got {text!r}") from None
    if r < 1:
        raise argparse.ArgumentTypeError(f"r must be >= 1, got {r}")
    return r


def parse_weights(text: str) -> tuple[float, ...]:
    try:
        w = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be a comma list of reals, got {text!r}") from None
    if any(not (x > 0.0) or not math.isfinite(x) for x in w):
        raise argparse.ArgumentTypeError(f"weights must be positive, got {text}")
    return w


def parse_grid(text: str) -> tuple[float, ...]:
    return tuple(parse_q(x) for x in text.split(","))


def parse_rule(text: str) -> tuple[complex, complex]:
    """Affine t-rule ``a*s + b`` written as e.g. ``s-0.5``, ``2s-1`` or ``0.5*s+1``."""
    m = re.fullmatch(r"\s*([+-]?[\d.eE+-]*?)\s*\*?\s*s\s*(?:([+-])\s*([\d.eE+-]+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"rule must look like 'a*s+b', got {text!r}")
    a_txt, sign, b_txt = m.groups()
    try:
        a = float(a_txt + "1") if a_txt in ("", "+", "-") else float(a_txt)
        b = float(sign + b_txt) if sign else 0.0
    except ValueError:
        raise argparse.ArgumentTypeError(f"rule must look like 'a*s+b', got {text!r}") from None
    return complex(a), complex(b)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def fmt(x: float) -> str:
    # 17 significant digits round-trip every double
    return "nan" if x != x else format(x, ".17g")


def _json_value(v) -> str:
    if isinstance(v, float):
        return "null" if not math.isfinite(v) else fmt(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return json.dumps(v)
    return json.dumps(str(v))


def json_line(record: dict) -> str:
    return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in record.items()) + "}"


def emit(records: list[dict], form: str, out) -> None:
    if not records:
        return
    if form == "json":
        for rec in records:
            out.write(json_line(rec) + "\n")
        return
    fields = list(dict.fromkeys(k for rec in records for k in rec))
    rows = [{k: (fmt(v) if isinstance(v, float) else ("" if v is None else v)) for k, v in rec.items()} for rec in records]
    if form == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    widths = {k: max(len(k), *(len(str(r.get(k, ""))) for r in rows)) for k in fields}
    out.write("  ".join(k.ljust(widths[k]) for k in fields).rstrip() + "\n")
    for r in rows:
        out.write("  ".join(str(r.get(k, "")).ljust(widths[k]) for k in fields).rstrip() + "\n")


def _policy(args) -> TruncationPolicy:
    over = {}
    if args.max_terms is not None:
        over["max_terms"] = args.max_terms
    if args.tol is not None:
        over["tol"] = args.tol
    return TruncationPolicy.from_env(**over)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.function} needs --{' --'.join(m.replace('_', '-') for m in missing)}")


def _omega(args):
    if args.omega is None:
        return None
    r = args.r if args.r is not None else 1
    if len(args.omega) != r:
        raise UsageError(f"expected {r} weights, got {len(args.omega)}")
    return args.omega


def _depth(M: int | None, default: int) -> int:
    return default if M is None else M


def evaluate(args) -> tuple[complex, float, str]:
    f = args.function
    pol = _policy(args)
    if f == "hurwitz":
        _need(args, "s", "z")
        res = hurwitz_em(args.s, args.z, EMConfig(M=_depth(args.M, 8), policy=pol))
        return res.value, res.error, res.method
    if f == "barnes":
        _need(args, "r", "s", "z")
        res = barnes_zeta(args.r, args.s, args.z, EMConfig(M=_depth(args.M, 8), policy=pol))
        return res.value, res.error, res.method
    if f == "qzeta":
        _need(args, "r", "q", "s", "t", "z")
        om = _omega(args)
        route = args.route
        if route == "auto":
            route = "ladder" if args.z.real <= 0 and om is None else "binomial-ac"
        if route in ("qbinom", "reduce", "ladder") and om is not None:
            raise UsageError(f"route {route} supports unit weights only")
        if route == "em" and args.r != 1:
            raise UsageError("route em is the depth-one evaluator; use --r 1")
        calls = {
            "direct": lambda: qzeta_direct(args.r, args.q, args.s, args.t, args.z, om, pol),
            "qbinom": lambda: qzeta_qbinom(args.r, args.q, args.s, args.t, args.z, pol),
            "reduce": lambda: qzeta_reduce(args.r, args.q, args.s, args.t, args.z, policy=pol),
            "binomial-ac": lambda: qzeta_binomial_ac(args.r, args.q, args.s, args.t, args.z, om, pol),
            "em": lambda: qzeta1_em(
                args.q, args.s, args.t, args.z, ContinuationParams(args.N, _depth(args.M, 4), args.n_max, pol)
            ),
            "ladder": lambda: qzeta_ladder(args.r, args.q, args.s, args.t, args.z, pol),
        }
        res = calls[route]()
        return res.value, res.error, res.method
    if f == "qzeta-nu":
        _need(args, "r", "q", "s", "z")
        res = qzeta_nu(args.r, args.q, args.s, args.z, args.nu, _omega(args), pol)
        return res.value, res.error, res.method
    if f == "special-value":
        _need(args, "r", "q", "m", "z")
        v = qzeta_special_value(args.r, args.q, args.m, args.z, args.nu, _omega(args))
        return v, 0.0, "closed-form"
    if f == "qgamma":
        _need(args, "q", "z")
        ctx = QGammaContext(args.q)
        lg = log_qgamma(ctx, args.z)
        if lg.real > 709.0:
            # report the logarithm rather than overflow
            return lg, 0.0, "log-value"
        return cmath.exp(lg), 0.0, "zeta-regularised"
    if f == "gamma-q":
        _need(args, "q", "z")
        return gamma_q_euler(args.q, args.z), 0.0, "series"
    raise UsageError(f"unknown function {f!r}")


def cmd_eval(args, out) -> int:
    value, err, method = evaluate(args)
    emit(
        [{"function": args.function, "value_re": value.real, "value_im": value.imag, "error": float(err), "method": method}],
        args.format,
        out,
    )
    return EXIT_OK


def cmd_verify(args, out) -> int:
    checks = run_suite(args.suite, seed=args.seed, N=args.N, q=args.q)
    records = [
        {
            "suite": c.suite,
            "name": c.name,
            "passed": "pass" if c.passed else "fail",
            "residual": c.residual,
            "tol": c.tol,
        }
        for c in checks
    ]
    emit(records, args.format, out)
    bad = [c for c in checks if not c.passed]
    if bad:
        c = bad[0]
        inputs = ", ".join(f"{k}={v}" for k, v in c.inputs.items())
        sys.stderr.write(f"FAIL {c.suite}/{c.name}: residual {fmt(c.residual)} > {fmt(c.tol)} at {inputs}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    grid = args.q_grid or DEFAULT_Q_GRID
    if args.dterms:
        if args.s is None or args.z is None:
            raise UsageError("sweep --dterms needs --s and --z")
        kw = {"q_grid": args.q_grid} if args.q_grid else {}
        rows, (l1, l2, l3) = dterm_limit_check(args.s, args.t, args.z, args.N, _depth(args.M, 4), **kw)
        records = [
            {"q": r.q, "d1_gap": r.gap1, "d2_gap": r.gap2, "d3_gap": r.gap3,
             "d1_re": r.d1.real, "d1_im": r.d1.imag, "d2_re": r.d2.real, "d2_im": r.d2.imag,
             "d3_re": r.d3_residual.real, "d3_im": r.d3_residual.imag}
            for r in rows
        ]
        emit(records, args.format, out)
        return EXIT_OK
    if args.r is None or args.s is None:
        raise UsageError("sweep needs --r and --s")
    spec = SweepSpec(
        r=args.r,
        s=args.s,
        z=args.z if args.z is not None else 1.0,
        nu=args.nu,
        rule=args.phi,
        omega=_omega(args),
        q_grid=grid,
        tol=args.sweep_tol,
    )
    rep = limit_sweep(spec)
    nan = float("nan")
    records = []
    for row in rep.rows:
        v = row.value if row.value is not None else complex(nan, nan)
        t = row.target if row.target is not None else complex(nan, nan)
        records.append(
            {"kind": "point", "q": row.q, "value_re": v.real, "value_im": v.imag, "target_re": t.real,
             "target_im": t.imag, "gap": row.gap if row.gap is not None else nan,
             "pole": "yes" if row.note.startswith("pole") else "no", "classification": "", "slope": None}
        )
    records.append(
        {"kind": "summary", "q": None, "value_re": None, "value_im": None, "target_re": None,
         "target_im": None, "gap": rep.final_gap if rep.final_gap is not None else nan, "pole": None,
         "classification": rep.classification, "slope": rep.slope if rep.slope is not None else nan}
    )
    emit(records, args.format, out)
    return EXIT_OK


def cmd_poles(args, out) -> int:
    om = _omega(args)
    lo, hi = args.s_range
    poles = qzeta_nu_real_poles(args.r, args.q, args.nu, om, (lo, hi), args.z if args.z is not None else 0.7)
    weights = om or (1.0,) * args.r
    lq = math.log(args.q)
    records = [{"s": float(p), "kind": "real-axis pole"} for p in poles]
    records += [
        {"s": None, "kind": f"lattice spacing delta_{j} = {fmt(2 * math.pi / (w * abs(lq)))}i"}
        for j, w in enumerate(weights, 1)
    ]
    emit(records, args.format, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qbarnes", description="Barnes multiple zeta functions, their q-analogues and the q-gamma function.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
        sp.add_argument("--r", type=parse_r)
        sp.add_argument("--q", type=parse_q)
        sp.add_argument("--s", type=parse_complex)
        sp.add_argument("--t", type=parse_complex)
        sp.add_argument("--z", type=parse_complex)
        sp.add_argument("--nu", type=int, default=1)
        sp.add_argument("--omega", type=parse_weights, help="comma-separated positive weights")
        sp.add_argument("--N", type=int, default=1)
        sp.add_argument("--M", type=int, help="Euler-Maclaurin depth (default 8 classical, 4 q-side)")
        sp.add_argument("--max-terms", type=int, help="series cap (also QBARNES_MAX_TERMS)")
        sp.add_argument("--tol", type=float, help="relative truncation target")

    e = sub.add_parser("eval", help="evaluate one function at one point")
    e.add_argument("function", choices=FUNCTIONS)
    common(e)
    e.add_argument("--m", type=int, help="nonpositive integer point s = -m (special-value)")
    e.add_argument("--route", choices=ROUTES, default="auto")
    e.add_argument("--n-max", type=int, default=50)

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    v.add_argument("--seed", type=int)
    v.add_argument("--N", type=int)
    v.add_argument("--q", type=parse_q)
    v.add_argument("--format", choices=("text", "csv", "json"), default="text")

    s = sub.add_parser("sweep", help="q -> 1 limit sweep or D-term table")
    common(s)
    s.add_argument("--phi", type=parse_rule, help="affine t-rule such as 's-0.5' or '2s-1' (default s-nu)")
    s.add_argument("--q-grid", type=parse_grid, help="comma-separated increasing q values")
    s.add_argument("--sweep-tol", type=float, default=1e-3)
    s.add_argument("--dterms", action="store_true", help="tabulate D-terms against their limits (r = 1)")

    pl = sub.add_parser("poles", help="real-axis poles of zeta^(nu)_(q,r)")
    common(pl)
    pl.add_argument("--s-range", type=int, nargs=2, default=(-6, 8), metavar=("LO", "HI"))
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "poles" and (args.r is None or args.q is None):
            raise UsageError("poles needs --r and --q")
        handler = {"eval": cmd_eval, "verify": cmd_verify, "sweep": cmd_sweep, "poles": cmd_poles}[args.command]
        return handler(args, out)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except PoleError as exc:
        sys.stderr.write(f"pole: {exc}\n")
        return EXIT_POLE
    except QBarnesError as exc:
        sys.stderr.write(f"domain error ({type(exc).__name__}): {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
