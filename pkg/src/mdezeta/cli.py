"""Command-line front end.

    mdezeta zeta --s 0.5+14.1347i --digits 30
    mdezeta lerch --s 0.6-1e8i --lambda 0.7 --a 0.3 --digits 50
    mdezeta dirichlet --char data/chi7_5.txt --s 0.6+1e8i --digits 50
    mdezeta verify zeta --s 0.6+1e6i --digits 50

Values go to stdout, diagnostics to stderr.  Exit codes: 2 bad arguments,
3 domain error, 4 precision or budget failure, 1 failed verification.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .dirichlet import CharacterError, dirichlet_l, load_character
from .errors import BudgetExceeded, DomainError, MDEError, PrecisionError
from .lerch import LerchParams, hurwitz, lerch
from .mdequad import EvalResult, QuadOverrides, Rule
from .numkern import EvalContext, parse_complex
from .zeta_rs import zeta

log = logging.getLogger("mdezeta")

FUNCTIONS = ("zeta", "hurwitz", "lerch", "dirichlet")
EXIT_VERIFY, EXIT_PARSE, EXIT_DOMAIN, EXIT_PRECISION = 1, 2, 3, 4
VERIFY_H0 = 0.25
VERIFY_GAIN = 1.8
# rows within this fraction of the reference digits count as the floor
FLOOR_FRACTION = 0.9


@dataclass
class RunRequest:
    command: str
    s: str
    digits: int = 30
    lam: Optional[str] = None
    a: Optional[str] = None
    char: Optional[str] = None
    route: str = "siegel"
    overrides: QuadOverrides = field(default_factory=QuadOverrides)
    as_json: bool = False
    verify_function: Optional[str] = None
    verify_rows: int = 6

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.verify_rows < 2:
            raise ValueError("verify needs at least two rows")


@dataclass
class VerifyRow:
    h: float
    nodes: int
    log10_err: float


def evaluate(fn: str, req: RunRequest, ctx: EvalContext,
             overrides: Optional[QuadOverrides] = None) -> EvalResult:
    s = parse_complex(req.s, ctx)
    ov = overrides or req.overrides
    if fn == "zeta":
        return zeta(s, ctx, ov)
    if fn == "hurwitz":
        return hurwitz(s, _need(req.a, "--a", ctx), ctx, ov)
    if fn == "lerch":
        params = LerchParams(s, _need(req.lam, "--lambda", ctx), _need(req.a, "--a", ctx))
        return lerch(params, ctx, ov)
    if fn == "dirichlet":
        if not req.char:
            raise ValueError("--char is required")
        return dirichlet_l(s, load_character(req.char), ctx, req.route, ov)
    raise ValueError(f"unknown function {fn!r}")


def _need(text, flag, ctx):
    if text is None:
        raise ValueError(f"{flag} is required")
    return ctx.mp.mpf(text)


def format_component(x, digits: int, ctx: EvalContext) -> str:
    mp = ctx.mp
    return mp.nstr(x, digits, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)


def format_value(value, digits: int, ctx: EvalContext) -> tuple[str, str]:
    """Each part to ``digits`` significant digits; parts below the noise are 0."""
    mp = ctx.mp
    scale = abs(value)
    floor = scale * mp.mpf(10) ** (-digits - 1)
    re_v = value.real if abs(value.real) > floor else mp.mpf(0)
    im_v = value.imag if abs(value.imag) > floor else mp.mpf(0)
    return format_component(re_v, digits, ctx), format_component(im_v, digits, ctx)


def emit(res: EvalResult, req: RunRequest, ctx: EvalContext, ms: float, out=None) -> None:
    out = out or sys.stdout
    re_s, im_s = format_value(res.value, req.digits, ctx)
    err = ctx.mp.nstr(res.err_estimate, 3) if res.err_estimate is not None else "nan"
    if req.as_json:
        payload = {"re": re_s, "im": im_s, "digits": req.digits, "err_estimate": err,
                   "n_main": res.n_main, "n_nodes": res.n_nodes, "ms": round(ms, 3)}
        print(json.dumps(payload), file=out)
    else:
        if ctx.mp.mpf(im_s) == 0:
            print(re_s, file=out)
        else:
            sign = "-" if im_s.startswith("-") else "+"
            print(f"{re_s} {sign} {im_s.lstrip('-')}i", file=out)
    route = res.diagnostics.get("route", "")
    print(f"route={route} N={res.n_main} nodes={res.n_nodes} err~{err} ms={ms:.1f}",
          file=sys.stderr)


def run(req: RunRequest, out=None) -> int:
    ctx = EvalContext(req.digits)
    start = time.perf_counter()
    res = evaluate(req.command, req, ctx)
    ms = (time.perf_counter() - start) * 1000
    emit(res, req, ctx, ms, out)
    return 0


def verify_rows(req: RunRequest) -> tuple[list, float]:
    """Reference at twice the digits, then rows at h0, h0/2, ... with q_cut fixed."""
    fn = req.verify_function
    ctx = EvalContext(2 * req.digits)
    ref = evaluate(fn, req, ctx, QuadOverrides(alpha=req.overrides.alpha,
                                               center=req.overrides.center))
    q_cut = req.overrides.q_cut or ref.diagnostics.get("q_cut")
    if q_cut is None:
        raise DomainError(f"verify needs a quadrature route; got {ref.diagnostics.get('route')}")
    h0 = req.overrides.h or VERIFY_H0
    steps = math.ceil(q_cut / h0 - 1e-9)
    rows = []
    for j in range(req.verify_rows):
        h = q_cut / (steps * 2**j)
        ov = QuadOverrides(alpha=req.overrides.alpha, h=h, q_cut=q_cut,
                           num_sing=req.overrides.num_sing, rule=req.overrides.rule,
                           center=req.overrides.center)
        res = evaluate(fn, req, ctx, ov)
        diff = abs(res.value - ref.value)
        lg = float(ctx.mp.log10(diff)) if diff else -float(ctx.working_digits)
        rows.append(VerifyRow(h, res.n_nodes, lg))
    return rows, FLOOR_FRACTION * 2 * req.digits


def judge(rows: list, floor_digits: float) -> tuple[bool, str]:
    """Each halving must gain >= 1.8x digits until the floor is reached."""
    digits = [-r.log10_err for r in rows]
    if digits[0] >= floor_digits:
        return False, "first row already at the floor; start from a larger h"
    for j in range(len(digits) - 1):
        d, nxt = digits[j], digits[j + 1]
        if d >= floor_digits:
            break
        if nxt < min(VERIFY_GAIN * d, floor_digits):
            return False, f"row {j + 1}: {nxt:.1f} digits after {d:.1f}"
    if digits[-1] < floor_digits:
        return True, "no floor reached within the rows"
    return True, "ok"


def verify(req: RunRequest, out=None) -> int:
    out = out or sys.stdout
    rows, floor_digits = verify_rows(req)
    if req.as_json:
        print(json.dumps([{"h": r.h, "m": r.nodes, "log10_err": round(r.log10_err, 3)}
                          for r in rows]), file=out)
    else:
        print(f"{'h':>12} {'m':>7} {'log10 err':>10}", file=out)
        for r in rows:
            print(f"{r.h:12.6g} {r.nodes:7d} {r.log10_err:10.2f}", file=out)
    ok, why = judge(rows, floor_digits)
    print(f"verify: {'pass' if ok else 'FAIL'} ({why})", file=sys.stderr)
    return 0 if ok else EXIT_VERIFY


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s", required=True, help="complex argument, e.g. 0.6-1e8i")
    p.add_argument("--digits", type=int, default=30)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--a")
    p.add_argument("--char", help="character file (m=..., values=...)")
    p.add_argument("--route", choices=("siegel", "hurwitz"), default="siegel")
    p.add_argument("--alpha", type=float)
    p.add_argument("--h", type=float)
    p.add_argument("--qcut", type=float)
    p.add_argument("--num-sing", type=int)
    p.add_argument("--rule", choices=[r.value for r in Rule])
    p.add_argument("--center", choices=("saddle", "halfinteger"), default="saddle")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify-rows", type=int, default=6)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdezeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for fn in FUNCTIONS:
        _add_common(sub.add_parser(fn))
    vp = sub.add_parser("verify", help="h-halving convergence table")
    vp.add_argument("function", choices=FUNCTIONS)
    _add_common(vp)
    return parser


def request_from_args(ns: argparse.Namespace) -> RunRequest:
    ov = QuadOverrides(alpha=ns.alpha, h=ns.h, q_cut=ns.qcut, num_sing=ns.num_sing,
                       rule=Rule(ns.rule) if ns.rule else None, center=ns.center)
    return RunRequest(command=ns.command, s=ns.s, digits=ns.digits, lam=ns.lam, a=ns.a,
                      char=ns.char, route=ns.route, overrides=ov, as_json=ns.json,
                      verify_function=getattr(ns, "function", None),
                      verify_rows=ns.verify_rows)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        req = request_from_args(ns)
        EvalContext(req.digits)
        parse_complex(req.s, EvalContext(15))
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"mdezeta: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if req.command == "verify":
            return verify(req)
        return run(req)
    except (CharacterError, DomainError) as exc:
        print(f"mdezeta: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (PrecisionError, BudgetExceeded) as exc:
        print(f"mdezeta: precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except OSError as exc:
        print(f"mdezeta: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"mdezeta: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MDEError as exc:
        print(f"mdezeta: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
