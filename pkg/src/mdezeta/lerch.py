"""Lerch zeta ``L(s, lam, a) = sum_n e^{2 pi i lam n} (n+a)^{-s}`` for Im s <= 0.

The value splits into three line integrals.  ``H0`` runs south-east through
the saddle ``w0`` of ``e^{-i pi w^2 + 2 pi i w (a+lam)} w^{-s}``; ``H1`` and
``H2`` are the two arms of a Hankel loop around the ray ``arg w = pi/4``,
passing through the saddles ``w_minus`` and ``w_plus``.  Moving each line to
its saddle sweeps across poles, which become the finite main sums.  Upper
half-plane arguments are reduced by conjugation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from . import oracle
from .errors import DomainError, PoleError
from .mdequad import EvalResult, QuadOverrides, QuadPlan, corrected_line_sum
from .numkern import EvalContext, cpow, ln_gamma
from .zeta_rs import choose_alpha, plan_digits, saddle_plan

# distance kept between a line crossing and the branch point at 0
BRANCH_MARGIN = 0.25
# least |Im x| for the image of the branch point; the error is ~exp(-2 pi Im x / h)
BRANCH_IMAG = 0.5


@dataclass(frozen=True)
class LerchParams:
    s: object
    lam: object
    a: object

    def __post_init__(self):
        lam, a = float(self.lam), float(self.a)
        if not 0 <= lam < 1:
            raise DomainError("lambda must lie in [0, 1)")
        if not 0 < a <= 1:
            raise DomainError("a must lie in (0, 1]")


@dataclass(frozen=True)
class Part:
    """One oriented line: main-sum terms plus the corrected residual integral."""

    plan: QuadPlan
    integrand: Callable
    main: list  # (pole location, main-sum term) swept across
    poles: list  # (pole location, residue of the x-integrand) near the line
    crossing: float


@dataclass(frozen=True)
class LerchFrame:
    w0: object
    w_minus: object
    w_plus: object
    n0: int
    n1: int
    n2: int
    P0: object
    p: object
    q: object
    r: object
    parts: tuple


def _crossing(w, direction_sign: int) -> float:
    # line w + u(1 + i*direction_sign) meets the real axis at Re w - sign*Im w
    return float(w.real - direction_sign * w.imag)


def _place(crossing: float, lo: float, hi: float, branch_lo: bool, branch_hi: bool):
    """Return None if the crossing may stay at the saddle, else a real center."""
    width = hi - lo
    margin = min(BRANCH_MARGIN, width / 4)
    lo_ok = crossing > lo + (margin if branch_lo else 0)
    hi_ok = crossing < hi - (margin if branch_hi else 0)
    if lo_ok and hi_ok:
        return None
    return (lo + hi) / 2


def _angle_log(w, mp):
    """log w with arg w taken in (-7 pi/4, pi/4]."""
    th = mp.arg(w)
    if th > mp.pi / 4:
        th -= 2 * mp.pi
    return mp.mpc(mp.log(abs(w)), th)


def _prefactors(s, lam, a, ctx: EvalContext):
    mp = ctx.mp
    ipi = 1j * mp.pi
    base = ln_gamma(1 - s, ctx) - (1 - s) * mp.log(2 * mp.pi)
    P0 = mp.exp(-ipi * a * (1 + a + 2 * lam))
    q = mp.exp(ipi / 2 + ipi * lam * (lam + 1) + ipi * s / 2 + base)
    p = mp.exp(ipi * (1 - s) / 2 - 2 * ipi * a * lam + base)
    r = mp.exp(-ipi * (1 - s) / 2 - 2 * ipi * a * lam + base)
    return P0, p, q, r


def lerch_frame(params: LerchParams, ctx: EvalContext,
                overrides: Optional[QuadOverrides] = None) -> LerchFrame:
    mp = ctx.mp
    overrides = overrides or QuadOverrides()
    s = mp.mpc(params.s)
    lam, a = mp.mpf(params.lam), mp.mpf(params.a)
    if s.imag > 0:
        raise ValueError("lerch_frame expects Im s <= 0")
    if s.imag == 0 and s.real == int(s.real) and s.real >= 1:
        raise PoleError("Gamma(1-s) is singular at positive integers")
    ipi = 1j * mp.pi
    two_pi_i = 2 * ipi
    c = (a + lam) / 2
    w0 = c + mp.sqrt(c * c - s / two_pi_i)
    root = mp.sqrt(c * c - (s - 1) / two_pi_i)
    w_minus, w_plus = -c - root, -c + root
    P0, p, q, r = _prefactors(s, lam, a, ctx)
    alpha = overrides.alpha or choose_alpha(float(s.imag))
    digits = plan_digits(ctx)
    eps = mp.expjpi(mp.mpf(1) / 4)
    af, lf = float(a), float(lam)
    span = (overrides.num_sing if overrides.num_sing is not None else 1) + 2

    def plan_for(saddle, center, direction, lo, hi):
        point = saddle if center is None else mp.mpc(center)
        plan = saddle_plan(digits, alpha, point, saddle, overrides, ctx, direction)
        if abs(plan.locate(0, ctx).imag) >= BRANCH_IMAG:
            return plan
        # branch point too close in x: recentre mid-interval, shrink alpha to match
        mid = (lo + hi) / 2
        alpha_p = alpha if overrides.alpha else min(alpha, abs(mid))
        return saddle_plan(digits, alpha_p, mp.mpc(mid), saddle, overrides, ctx, direction)

    # H0: poles at a+k, k >= 0; original crossing in (0, a)
    x0 = _crossing(w0, -1)
    swept0 = max(0, math.floor(x0 - af) + 1)
    lo0 = af + swept0 - 1 if swept0 else 0.0
    hi0 = af + swept0
    center = _place(x0, lo0, hi0, swept0 == 0, False)
    if overrides.center == "halfinteger":
        center = (lo0 + hi0) / 2
    plan0 = plan_for(w0, center, 1 / eps, lo0, hi0)

    def term0(k):
        return mp.expj(2 * mp.pi * lam * k) * cpow(k + a, -s, ctx)

    def g0(w):
        num = mp.exp(-ipi * w * w + two_pi_i * w * (a + lam) - s * mp.log(w))
        return num / (mp.exp(ipi * w - two_pi_i * a) - mp.exp(-ipi * w))

    def f0(x):
        return P0 * g0(plan0.z_of_x(x, ctx)) * plan0.dz_dx(x, ctx)

    main0 = [(a + k, term0(k)) for k in range(swept0)]
    near0 = range(max(0, swept0 - span), swept0 + span)
    poles0 = [(a + k, term0(k) / two_pi_i) for k in near0]
    h0 = Part(plan0, f0, main0, poles0, x0)

    def g1(w):
        num = mp.exp(ipi * w * w + two_pi_i * w * (a + lam) + (s - 1) * _angle_log(w, mp))
        return num / (mp.exp(ipi * w + two_pi_i * lam) - mp.exp(-ipi * w))

    # H1: poles at -(k+lam); k >= 1 when lam = 0 (w=0 is the branch point)
    k1 = 0 if lf > 0 else 1
    x1 = _crossing(w_minus, 1)
    passed1 = [k for k in range(k1, k1 + int(max(0, -x1)) + 2) if -(k + lf) > x1]
    n1 = len(passed1)
    lo1 = -(k1 + n1 + lf)
    hi1 = -(k1 + n1 - 1 + lf) if n1 else 0.0
    center = _place(x1, lo1, hi1, False, n1 == 0)
    if overrides.center == "halfinteger":
        center = (lo1 + hi1) / 2
    plan1 = plan_for(w_minus, center, eps, lo1, hi1)

    def term1(k):
        return p * mp.expj(-2 * mp.pi * a * k) * cpow(k + lam, s - 1, ctx)

    def f1(x):
        # the arm runs south-west; the map runs north-east
        return -q * g1(plan1.z_of_x(x, ctx)) * plan1.dz_dx(x, ctx)

    main1 = [(-(k + lam), term1(k)) for k in passed1]
    near1 = range(max(k1, k1 + n1 - span), k1 + n1 + span)
    poles1 = [(-(k + lam), term1(k) / two_pi_i) for k in near1]
    h1 = Part(plan1, f1, main1, poles1, x1)

    # H2: poles at k - lam, k >= 1; original crossing in (0, 1-lam)
    x2 = _crossing(w_plus, 1)
    n2 = max(0, math.floor(x2 + lf))
    lo2 = n2 - lf if n2 else 0.0
    hi2 = n2 + 1 - lf
    center = _place(x2, lo2, hi2, n2 == 0, False)
    if overrides.center == "halfinteger":
        center = (lo2 + hi2) / 2
    plan2 = plan_for(w_plus, center, eps, lo2, hi2)

    def term2(k):
        return r * mp.expj(2 * mp.pi * a * k) * cpow(k - lam, s - 1, ctx)

    def f2(x):
        return q * g1(plan2.z_of_x(x, ctx)) * plan2.dz_dx(x, ctx)

    main2 = [(k - lam, term2(k)) for k in range(1, n2 + 1)]
    near2 = range(max(1, n2 + 1 - span), n2 + 1 + span)
    poles2 = [(k - lam, -term2(k) / two_pi_i) for k in near2]
    h2 = Part(plan2, f2, main2, poles2, x2)

    return LerchFrame(w0, w_minus, w_plus, swept0 - 1, n1, n2, P0, p, q, r, (h0, h1, h2))


def _evaluate(part: Part, ctx: EvalContext):
    mp = ctx.mp
    total = mp.mpc(0)
    for _, term in part.main:
        total += term
    line = corrected_line_sum(part.integrand, part.plan, part.poles, ctx)
    return total + line.value, line


def part_h0(params: LerchParams, frame: LerchFrame, ctx: EvalContext):
    return _evaluate(frame.parts[0], ctx)[0]


def part_h1(params: LerchParams, frame: LerchFrame, ctx: EvalContext):
    return _evaluate(frame.parts[1], ctx)[0]


def part_h2(params: LerchParams, frame: LerchFrame, ctx: EvalContext):
    return _evaluate(frame.parts[2], ctx)[0]


def _inner(ctx: EvalContext, s) -> EvalContext:
    extra = int(math.log10(1 + abs(float(s.imag))))
    # near s = 1, 2, ... Gamma(1-s) blows up and the two Hankel arms cancel,
    # so the arms themselves need that many more correct digits
    k = max(1, round(float(s.real)))
    dist = float(abs(s - k))
    lost = math.ceil(-math.log10(dist)) if 0 < dist < 1 else 0
    return EvalContext(ctx.target_digits + lost, ctx.guard_digits + extra)


def _contour(params: LerchParams, ctx: EvalContext, overrides) -> EvalResult:
    mp = ctx.mp
    frame = lerch_frame(params, ctx, overrides)
    value = mp.mpc(0)
    err = 0
    nodes = 0
    early = False
    q_cut = 0.0
    for part in frame.parts:
        v, line = _evaluate(part, ctx)
        q_cut = max(q_cut, line.diagnostics["q_cut"])
        value += v
        err += line.err_estimate
        nodes += line.n_nodes
        early = early or line.diagnostics.get("truncated_early", False)
    diag = {"route": "contour", "n0": frame.n0, "n1": frame.n1, "n2": frame.n2,
            "alpha": frame.parts[0].plan.alpha, "h": frame.parts[0].plan.h,
            "q_cut": q_cut,
            "truncated_early": early}
    return EvalResult(value, err, frame.n0 + 1, nodes, diag)


def _series(params: LerchParams, ctx: EvalContext) -> EvalResult:
    val = oracle.direct_series(
        "lerch", {"s": params.s, "lam": params.lam, "a": params.a},
        oracle.OracleBudget(digits=ctx.target_digits + 5), ctx)
    return EvalResult(val, ctx.mp.mpf(10) ** (-ctx.target_digits - 5), 0, 0, {"route": "series"})


def lerch(params: LerchParams, ctx: EvalContext, overrides: Optional[QuadOverrides] = None,
          method: str = "auto") -> EvalResult:
    """Lerch zeta to ``ctx.target_digits`` digits.

    ``method='contour'`` skips the series shortcut used for small ``|t|`` with
    ``Re s > 1.5`` and at positive integers.
    """
    mp = ctx.mp
    s = mp.mpc(params.s)
    lam = mp.mpf(params.lam)
    if s.imag > 0:
        lam_c = 1 - lam if lam > 0 else lam
        res = lerch(LerchParams(mp.conj(s), lam_c, params.a), ctx, overrides, method)
        return replace(res, value=mp.conj(res.value))
    if s == 1 and lam == 0:
        raise PoleError("Hurwitz zeta has a pole at s=1")
    inner = _inner(ctx, s)
    p_in = LerchParams(inner.mp.mpc(s), inner.mp.mpf(params.lam), inner.mp.mpf(params.a))
    integer = s.imag == 0 and s.real == int(s.real) and s.real >= 1
    small = abs(s.imag) < 2 * math.pi and s.real > 1.5
    if integer or (method == "auto" and small):
        res = _series(p_in, inner)
    else:
        res = _contour(p_in, inner, overrides or QuadOverrides())
    return replace(res, value=mp.mpc(res.value))


def hurwitz(s, a, ctx: EvalContext, overrides: Optional[QuadOverrides] = None,
            method: str = "auto") -> EvalResult:
    """Hurwitz zeta ``sum_n (n+a)^{-s}`` as the ``lam = 0`` case."""
    if ctx.mp.mpc(s) == 1:
        raise PoleError("Hurwitz zeta has a pole at s=1")
    return lerch(LerchParams(s, 0, a), ctx, overrides, method)


def lerch_transformation(params: LerchParams, ctx: EvalContext) -> object:
    """Right-hand side of the Lerch functional equation, for cross-checking.

    ``L(s,lam,a) = G [e^{i pi (1-s)/2 - 2 pi i lam a} L(1-s, 1-a, lam)
    + e^{-i pi (1-s)/2 + 2 pi i a (1-lam)} L(1-s, a, 1-lam)]`` with
    ``G = Gamma(1-s)/(2 pi)^{1-s}``; needs ``0 < lam < 1`` and ``0 < a < 1``.
    """
    mp = ctx.mp
    s = mp.mpc(params.s)
    lam, a = mp.mpf(params.lam), mp.mpf(params.a)
    if not (0 < lam < 1 and 0 < a < 1):
        raise DomainError("transformation needs 0 < lam < 1 and 0 < a < 1")
    ipi = 1j * mp.pi
    G = mp.exp(ln_gamma(1 - s, ctx) - (1 - s) * mp.log(2 * mp.pi))
    first = lerch(LerchParams(1 - s, 1 - a, lam), ctx).value
    second = lerch(LerchParams(1 - s, a, 1 - lam), ctx).value
    return G * (mp.exp(ipi * (1 - s) / 2 - 2 * ipi * lam * a) * first
                + mp.exp(-ipi * (1 - s) / 2 + 2 * ipi * a * (1 - lam)) * second)
