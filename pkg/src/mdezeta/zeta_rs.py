"""Riemann zeta via a finite main sum plus a corrected saddle-line residual.

``zeta(s) = I0(s) + chi(s) * conj(I0(1 - conj s))`` where ``I0`` is the
contour integral of ``e^{i pi z^2} z^{-s} / (e^{i pi z} - e^{-i pi z})``.
Shifting that contour past the poles at ``z = 1..N`` leaves
``sum_{n<=N} n^{-s}`` plus a line integral through the saddle ``r``, which is
discretised by :mod:`mdezeta.mdequad`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from . import oracle
from .errors import PoleError
from .mdequad import (DECAY_RATE, EvalResult, QuadOverrides, QuadPlan, Rule,
                      corrected_line_sum, plan_params)
from .numkern import EvalContext, chi_zeta, cpow

LN10 = math.log(10)
ALPHA_LARGE_T = 1.0
ALPHA_SMALL_T = 0.25
T_SWITCH = 100.0
# keep the branch point z=0 away from the line
MIN_CROSSING = 0.25


@dataclass(frozen=True)
class ZetaFrame:
    s: object
    r: object
    N: int
    crossing: float
    plan: QuadPlan


def choose_alpha(t: float) -> float:
    return ALPHA_LARGE_T if abs(t) >= T_SWITCH else ALPHA_SMALL_T


def plan_digits(ctx: EvalContext) -> int:
    return ctx.target_digits + 5


def saddle_plan(digits: int, alpha: float, center, saddle, overrides: QuadOverrides,
                ctx: EvalContext, direction, decay_scale: float = 1.0) -> QuadPlan:
    """Plan for a line through ``center`` whose Gaussian decay is set by ``saddle``.

    ``decay_scale`` multiplies the Gaussian rate of the integrand.  When the
    center is moved off the saddle the cutoff grows by the offset so the decay
    past ``q_cut`` is unchanged.
    """
    h = plan_params(digits, alpha).h
    A = digits * LN10
    offset = float(abs(ctx.mp.mpc(center) - saddle))
    reach = math.sqrt(A / (DECAY_RATE * alpha**2 * decay_scale))
    q_cut = math.asinh(reach + offset / alpha)
    if overrides.q_cut is not None:
        q_cut = overrides.q_cut
    if overrides.h is not None:
        h = overrides.h
    h = q_cut / math.ceil(q_cut / h - 1e-9)
    return QuadPlan(alpha=alpha, h=h, q_cut=q_cut,
                    rule=overrides.rule or Rule.SIMPSON,
                    num_sing=1 if overrides.num_sing is None else overrides.num_sing,
                    center=center, direction=direction,
                    fixed_cut=overrides.q_cut is not None)


def zeta_frame(s, ctx: EvalContext, overrides: Optional[QuadOverrides] = None,
               digits: Optional[int] = None) -> ZetaFrame:
    mp = ctx.mp
    overrides = overrides or QuadOverrides()
    s = mp.mpc(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s.imag < 0:
        raise ValueError("zeta_frame expects Im s >= 0")
    r = mp.sqrt(s / (2j * mp.pi))
    crossing = float(r.real - r.imag)
    N = max(0, math.floor(crossing))
    alpha = overrides.alpha or choose_alpha(float(s.imag))
    center = r
    if overrides.center == "halfinteger" or crossing < MIN_CROSSING:
        center = mp.mpc(N + 0.5)
    eps = mp.expjpi(mp.mpf(1) / 4)
    plan = saddle_plan(digits or plan_digits(ctx), alpha, center, r, overrides, ctx, eps)
    return ZetaFrame(s, r, N, crossing, plan)


def main_sum(s, N: int, ctx: EvalContext):
    """``sum_{n=1}^{N} n^{-s}``."""
    mp = ctx.mp
    s = mp.mpc(s)
    total = mp.mpc(0)
    for n in range(1, N + 1):
        total += mp.exp(-s * mp.log(n))
    return total


def _residual_line(frame: ZetaFrame, ctx: EvalContext, auto_rule: bool = True):
    mp = ctx.mp
    s, plan = frame.s, frame.plan
    pi_i = 1j * mp.pi

    def integrand(x):
        z = plan.z_of_x(x, ctx)
        num = mp.exp(pi_i * z * z - s * mp.log(z))
        return -num / (mp.exp(pi_i * z) - mp.exp(-pi_i * z)) * plan.dz_dx(x, ctx)

    two_pi_i = 2 * pi_i
    span = plan.num_sing + 2
    poles = [(mp.mpf(n), -cpow(n, -s, ctx) / two_pi_i)
             for n in range(max(1, frame.N - span + 1), frame.N + span + 1)]
    return corrected_line_sum(integrand, plan, poles, ctx, auto_rule=auto_rule)


def residual_corrected(frame: ZetaFrame, ctx: EvalContext):
    """The line integral left after removing ``N`` poles, with pole corrections."""
    return _residual_line(frame, ctx).value


def _i0(s, ctx, overrides, digits=None):
    frame = zeta_frame(s, ctx, overrides, digits)
    line = _residual_line(frame, ctx)
    return main_sum(s, frame.N, ctx) + line.value, frame, line


def _rs(s, ctx: EvalContext, overrides: QuadOverrides, digits=None) -> EvalResult:
    mp = ctx.mp
    i0, frame, line = _i0(s, ctx, overrides, digits)
    i0c, frame_c, line_c = _i0(1 - mp.conj(s), ctx, overrides, digits)
    chi = chi_zeta(s, ctx)
    value = i0 + chi * mp.conj(i0c)
    err = line.err_estimate + abs(complex(chi)) * line_c.err_estimate
    diag = {
        "route": "rs",
        "N_conj": frame_c.N,
        "alpha": frame.plan.alpha,
        "h": frame.plan.h,
        "q_cut": max(line.diagnostics["q_cut"], line_c.diagnostics["q_cut"]),
        "rule": line.rule.value,
        "truncated_early": line.diagnostics.get("truncated_early", False)
        or line_c.diagnostics.get("truncated_early", False),
    }
    return EvalResult(value, err, frame.N, line.n_nodes + line_c.n_nodes, diag)


def _fast_path(s) -> Optional[str]:
    if abs(s.imag) < 2 * math.pi and s.real > 1.5:
        return "series"
    if s.real < -0.5:
        return "reflect"
    return None


def _inner(ctx: EvalContext, t) -> EvalContext:
    # phases of size pi*|z|^2 ~ t cost log10(t) digits in the exponent
    extra = int(math.log10(1 + abs(float(t))))
    return EvalContext(ctx.target_digits, ctx.guard_digits + extra)


def zeta(s, ctx: EvalContext, overrides: Optional[QuadOverrides] = None,
         method: str = "auto") -> EvalResult:
    """Riemann zeta at ``s`` to ``ctx.target_digits`` digits.

    ``method='rs'`` forces the main-sum/residual route even where a fast path
    would apply.
    """
    overrides = overrides or QuadOverrides()
    s = ctx.mp.mpc(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if s == 0:
        # the reflected frame would sit on the pole at 1
        return EvalResult(ctx.mp.mpc(-0.5), ctx.mp.mpf(0), 0, 0, {"route": "exact"})
    if s.imag < 0:
        res = zeta(ctx.mp.conj(s), ctx, overrides, method)
        return replace(res, value=ctx.mp.conj(res.value))
    inner = _inner(ctx, s.imag)
    mp = inner.mp
    s_in = mp.mpc(s)
    route = _fast_path(s_in) if method == "auto" else None
    if route == "series":
        val = oracle.em_hurwitz(s_in, 1, oracle.OracleBudget(digits=ctx.target_digits + 5), inner)
        res = EvalResult(val, mp.mpf(10) ** (-ctx.target_digits - 5), 0, 0, {"route": "series"})
    elif route == "reflect":
        if s_in.imag == 0 and s_in.real == int(s_in.real) and int(s_in.real) % 2 == 0:
            res = EvalResult(mp.mpc(0), mp.mpf(0), 0, 0, {"route": "trivial zero"})
        else:
            other = zeta(1 - s_in, inner, overrides, method)
            val = chi_zeta(s_in, inner) * other.value
            res = replace(other, value=val, diagnostics={**other.diagnostics, "route": "reflect"})
    else:
        res = _rs(s_in, inner, overrides)
    return replace(res, value=ctx.mp.mpc(res.value))
