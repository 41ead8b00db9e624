"""Modified double-exponential quadrature along a saddle-directed line.

A contour integral over ``z(x) = center + alpha*direction*sinh(x)`` is
discretised with the trapezoid ("simpson") or midpoint rule in ``x``.  Poles of
the integrand near the real ``x`` axis are removed with residue corrections
weighted by the ``phi`` functions, and the nearest un-removed poles give the
error estimate.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterable, Optional

import mpmath

from .errors import PoleError
from .numkern import EvalContext

log = logging.getLogger(__name__)

LN10 = math.log(10)
DECAY_RATE = math.pi

# magnitudes only; exponent range matters, precision does not
_LOWP = mpmath.MPContext()
_LOWP.prec = 53


class Rule(str, Enum):
    SIMPSON = "simpson"
    MIDPOINT = "midpoint"


class Side(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class QuadPlan:
    alpha: float
    h: float
    q_cut: float
    rule: Rule = Rule.SIMPSON
    num_sing: int = 1
    center: object = 0
    direction: object = 1
    fixed_cut: bool = False  # caller pinned q_cut; never extend it

    def __post_init__(self):
        if not (self.h > 0 and self.q_cut > 0 and 0 < self.alpha <= 1):
            raise ValueError(f"invalid quadrature plan {self!r}")
        if self.num_sing < 0:
            raise ValueError("num_sing must be nonnegative")

    @property
    def steps(self) -> int:
        return int(math.floor(self.q_cut / self.h * (1 + 1e-12)))

    @property
    def node_count(self) -> int:
        if self.rule is Rule.SIMPSON:
            return 2 * self.steps + 1
        return 2 * self.steps

    def node_indices(self) -> range:
        k = self.steps
        return range(-k, k + 1) if self.rule is Rule.SIMPSON else range(-k, k)

    def abscissa(self, n: int, ctx: EvalContext):
        offset = 0 if self.rule is Rule.SIMPSON else 0.5
        return ctx.mp.mpf(self.h) * (n + offset)

    def z_of_x(self, x, ctx: EvalContext):
        mp = ctx.mp
        return mp.mpc(self.center) + self.alpha * mp.mpc(self.direction) * mp.sinh(x)

    def dz_dx(self, x, ctx: EvalContext):
        mp = ctx.mp
        return self.alpha * mp.mpc(self.direction) * mp.cosh(x)

    def locate(self, z_pole, ctx: EvalContext):
        """x-space preimage of ``z_pole`` on the principal sheet of asinh."""
        mp = ctx.mp
        return mp.asinh((mp.mpc(z_pole) - mp.mpc(self.center)) / (self.alpha * mp.mpc(self.direction)))


@dataclass(frozen=True)
class SingularityInfo:
    location_x: object
    residue: object
    side: Side

    @classmethod
    def at(cls, location_x, residue) -> "SingularityInfo":
        side = Side.LOWER if location_x.imag < 0 else Side.UPPER
        return cls(location_x, residue, side)


@dataclass(frozen=True)
class QuadOverrides:
    """Caller knobs mirroring the experiment parameters (all optional)."""

    alpha: Optional[float] = None
    h: Optional[float] = None
    q_cut: Optional[float] = None
    num_sing: Optional[int] = None
    rule: Optional[Rule] = None
    center: str = "saddle"  # or "halfinteger"


@dataclass
class EvalResult:
    value: object
    err_estimate: object
    n_main: int
    n_nodes: int
    diagnostics: dict = field(default_factory=dict)


def plan_params(target_digits: int, alpha: float) -> QuadPlan:
    """Step and cutoff for ``target_digits`` digits at scaling ``alpha``.

    The cutoff assumes the far-field decay ``exp(-pi alpha^2 sinh^2 x)`` of
    ``e^{i pi z^2}``, which is half the local rate at the saddle but holds
    for every saddle distance.  The step is shrunk so that an integer number
    of steps spans ``[0, q_cut]``.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    A = target_digits * LN10
    h = math.pi**2 / (4 * A)
    q_cut = math.asinh(math.sqrt(A / (DECAY_RATE * alpha**2)))
    h = q_cut / math.ceil(q_cut / h)
    return QuadPlan(alpha=alpha, h=h, q_cut=q_cut)


def phi(x, plan: QuadPlan, ctx: EvalContext, side: Optional[Side] = None):
    """Correction weight for a pole at ``x`` (phi_L below the line, phi_U above).

    Both rules satisfy ``phi_U = phi_L + 1``; each phi_L has residue
    ``h/(2 pi i)`` at the nodes of its rule and vanishes as ``Im x -> -inf``.
    """
    mp = ctx.mp
    x = mp.mpc(x)
    u = x / plan.h
    if side is None:
        side = Side.LOWER if u.imag < 0 else Side.UPPER
    if u.imag == 0:
        frac = u.real - mp.floor(u.real)
        on_node = frac == 0 if plan.rule is Rule.SIMPSON else frac == 0.5
        if on_node:
            raise PoleError("phi evaluated on a quadrature node")
    sign = -1 if plan.rule is Rule.SIMPSON else 1
    two_pi_i = 2j * mp.pi
    if side is Side.LOWER:
        return -1 / (1 + sign * mp.exp(two_pi_i * u))
    return 1 / (1 + sign * mp.exp(-two_pi_i * u))


def node_sum(f: Callable, plan: QuadPlan, ctx: EvalContext, diag: Optional[dict] = None):
    """``h * sum f(x_n)`` over the retained nodes; ``f`` includes the Jacobian.

    Evaluation order is fixed (increasing ``n``) so results are reproducible.
    """
    mp = ctx.mp
    total = mp.mpc(0)
    idx = plan.node_indices()
    edge = _LOWP.mpf(0)
    for n in idx:
        val = f(plan.abscissa(n, ctx))
        total += val
        if n == idx[0] or n == idx[-1]:
            edge = max(edge, _LOWP.mpf(abs(val)))
    result = total * plan.h
    limit = _LOWP.mpf(10) ** (-ctx.target_digits)
    early = edge > limit
    if early:
        log.debug("last node |f|=%s exceeds 1e-%d", _LOWP.nstr(edge, 3), ctx.target_digits)
    if diag is not None:
        diag["n_nodes"] = diag.get("n_nodes", 0) + len(idx)
        diag["edge"] = max(diag.get("edge", _LOWP.mpf(0)), edge)
        diag["truncated_early"] = diag.get("truncated_early", False) or bool(early)
    return result


def singular_correction(sings: Iterable[SingularityInfo], plan: QuadPlan, ctx: EvalContext):
    """``2 pi i * sum residue * phi(location)`` with phi chosen by side."""
    mp = ctx.mp
    total = mp.mpc(0)
    for p in sings:
        total += p.residue * phi(p.location_x, plan, ctx, p.side)
    return 2j * mp.pi * total


def tail_error_estimate(nearest_outside: Iterable[SingularityInfo], plan: QuadPlan):
    """Magnitude of the leading discretisation error of un-removed poles."""
    lp = _LOWP
    total = lp.mpf(0)
    for p in nearest_outside:
        dist = abs(lp.mpf(p.location_x.imag))
        total += 2 * lp.pi * lp.mpf(abs(p.residue)) * lp.exp(-2 * lp.pi * dist / plan.h)
    return total


def needs_midpoint(locations: Iterable, plan: QuadPlan) -> bool:
    """True when some pole sits within h/4 of a trapezoid node."""
    for x in locations:
        u = complex(x) / plan.h
        if abs(u - round(u.real)) < 0.25:
            return True
    return False


def extend_cut(f: Callable, plan: QuadPlan, ctx: EvalContext, max_factor: float = 3.0) -> QuadPlan:
    """Grow ``q_cut`` by whole steps until ``|f|`` at both ends is negligible.

    The planned cutoff only knows the Gaussian decay; linear terms in the
    exponent can slow one side down.  ``h`` is kept, so node sets still nest.
    """
    if plan.fixed_cut:
        return plan
    mp = ctx.mp
    tol = _LOWP.mpf(10) ** (-ctx.target_digits - 5)
    steps = plan.steps
    limit = int(steps * max_factor)
    while steps < limit:
        x = mp.mpf(plan.h) * steps
        edge = max(_LOWP.mpf(abs(f(x))), _LOWP.mpf(abs(f(-x))))
        if edge <= tol:
            break
        steps += max(1, steps // 10)
    if steps == plan.steps:
        return plan
    log.debug("q_cut extended from %d to %d steps", plan.steps, steps)
    return replace(plan, q_cut=plan.h * steps)


@dataclass
class LineSum:
    value: object
    err_estimate: object
    n_nodes: int
    rule: Rule
    removed: list
    diagnostics: dict


def corrected_line_sum(integrand: Callable, plan: QuadPlan, poles: Iterable, ctx: EvalContext,
                       *, auto_rule: bool = True) -> LineSum:
    """Corrected quadrature of ``integral integrand(x) dx`` over the real line.

    ``poles`` yields ``(z_pole, residue)`` pairs in the original variable; the
    residue must already be that of ``integrand`` (residues are invariant under
    the substitution ``z = z(x)``).  Unless the plan pins it, ``q_cut`` is
    first extended until the integrand is negligible at both ends.  The ``plan.num_sing`` poles closest to the
    line on each side are removed and the next one per side feeds the error
    estimate.
    """
    located = []
    for z_p, res in poles:
        if res == 0:
            continue
        located.append(SingularityInfo.at(plan.locate(z_p, ctx), res))
    plan = extend_cut(integrand, plan, ctx)
    if auto_rule and plan.rule is Rule.SIMPSON and needs_midpoint((p.location_x for p in located), plan):
        plan = replace(plan, rule=Rule.MIDPOINT)
    removed, outside = [], []
    for side in (Side.LOWER, Side.UPPER):
        ranked = sorted((p for p in located if p.side is side), key=lambda p: abs(p.location_x.imag))
        removed += ranked[: plan.num_sing]
        outside += ranked[plan.num_sing: plan.num_sing + 1]
    diag: dict = {"q_cut": plan.q_cut}
    value = node_sum(integrand, plan, ctx, diag)
    value += singular_correction(removed, plan, ctx)
    err = tail_error_estimate(outside, plan)
    return LineSum(value, err, plan.node_count, plan.rule, removed, diag)
