"""Dirichlet L-functions by the Siegel formula and by Hurwitz-zeta expansion.

Siegel route::

    L(s, chi) = lam(s) + conj(rho)/rho * (m/pi)^(1/2 - s)
                * Gamma((1-s+a)/2) / Gamma((s+a)/2) * conj(lam(1 - conj s))

where ``lam`` is a saddle-line integral of ``e^{i pi x^2/m} x^{-s} W(x)``
handled exactly like the zeta residual, with main sum
``sum_{k<=N} chi(k) k^{-s}``, ``N ~ sqrt(m t / 2 pi)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import oracle
from .errors import CharacterError, DomainError, PoleError
from .lerch import hurwitz
from .mdequad import EvalResult, QuadOverrides, corrected_line_sum
from .numkern import EvalContext, cpow, ln_gamma
from .zeta_rs import MIN_CROSSING, choose_alpha, plan_digits, saddle_plan

PHASE_TOL = 1e-9


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod ``m``; ``phases[n]`` is ``None`` where chi(n)=0, else
    the exact phase ``k/order`` with chi(n) = e^{2 pi i phase}."""

    m: int
    phases: tuple

    @classmethod
    def from_values(cls, values: Sequence, m: Optional[int] = None) -> "DirichletCharacter":
        m = len(values) if m is None else m
        if len(values) != m:
            raise CharacterError(f"expected {m} values, got {len(values)}")
        order = _unit_exponent(m)
        phases = tuple(_snap_phase(v, order) for v in values)
        chi = cls(m, phases)
        chi.validate()
        return chi

    def validate(self) -> None:
        m = self.m
        if m < 1:
            raise CharacterError("modulus must be positive")
        for n, ph in enumerate(self.phases):
            unit = math.gcd(n, m) == 1
            if unit != (ph is not None):
                raise CharacterError(f"chi({n}) must be {'nonzero' if unit else '0'} mod {m}")
        if self.phases[1 % m] != 0:
            raise CharacterError("chi(1) must equal 1")
        units = self.units
        for x in units:
            for y in units:
                if (self.phases[x] + self.phases[y]) % 1 != self.phases[x * y % m]:
                    raise CharacterError(f"not multiplicative at {x}*{y} mod {m}")

    @cached_property
    def units(self) -> list:
        return [n for n in range(self.m) if math.gcd(n, self.m) == 1]

    @property
    def parity_a(self) -> int:
        return 0 if self.phases[(self.m - 1) % self.m] == 0 else 1

    @property
    def is_principal(self) -> bool:
        return all(ph in (None, 0) for ph in self.phases)

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.m, tuple(None if ph is None else (-ph) % 1 for ph in self.phases))

    def is_primitive(self) -> bool:
        """True unless chi is induced from a character of a proper divisor."""
        m = self.m
        for d in range(1, m):
            if m % d:
                continue
            if all(self.phases[n] == 0 for n in self.units if n % d == 1 % d):
                return False
        return True

    def values(self, ctx: EvalContext) -> list:
        mp = ctx.mp
        return [mp.mpc(0) if ph is None else mp.expjpi(2 * mp.mpf(ph.numerator) / ph.denominator)
                for ph in self.phases]

    def gauss_sum(self, ctx: EvalContext):
        """C = sum_{n=1}^{m} chi(n) e^{-2 pi i n/m}."""
        mp = ctx.mp
        vals = self.values(ctx)
        return mp.fsum(vals[n % self.m] * mp.expjpi(-2 * mp.mpf(n) / self.m)
                       for n in range(1, self.m + 1))

    def rho(self, ctx: EvalContext):
        """rho = i^{-a/2} C^{-1/2} m^{1/4}, principal roots."""
        mp = ctx.mp
        C = self.gauss_sum(ctx)
        return mp.expjpi(-mp.mpf(self.parity_a) / 4) / mp.sqrt(C) * mp.root(self.m, 4)

    def __call__(self, n: int, ctx: EvalContext):
        ph = self.phases[n % self.m]
        if ph is None:
            return ctx.mp.mpc(0)
        return ctx.mp.expjpi(2 * ctx.mp.mpf(ph.numerator) / ph.denominator)


def _unit_exponent(m: int) -> int:
    # phi(m) is a multiple of every character order
    return sum(1 for n in range(1, m + 1) if math.gcd(n, m) == 1)


def _snap_phase(value, order: int) -> Optional[Fraction]:
    if isinstance(value, Fraction):
        return value % 1
    z = complex(value)
    if abs(z) < PHASE_TOL:
        return None
    if abs(abs(z) - 1) > 1e-6:
        raise CharacterError(f"character value {value!r} is not on the unit circle")
    turns = math.atan2(z.imag, z.real) / (2 * math.pi)
    k = round(turns * order)
    if abs(turns * order - k) > 1e-6 * order:
        raise CharacterError(f"character value {value!r} is not a root of unity of order {order}")
    return Fraction(k, order) % 1


_ENTRY_E = re.compile(r"^e\((-?\d+)/(\d+)\)$|^(-?\d+)/(\d+)$")


def parse_entry(text: str):
    """One table entry: ``0``, ``1``, ``-1``, ``e(k/n)``, the phase ``k/n`` or a complex literal."""
    from .numkern import _split_complex

    t = text.strip()
    m = _ENTRY_E.match(t)
    if m:
        k, n = (int(g) for g in (m.group(1, 2) if m.group(1) else m.group(3, 4)))
        if n == 0:
            raise CharacterError("e(k/0) is undefined")
        return Fraction(k, n) % 1
    try:
        re_part, im_part = _split_complex(t)
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise CharacterError(f"bad character entry {text!r}") from exc


def parse_character_text(text: str) -> DirichletCharacter:
    """``m=<int>`` on the first line, ``values=<comma list>`` on the second."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != 2 or not lines[0].startswith("m=") or not lines[1].startswith("values="):
        raise CharacterError("character file needs 'm=<int>' then 'values=<list>'")
    try:
        m = int(lines[0][2:])
    except ValueError as exc:
        raise CharacterError("modulus is not an integer") from exc
    entries = [parse_entry(e) for e in lines[1][len("values="):].split(",")]
    return DirichletCharacter.from_values(entries, m)


def load_character(path) -> DirichletCharacter:
    return parse_character_text(Path(path).read_text())


def analyze_character(m: int, values: Sequence, require_primitive: bool = True,
                      ctx: Optional[EvalContext] = None) -> DirichletCharacter:
    """Validate a table and, for the Siegel route, its primitivity."""
    chi = DirichletCharacter.from_values(values, m)
    if require_primitive:
        check_primitive(chi, ctx or EvalContext(30))
    return chi


def check_primitive(chi: DirichletCharacter, ctx: EvalContext) -> None:
    C = chi.gauss_sum(ctx)
    tol = ctx.mp.mpf(10) ** (-ctx.target_digits)
    if not chi.is_primitive() or abs(abs(C) ** 2 - chi.m) > tol * chi.m:
        raise CharacterError(f"character mod {chi.m} is not primitive; use the Hurwitz route")


def all_characters(m: int) -> list:
    """Every character mod ``m``, built from the cyclic factors of the unit group."""
    units = [n for n in range(1, m + 1) if math.gcd(n, m) == 1] if m > 1 else [0]
    if m == 1:
        return [DirichletCharacter(1, (Fraction(0),))]
    gens = _unit_generators(m)
    chars = []

    def build(idx, choice):
        if idx == len(gens):
            phases = [None] * m
            for n in units:
                ph = Fraction(0)
                for (g, order), k, e in zip(gens, choice, _exponents(n, gens, m)):
                    ph += Fraction(k * e, order)
                phases[n % m] = ph % 1
            chars.append(DirichletCharacter(m, tuple(phases)))
            return
        for k in range(gens[idx][1]):
            build(idx + 1, choice + [k])

    build(0, [])
    return chars


def _unit_generators(m: int) -> list:
    # greedy independent generators: each new one must not lie in the span so far
    units = [n for n in range(1, m) if math.gcd(n, m) == 1]
    span = {1}
    gens = []
    total = len(units)
    while len(span) < total:
        best = None
        for u in units:
            if u in span:
                continue
            # first power of u landing in the span; u must split off as a factor
            k, x = 1, u
            while x not in span:
                x = x * u % m
                k += 1
            if x == 1 and (best is None or k > best[1]):
                best = (u, k)
        if best is None:
            raise NotImplementedError(f"no direct-factor basis found mod {m}")
        u, k = best
        gens.append((u, k))
        span = {s * pow(u, j, m) % m for s in span for j in range(k)}
    return gens


def _exponents(n: int, gens: list, m: int) -> list:
    # discrete log of n in the basis gens (brute force; m is small)
    ranges = [range(order) for _, order in gens]

    def rec(idx, acc, exps):
        if idx == len(gens):
            return exps if acc == n % m else None
        g, order = gens[idx]
        x = acc
        for e in ranges[idx]:
            found = rec(idx + 1, x, exps + [e])
            if found is not None:
                return found
            x = x * g % m
        return None

    res = rec(0, 1 % m, [])
    if res is None:
        raise ValueError(f"{n} not generated mod {m}")
    return res


def w_eval(x, chi: DirichletCharacter, ctx: EvalContext, _cache: Optional[dict] = None):
    """W(x) = (pi/2m) sum_{n=1}^{2m} chi(n) e^{-i pi n^2/m} cot(pi (x-n)/(2m))."""
    mp = ctx.mp
    m = chi.m
    coef, omega = _w_tables(chi, ctx) if _cache is None else _cache["w"]
    E = mp.expjpi(mp.mpc(x) / m)
    total = mp.mpc(0)
    for b, om in zip(coef, omega):
        if b == 0:
            continue
        u = E * om
        if u == 1:
            raise PoleError("W evaluated at a pole")
        total += b * (u + 1) / (u - 1)
    return 1j * mp.pi / (2 * m) * total


def _w_tables(chi: DirichletCharacter, ctx: EvalContext):
    mp = ctx.mp
    m = chi.m
    coef, omega = [], []
    for n in range(1, 2 * m + 1):
        ph = chi.phases[n % m]
        if ph is None:
            coef.append(0)
        else:
            turn = 2 * mp.mpf(ph.numerator) / ph.denominator - mp.mpf(n * n % (2 * m)) / m
            coef.append(mp.expjpi(turn))
        omega.append(mp.expjpi(-mp.mpf(n) / m))
    return coef, omega


@dataclass(frozen=True)
class SiegelFrame:
    s: object
    r: object
    N: int
    crossing: float
    plan: object


def siegel_frame(s, chi: DirichletCharacter, ctx: EvalContext,
                 overrides: Optional[QuadOverrides] = None) -> SiegelFrame:
    mp = ctx.mp
    overrides = overrides or QuadOverrides()
    s = mp.mpc(s)
    r = mp.sqrt(chi.m * s / (2j * mp.pi))
    crossing = float(r.real - r.imag)
    N = max(0, math.floor(crossing))
    alpha = overrides.alpha or choose_alpha(float(s.imag))
    center = r
    if overrides.center == "halfinteger" or crossing < MIN_CROSSING:
        center = mp.mpc(N + 0.5)
    eps = mp.expjpi(mp.mpf(1) / 4)
    # the Gaussian e^{i pi x^2/m} decays m times slower than zeta's
    plan = saddle_plan(plan_digits(ctx), alpha, center, r, overrides, ctx, eps,
                       decay_scale=1 / chi.m)
    return SiegelFrame(s, r, N, crossing, plan)


def _lambda_line(s, chi: DirichletCharacter, ctx: EvalContext, overrides: QuadOverrides):
    mp = ctx.mp
    frame = siegel_frame(s, chi, ctx, overrides)
    plan = frame.plan
    m = chi.m
    ipi_m = 1j * mp.pi / m
    two_pi_i = 2j * mp.pi
    cache = {"w": _w_tables(chi, ctx)}

    def integrand(x):
        z = plan.z_of_x(x, ctx)
        g = mp.exp(ipi_m * z * z - frame.s * mp.log(z)) * w_eval(z, chi, ctx, cache)
        return -g / two_pi_i * plan.dz_dx(x, ctx)

    span = plan.num_sing + 2
    poles = []
    for k in range(max(1, frame.N - span + 1), frame.N + span + 1):
        if chi.phases[k % m] is None:
            continue
        poles.append((mp.mpf(k), -chi(k, ctx) * cpow(k, -frame.s, ctx) / two_pi_i))
    main = mp.mpc(0)
    vals = chi.values(ctx)
    for k in range(1, frame.N + 1):
        v = vals[k % m]
        if v != 0:
            main += v * mp.exp(-frame.s * mp.log(k))
    line = corrected_line_sum(integrand, plan, poles, ctx)
    return main + line.value, frame, line


def lambda_eval(s, chi: DirichletCharacter, ctx: EvalContext,
                overrides: Optional[QuadOverrides] = None):
    """lam(s): main sum over k <= N plus the corrected saddle-line residual."""
    return _lambda_line(s, chi, ctx, overrides or QuadOverrides())[0]


def _inner(ctx: EvalContext, t, m: int, lost: int = 0) -> EvalContext:
    extra = int(math.log10(1 + abs(float(t)) * m))
    return EvalContext(ctx.target_digits + lost, ctx.guard_digits + extra)


def _digits_lost(s, start: float, step: int, sign: int) -> int:
    """Cancellation near the lattice ``start + sign*step*k``, k >= 0."""
    k = max(0, round((float(s.real) - start) * sign / step))
    dist = float(abs(s - (start + sign * step * k)))
    return math.ceil(-math.log10(dist)) if 0 < dist < 1 else 0


def _series(s, chi: DirichletCharacter, ctx: EvalContext) -> EvalResult:
    val = oracle.direct_series("dirichlet", {"s": s, "values": chi.values(ctx)},
                               oracle.OracleBudget(digits=ctx.target_digits + 5), ctx)
    return EvalResult(val, ctx.mp.mpf(10) ** (-ctx.target_digits - 5), 0, 0, {"route": "series"})


def _gamma_singular(z) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == int(z.real)


def l_siegel(s, chi: DirichletCharacter, ctx: EvalContext,
             overrides: Optional[QuadOverrides] = None, method: str = "auto") -> EvalResult:
    """L(s, chi) for primitive chi by the Siegel formula."""
    mp = ctx.mp
    s = mp.mpc(s)
    check_primitive(chi, ctx)
    if s.imag < 0:
        res = l_siegel(mp.conj(s), chi.conj(), ctx, overrides, method)
        return replace(res, value=mp.conj(res.value))
    if chi.m == 1 and s == 1:
        raise PoleError("zeta has a pole at s=1")
    a = chi.parity_a
    # Gamma((1-s+a)/2) poles cancel between the two halves; 1/Gamma((s+a)/2) zeros shrink L
    lost = max(_digits_lost(s, 1 + a, 2, 1), _digits_lost(s, -a, 2, -1))
    inner = _inner(ctx, s.imag, chi.m, lost)
    imp = inner.mp
    s_in = imp.mpc(s)
    if method == "auto" and abs(s.imag) < 2 * math.pi and s.real > 1.5:
        res = _series(s_in, chi, inner)
        return replace(res, value=mp.mpc(res.value))
    up, down = (1 - s_in + a) / 2, (s_in + a) / 2
    if _gamma_singular(up) or _gamma_singular(down):
        if method == "auto" and not chi.is_principal and s.real > 0:
            res = _series(s_in, chi, inner)
            return replace(res, value=mp.mpc(res.value))
        raise DomainError("Siegel formula is singular here; use the Hurwitz route")
    overrides = overrides or QuadOverrides()
    lam_s, frame, line = _lambda_line(s_in, chi, inner, overrides)
    lam_c, frame_c, line_c = _lambda_line(1 - imp.conj(s_in), chi, inner, overrides)
    rho = chi.rho(inner)
    m = chi.m
    log_fac = ((0.5 - s_in) * imp.log(imp.mpf(m) / imp.pi)
               + ln_gamma(up, inner) - ln_gamma(down, inner))
    fac = imp.conj(rho) / rho * imp.exp(log_fac)
    value = lam_s + fac * imp.conj(lam_c)
    err = line.err_estimate + abs(complex(fac)) * line_c.err_estimate
    diag = {"route": "siegel", "N_conj": frame_c.N, "alpha": frame.plan.alpha,
            "h": frame.plan.h, "q_cut": max(line.diagnostics["q_cut"], line_c.diagnostics["q_cut"]), "rule": line.rule.value,
            "truncated_early": line.diagnostics.get("truncated_early", False)
            or line_c.diagnostics.get("truncated_early", False)}
    return EvalResult(mp.mpc(value), err, frame.N, line.n_nodes + line_c.n_nodes, diag)


def l_hurwitz(s, chi: DirichletCharacter, ctx: EvalContext,
              overrides: Optional[QuadOverrides] = None) -> EvalResult:
    """L(s, chi) = m^{-s} sum_{n=1}^{m} chi(n) zeta(s, n/m); any character."""
    mp = ctx.mp
    s = mp.mpc(s)
    m = chi.m
    if s == 1:
        if chi.is_principal:
            raise PoleError("principal L-function has a pole at s=1")
        raise DomainError("Hurwitz terms have poles at s=1; use the Siegel route")
    # the poles 1/(s-1) of the terms cancel in a nonprincipal sum, as do the
    # O(1) terms near a trivial zero
    lost = max(_digits_lost(s, 1, 10**9, 1), _digits_lost(s, -chi.parity_a, 2, -1))
    inner = _inner(ctx, s.imag, 1, lost)
    imp = inner.mp
    s_in = imp.mpc(s)
    total = imp.mpc(0)
    err = 0
    n_main = n_nodes = 0
    for n in range(1, m + 1):
        ph = chi.phases[n % m]
        if ph is None:
            continue
        res = hurwitz(s_in, imp.mpf(n) / m, inner, overrides)
        total += chi(n, inner) * res.value
        err += res.err_estimate
        n_main += res.n_main
        n_nodes += res.n_nodes
    value = cpow(m, -s_in, inner) * total
    scale = abs(complex(cpow(m, -s_in, inner)))
    return EvalResult(mp.mpc(value), err * scale, n_main, n_nodes, {"route": "hurwitz"})


def dirichlet_l(s, chi: DirichletCharacter, ctx: EvalContext, route: str = "siegel",
                overrides: Optional[QuadOverrides] = None) -> EvalResult:
    if route == "siegel":
        return l_siegel(s, chi, ctx, overrides)
    if route == "hurwitz":
        return l_hurwitz(s, chi, ctx, overrides)
    raise ValueError(f"unknown route {route!r}")
