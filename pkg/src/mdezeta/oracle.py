"""Slow, independent reference evaluators used by the tests and a small fast path.

Nothing here touches the quadrature or the log-gamma kernel: powers come from
mpmath directly and Bernoulli numbers from ``mpmath.bernoulli``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, DomainError, PoleError
from .numkern import EvalContext

LOG10_2 = math.log10(2)
MAX_IMAG = 1e5
RATIO = 4


@dataclass(frozen=True)
class OracleBudget:
    terms_cap: int = 2_000_000
    digits: int | None = None

    def __post_init__(self):
        if self.terms_cap < 1:
            raise ValueError("terms_cap must be >= 1")
        if self.digits is not None and self.digits < 1:
            raise ValueError("digits must be >= 1")


def _inner_ctx(ctx: EvalContext, digits: int, abs_t: float) -> EvalContext:
    # phases of size t*log(n) and cancellation in partial sums eat digits
    extra = 15 + int(math.log10(abs_t + 1))
    return EvalContext(digits + extra, ctx.guard_digits)


def _em_remainder_log10(s, N: float, p: int) -> float:
    """log10 of the Euler-Maclaurin remainder bound after p Bernoulli terms."""
    sig, t = float(s.real), float(s.imag)
    if sig + 2 * p - 1 <= 0:
        return math.inf
    lp = sum(math.log10(abs(complex(sig + j, t))) for j in range(2 * p))
    return (math.log10(4) + lp - 2 * p * math.log10(2 * math.pi)
            + (-sig - 2 * p + 1) * math.log10(N) - math.log10(sig + 2 * p - 1))


def _em_tail(mp, s, N, p: int):
    """sum_{n>=0} (N+n)^{-s} for N large, by Euler-Maclaurin with p terms."""
    Ns = mp.power(N, -s)
    total = N * Ns / (s - 1) + Ns / 2
    rising = s  # (s)_{2k-1}
    Npow = Ns / N
    fact = mp.mpf(2)
    for k in range(1, p + 1):
        total += mp.bernoulli(2 * k) / fact * rising * Npow
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        Npow /= N * N
        fact *= (2 * k + 1) * (2 * k + 2)
    return total


def _em_choose(s, a: float, digits: int, cap: int) -> tuple[int, int]:
    goal = -(digits + 5)
    pmax = max(8, 2 * digits)
    M = max(8, int(abs(complex(s)) / (2 * math.pi)) + 1)
    while True:
        if M > cap:
            raise BudgetExceeded(f"Euler-Maclaurin needs more than {cap} terms")
        for p in range(1, pmax + 1):
            if _em_remainder_log10(s, M + a, p) <= goal:
                return M, p
        M *= 2


def em_hurwitz(s, a, budget: OracleBudget | None = None, ctx: EvalContext | None = None):
    """Hurwitz zeta(s, a) by Euler-Maclaurin with a rigorous remainder bound."""
    budget = budget or OracleBudget()
    ctx = ctx or EvalContext(budget.digits or 30)
    digits = budget.digits or ctx.target_digits
    s = ctx.mp.mpc(s)
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if abs(s.imag) > MAX_IMAG:
        raise DomainError("em_hurwitz refuses |Im s| > 1e5 (cost grows like |t|)")
    af = float(a)
    if not 0 < af <= 1:
        raise DomainError("a must lie in (0, 1]")
    inner = _inner_ctx(ctx, digits, abs(float(s.imag)))
    mp = inner.mp
    s_in = mp.mpc(s)
    a_in = mp.mpf(a) if not isinstance(a, str) else mp.mpf(a)
    M, p = _em_choose(s_in, af, digits, budget.terms_cap)
    head = mp.mpc(0)
    for n in range(M):
        head += mp.power(n + a_in, -s_in)
    total = head + _em_tail(mp, s_in, M + a_in, p)
    return ctx.mp.mpc(total)


def _boole_coeffs(mp, z, K: int) -> list:
    # sum_n z^n f(b+n) = sum_k g_k f^{(k)}(b) for |z|=1, z != 1
    g = [1 / (1 - z)]
    c = z / (1 - z)
    inv_fact = [mp.mpf(1)]
    for j in range(1, K + 1):
        inv_fact.append(inv_fact[-1] / j)
    for k in range(1, K + 1):
        g.append(c * mp.fsum(g[k - j] * inv_fact[j] for j in range(1, k + 1)))
    return g


def _phase_tail(mp, z, s, b, K: int, g):
    """sum_{n>=0} z^n (b+n)^{-s} by the Euler-Boole expansion; returns (value, bound)."""
    total = mp.mpc(0)
    deriv = mp.power(b, -s)  # f^{(k)}(b) = (-s)_k falling * b^{-s-k}
    last = None
    for k in range(K + 1):
        term = g[k] * deriv
        total += term
        last = abs(term)
        deriv *= (-s - k) / b
    return total, 2 * last


def _boole_radius(z) -> float:
    """Distance from 0 to the nearest pole of u -> 1/(1 - z e^u)."""
    theta = math.atan2(float(z.imag), float(z.real)) % (2 * math.pi)
    return min(theta, 2 * math.pi - theta)


def _phase_series(mp, z, s, a, digits: int, cap: int):
    """sum_{n>=0} z^n (n+a)^{-s} for |z| = 1, z != 1."""
    rho = _boole_radius(z)
    if rho < 1e-12:
        raise DomainError("phase series needs z != 1")
    # successive tail terms shrink by at least 1/RATIO
    K = int(math.ceil((digits + 5) / math.log10(RATIO))) + 2
    b0 = RATIO * (abs(complex(s)) + K) / rho
    M = max(0, int(math.ceil(b0 - float(a))))
    if M > cap:
        raise BudgetExceeded(f"direct series needs more than {cap} terms")
    head = mp.mpc(0)
    zn = mp.mpc(1)
    for n in range(M):
        head += zn * mp.power(n + a, -s)
        zn *= z
    tail, bound = _phase_tail(mp, z, s, M + a, K, _boole_coeffs(mp, z, K))
    return head + zn * tail, bound


def _plain_series(mp, s, a, digits: int, cap: int):
    """sum_{n>=0} (n+a)^{-s}, sigma > 1, head plus Euler-Maclaurin tail."""
    M, p = _em_choose(s, float(a), digits, cap)
    head = mp.mpc(0)
    for n in range(M):
        head += mp.power(n + a, -s)
    return head + _em_tail(mp, s, M + a, p)


def direct_series(kind: str, params: dict, budget: OracleBudget | None = None,
                  ctx: EvalContext | None = None):
    """Defining series with an accelerated tail.

    ``kind='zeta'``: params ``{s}``, through the alternating eta series.
    ``kind='lerch'``: params ``{s, lam, a}``.
    ``kind='dirichlet'``: params ``{s, values}`` with ``values`` the table
    chi(0..m-1); the character is split into additive characters so each piece
    is a phase series.
    """
    budget = budget or OracleBudget()
    ctx = ctx or EvalContext(budget.digits or 30)
    digits = budget.digits or ctx.target_digits
    s0 = ctx.mp.mpc(params["s"])
    inner = _inner_ctx(ctx, digits, abs(float(s0.imag)))
    mp = inner.mp
    s = mp.mpc(s0)
    sig = float(s.real)
    cap = budget.terms_cap
    if kind == "zeta":
        if sig <= 1:
            raise DomainError("zeta series diverges for Re s <= 1")
        eta, _ = _phase_series(mp, mp.mpc(-1), s, mp.mpf(1), digits, cap)
        value = eta / (1 - mp.power(2, 1 - s))
    elif kind == "lerch":
        lam, a = mp.mpf(params["lam"]), mp.mpf(params["a"])
        if not (0 <= lam < 1 and 0 < a <= 1):
            raise DomainError("need 0 <= lambda < 1 and 0 < a <= 1")
        if lam == 0:
            if sig <= 1:
                raise DomainError("Hurwitz series diverges for Re s <= 1")
            value = _plain_series(mp, s, a, digits, cap)
        else:
            if sig <= 0:
                raise DomainError("Lerch series diverges for Re s <= 0")
            value, _ = _phase_series(mp, mp.expjpi(2 * lam), s, a, digits, cap)
    elif kind == "dirichlet":
        value = _dirichlet_series(mp, s, params["values"], digits, cap)
    else:
        raise ValueError(f"unknown series kind {kind!r}")
    return ctx.mp.mpc(value)


def _dirichlet_series(mp, s, values: Sequence, digits: int, cap: int):
    m = len(values)
    chi = [mp.mpc(v) for v in values]
    # chi(n) = sum_r c_r e^{2 pi i r n/m}
    coef = [mp.fsum(chi[n] * mp.expjpi(-2 * mp.mpf(r * n) / m) for n in range(m)) / m
            for r in range(m)]
    principal_part = abs(coef[0]) > mp.mpf(10) ** (-digits)
    if float(s.real) <= (1 if principal_part else 0):
        raise DomainError("Dirichlet series diverges here")
    total = mp.mpc(0)
    for r in range(m):
        if abs(coef[r]) < mp.mpf(10) ** (-2 * digits):
            continue
        if r == 0:
            piece = _plain_series(mp, s, mp.mpf(1), digits, cap)
        else:
            z = mp.expjpi(2 * mp.mpf(r) / m)
            # sum_{n>=1} z^n n^{-s} = z * sum_{n>=0} z^n (n+1)^{-s}
            val, _ = _phase_series(mp, z, s, mp.mpf(1), digits, cap)
            piece = z * val
        total += coef[r] * piece
    return total


def digits_agree(x, y, ctx: EvalContext | None = None) -> int:
    """Number of agreeing significant digits of ``x`` relative to ``y``."""
    if ctx is not None:
        mp = ctx.mp
        working = ctx.working_digits
    else:
        mp = getattr(x, "context", None) or getattr(y, "context", None)
        if mp is None:
            import mpmath
            mp = mpmath.mp
        working = int(mp.prec * LOG10_2)
    x, y = mp.mpc(x), mp.mpc(y)
    diff = abs(x - y)
    if diff == 0:
        return working
    scale = max(abs(y), mp.mpf(10) ** (-working))
    d = mp.floor(-mp.log10(diff / scale))
    return int(min(max(d, 0), working))
