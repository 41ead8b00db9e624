"""Arbitrary-precision complex substrate: evaluation contexts, powers, log-gamma.

Every numeric value is an ``mpc`` owned by the ``MPContext`` of an
:class:`EvalContext`.  Precision is never read from mpmath's global context.
"""
from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import DomainError, PoleError, PrecisionError

LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class EvalContext:
    """Target accuracy plus the private mpmath context that carries it.

    ``working_bits`` covers ``target_digits + guard_digits`` decimal digits and
    is never less than the bits of ``target_digits`` plus 64.
    """

    target_digits: int
    guard_digits: int = 20
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 1:
            raise ValueError("guard_digits must be positive")
        ctx = mpmath.MPContext()
        ctx.prec = self.working_bits
        object.__setattr__(self, "mp", ctx)

    @property
    def working_bits(self) -> int:
        bits = math.ceil((self.target_digits + self.guard_digits) * LOG2_10)
        return max(bits, math.ceil(self.target_digits * LOG2_10) + 64)

    @property
    def working_digits(self) -> int:
        return int(self.working_bits / LOG2_10)

    def with_digits(self, target_digits: int) -> "EvalContext":
        return EvalContext(target_digits, self.guard_digits)

    def mpf(self, x):
        return self.mp.mpf(x)

    def mpc(self, x, y=0):
        if isinstance(x, str):
            return parse_complex(x, self)
        if y == 0:
            return self.mp.mpc(x)
        return self.mp.mpc(x, y)


_REAL_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def _split_complex(text: str) -> tuple[str, str]:
    body = text.strip()
    if not body:
        raise ValueError("empty complex literal")
    if body[-1] not in "ij":
        return body, "0"
    body = body[:-1]
    # the imaginary part starts at the last sign not belonging to an exponent
    cut = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    re_part, im_part = body[:cut], body[cut:]
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return re_part or "0", im_part


def parse_complex(text: str, ctx: EvalContext):
    """Parse ``<re>[+|-]<im>i`` (scientific notation allowed) at working precision.

    Decimal literals are converted by mpmath at ``ctx.working_bits``, so
    ``0.6-1e8i`` yields the correctly rounded value of 0.6.
    """
    re_part, im_part = _split_complex(text)
    if not (_REAL_RE.match(re_part) and _REAL_RE.match(im_part)) or " " in text.strip():
        raise ValueError(f"cannot parse complex literal {text!r}")
    mp = ctx.mp
    return mp.mpc(mp.mpf(re_part), mp.mpf(im_part))


# Bernoulli numbers B_2, B_4, ... as exact rationals (index k -> B_{2k}).
_bern_lock = threading.Lock()
_bern_cache: tuple[Fraction, ...] = ()


def _tangent_numbers(n: int) -> list[int]:
    # Brent-Harvey in-place recurrence; t[k] is the k-th tangent number.
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


def bernoulli_2k(count: int) -> tuple[Fraction, ...]:
    """Return ``(B_2, B_4, ..., B_{2*count})`` from the shared cache.

    Readers never block on each other; extension is serialized.
    """
    global _bern_cache
    cache = _bern_cache
    if len(cache) >= count:
        return cache
    with _bern_lock:
        if len(_bern_cache) < count:
            n = max(count, 2 * len(_bern_cache), 16)
            t = _tangent_numbers(n)
            vals = []
            for k in range(1, n + 1):
                four = 1 << (2 * k)
                b = Fraction(2 * k * t[k], four * (four - 1))
                vals.append(b if k % 2 == 1 else -b)
            _bern_cache = tuple(vals)
        return _bern_cache


def _is_nonpositive_integer(z) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == int(z.real)


def stirling_threshold(ctx: EvalContext) -> int:
    return max(20, ctx.working_bits // 8)


def ln_gamma(z, ctx: EvalContext):
    """Principal branch of log Gamma(z) at the context's working precision.

    The argument is shifted upward until ``Re z >= max(20, bits/8)`` and the
    Stirling series is summed there; the shift is undone with a sum of
    principal logarithms, which keeps the cut on the negative real axis.
    """
    mp = ctx.mp
    z = mp.mpc(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log-gamma pole at z={mp.nstr(z.real, 10)}")
    shift = max(0, math.ceil(stirling_threshold(ctx) - float(z.real)))
    w = z + shift
    res = (w - 0.5) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
    tol = mp.ldexp(1, -ctx.working_bits) * max(1, abs(res))
    w2 = w * w
    wpow = w
    max_terms = int(math.pi * max(float(abs(w)), 1.0)) + 8
    bern = bernoulli_2k(min(max_terms, 16))
    for k in range(1, max_terms + 1):
        if k > len(bern):
            bern = bernoulli_2k(2 * k)
        b = bern[k - 1]
        term = mp.mpf(b.numerator) / (b.denominator * (2 * k) * (2 * k - 1)) / wpow
        res += term
        if abs(term) < tol:
            break
        wpow *= w2
    else:
        raise PrecisionError("Stirling series did not converge at working precision")
    if shift:
        acc = mp.mpc(0)
        for j in range(shift):
            acc += mp.log(z + j)
        res -= acc
    return res


def cpow(w, s, ctx: EvalContext, angle=None):
    """``w**s = exp(s log w)``, principal log unless ``angle`` gives arg(w)."""
    mp = ctx.mp
    w = mp.mpc(w)
    s = mp.mpc(s)
    if w == 0:
        if s.real > 0:
            return mp.mpc(0)
        raise DomainError("0**s with Re(s) <= 0")
    if angle is None:
        logw = mp.log(w)
    else:
        logw = mp.mpc(mp.log(abs(w)), angle)
    return mp.exp(s * logw)


def gamma_ratio_log(num, den, ctx: EvalContext):
    """log(Gamma(num)/Gamma(den)), principal log-gamma branches."""
    return ln_gamma(num, ctx) - ln_gamma(den, ctx)


def chi_zeta(s, ctx: EvalContext):
    """pi^(s-1/2) Gamma((1-s)/2)/Gamma(s/2), evaluated in log space."""
    mp = ctx.mp
    s = mp.mpc(s)
    lg = (s - 0.5) * mp.log(mp.pi) + gamma_ratio_log((1 - s) / 2, s / 2, ctx)
    return mp.exp(lg)
