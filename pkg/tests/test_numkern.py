import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdezeta.errors import PoleError
from mdezeta.numkern import (EvalContext, bernoulli_2k, chi_zeta, cpow, ln_gamma,
                             parse_complex)

finite = st.floats(allow_nan=False, allow_infinity=False)


def mod_2pi_i(mp, z):
    """Distance of z from the lattice 2*pi*i*Z."""
    k = mp.nint(z.imag / (2 * mp.pi))
    return abs(z - 2j * mp.pi * k)


def test_working_bits_floor():
    for d in (1, 10, 50, 300):
        ctx = EvalContext(d)
        assert ctx.working_bits >= math.ceil(d * math.log2(10)) + 64
        assert ctx.mp.prec == ctx.working_bits


def test_contexts_are_private():
    a, b = EvalContext(20), EvalContext(200)
    assert a.mp is not b.mp
    assert mpmath.mp.prec == 53


@pytest.mark.parametrize("text,expected", [
    ("2", (2, 0)), ("0.6-1e8i", (0.6, -1e8)), ("-3.5+2i", (-3.5, 2)),
    ("1e-3-2.5e+4i", (1e-3, -2.5e4)), ("i", (0, 1)), ("-i", (0, -1)), ("7i", (0, 7)),
])
def test_parse_complex(text, expected):
    z = parse_complex(text, EvalContext(30))
    assert complex(z) == complex(*expected)


@pytest.mark.parametrize("text", ["", "abc", "1+", "1 + 2i", "1+2j3", "--1"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text, EvalContext(15))


def test_parse_rounds_at_working_precision():
    ctx = EvalContext(60)
    assert parse_complex("0.6", ctx).real == ctx.mp.mpf("0.6")


def test_bernoulli_matches_known():
    b = bernoulli_2k(6)
    assert b[:6] == (Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
                     Fraction(5, 66), Fraction(-691, 2730))


def test_bernoulli_against_mpmath():
    b = bernoulli_2k(40)
    for k in (10, 25, 40):
        assert mpmath.mpf(b[k - 1].numerator) / b[k - 1].denominator == mpmath.bernoulli(2 * k)


@pytest.mark.parametrize("z,expected", [(1, lambda mp: 0), (0.5, lambda mp: mp.log(mp.pi) / 2),
                                        (5, lambda mp: mp.log(24))])
def test_ln_gamma_values(z, expected):
    ctx = EvalContext(50)
    mp = ctx.mp
    assert abs(ln_gamma(mp.mpf(z), ctx) - expected(mp)) < mp.mpf(10) ** -50


def test_ln_gamma_pole():
    with pytest.raises(PoleError):
        ln_gamma(-3, EvalContext(20))


def test_ln_gamma_large_imaginary_against_mpmath():
    ctx = EvalContext(40)
    mp = ctx.mp
    for z in (mp.mpc(0.3, 1e8), mp.mpc(-7.5, 40), mp.mpc(0.5, -1e5)):
        assert abs(ln_gamma(z, ctx) - mp.loggamma(z)) < mp.mpf(10) ** -40 * abs(z)


@given(st.floats(0.01, 0.99), st.floats(-50, 50).filter(lambda y: abs(y) > 1e-3))
def test_reflection(x, y):
    ctx = EvalContext(40)
    mp = ctx.mp
    z = mp.mpc(x, y)
    lhs = ln_gamma(z, ctx) + ln_gamma(1 - z, ctx) - mp.log(mp.pi / mp.sin(mp.pi * z))
    assert mod_2pi_i(mp, lhs) < mp.mpf(10) ** (-ctx.working_digits + 5)


@given(st.floats(0.05, 20), st.floats(-100, 100))
def test_duplication(x, y):
    ctx = EvalContext(40)
    mp = ctx.mp
    z = mp.mpc(x, y)
    rhs = (1 - 2 * z) * mp.log(2) + mp.log(mp.pi) / 2 + ln_gamma(2 * z, ctx)
    lhs = ln_gamma(z, ctx) + ln_gamma(z + 0.5, ctx)
    scale = max(1, abs(rhs))
    assert mod_2pi_i(mp, lhs - rhs) < mp.mpf(10) ** (-ctx.working_digits + 5) * scale


def q_of_s(s, ctx):
    """chi(s) * chi(1-s); identically 1 by the functional equation."""
    return chi_zeta(s, ctx) * chi_zeta(1 - s, ctx)


@given(st.floats(0.01, 0.99), st.floats(-1000, 1000))
def test_q_is_one(sigma, t):
    ctx = EvalContext(30)
    mp = ctx.mp
    assert abs(q_of_s(mp.mpc(sigma, t), ctx) - 1) < mp.mpf(10) ** (-ctx.working_digits + 5)


def test_chi_zeta_against_direct():
    ctx = EvalContext(30)
    mp = ctx.mp
    s = mp.mpc(0.3, 7)
    direct = mp.zeta(s) / mp.zeta(1 - s)
    assert abs(chi_zeta(s, ctx) - direct) < mp.mpf(10) ** -28


def test_cpow_examples():
    ctx = EvalContext(30)
    mp = ctx.mp
    assert cpow(4, 0.5, ctx) == 2
    assert abs(cpow(-1, 0.5, ctx, angle=-mp.pi) - mp.mpc(0, -1)) < mp.mpf(10) ** -40
    assert abs(cpow(1j, 1j, ctx) - mp.exp(-mp.pi / 2)) < mp.mpf(10) ** -40


@given(st.complex_numbers(max_magnitude=100).filter(lambda w: abs(w) > 1e-3),
       st.complex_numbers(max_magnitude=5), st.complex_numbers(max_magnitude=5))
def test_cpow_additive_exponent(w, s1, s2):
    ctx = EvalContext(30)
    mp = ctx.mp
    s1, s2 = mp.mpc(s1), mp.mpc(s2)
    lhs = cpow(w, s1 + s2, ctx)
    rhs = cpow(w, s1, ctx) * cpow(w, s2, ctx)
    assert abs(lhs - rhs) <= mp.mpf(10) ** (-ctx.working_digits + 5) * max(1, abs(rhs))
