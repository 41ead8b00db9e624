import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdezeta.dirichlet import (DirichletCharacter, _lambda_line, all_characters,
                               analyze_character, check_primitive, dirichlet_l, l_hurwitz,
                               l_siegel, parse_character_text, parse_entry, siegel_frame,
                               w_eval)
from mdezeta.errors import CharacterError, DomainError, PoleError
from mdezeta.mdequad import QuadOverrides
from mdezeta.numkern import EvalContext
from mdezeta.oracle import digits_agree, direct_series
from mdezeta.zeta_rs import zeta

CATALAN = "0.91596559417721901505460351493238411077414937428167"
PRIMITIVE_COUNTS = {1: 1, 2: 0, 3: 1, 4: 1, 5: 3, 6: 0, 7: 5, 8: 2, 9: 4, 10: 0,
                    11: 9, 12: 1, 13: 11, 15: 3, 16: 4}


def primitive(m):
    return [c for c in all_characters(m) if c.is_primitive()]


def primes_below(n):
    sieve = bytearray([1]) * n
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [p for p in range(n) if sieve[p]]


def test_bundled_files(characters):
    assert set(characters) == {"chi4", "chi7_5", "chi8_2"}
    ctx = EvalContext(30)
    for chi in characters.values():
        assert chi.is_primitive()
        assert abs(abs(chi.gauss_sum(ctx)) ** 2 - chi.m) < 1e-40


def test_chi8_2(characters):
    ctx = EvalContext(30)
    chi = characters["chi8_2"]
    assert chi.parity_a == 0
    C = chi.gauss_sum(ctx)
    assert abs(C - 2 * ctx.mp.sqrt(2)) < 1e-40


def test_chi7_5(characters):
    ctx = EvalContext(30)
    mp = ctx.mp
    chi = characters["chi7_5"]
    w = mp.expjpi(mp.mpf(1) / 3)
    expected = [0, 1, w**2, -w, -w, w**2, 1]
    assert all(abs(chi(n, ctx) - v) < 1e-40 for n, v in enumerate(expected))
    assert chi.parity_a == 0


def test_chi4(characters):
    chi = characters["chi4"]
    assert chi.parity_a == 1
    assert abs(abs(chi.gauss_sum(EvalContext(20))) ** 2 - 4) < 1e-30


@pytest.mark.parametrize("text,expected", [
    ("0", None), ("1", Fraction(0)), ("-1", Fraction(1, 2)), ("e(1/3)", Fraction(1, 3)),
    ("2/3", Fraction(2, 3)), ("e(-1/6)", Fraction(5, 6)),
])
def test_parse_entry_phases(text, expected):
    val = parse_entry(text)
    if expected is None or text in ("1", "-1"):
        chi = DirichletCharacter.from_values([0, 1, val] if text == "-1" else [0, 1, 1], 3) \
            if text != "0" else None
        if chi is not None:
            assert chi.phases[2] == (expected if text == "-1" else Fraction(0))
    else:
        assert val == expected


def test_parse_complex_entries_snap():
    text = "m=7\nvalues=0,1,-0.5+0.8660254037844386i,-0.5-0.8660254037844386i," \
           "-0.5-0.8660254037844386i,-0.5+0.8660254037844386i,1"
    chi = parse_character_text(text)
    assert chi.phases[2] == Fraction(1, 3)


def test_shorthand_equals_exponential(characters):
    chi = parse_character_text("# comment\nm=7\nvalues=0,1,1/3,2/3,2/3,1/3,1\n")
    assert chi == characters["chi7_5"]


@pytest.mark.parametrize("text", [
    "m=4\nvalues=0,1,0",            # wrong length
    "m=4\nvalues=1,1,0,-1",         # chi(0) != 0
    "m=4\nvalues=0,-1,0,1",         # chi(1) != 1
    "m=5\nvalues=0,1,1,-1,-1",      # not multiplicative
    "m=5\nvalues=0,1,2,1,1",        # not unimodular
    "values=0,1\nm=2",              # order of lines
    "m=x\nvalues=0",
    "m=3\nvalues=0,1,banana",
])
def test_bad_character_files(text):
    with pytest.raises(CharacterError):
        parse_character_text(text)


@pytest.mark.parametrize("m", sorted(PRIMITIVE_COUNTS))
def test_character_counts(m):
    chars = all_characters(m)
    phi = sum(1 for n in range(1, m + 1) if math.gcd(n, m) == 1)
    assert len(chars) == phi == len(set(chars))
    assert len(primitive(m)) == PRIMITIVE_COUNTS[m]


@given(st.sampled_from([3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16]), st.data())
def test_gauss_sum_and_parity(m, data):
    ctx = EvalContext(30)
    chi = data.draw(st.sampled_from(primitive(m)))
    assert abs(abs(chi.gauss_sum(ctx)) ** 2 - m) < 1e-40
    assert chi.parity_a == (0 if chi(m - 1, ctx) == 1 else 1)
    assert abs(chi(m - 1, ctx) - (1 - 2 * chi.parity_a)) < 1e-40


def test_imprimitive_rejected_for_siegel_only():
    ctx = EvalContext(20)
    principal4 = DirichletCharacter.from_values([0, 1, 0, 1])
    assert not principal4.is_primitive()
    with pytest.raises(CharacterError):
        check_primitive(principal4, ctx)
    with pytest.raises(CharacterError):
        l_siegel(ctx.mp.mpc(0.5, 10), principal4, ctx)
    with pytest.raises(CharacterError):
        analyze_character(4, [0, 1, 0, 1])
    # L for the principal character mod 4 is (1 - 2^{-s}) zeta(s)
    s = ctx.mp.mpc(0.5, 10)
    expected = (1 - ctx.mp.power(2, -s)) * zeta(s, ctx).value
    assert digits_agree(l_hurwitz(s, principal4, ctx).value, expected, ctx) >= 20


@given(st.sampled_from([3, 4, 5, 7, 8]), st.data(), st.floats(-30, 30), st.floats(-3, 3))
def test_w_parity(m, data, x, y):
    ctx = EvalContext(30)
    chi = data.draw(st.sampled_from(primitive(m)))
    z = ctx.mp.mpc(x, y)
    if min(abs(z - round(x)), abs(z + round(x))) < 1e-6:
        return
    lhs = w_eval(-z, chi, ctx) + chi(m - 1, ctx) * w_eval(z, chi, ctx)
    assert abs(lhs) < 1e-30 * max(1, abs(w_eval(z, chi, ctx)))


@given(st.sampled_from([4, 5, 7]), st.data(), st.floats(-10, 10), st.floats(-2, 2))
def test_w_against_cot_form(m, data, x, y):
    ctx = EvalContext(30)
    mp = ctx.mp
    chi = data.draw(st.sampled_from(primitive(m)))
    z = mp.mpc(x, y)
    if abs(y) < 1e-3 and abs(x - round(x)) < 1e-3:
        return
    cot = mp.pi / (2 * m) * mp.fsum(
        chi(n, ctx) * mp.expjpi(-mp.mpf(n * n) / m) * mp.cot(mp.pi * (z - n) / (2 * m))
        for n in range(1, 2 * m + 1))
    assert abs(w_eval(z, chi, ctx) - cot) < 1e-28 * max(1, abs(cot))


def test_frame_main_sum_length(characters):
    ctx = EvalContext(30)
    mp = ctx.mp
    s = mp.mpc(0.6, 1e5)
    frame = siegel_frame(s, characters["chi7_5"], ctx)
    r = mp.sqrt(7 * s / (2j * mp.pi))
    assert frame.N == math.floor(r.real - r.imag)
    assert abs(frame.N - math.sqrt(7e5 / (2 * math.pi))) <= 2


def test_zero_residue_poles_skipped(characters):
    ctx = EvalContext(20)
    chi = characters["chi8_2"]
    _, frame, line = _lambda_line(ctx.mp.mpc(0.6, 1e4), chi, ctx, QuadOverrides(num_sing=3))
    assert line.removed
    for p in line.removed:
        k = round(float(frame.plan.z_of_x(p.location_x, ctx).real))
        assert k % 2 == 1


def test_known_constants(characters):
    ctx = EvalContext(50)
    mp = ctx.mp
    chi = characters["chi4"]
    assert digits_agree(l_siegel(1, chi, ctx).value, mp.pi / 4, ctx) >= 50
    assert mp.nstr(l_siegel(2, chi, ctx).value.real, 50) == CATALAN
    assert mp.nstr(l_hurwitz(2, chi, ctx).value.real, 50) == CATALAN
    ref = direct_series("dirichlet", {"s": 2, "values": chi.values(ctx)}, ctx=ctx)
    assert digits_agree(l_siegel(2, chi, ctx).value, ref, ctx) >= 50


def test_trivial_character_is_zeta():
    ctx = EvalContext(30)
    chi = DirichletCharacter.from_values([1], 1)
    for s in (ctx.mp.mpc(0.5, 100), ctx.mp.mpc(0.3, -1000)):
        z = zeta(s, ctx).value
        assert digits_agree(l_siegel(s, chi, ctx).value, z, ctx) >= 30
        assert digits_agree(l_hurwitz(s, chi, ctx).value, z, ctx) >= 30
    with pytest.raises(PoleError):
        l_siegel(1, chi, ctx)
    with pytest.raises(PoleError):
        l_hurwitz(1, chi, ctx)


@pytest.mark.parametrize("digits", [50, 100])
@pytest.mark.parametrize("t", [1e3, 1e5])
def test_dual_route_grid(digits, t):
    ctx = EvalContext(digits)
    s = ctx.mp.mpc(0.6, t)
    for m in (3, 4, 5, 7, 8):
        for chi in primitive(m):
            a = l_siegel(s, chi, ctx).value
            b = l_hurwitz(s, chi, ctx).value
            assert digits_agree(a, b, ctx) >= digits, (m, chi.phases)


@given(st.sampled_from([4, 5, 7, 8]), st.data(), st.floats(0, 1), st.floats(-2000, 2000))
def test_conjugation(m, data, sigma, t):
    ctx = EvalContext(20)
    mp = ctx.mp
    chi = data.draw(st.sampled_from(primitive(m)))
    s = mp.mpc(sigma, t)
    lhs = l_siegel(mp.conj(s), chi.conj(), ctx).value
    rhs = mp.conj(l_siegel(s, chi, ctx).value)
    assert digits_agree(lhs, rhs, ctx) >= 20


@pytest.mark.parametrize("name", ["chi4", "chi7_5", "chi8_2"])
def test_euler_product(characters, name):
    ctx = EvalContext(20)
    mp = ctx.mp
    chi = characters[name]
    s = mp.mpc(3, 2)
    prod = mp.mpc(1)
    for p in primes_below(10**4):
        prod /= 1 - chi(p, ctx) * mp.power(p, -s)
    val = l_siegel(s, chi, ctx, method="siegel").value
    # tail of log L is below sum_{n >= 1e4} n^{-3} < 1e-8
    assert abs(val / prod - 1) < 1e-8


def test_dispatch(characters):
    ctx = EvalContext(20)
    chi = characters["chi4"]
    s = ctx.mp.mpc(0.5, 50)
    assert dirichlet_l(s, chi, ctx, "siegel").diagnostics["route"] == "siegel"
    assert dirichlet_l(s, chi, ctx, "hurwitz").value == l_hurwitz(s, chi, ctx).value
    with pytest.raises(ValueError):
        dirichlet_l(s, chi, ctx, "magic")


def test_nonprincipal_at_one_needs_siegel(characters):
    with pytest.raises(DomainError):
        l_hurwitz(1, characters["chi8_2"], EvalContext(20))
