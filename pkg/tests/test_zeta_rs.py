import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdezeta.errors import PoleError
from mdezeta.mdequad import QuadOverrides
from mdezeta.numkern import EvalContext, chi_zeta
from mdezeta.oracle import digits_agree, direct_series, em_hurwitz
from mdezeta.zeta_rs import main_sum, zeta, zeta_frame


def test_frame_at_thousand():
    ctx = EvalContext(30)
    frame = zeta_frame(ctx.mp.mpc(0.5, 1000), ctx)
    assert complex(frame.r).real == pytest.approx(12.6157, abs=1e-4)
    assert complex(frame.r).imag == pytest.approx(-0.00315, abs=1e-5)
    assert frame.N == 12


def test_frame_real_axis():
    ctx = EvalContext(30)
    frame = zeta_frame(ctx.mp.mpc(4), ctx)
    assert float(frame.r.real) == pytest.approx(1 / math.sqrt(math.pi))
    assert frame.N == 1


@given(st.floats(0, 1), st.floats(20, 1e7))
def test_crossing_between_n_and_next(sigma, t):
    ctx = EvalContext(20)
    frame = zeta_frame(ctx.mp.mpc(sigma, t), ctx)
    assert frame.N < frame.crossing < frame.N + 1
    r = complex(frame.r)
    assert frame.N == math.floor(r.real - r.imag)


def test_frame_near_two_pi_e4():
    ctx = EvalContext(20)
    for sigma in (0, 0.5, 1):
        assert zeta_frame(ctx.mp.mpc(sigma, 2 * math.pi * 1e4), ctx).N in (99, 100)


def test_main_sum():
    ctx = EvalContext(30)
    mp = ctx.mp
    assert main_sum(2, 0, ctx) == 0
    assert main_sum(2, 2, ctx) == 1.25
    s = mp.mpc(2, 10)
    ref = mp.fsum(mp.power(n, -s) for n in range(1, 1001))
    assert digits_agree(main_sum(s, 1000, ctx), ref, ctx) >= 30


def test_zeta_two_via_contour():
    ctx = EvalContext(40)
    res = zeta(2, ctx, method="rs")
    assert res.diagnostics["route"] == "rs"
    assert digits_agree(res.value, ctx.mp.pi**2 / 6, ctx) >= 40


@pytest.mark.parametrize("digits", [30, 100])
def test_against_oracle(digits):
    ctx = EvalContext(digits)
    s = ctx.mp.mpc(0.6 if digits == 100 else 0.5, 1e4 if digits == 100 else 1e3)
    assert digits_agree(zeta(s, ctx).value, em_hurwitz(s, 1, ctx=ctx), ctx) >= digits


def test_against_direct_series_far_up():
    ctx = EvalContext(30)
    s = ctx.mp.mpc(3, 1e5)
    assert digits_agree(zeta(s, ctx).value, direct_series("zeta", {"s": s}, ctx=ctx), ctx) >= 30


def test_pole_correction_gains_digits():
    s = complex(0.5, 1e6)
    ref = zeta(s, EvalContext(60)).value
    ctx = EvalContext(30)
    errs = [abs(zeta(s, ctx, QuadOverrides(alpha=1.0, num_sing=k, h=0.1)).value - ref)
            for k in (0, 1)]
    assert errs[1] < errs[0] * 1e-10


@pytest.mark.parametrize("s", [complex(0.5, 1e3), complex(0.5, 1e6)])
def test_error_estimate_tracks_truth(s):
    ref = zeta(s, EvalContext(80)).value
    ctx = EvalContext(30)
    res = zeta(s, ctx, QuadOverrides(alpha=1.0, h=0.1))
    ratio = float(res.err_estimate) / float(abs(res.value - ref))
    assert 1e-2 < ratio < 1e2


@given(st.floats(0, 1), st.floats(1, 1e4))
def test_conjugation_bitwise(sigma, t):
    ctx = EvalContext(20)
    mp = ctx.mp
    s = mp.mpc(sigma, t)
    assert zeta(mp.conj(s), ctx).value == mp.conj(zeta(s, ctx).value)


@given(st.floats(0.05, 0.95), st.floats(10, 3000))
def test_functional_equation(sigma, t):
    ctx = EvalContext(25)
    mp = ctx.mp
    s = mp.mpc(sigma, t)
    lhs = zeta(s, ctx).value
    rhs = chi_zeta(s, ctx) * zeta(1 - s, ctx).value
    assert digits_agree(lhs, rhs, ctx) >= 24


def test_center_policy_halfinteger():
    ctx = EvalContext(30)
    s = ctx.mp.mpc(0.5, 5000)
    a = zeta(s, ctx).value
    b = zeta(s, ctx, QuadOverrides(center="halfinteger")).value
    assert digits_agree(a, b, ctx) >= 30


def test_special_points():
    ctx = EvalContext(30)
    mp = ctx.mp
    assert zeta(0, ctx).value == -0.5
    assert zeta(-4, ctx).value == 0
    assert digits_agree(zeta(-1, ctx).value, mp.mpf(-1) / 12, ctx) >= 30
    with pytest.raises(PoleError):
        zeta(1, ctx)


def test_first_zero():
    ctx = EvalContext(30)
    t0 = ctx.mp.mpf("14.134725141734693790457251983562470270784257115699")
    assert abs(zeta(ctx.mp.mpc(0.5, t0), ctx).value) < 1e-29


@pytest.mark.parametrize("t", [1e4, 1e6, 1e8])
def test_main_sum_length(t):
    ctx = EvalContext(30)
    res = zeta(ctx.mp.mpc(0.5, t), ctx)
    assert abs(res.n_main - math.sqrt(t / (2 * math.pi))) <= 2


def test_node_count_independent_of_t():
    ctx = EvalContext(50)
    counts = {zeta(ctx.mp.mpc(0.6, t), ctx).n_nodes for t in (1e4, 1e8)}
    assert len(counts) == 1
