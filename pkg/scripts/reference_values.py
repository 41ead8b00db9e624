"""Recompute the two 50-digit reference values and compare digit by digit."""
import time
from pathlib import Path

from mdezeta import EvalContext, load_character
from mdezeta.cli import format_value
from mdezeta.dirichlet import l_hurwitz, l_siegel
from mdezeta.lerch import LerchParams, lerch

DATA = Path(__file__).resolve().parents[1] / "src" / "mdezeta" / "data"

LERCH = ("-1.642781971616430577623708444116579252538445671826",
         "-4.4985920038844187868475845606656684449691018721039")
DIRICHLET = ("0.34580337824253257378760299316255985284400906588262",
             "-1.0760292785488344655945930583565334551150785880025")


def show(label, value, reference, ctx):
    re_s, im_s = format_value(value, 50, ctx)
    print(label)
    for ours, theirs in zip((re_s, im_s), reference):
        same = ctx.mp.mpf(ours) == ctx.mp.mpf(theirs)
        print(f"  ours      {ours}\n  reference {theirs}  {'same' if same else 'differs'}")


def timed(fn):
    start = time.perf_counter()
    val = fn()
    return val, time.perf_counter() - start


def main():
    ctx = EvalContext(50)
    mp = ctx.mp
    params = LerchParams(mp.mpc("0.6", "-1e8"), mp.mpf("0.7"), mp.mpf("0.3"))
    res, secs = timed(lambda: lerch(params, ctx))
    show(f"lerch(0.6-1e8i, 0.7, 0.3)  [{secs:.2f} s, {res.n_nodes} nodes]", res.value, LERCH, ctx)

    chi = load_character(DATA / "chi7_5.txt")
    s = mp.mpc("0.6", "1e8")
    for name, fn in (("siegel", l_siegel), ("hurwitz", l_hurwitz)):
        res, secs = timed(lambda: fn(s, chi, ctx))
        show(f"L(0.6+1e8i, chi_7,5) {name} route  [{secs:.2f} s]", res.value, DIRICHLET, ctx)
    print("\nnote: the reference Dirichlet value matches conj(L), i.e. L(0.6-1e8i, conj chi)")


if __name__ == "__main__":
    main()
