"""Wall time and node counts against t at fixed digits."""
import argparse
import time

from mdezeta import EvalContext
from mdezeta.lerch import LerchParams, lerch
from mdezeta.zeta_rs import zeta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, default=50)
    ap.add_argument("--tmax", type=int, default=8, help="largest exponent of t")
    args = ap.parse_args()
    ctx = EvalContext(args.digits)
    mp = ctx.mp
    print(f"{'t':>8} {'fn':>6} {'N':>7} {'nodes':>6} {'ms':>9}")
    for e in range(2, args.tmax + 1):
        t = mp.mpf(10) ** e
        for name, call in (("zeta", lambda: zeta(mp.mpc(0.6, t), ctx)),
                           ("lerch", lambda: lerch(LerchParams(mp.mpc(0.6, -t), mp.mpf("0.7"),
                                                               mp.mpf("0.3")), ctx))):
            start = time.perf_counter()
            res = call()
            ms = (time.perf_counter() - start) * 1000
            print(f"{'1e%d' % e:>8} {name:>6} {res.n_main:7d} {res.n_nodes:6d} {ms:9.1f}")


if __name__ == "__main__":
    main()
