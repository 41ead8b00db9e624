"""Compare zeta against the Euler-Maclaurin oracle over a (sigma, t) grid."""
import argparse

from mdezeta import EvalContext
from mdezeta.oracle import OracleBudget, em_hurwitz
from mdezeta.zeta_rs import zeta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--digits", type=int, nargs="+", default=[10, 50, 100])
    ap.add_argument("--tmax", type=int, default=4, help="largest exponent of t (oracle stops at 5)")
    args = ap.parse_args()
    for digits in args.digits:
        ctx = EvalContext(digits)
        mp = ctx.mp
        print(f"\ndigits={digits}: correct digits minus requested")
        print("t \\ sigma " + " ".join(f"{k / 10:5.1f}" for k in range(11)))
        for e in range(args.tmax + 1):
            cells = []
            for k in range(11):
                s = mp.mpc(mp.mpf(k) / 10, mp.mpf(10) ** e)
                ref = em_hurwitz(s, 1, OracleBudget(digits=digits + 5), EvalContext(digits + 5))
                err = abs(zeta(s, ctx).value - ref)
                cells.append(f"{-float(mp.log10(err)) - digits:5.1f}" if err else "  inf")
            print(f"{'1e%d' % e:>9} " + " ".join(cells))


if __name__ == "__main__":
    main()
