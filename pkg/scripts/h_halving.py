"""Print h-halving convergence tables for the three default experiments.

    python scripts/h_halving.py --digits 50 --rows 6
"""
import argparse
from pathlib import Path

from mdezeta.cli import RunRequest, judge, verify_rows
from mdezeta.mdequad import QuadOverrides

DATA = Path(__file__).resolve().parents[1] / "src" / "mdezeta" / "data"


def cases(digits, rows):
    yield "zeta", RunRequest("verify", "0.6+1e6i", digits, verify_function="zeta", verify_rows=rows)
    for alpha, num in ((1.0, 1), (1.0, 0), (0.25, 0), (0.25, 1)):
        yield (f"lerch alpha={alpha} num_sing={num}",
               RunRequest("verify", "0.6-1e6i", digits, lam="0.7", a="0.3",
                          verify_function="lerch", verify_rows=rows,
                          overrides=QuadOverrides(alpha=alpha, num_sing=num)))
    yield "dirichlet chi8_2", RunRequest("verify", "0.6+1e5i", digits, char=str(DATA / "chi8_2.txt"),
                                         verify_function="dirichlet", verify_rows=rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=50)
    ap.add_argument("--rows", type=int, default=6)
    args = ap.parse_args()
    for name, req in cases(args.digits, args.rows):
        rows, floor = verify_rows(req)
        ok, why = judge(rows, floor)
        print(f"\n{name}  s={req.s}  reference {2 * args.digits} digits")
        print(f"{'h':>10} {'nodes':>6} {'log10 err':>10}")
        for r in rows:
            print(f"{r.h:10.5f} {r.nodes:6d} {r.log10_err:10.2f}")
        print(f"-> {'pass' if ok else 'FAIL'} ({why})")


if __name__ == "__main__":
    main()
