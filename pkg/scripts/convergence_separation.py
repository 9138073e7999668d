"""Statistical versus very-thin-ideal convergence of x_n and y_n across horizons.

x_n is -1 on the stretches 2^k..2^k+k-1, y_n is -1 at the powers of two; both are 1
elsewhere.  Both converge statistically to 1, only y_n along the very thin ideal.

    python scripts/convergence_separation.py --max-exp 20
"""
import argparse
from fractions import Fraction

from thinset.convergence import MODES, convergence_report, paper_x, paper_y
from thinset.thinness import tail_min_gap


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-exp", type=int, default=8)
    ap.add_argument("--max-exp", type=int, default=20)
    ap.add_argument("--eps", type=Fraction, default=Fraction(1, 2))
    args = ap.parse_args()

    print("seq,k,N,exceedance,density,bound,tail_min_gap," + ",".join(MODES))
    for k in range(args.min_exp, args.max_exp + 1):
        N = 2**k
        for seq in (paper_x(), paper_y()):
            (r,) = convergence_report(seq, 1, [args.eps], N)
            ex = r.exceedance
            density = Fraction(len(ex), N)
            bound = Fraction((k + 1) * (k + 2), 2**k)
            modes = ",".join(f"{r.modes[m]['status']}" for m in MODES)
            print(f"{seq},{k},{N},{len(ex)},{float(density):.3e},{float(bound):.3e},"
                  f"{tail_min_gap(ex, N)},{modes}")


if __name__ == "__main__":
    main()
