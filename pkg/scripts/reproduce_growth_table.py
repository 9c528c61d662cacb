"""Best letter-wise uniform compositions for k = 1..15, with tie status.

    python scripts/reproduce_growth_table.py --bases 0123 --k-max 10
"""
import argparse
import time

from wordavoid.growth import maximizer


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=15)
    ap.add_argument("--bases", default="01")
    ap.add_argument("--eps", type=float, default=1e-5)
    args = ap.parse_args()

    print("k\tx\tl0\tl1\tlog10_m0\tlog10_m1\tbeta\tunique")
    for k in range(1, args.k_max + 1):
        t = time.time()
        best, unique = maximizer(k, args.bases, eps=args.eps)
        print(f"{k}\t{best.x}\t{best.lengths[0]}\t{best.lengths[1]}\t{best.counts[0].log10():.4f}\t"
              f"{best.counts[1].log10():.4f}\t{best.beta_truncated}\t{unique}\t# {time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
