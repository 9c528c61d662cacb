"""Bounded critical-exponent scan of prefixes of g(f^omega(0)).

Reports the largest exponent among factors with period <= max_period for
each prefix length. This is a finite check, not a statement about the
infinite word.

    python scripts/critical_exponent_scan.py --lengths 10000 20000 48114
"""
import argparse
import time

from wordavoid.detectors import max_exponent_up_to
from wordavoid.words import F_MORPHISM, G_MORPHISM, apply, prefix_of_length, word_str


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lengths", type=int, nargs="+", default=[10000, 20000])
    ap.add_argument("--period-fraction", type=float, default=0.3,
                    help="max period as a fraction of the prefix length")
    args = ap.parse_args()

    n = max(args.lengths)
    word = apply(G_MORPHISM, prefix_of_length(F_MORPHISM, 0, n // G_MORPHISM.min_length + 2))
    for length in args.lengths:
        w = word[:length]
        max_period = int(length * args.period_fraction)
        t = time.time()
        e, rep = max_exponent_up_to(w, max_period)
        witness = word_str(rep.factor(w))
        print(f"length {length}, max period {max_period}: exponent {e} "
              f"(period {rep.block} at {rep.position}, {witness[:30]}) in {time.time() - t:.2f}s")


if __name__ == "__main__":
    main()
