"""Longest binary words avoiding abelian k-powers and ordinary j-powers.

    python scripts/longest_word.py 4 3
    python scripts/longest_word.py 3 3 --node-cap 1000000
"""
import argparse
import time

from wordavoid.errors import SearchBudgetExceeded
from wordavoid.detectors import search_longest_avoiding


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("abelian", type=int)
    ap.add_argument("ordinary", type=int)
    ap.add_argument("--node-cap", type=int, default=10 ** 8)
    args = ap.parse_args()

    t = time.time()
    try:
        n, words = search_longest_avoiding(args.abelian, args.ordinary, args.node_cap)
    except SearchBudgetExceeded as exc:
        print(f"no bound found: {exc.nodes} nodes, longest seen {exc.best_length}")
        return
    print(f"max length {n}, {len(words)} words, {time.time() - t:.2f}s")
    for w in words:
        print(w)


if __name__ == "__main__":
    main()
