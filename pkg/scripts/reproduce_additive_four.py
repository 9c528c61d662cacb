"""Run the additive-power decision procedure on the ternary f / binary g pair.

    python scripts/reproduce_additive_four.py --k 4 --out-dir runs/k4
"""
import argparse
import json
import logging
import os
import time

from wordavoid.decision import DecideConfig, decide_additive_k_avoidance
from wordavoid.words import F_MORPHISM, G_MORPHISM


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[4])
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out-dir")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    for k in args.k:
        t = time.time()
        rep = decide_additive_k_avoidance(F_MORPHISM, G_MORPHISM, 0, k, DecideConfig(threads=args.threads))
        d = rep.to_dict()
        print(f"k={k}: {rep.verdict} in {time.time() - t:.1f}s")
        if rep.ancestors is not None:
            print(f"  outer parents {d['outer_parent_count']}, closure {d['ancestor_count']}, "
                  f"rounds {d['generation_log']}, max delta {d['max_delta']}, "
                  f"max inner bound {d['max_inner_bound']}, factor iterate {d['factor_iterate']}")
            print(f"  template route ok={d['template_route']['ok']} "
                  f"({d['template_route']['loose_templates']} loose), "
                  f"image route ok={d['image_route']['ok']}")
        if rep.witness:
            print(f"  witness {rep.witness['word']} from {rep.witness['source']}")
        if args.out_dir:
            out = os.path.join(args.out_dir, f"k{k}")
            os.makedirs(out, exist_ok=True)
            with open(os.path.join(out, "report.json"), "w") as fh:
                json.dump(d, fh, indent=1, sort_keys=True)
            if rep.ancestors is not None:
                rep.ancestors.write_jsonl(os.path.join(out, "ancestors.jsonl"))


if __name__ == "__main__":
    main()
