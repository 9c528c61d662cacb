"""Command-line front end.

Every subcommand writes a ``# {...}`` header line carrying its resolved
configuration, then its payload. Exit codes: 0 clean / property holds,
1 witness or counterexample, 2 usage or hypothesis error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import __version__
from .decision import AVOIDS, WITNESS, DecideConfig, decide_additive_k_avoidance
from .detectors import scan_word, search_longest_avoiding
from .errors import HypothesisViolated, SearchBudgetExceeded, WordError
from .growth import GOLDEN_FREQUENCY, table_rows
from .templates import Template, ancestor_closure, bound_B, delta, parent_derivations, splits_of
from .words import (
    F_MORPHISM,
    G_MORPHISM,
    H_MORPHISM,
    apply,
    as_word,
    count_in_iterate,
    format_morphism,
    iterate_prefix,
    letter_frequency,
    parse_morphism,
    prefix_of_length,
    word_str,
)

EXIT_OK, EXIT_WITNESS, EXIT_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str | None = None


class Output:
    def __init__(self, args, config: RunConfig):
        self.fh = open(args.output, "w") if args.output else sys.stdout
        if not args.no_timestamp:
            config.timestamp = time.strftime("%Y-%m-%dT%H:%M:%S")
        self.write("# " + json.dumps(asdict(config), sort_keys=True))

    def write(self, line: str = ""):
        self.fh.write(line + "\n")

    def close(self):
        if self.fh is not sys.stdout:
            self.fh.close()


NAMED = {"f": F_MORPHISM, "g": G_MORPHISM, "h": H_MORPHISM}


def _morphism(spec, path=None):
    """A morphism from a file, one of the names f, g, h, or an inline spec."""
    if path:
        with open(path) as fh:
            spec = fh.read()
    if spec.strip() in NAMED:
        return NAMED[spec.strip()]
    return parse_morphism(spec)


def _read_word(args) -> tuple:
    if args.word is not None:
        return as_word(args.word.strip())
    fh = open(args.file) if args.file else sys.stdin
    try:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    finally:
        if fh is not sys.stdin:
            fh.close()
    return as_word("".join(lines))


def _options(args) -> dict:
    skip = {"func", "output", "no_timestamp", "verbose", "subcommand"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def cmd_expand(args, out: Output) -> int:
    h = _morphism(args.morphism, args.morphism_file)
    if args.length is not None:
        w = prefix_of_length(h, args.seed, args.length)
    else:
        w = iterate_prefix(h, args.seed, args.iters)
    if args.outer is not None:
        w = apply(_morphism(args.outer), w)
    out.write(word_str(w))
    return EXIT_OK


def cmd_detect(args, out: Output) -> int:
    w = _read_word(args)
    cert = scan_word(w, args.kind, args.k, description=f"input word of length {len(w)}")
    if args.format == "json":
        out.write(json.dumps(cert.to_dict(), sort_keys=True))
    else:
        out.write(cert.verdict if cert.clean else f"witness {json.dumps(cert.witness.to_dict())}")
    return EXIT_OK if cert.clean else EXIT_WITNESS


def _pair(args):
    f = _morphism(args.f) if args.f else F_MORPHISM
    g = _morphism(args.g) if args.g else G_MORPHISM
    return f, g


def cmd_decide(args, out: Output) -> int:
    f, g = _pair(args)
    config = DecideConfig(ancestor_cap=args.cap, threads=args.threads)
    try:
        report = decide_additive_k_avoidance(f, g, args.seed, args.k, config)
    except HypothesisViolated as exc:
        out.write(json.dumps({"verdict": "HYPOTHESIS_VIOLATED", "clause": exc.clause}))
        return EXIT_ERROR
    data = report.to_dict()
    if args.out_dir and report.ancestors is not None:
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, "ancestors.jsonl")
        report.ancestors.write_jsonl(path)
        with open(os.path.join(args.out_dir, "report.json"), "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
        data["ancestor_file"] = path
    if args.format == "json":
        out.write(json.dumps(data, sort_keys=True))
    else:
        out.write(f"verdict\t{report.verdict}")
        out.write(f"outer_parents\t{report.outer_parent_count}")
        if report.ancestors is not None:
            log = " -> ".join(f"+{n}" for n in report.ancestors.log)
            out.write(f"generation_log\t{report.outer_parent_count} -> {log}")
            out.write(f"ancestors\t{len(report.ancestors)}")
            out.write(f"max_delta\t{report.max_delta}")
            out.write(f"max_inner_bound\t{report.max_inner_bound}")
        if report.witness:
            out.write(f"witness\t{report.witness['word']}")
        if "ancestor_file" in data:
            out.write(f"ancestor_file\t{data['ancestor_file']}")
    if report.verdict == AVOIDS:
        return EXIT_OK
    return EXIT_WITNESS if report.verdict == WITNESS else EXIT_ERROR


def cmd_ancestors(args, out: Output) -> int:
    f, g = _pair(args)
    t0 = Template.zero(args.k)
    gp = parent_derivations(g, t0)
    anc = ancestor_closure(f, gp, cap=args.cap)
    anc.write_jsonl(args.out)
    out.write(f"outer_parents\t{len(gp)}")
    out.write(f"generation_log\t{len(gp)} -> " + " -> ".join(f"+{n}" for n in anc.log))
    out.write(f"ancestors\t{len(anc)}")
    out.write(f"max_delta\t{max((delta(t) for t in anc), default=0)}")
    out.write(f"max_inner_bound\t{max((bound_B(f, t) for t in anc), default=0)}")
    out.write(f"file\t{args.out}")
    return EXIT_OK


def cmd_splits(args, out: Output) -> int:
    h = _morphism(args.morphism, args.morphism_file)
    A = as_word(args.letter)
    middle = None if args.middle is None else as_word(args.middle)
    for sp in splits_of(h, A):
        if middle is None or sp.a == middle:
            out.write("\t".join(word_str(x) or "e" for x in (sp.p, sp.a, sp.s)))
    return EXIT_OK


def _k_range(text: str):
    if "-" in text:
        lo, hi = text.split("-")
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def cmd_growth(args, out: Output) -> int:
    if not 0 < args.eps < args.alpha < 1:
        raise WordError(f"need 0 < eps < alpha < 1 (eps={args.eps}, alpha={args.alpha})")
    out.write("\t".join(["k", "x", "l0", "l1", "log10_m0", "log10_m1", "beta"]))
    for row in table_rows(_k_range(args.k), args.bases, args.alpha, args.eps):
        out.write("\t".join([str(row["k"]), row["x"], str(row["l0"]), str(row["l1"]),
                             f"{row['log10_m0']:.6f}", f"{row['log10_m1']:.6f}", row["beta"]]))
    return EXIT_OK


def cmd_longest(args, out: Output) -> int:
    try:
        n, words = search_longest_avoiding(args.abelian, args.ordinary, node_cap=args.node_cap)
    except SearchBudgetExceeded as exc:
        out.write(json.dumps({"status": "budget_exceeded", "nodes": exc.nodes,
                              "longest_seen": exc.best_length}))
        return EXIT_ERROR
    out.write(json.dumps({"status": "finite", "max_length": n, "count": len(words), "words": words}))
    return EXIT_OK


def cmd_freq(args, out: Output) -> int:
    h = _morphism(args.morphism, args.morphism_file)
    freq = letter_frequency(h, args.seed, args.letter)
    data = {"letter": args.letter, "frequency": freq}
    if args.empirical_iters:
        hits, total = count_in_iterate(h, args.seed, args.empirical_iters, args.letter)
        emp = hits / total
        data.update(empirical=emp, prefix_length=total, difference=abs(emp - freq))
    out.write(json.dumps(data, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp from the header")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="wordavoid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)
    paper_f = format_morphism(F_MORPHISM)

    def morph_args(sp, default=paper_f):
        sp.add_argument("--morphism", "-m", default=default)
        sp.add_argument("--morphism-file")

    sp = sub.add_parser("expand", parents=[common], help="iterate a morphism on a seed letter")
    morph_args(sp)
    sp.add_argument("--seed", type=int, default=0)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--iters", type=int, default=1)
    grp.add_argument("--length", type=int)
    sp.add_argument("--outer", help="morphism (spec or f/g/h) applied once to the result")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("detect", parents=[common], help="search a word for a power")
    sp.add_argument("word", nargs="?")
    sp.add_argument("--file")
    sp.add_argument("--pipe", action="store_true", help="read the word from stdin (default without word/--file)")
    sp.add_argument("--kind", choices=["additive", "abelian", "ordinary"], default="additive")
    sp.add_argument("-k", type=int, default=4)
    sp.set_defaults(func=cmd_detect)

    for name, func, helptext in (("decide", cmd_decide, "full additive-power decision procedure"),
                                 ("ancestors", cmd_ancestors, "ancestor closure only")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--f", help="inner morphism spec (default: the ternary f)")
        sp.add_argument("--g", help="outer morphism spec (default: the binary g)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("-k", type=int, default=4)
        sp.add_argument("--cap", type=int, default=10 ** 6)
        if name == "decide":
            sp.add_argument("--out-dir")
        else:
            sp.add_argument("--out", required=True)
        sp.set_defaults(func=func)

    sp = sub.add_parser("splits", parents=[common], help="list h-splits of a letter")
    morph_args(sp)
    sp.add_argument("--letter", default="")
    sp.add_argument("--middle")
    sp.set_defaults(func=cmd_splits)

    sp = sub.add_parser("growth", parents=[common], help="best compositions per k as TSV")
    sp.add_argument("--k", default="1-10", help="k or a range lo-hi")
    sp.add_argument("--bases", default="01")
    sp.add_argument("--eps", type=float, default=1e-5)
    sp.add_argument("--alpha", type=float, default=GOLDEN_FREQUENCY)
    sp.set_defaults(func=cmd_growth)

    sp = sub.add_parser("longest", parents=[common], help="longest binary word avoiding both powers")
    sp.add_argument("--abelian", type=int, default=4)
    sp.add_argument("--ordinary", type=int, default=3)
    sp.add_argument("--node-cap", type=int, default=10 ** 8)
    sp.set_defaults(func=cmd_longest)

    sp = sub.add_parser("freq", parents=[common], help="letter frequency in a fixed point")
    morph_args(sp, default="0->0001 1->011")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--letter", type=int, default=0)
    sp.add_argument("--empirical-iters", type=int, default=0)
    sp.set_defaults(func=cmd_freq)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Output(args, RunConfig(args.subcommand, _options(args)))
    try:
        return args.func(args, out)
    except WordError as exc:
        out.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_ERROR
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
