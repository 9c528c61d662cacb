"""Decision procedure: does outer(inner^omega(seed)) avoid additive k-powers?

Pipeline:

1. scan every factor shorter than B_outer(t0) directly;
2. outer-parents of the zero template t0;
3. inner-ancestor closure of those parents;
4. two independent verifications that must agree:

   * template route: no template T of the closure has an instance of
     length < B_inner(T) in the inner fixed point that could grow into a
     non-empty power (see :func:`_template_route`);
   * image route: outer(inner(V)) is clean for every factor V of the inner
     fixed point up to the largest such length, plus the whole prefix
     outer(inner^(n+1)(seed)) that realizes them.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .detectors import ScanCertificate, find_additive_k_power, scan_morphic_prefix
from .errors import HypothesisViolated
from .templates import (
    AncestorSet,
    IndexedWord,
    Template,
    ancestor_closure,
    bound_B,
    delta,
    eigenvalues_exceed_one,
    instance_occurrences,
    parent_derivations,
)
from .words import LinearMorphism, apply, factors_of_fixed_point, word_str

log = logging.getLogger(__name__)

AVOIDS = "AVOIDS"
WITNESS = "WITNESS"
INCONSISTENT = "INCONSISTENT"


@dataclass
class DecideConfig:
    ancestor_cap: int = 10 ** 6
    max_iter: int = 30
    threads: int = 1
    prefix_scan: bool = True


@dataclass
class DecisionReport:
    verdict: str
    k: int
    seed: int
    short_scan: ScanCertificate
    outer_parent_count: int = 0
    ancestors: Optional[AncestorSet] = None
    max_delta: int = 0
    max_inner_bound: int = 0
    factor_iterate: int = -1
    template_route: dict = field(default_factory=dict)
    image_route: dict = field(default_factory=dict)
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "k": self.k,
            "seed": self.seed,
            "short_scan": self.short_scan.to_dict(),
            "outer_parent_count": self.outer_parent_count,
            "ancestor_count": len(self.ancestors) if self.ancestors is not None else 0,
            "generation_log": list(self.ancestors.log) if self.ancestors is not None else [],
            "max_delta": self.max_delta,
            "max_inner_bound": self.max_inner_bound,
            "factor_iterate": self.factor_iterate,
            "template_route": self.template_route,
            "image_route": self.image_route,
            "witness": self.witness,
        }
        return out


def check_hypotheses(f: LinearMorphism, g: LinearMorphism, seed: int) -> None:
    """Raise HypothesisViolated naming the first failing clause."""
    if min(len(w) for _, w in f.images) < 2:
        raise HypothesisViolated("|f(a)| >= 2 for all a")
    if min(len(w) for _, w in g.images) < 2:
        raise HypothesisViolated("|g(a)| >= 2 for all a")
    if set(f.codomain) - set(f.alphabet):
        raise HypothesisViolated("f maps its alphabet into itself")
    if set(f.alphabet) - set(g.alphabet):
        raise HypothesisViolated("g is defined on the alphabet of f")
    if f.det == 0:
        raise HypothesisViolated("M_f invertible")
    if g.det == 0:
        raise HypothesisViolated("M_g invertible")
    if not eigenvalues_exceed_one(f.matrix):
        raise HypothesisViolated("eigenvalues of M_f exceed 1 in modulus")
    if seed not in f.alphabet or f.image(seed)[0] != seed:
        raise HypothesisViolated("f is prolongable on the seed")


def _template_route(ancestors: AncestorSet, loose: set, f: LinearMorphism, prefix) -> dict:
    """Short instances of closure templates in the inner fixed point.

    Suppose v is a non-empty power of length >= B_outer(t0). Pulling it back
    repeatedly stops at a short instance V of some T in the closure. Either V
    is the last step (pushed forward by the outer morphism to v) or its
    forward image is a long instance, which cannot have all blocks empty.
    Both cases need a forward step producing a non-empty block, which
    happens exactly when V has a non-empty block or the step uses a
    non-empty junction. So it suffices that every short instance of a
    loose template is absent, and every short instance of any other
    template has only empty blocks.
    """
    iw = IndexedWord(prefix)
    violations = []
    checked = 0
    for T in ancestors.templates:
        limit = bound_B(f, T) - 1
        hits = instance_occurrences(iw, T, limit, skip_empty_blocks=T not in loose)
        checked += 1
        if hits:
            pos, lengths = hits[0]
            violations.append({"template": T.to_json(), "position": pos, "blocks": list(lengths),
                               "loose": T in loose})
            if len(violations) >= 10:
                break
    return {"ok": not violations, "templates_checked": checked,
            "loose_templates": len(loose), "violations": violations}


def _image_route(f, g, seed, k, fs, threads, prefix_scan) -> tuple:
    factors = sorted(fs.factors)

    def scan(V):
        img = apply(g, apply(f, V))
        return V, img, find_additive_k_power(img, k)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(scan, factors))
    else:
        results = [scan(V) for V in factors]
    out = {"factor_length": fs.length, "factor_count": len(factors), "ok": True}
    witness = None
    for V, img, rep in results:
        if rep is not None:
            out["ok"] = False
            witness = {"source": f"outer(inner({word_str(V)}))", "report": rep.to_dict(),
                       "word": word_str(rep.factor(img))}
            break
    if prefix_scan and witness is None:
        whole = apply(g, apply(f, fs.prefix))
        rep = find_additive_k_power(whole, k)
        out["prefix_scan"] = {"iterate": fs.iterate + 1, "length": len(whole), "clean": rep is None}
        if rep is not None:
            out["ok"] = False
            witness = {"source": f"outer(inner^{fs.iterate + 1}({seed}))", "report": rep.to_dict(),
                       "word": word_str(rep.factor(whole))}
    return out, witness


def decide_additive_k_avoidance(f: LinearMorphism, g: LinearMorphism, seed: int, k: int,
                                config: Optional[DecideConfig] = None) -> DecisionReport:
    config = config or DecideConfig()
    check_hypotheses(f, g, seed)
    t0 = Template.zero(k)
    bg = bound_B(g, t0)
    short = scan_morphic_prefix(g, f, seed, k, bg, max_iter=config.max_iter, threads=config.threads)
    report = DecisionReport(WITNESS, k, seed, short)
    if not short.clean:
        report.witness = {"source": "short scan", "report": short.witness.to_dict(),
                          "word": word_str(short.witness_word)}
        return report

    gparents = parent_derivations(g, t0)
    report.outer_parent_count = len(gparents)
    log.info("%d outer-parents of t0", len(gparents))
    anc = ancestor_closure(f, gparents, cap=config.ancestor_cap)
    report.ancestors = anc
    log.info("closure: %d templates, rounds %s", len(anc), anc.log)
    report.max_delta = max((delta(t) for t in anc), default=0)
    report.max_inner_bound = max((bound_B(f, t) for t in anc), default=bound_B(f, t0))

    fs = factors_of_fixed_point(f, seed, max(report.max_inner_bound - 1, 1), max_iter=config.max_iter)
    report.factor_iterate = fs.iterate
    loose = set(anc.loose) | {T for T, is_loose in gparents.items() if is_loose}
    report.template_route = _template_route(anc, loose, f, fs.prefix)
    report.image_route, witness = _image_route(f, g, seed, k, fs, config.threads, config.prefix_scan)

    if witness is not None:
        report.verdict = WITNESS
        report.witness = witness
    elif report.template_route["ok"]:
        report.verdict = AVOIDS
    else:
        report.verdict = INCONSISTENT
    return report
