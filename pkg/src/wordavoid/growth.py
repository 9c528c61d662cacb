"""Multi-valued substitutions on {0,1} and growth-rate lower bounds.

A composition word x = x_1 ... x_k stands for the substitution that applies
base ``x_1`` first and ``x_k`` last. Statistics of compositions are derived
arithmetically from per-letter image length, image count and the common
Parikh vector of each image set, so nothing is enumerated.

Image counts grow doubly fast in k, so they are kept as exact prime
factorizations (:class:`PowerProduct`); only logarithms enter beta.
"""
from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from typing import Iterable, Mapping, Optional, Sequence

from .detectors import find_abelian_k_power
from .errors import ParikhClassViolation, WordError
from .words import H_MORPHISM, Morphism, Word, as_word, prefix_of_length, word_str

GOLDEN_FREQUENCY = (math.sqrt(5) - 1) / 2


def _factor(n: int) -> dict:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PowerProduct:
    """A positive integer stored as ((prime, exponent), ...)."""

    factors: tuple = ()

    @classmethod
    def of(cls, n: int) -> "PowerProduct":
        if n < 1:
            raise WordError("image counts are positive")
        return cls(tuple(sorted(_factor(n).items())))

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        acc = dict(self.factors)
        for p, e in other.factors:
            acc[p] = acc.get(p, 0) + e
        return PowerProduct(tuple(sorted(acc.items())))

    def __pow__(self, n: int) -> "PowerProduct":
        if n == 0:
            return PowerProduct()
        return PowerProduct(tuple((p, e * n) for p, e in self.factors))

    def log(self) -> float:
        return math.fsum(e * math.log(p) for p, e in self.factors)

    def log10(self) -> float:
        return self.log() / math.log(10)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p ** e
        return out


@dataclass(frozen=True)
class SubstitutionStats:
    lengths: tuple  # l_a per letter
    counts: tuple  # m_a per letter, PowerProducts
    parikh: tuple  # common Parikh vector of the images of each letter

    @property
    def alphabet_size(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class MultiSubstitution:
    """Letter -> finite set of words over the alphabet 0..n-1."""

    images: tuple  # per letter, a sorted tuple of words

    def __post_init__(self):
        imgs = tuple(tuple(sorted({as_word(w) for w in ws})) for ws in self.images)
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        for a, ws in enumerate(imgs):
            if not ws:
                raise WordError(f"letter {a} has no image")
            if len({len(w) for w in ws}) != 1:
                raise WordError(f"images of {a} differ in length; not letter-wise uniform")
            if any(c < 0 or c >= n for w in ws for c in w):
                raise WordError("image letters outside the alphabet")

    @classmethod
    def from_mapping(cls, images: Mapping[int, Iterable]) -> "MultiSubstitution":
        return cls(tuple(tuple(images[a]) for a in sorted(images)))

    @property
    def alphabet_size(self) -> int:
        return len(self.images)

    def swapped(self) -> "MultiSubstitution":
        """Swap the image sets of 0 and 1."""
        return MultiSubstitution((self.images[1], self.images[0]) + self.images[2:])

    def stats(self) -> SubstitutionStats:
        n = self.alphabet_size
        parikhs = []
        for a, ws in enumerate(self.images):
            vecs = {tuple(w.count(c) for c in range(n)) for w in ws}
            if len(vecs) != 1:
                raise ParikhClassViolation(f"images of {a} mix Parikh vectors {sorted(vecs)}")
            parikhs.append(vecs.pop())
        return SubstitutionStats(tuple(len(ws[0]) for ws in self.images),
                                 tuple(PowerProduct.of(len(ws)) for ws in self.images),
                                 tuple(parikhs))

    def apply(self, w) -> set:
        """theta(w) as an explicit set of words."""
        out = {()}
        for c in as_word(w):
            out = {u + v for u in out for v in self.images[c]}
        return out

    def apply_set(self, words: Iterable) -> set:
        out = set()
        for w in words:
            out |= self.apply(w)
        return out

    def then(self, outer: "MultiSubstitution") -> "MultiSubstitution":
        """outer o self, by explicit enumeration."""
        return MultiSubstitution(tuple(tuple(outer.apply_set(ws)) for ws in self.images))

    def sample(self, w, rng: random.Random) -> Word:
        out = []
        for c in as_word(w):
            out.extend(rng.choice(self.images[c]))
        return tuple(out)


def identity_substitution(n: int = 2) -> MultiSubstitution:
    return MultiSubstitution(tuple(((a,),) for a in range(n)))


def base_substitutions() -> dict:
    """The four base substitutions keyed by their digit in composition words."""
    th0 = MultiSubstitution((("0001",), ("011", "101")))
    th2 = MultiSubstitution((("0111",), ("001", "010")))
    return {"0": th0, "1": th0.swapped(), "2": th2, "3": th2.swapped()}


def _stats(s) -> SubstitutionStats:
    return s if isinstance(s, SubstitutionStats) else s.stats()


def compose_stats(inner, outer) -> SubstitutionStats:
    """Statistics of outer o inner from the statistics of the two factors."""
    a_in, a_out = _stats(inner), _stats(outer)
    n = a_in.alphabet_size
    lengths, counts, parikh = [], [], []
    for a in range(n):
        P = a_in.parikh[a]
        lengths.append(sum(P[c] * a_out.lengths[c] for c in range(n)))
        m = a_in.counts[a]
        for c in range(n):
            if P[c]:
                m = m * a_out.counts[c] ** P[c]
        counts.append(m)
        parikh.append(tuple(sum(P[c] * a_out.parikh[c][e] for c in range(n)) for e in range(n)))
    return SubstitutionStats(tuple(lengths), tuple(counts), tuple(parikh))


def beta(stats, alpha: float = GOLDEN_FREQUENCY, eps: float = 1e-5) -> float:
    """Growth-rate base for a letter-wise uniform substitution, computed in log space."""
    st = _stats(stats)
    if not 0 < eps < alpha < 1:
        raise WordError(f"need 0 < eps < alpha < 1, got eps={eps}, alpha={alpha}")
    if st.alphabet_size != 2:
        raise WordError("beta is defined for binary substitutions")
    l0, l1 = st.lengths
    num = (alpha - eps) * st.counts[0].log() + (1 - alpha - eps) * st.counts[1].log()
    den = (alpha + eps) * l0 + (1 - alpha + eps) * l1
    return math.exp(num / den)


def truncate(x: float, places: int = 8) -> str:
    return str(Decimal(repr(x)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN))


@dataclass(frozen=True)
class GrowthResult:
    x: str
    lengths: tuple
    counts: tuple  # PowerProducts
    beta: float

    @property
    def beta_truncated(self) -> str:
        return truncate(self.beta)


def composition_stats(x: str, bases: Optional[Mapping] = None) -> SubstitutionStats:
    bases = bases or base_substitutions()
    if not x:
        return identity_substitution().stats()
    st = _stats(bases[x[0]])
    for c in x[1:]:
        st = compose_stats(st, bases[c])
    return st


def composition(x: str, bases: Optional[Mapping] = None) -> MultiSubstitution:
    """theta_x by explicit enumeration; only usable for short x."""
    bases = bases or base_substitutions()
    out = identity_substitution()
    for c in x:
        out = out.then(bases[c])
    return out


def best_composition(k: int, bases: Sequence[str] = "01", alpha: float = GOLDEN_FREQUENCY,
                     eps: float = 1e-5, keep: Optional[int] = None, max_k: int = 20) -> list:
    """beta_x for every x in bases^k, best first (ties broken by x).

    Prefixes are shared: the tree of compositions is walked depth-first so
    each node costs one composition step. ``keep`` limits the returned list.
    """
    if k < 1:
        raise WordError("k must be >= 1")
    if k > max_k:
        raise WordError(f"k={k} exceeds the budget cap {max_k}")
    if not 0 < eps < alpha < 1:
        raise WordError(f"need 0 < eps < alpha < 1, got eps={eps}, alpha={alpha}")
    table = base_substitutions()
    base_stats = {c: table[c].stats() for c in bases}
    results = []

    def visit(prefix, st):
        if len(prefix) == k:
            results.append(GrowthResult(prefix, st.lengths, st.counts, beta(st, alpha, eps)))
            if keep is not None and len(results) > 4 * keep + 64:
                results[:] = heapq.nsmallest(keep, results, key=_rank)
            return
        for c in bases:
            visit(prefix + c, compose_stats(st, base_stats[c]))

    for c in bases:
        visit(c, base_stats[c])
    results.sort(key=_rank)
    return results[:keep] if keep is not None else results


def _rank(r: GrowthResult):
    return (-r.beta, r.x)


TIE_TOLERANCE = 1e-12


def maximizer(k: int, bases: Sequence[str] = "01", alpha: float = GOLDEN_FREQUENCY, eps: float = 1e-5):
    """(best result, whether it is unique up to TIE_TOLERANCE)."""
    top = best_composition(k, bases, alpha, eps, keep=2)
    unique = len(top) == 1 or top[0].beta - top[1].beta > TIE_TOLERANCE
    return top[0], unique


@dataclass
class VerificationReport:
    x: str
    seed_word: str
    trials: int
    clean: bool
    counterexample: Optional[str] = None
    trial: Optional[int] = None


def sample_and_verify(x: str, seed_word_length: int = 30, trials: int = 100, *,
                      bases: Optional[Mapping] = None, seed_morphism: Morphism = H_MORPHISM,
                      rng: Optional[random.Random] = None) -> VerificationReport:
    """Spot-check that random members of theta_x(v) avoid abelian 4-powers,
    where v is a prefix of the fixed point of ``seed_morphism`` from 0."""
    bases = bases or base_substitutions()
    rng = rng or random.Random(0)
    v = prefix_of_length(seed_morphism, 0, seed_word_length)
    subs = [bases[c] for c in x]
    for i in range(trials):
        w = v
        for s in subs:
            w = s.sample(w, rng)
        if find_abelian_k_power(w, 4) is not None:
            return VerificationReport(x, word_str(v), i + 1, False, word_str(w), i)
    return VerificationReport(x, word_str(v), trials, True)


def table_rows(k_values: Iterable[int], bases: Sequence[str] = "01", alpha: float = GOLDEN_FREQUENCY,
               eps: float = 1e-5) -> list:
    rows = []
    for k in k_values:
        best, unique = maximizer(k, bases, alpha, eps)
        rows.append({
            "k": k,
            "x": best.x,
            "l0": best.lengths[0],
            "l1": best.lengths[1],
            "log10_m0": best.counts[0].log10(),
            "log10_m1": best.counts[1].log10(),
            "beta": best.beta_truncated,
            "unique": unique,
        })
    return rows
