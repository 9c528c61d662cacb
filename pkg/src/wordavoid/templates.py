"""Additive k-templates: splits, parents, ancestor closure and instance search.

A template ``[a_0..a_k, d_0..d_{k-2}]`` describes words
``a_0 x_0 a_1 x_1 ... x_{k-1} a_k`` whose consecutive blocks satisfy
``sigma(x_{i+1}) - sigma(x_i) = d_i``. All arithmetic is on Python ints;
the inverse of a morphism matrix is applied through its adjugate and a
divisibility test on the determinant.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .errors import CapExceeded, WordError
from .words import LinearMorphism, Word, WordLike, apply, as_word, det2, word_str


@dataclass(frozen=True, order=False)
class Template:
    borders: tuple  # k+1 words, each of length <= 1
    gaps: tuple  # k-1 integer pairs

    def __post_init__(self):
        borders = tuple(as_word(b) for b in self.borders)
        gaps = tuple((int(d[0]), int(d[1])) for d in self.gaps)
        object.__setattr__(self, "borders", borders)
        object.__setattr__(self, "gaps", gaps)
        if len(borders) < 3:
            raise WordError("a template needs k >= 2, i.e. at least 3 borders")
        if any(len(b) > 1 for b in borders):
            raise WordError("borders have length at most 1")
        if len(gaps) != len(borders) - 2:
            raise WordError(f"{len(borders)} borders need {len(borders) - 2} gaps, got {len(gaps)}")

    @property
    def k(self) -> int:
        return len(self.borders) - 1

    @classmethod
    def zero(cls, k: int) -> "Template":
        """All-empty borders and zero gaps: its instances are the additive k-powers."""
        return cls(((),) * (k + 1), ((0, 0),) * (k - 1))

    def sort_key(self):
        return (tuple(word_str(b) for b in self.borders), self.gaps)

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "borders": [word_str(b) for b in self.borders],
                           "gaps": [list(d) for d in self.gaps]}, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "Template":
        obj = json.loads(line)
        t = cls(tuple(as_word(b) for b in obj["borders"]), tuple(tuple(d) for d in obj["gaps"]))
        if "k" in obj and obj["k"] != t.k:
            raise WordError(f"declared k={obj['k']} does not match {t.k}")
        return t

    def __str__(self):
        b = ",".join(word_str(x) or "e" for x in self.borders)
        d = ",".join(f"[{x},{y}]" for x, y in self.gaps)
        return f"[{b};{d}]"


@dataclass(frozen=True)
class Split:
    p: Word
    a: Word
    s: Word
    source: Word


def splits_of(h: LinearMorphism, A: WordLike) -> list:
    """All h(A) = p a s with |a| <= 1, ordered by (|p|, |a|)."""
    A = as_word(A)
    if len(A) > 1:
        raise WordError("splits are defined for words of length <= 1")
    img = apply(h, A)
    out = []
    for i in range(len(img) + 1):
        for la in (0, 1):
            if i + la <= len(img):
                out.append(Split(img[:i], img[i:i + la], img[i + la:], A))
    return out


def delta(t: Template) -> int:
    return max((abs(d[0]) for d in t.gaps), default=0)


def bound_B(h: LinearMorphism, t: Template) -> int:
    k = t.k
    return k + 2 + k * (h.width - 2) + (k - 1) * k // 2 * delta(t)


def inverse_apply(M, v) -> Optional[tuple]:
    """M^{-1} v when it is an integer vector, else None."""
    (a, b), (c, d) = M
    det = a * d - b * c
    if det == 0:
        raise WordError("singular matrix")
    x = d * v[0] - b * v[1]
    y = -c * v[0] + a * v[1]
    if x % det or y % det:
        return None
    return (x // det, y // det)


@lru_cache(maxsize=None)
def _border_options(h: LinearMorphism, middle: Word) -> tuple:
    """Distinct (A, sigma(p), sigma(s)) over letters-or-empty A and splits with the given middle."""
    out = set()
    for A in [()] + [(x,) for x in h.alphabet]:
        img = apply(h, A)
        la = len(middle)
        total = sum(img)
        acc = 0
        for i in range(len(img) - la + 1):
            if img[i:i + la] == middle:
                mid = sum(middle)
                out.add((A, (i, acc), (len(img) - i - la, total - acc - mid)))
            if i < len(img):
                acc += img[i]
    return tuple(sorted(out))


def parent_derivations(h: LinearMorphism, t: Template) -> dict:
    """Map every h-parent T of t to whether some derivation of it has a
    non-empty junction s_i p_{i+1}.

    Dynamic programming over border positions: the state after fixing
    borders 0..j is the partial tuple, the last junction vector and the
    suffix vector of border j. Only sigma vectors of split parts matter,
    so equal-vector derivations merge early.
    """
    M = h.matrix
    if det2(M) == 0:
        raise WordError("singular matrix")
    k = t.k
    opts = [_border_options(h, b) for b in t.borders]
    states = {}
    for A, _, ss in opts[0]:
        states[((A,), (), None, ss, False)] = None
    for j in range(1, k + 1):
        new = {}
        last = j == k
        d = t.gaps[j - 2] if j >= 2 else None
        for (As, Ds, cprev, sprev, loose) in states:
            for A, sp, ss in opts[j]:
                c = (sprev[0] + sp[0], sprev[1] + sp[1])
                Dn = Ds
                if cprev is not None:
                    D = inverse_apply(M, (d[0] - c[0] + cprev[0], d[1] - c[1] + cprev[1]))
                    if D is None:
                        continue
                    Dn = Ds + (D,)
                new[(As + (A,), Dn, c, None if last else ss, loose or c[0] != 0)] = None
        states = new
    out = {}
    for As, Ds, _, _, loose in states:
        T = Template(As, Ds)
        out[T] = out.get(T, False) or loose
    return out


def parents_of(h: LinearMorphism, t: Template) -> set:
    return set(parent_derivations(h, t))


@dataclass(frozen=True)
class AncestorSet:
    templates: tuple  # insertion order: seeds first, then each round
    log: tuple  # new templates per round; ends with 0 once closed
    seed_count: int
    loose: frozenset = field(default=frozenset(), compare=False)

    def __len__(self):
        return len(self.templates)

    def __iter__(self):
        return iter(self.templates)

    def __contains__(self, t):
        return t in self._members

    @property
    def _members(self):
        members = self.__dict__.get("_member_set")
        if members is None:
            members = frozenset(self.templates)
            object.__setattr__(self, "_member_set", members)
        return members

    def canonical(self) -> list:
        return sorted(self.templates, key=Template.sort_key)

    def write_jsonl(self, path) -> None:
        with open(path, "w") as fh:
            for t in self.canonical():
                fh.write(t.to_json() + "\n")


def read_jsonl(path) -> list:
    with open(path) as fh:
        return [Template.from_json(line) for line in fh if line.strip()]


def ancestor_closure(h: LinearMorphism, seeds: Iterable[Template], cap: int = 10 ** 6) -> AncestorSet:
    """Reflexive-transitive closure of ``seeds`` under the h-parent relation.

    Breadth-first rounds over a FIFO queue; round r computes parents of the
    templates first added in round r-1. ``loose`` collects templates that
    have a derivation (towards a child in the set) with a non-empty
    junction.
    """
    seen = {}
    for t in seeds:
        seen.setdefault(t, None)
    order = list(seen)
    seed_count = len(order)
    frontier = list(order)
    loose = set()
    log = []
    while frontier:
        fresh = []
        for t in frontier:
            for T, is_loose in parent_derivations(h, t).items():
                if is_loose:
                    loose.add(T)
                if T not in seen:
                    seen[T] = None
                    fresh.append(T)
                    if len(seen) > cap:
                        raise CapExceeded(f"ancestor set exceeded {cap} templates")
        log.append(len(fresh))
        order.extend(fresh)
        frontier = fresh
    return AncestorSet(tuple(order), tuple(log), seed_count, frozenset(loose))


def eigenvalues_exceed_one(M) -> bool:
    """Both eigenvalues of the 2x2 integer matrix M have modulus > 1.

    Equivalent to both roots of the reciprocal characteristic polynomial
    det*z^2 - tr*z + 1 lying strictly inside the unit disk; for the monic
    z^2 + a1 z + a0 that is |a0| < 1 and |a1| < 1 + a0.
    """
    (a, b), (c, d) = M
    det = a * d - b * c
    if det == 0:
        return False
    tr = a + d
    a0 = Fraction(1, det)
    a1 = Fraction(-tr, det)
    return abs(a0) < 1 and abs(a1) < 1 + a0


def _block_lengths(t: Template, first: int):
    lengths = [first]
    for d in t.gaps:
        lengths.append(lengths[-1] + d[0])
    return lengths


def is_instance(w: WordLike, t: Template) -> Optional[tuple]:
    """A factorization (a_0, x_0, a_1, ..., x_{k-1}, a_k) of w witnessing that
    w is an instance of t, or None. Blocks may be empty."""
    w = as_word(w)
    k = t.k
    fixed = sum(len(b) for b in t.borders)
    # |w| = fixed + k*|x_0| + sum_j (k-1-j) * d_j[0]
    rest = len(w) - fixed - sum((k - 1 - j) * d[0] for j, d in enumerate(t.gaps))
    if rest < 0 or rest % k:
        return None
    lengths = _block_lengths(t, rest // k)
    if min(lengths) < 0:
        return None
    parts = []
    pos = 0
    for i in range(k + 1):
        b = t.borders[i]
        if w[pos:pos + len(b)] != b:
            return None
        parts.append(b)
        pos += len(b)
        if i < k:
            parts.append(w[pos:pos + lengths[i]])
            pos += lengths[i]
    sums = [sum(x) for x in parts[1::2]]
    for i, d in enumerate(t.gaps):
        if sums[i + 1] - sums[i] != d[1]:
            return None
    return tuple(parts)


class IndexedWord:
    """A word with numpy letter and prefix-sum arrays for repeated instance searches."""

    def __init__(self, w: WordLike):
        self.word = as_word(w)
        self.arr = np.asarray(self.word, dtype=np.int64)
        self.prefix = np.zeros(len(self.word) + 1, dtype=np.int64)
        np.cumsum(self.arr, out=self.prefix[1:])

    def __len__(self):
        return len(self.word)


def instance_occurrences(w, t: Template, max_length: int, skip_empty_blocks: bool = False) -> list:
    """(position, block lengths) of every factor of w of length <= max_length
    that is an instance of t, ordered by block length then position."""
    iw = w if isinstance(w, IndexedWord) else IndexedWord(w)
    n = len(iw)
    k = t.k
    fixed = sum(len(b) for b in t.borders)
    out = []
    start = max(0, -min(_block_lengths(t, 0)))
    for first in range(start, n + 1):
        lengths = _block_lengths(t, first)
        total = fixed + sum(lengths)
        if total > max_length or total > n:
            break
        if skip_empty_blocks and max(lengths) == 0:
            continue
        count = n - total + 1
        ok = np.ones(count, dtype=bool)
        off = 0
        block_starts = []
        for i in range(k + 1):
            b = t.borders[i]
            if b:
                ok &= iw.arr[off:off + count] == b[0]
                off += 1
            if i < k:
                block_starts.append(off)
                off += lengths[i]
        P = iw.prefix
        sums = [P[s + L:s + L + count] - P[s:s + count] for s, L in zip(block_starts, lengths)]
        for i, d in enumerate(t.gaps):
            ok &= (sums[i + 1] - sums[i]) == d[1]
        for pos in np.flatnonzero(ok):
            out.append((int(pos), tuple(lengths)))
    return out
