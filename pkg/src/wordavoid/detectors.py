"""Brute-force detection of abelian, additive and ordinary powers.

Witnesses are tie-broken leftmost-shortest: smallest start index, then
smallest block length (or period). Short words go through plain Python
loops; long ones through per-block-length numpy sweeps. Both paths return
identical reports.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import SearchBudgetExceeded, WordError
from .words import (
    Morphism,
    Word,
    WordLike,
    apply,
    as_word,
    empirical_frequency,  # noqa: F401  re-exported alongside the detectors
    factors_of_fixed_point,
    word_str,
)

_NUMPY_THRESHOLD = 160


@dataclass(frozen=True)
class PowerReport:
    kind: str  # "abelian" | "additive" | "ordinary"
    exponent: Fraction  # k for abelian/additive, n/p for ordinary
    position: int
    block: int  # block length, or period for ordinary powers
    length: int

    def factor(self, w: WordLike) -> Word:
        return as_word(w)[self.position:self.position + self.length]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "exponent": str(self.exponent),
            "position": self.position,
            "block": self.block,
            "length": self.length,
        }


@dataclass(frozen=True)
class ScanCertificate:
    description: str
    property: str
    bound: int
    verdict: str  # "clean" | "witness"
    witness: Optional[PowerReport] = None
    witness_word: Optional[Word] = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def clean(self) -> bool:
        return self.verdict == "clean"

    def to_dict(self) -> dict:
        out = {
            "description": self.description,
            "property": self.property,
            "bound": self.bound,
            "verdict": self.verdict,
            "witness": self.witness.to_dict() if self.witness else None,
        }
        if self.witness_word is not None:
            out["witness_word"] = word_str(self.witness_word)
        out.update(self.details)
        return out


def _check_k(k):
    if k < 2:
        raise WordError(f"k must be >= 2, got {k}")


def _letter_prefix_sums(w: Word):
    """One prefix-count array per letter, as Python lists."""
    out = []
    for c in sorted(set(w)):
        acc = [0]
        for x in w:
            acc.append(acc[-1] + (x == c))
        out.append(acc)
    return out


def _blocks_equal(prefixes, i, L, k):
    for P in prefixes:
        first = P[i + L] - P[i]
        for j in range(1, k):
            s = i + j * L
            if P[s + L] - P[s] != first:
                return False
    return True


def _find_py(prefixes, n, k):
    for i in range(n):
        for L in range(1, (n - i) // k + 1):
            if _blocks_equal(prefixes, i, L, k):
                return i, L
    return None


def _find_np(arrays, n, k):
    """arrays: one prefix-sum vector (length n+1) per compared quantity."""
    best = None
    for L in range(1, n // k + 1):
        m = n - k * L + 1
        if best is not None:
            m = min(m, best[0])
        if m <= 0:
            continue
        ok = np.ones(m, dtype=bool)
        for P in arrays:
            bs = P[L:] - P[:-L]
            first = bs[:m]
            for j in range(1, k):
                ok &= bs[j * L:j * L + m] == first
        hits = np.flatnonzero(ok)
        if hits.size:
            i = int(hits[0])
            if best is None or i < best[0]:
                best = (i, L)
                if i == 0:
                    break
    return best


def _prefix_np(values):
    P = np.zeros(len(values) + 1, dtype=np.int64)
    np.cumsum(values, out=P[1:])
    return P


def find_additive_k_power(w: WordLike, k: int) -> Optional[PowerReport]:
    """Leftmost-shortest k consecutive non-empty blocks of equal length and letter sum."""
    _check_k(k)
    w = as_word(w)
    n = len(w)
    if n < k:
        return None
    if n <= _NUMPY_THRESHOLD:
        acc = [0]
        for x in w:
            acc.append(acc[-1] + x)
        hit = _find_py([acc], n, k)
    else:
        hit = _find_np([_prefix_np(np.asarray(w, dtype=np.int64))], n, k)
    if hit is None:
        return None
    return PowerReport("additive", Fraction(k), hit[0], hit[1], k * hit[1])


def find_abelian_k_power(w: WordLike, k: int) -> Optional[PowerReport]:
    """Like :func:`find_additive_k_power` with Parikh-vector equality."""
    _check_k(k)
    w = as_word(w)
    n = len(w)
    if n < k:
        return None
    letters = sorted(set(w))
    if n <= _NUMPY_THRESHOLD:
        hit = _find_py(_letter_prefix_sums(w)[:-1] or [[0] * (n + 1)], n, k)
    else:
        arr = np.asarray(w, dtype=np.int64)
        # the last letter's count is implied by the block length
        arrays = [_prefix_np((arr == c).astype(np.int64)) for c in letters[:-1]]
        if not arrays:
            arrays = [np.zeros(n + 1, dtype=np.int64)]
        hit = _find_np(arrays, n, k)
    if hit is None:
        return None
    return PowerReport("abelian", Fraction(k), hit[0], hit[1], k * hit[1])


def is_additive_power(w: WordLike, k: int) -> bool:
    """Whether w itself (not a factor) is a non-empty additive k-power."""
    w = as_word(w)
    if not w or len(w) % k:
        return False
    L = len(w) // k
    return len({sum(w[j * L:(j + 1) * L]) for j in range(k)}) == 1


def _runs(eq: np.ndarray):
    """(start, length) of every maximal run of True in a boolean array."""
    padded = np.concatenate(([False], eq, [False]))
    d = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1)
    return starts, ends - starts


def max_exponent_up_to(w: WordLike, max_period: int):
    """Largest n/p over factors whose smallest period p is at most ``max_period``.

    Returns ``(exponent, report)``. The witness uses the smallest period
    reaching the maximum, then the leftmost position.
    """
    if max_period < 1:
        raise WordError("max_period must be >= 1")
    w = as_word(w)
    n = len(w)
    if n == 0:
        return Fraction(0), None
    arr = np.asarray(w, dtype=np.int64)
    best = (Fraction(1), 1, 0)  # every single letter has exponent 1
    for p in range(1, min(max_period, n - 1) + 1):
        # a run of r matches w[i]==w[i+p] gives a factor of length r+p with period p
        starts, lengths = _runs(arr[:-p] == arr[p:])
        if not lengths.size:
            continue
        j = int(np.argmax(lengths))
        e = Fraction(int(lengths[j]) + p, p)
        if e > best[0]:
            best = (e, p, int(starts[j]))
    e, p, pos = best
    length = int(e * p)
    return e, PowerReport("ordinary", e, pos, p, length)


def has_k_power_ordinary(w: WordLike, k) -> Optional[PowerReport]:
    """Leftmost factor of exponent >= k (smallest period among ties)."""
    _check_k(k)
    k = Fraction(k)
    w = as_word(w)
    n = len(w)
    arr = np.asarray(w, dtype=np.int64)
    best = None
    for p in range(1, n // 2 + 1):
        need = math.ceil(k * p) - p  # matches needed after the first period
        if need + p > n:
            break
        starts, lengths = _runs(arr[:-p] == arr[p:])
        good = starts[lengths >= need]
        if good.size:
            i = int(good[0])
            if best is None or i < best[0]:
                best = (i, p, need)
    if best is None:
        return None
    i, p, need = best
    # report the full maximal repetition at that start
    run_end = i
    while run_end + p < n and w[run_end] == w[run_end + p]:
        run_end += 1
    length = run_end - i + p
    return PowerReport("ordinary", Fraction(length, p), i, p, length)


def search_longest_avoiding(k_abelian: int, k_ordinary: int, node_cap: int = 10 ** 8):
    """Depth-first search over binary words avoiding both kinds of powers.

    Extends with 0 before 1. Returns ``(max_length, words)`` with ``words``
    sorted; raises :class:`SearchBudgetExceeded` past ``node_cap`` nodes.
    """
    _check_k(k_abelian)
    _check_k(k_ordinary)
    ko = Fraction(k_ordinary)
    word = []
    ones = [0]  # prefix counts of 1
    best_len = 0
    best = []
    nodes = 0

    def ok_suffix():
        n = len(word)
        P = ones
        for L in range(1, n // k_abelian + 1):
            first = P[n] - P[n - L]
            if all(P[n - j * L] - P[n - (j + 1) * L] == first for j in range(1, k_abelian)):
                return False
        for p in range(1, n + 1):
            need = math.ceil(ko * p)
            if need > n:
                break
            start = n - need
            if all(word[i] == word[i + p] for i in range(start, n - p)):
                return False
        return True

    # iterative DFS; stack holds the next letter to try at each depth
    stack = [0]
    while stack:
        nxt = stack[-1]
        if nxt > 1:
            stack.pop()
            if word:
                word.pop()
                ones.pop()
            continue
        stack[-1] = nxt + 1
        word.append(nxt)
        ones.append(ones[-1] + nxt)
        nodes += 1
        if nodes > node_cap:
            raise SearchBudgetExceeded(nodes, best_len)
        if not ok_suffix():
            word.pop()
            ones.pop()
            continue
        n = len(word)
        if n > best_len:
            best_len, best = n, []
        if n == best_len:
            best.append("".join(map(str, word)))
        stack.append(0)
    return best_len, sorted(best)


def scan_morphic_prefix(h_outer: Morphism, h_inner: Morphism, seed: int, k: int,
                        length_bound: int, max_iter: int = 30, threads: int = 1) -> ScanCertificate:
    """Certify that no factor of h_outer(h_inner^omega(seed)) shorter than
    ``length_bound`` is an additive k-power.

    Every factor of length < length_bound sits inside h_outer(V) for some
    factor V of the inner fixed point of length m = ceil((bound-2)/min|h_outer|)+1;
    each such image is scanned completely.
    """
    _check_k(k)
    span = max(length_bound - 1, 1)
    m = -(-(span - 1) // h_outer.min_length) + 1
    fs = factors_of_fixed_point(h_inner, seed, m, max_iter=max_iter)
    images = sorted(fs.factors)

    def scan(V):
        return find_additive_k_power(apply(h_outer, V), k)

    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(scan, images))
    else:
        results = [scan(V) for V in images]
    details = {"inner_factor_length": m, "inner_factor_count": len(images),
               "stabilization_iterate": fs.iterate}
    desc = f"outer(inner^omega({seed})) factors of length < {length_bound}"
    for V, rep in zip(images, results):
        if rep is not None:
            img = apply(h_outer, V)
            details["inner_factor"] = word_str(V)
            return ScanCertificate(desc, f"additive {k}-power-free", length_bound, "witness",
                                   rep, rep.factor(img), details)
    return ScanCertificate(desc, f"additive {k}-power-free", length_bound, "clean", None, None, details)


def scan_word(w: WordLike, kind: str, k, description: str = "word") -> ScanCertificate:
    w = as_word(w)
    if kind == "additive":
        rep = find_additive_k_power(w, k)
    elif kind == "abelian":
        rep = find_abelian_k_power(w, k)
    elif kind == "ordinary":
        rep = has_k_power_ordinary(w, k)
    else:
        raise WordError(f"unknown kind {kind!r}")
    verdict = "clean" if rep is None else "witness"
    return ScanCertificate(description, f"{kind} {k}-power-free", len(w), verdict, rep,
                           rep.factor(w) if rep else None)
