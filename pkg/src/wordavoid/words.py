"""Words over integer alphabets, sigma vectors and linear morphisms.

A word is a plain ``tuple`` of ints. Digit strings are accepted anywhere a
word is expected through :func:`as_word`, which keeps interactive use and
tests short (``apply(f, "001")``).
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

import numpy as np

from .errors import NonStabilizing, NotLinear, NotPrimitive, NotProlongable, WordError

Word = tuple
WordLike = Union[Word, str, Iterable[int]]

EMPTY: Word = ()


def as_word(w: WordLike) -> Word:
    if isinstance(w, tuple):
        return w
    if isinstance(w, str):
        if not w.isdigit() and w:
            raise WordError(f"words are digit strings, got {w[:20]!r}")
        return tuple(int(c) for c in w)
    return tuple(int(c) for c in w)


def word_str(w: Word) -> str:
    """Digit-string form of a word; letters >= 10 are bracketed."""
    return "".join(str(c) if 0 <= c <= 9 else f"[{c}]" for c in w)


class Sigma(NamedTuple):
    """The pair (length, letter sum) of a word."""

    length: int
    sum: int

    def __add__(self, other):
        return Sigma(self.length + other[0], self.sum + other[1])

    def __sub__(self, other):
        return Sigma(self.length - other[0], self.sum - other[1])

    def __neg__(self):
        return Sigma(-self.length, -self.sum)


def sigma(w: WordLike) -> Sigma:
    w = as_word(w)
    return Sigma(len(w), sum(w))


def parikh(w: WordLike) -> dict:
    """Letter -> occurrence count (letters absent from w are omitted)."""
    return dict(Counter(as_word(w)))


def abelian_equivalent(u: WordLike, v: WordLike) -> bool:
    return Counter(as_word(u)) == Counter(as_word(v))


def matvec(M, v):
    (a, b), (c, d) = M
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def det2(M) -> int:
    (a, b), (c, d) = M
    return a * d - b * c


@dataclass(frozen=True)
class Morphism:
    """A letter-to-word substitution on an integer alphabet."""

    images: tuple  # sorted ((letter, image), ...)
    _table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.images))

    @classmethod
    def from_mapping(cls, images: Mapping[int, WordLike]) -> "Morphism":
        return cls(tuple(sorted((int(a), as_word(w)) for a, w in images.items())))

    @property
    def alphabet(self) -> tuple:
        return tuple(a for a, _ in self.images)

    @property
    def codomain(self) -> tuple:
        return tuple(sorted({c for _, w in self.images for c in w}))

    @property
    def width(self) -> int:
        return max(len(w) for _, w in self.images)

    @property
    def min_length(self) -> int:
        return min(len(w) for _, w in self.images)

    def image(self, a: int) -> Word:
        try:
            return self._table[a]
        except KeyError:
            raise WordError(f"letter {a} outside the domain {self.alphabet}") from None

    def __call__(self, w: WordLike) -> Word:
        return apply(self, w)

    def incidence_matrix(self) -> np.ndarray:
        """N[i, j] = occurrences of letter i in the image of letter j."""
        letters = self.alphabet
        idx = {a: i for i, a in enumerate(letters)}
        N = np.zeros((len(letters), len(letters)), dtype=np.int64)
        for j, a in enumerate(letters):
            for c in self._table[a]:
                if c not in idx:
                    raise WordError("incidence matrix needs an endomorphism")
                N[idx[c], j] += 1
        return N


@dataclass(frozen=True)
class LinearMorphism(Morphism):
    """Morphism with |h(x)| = a + b*x and S(h(x)) = c + d*x for every letter x.

    ``matrix`` is ((a, b), (c, d)) so that sigma(h(u)) = matrix @ sigma(u).
    """

    matrix: tuple = ((1, 0), (0, 1))

    @property
    def det(self) -> int:
        return det2(self.matrix)


def _affine_fit(points) -> tuple:
    """Exact integer (intercept, slope) through all (x, y) points, or None."""
    (x1, y1) = points[0]
    other = next(((x, y) for x, y in points if x != x1), None)
    if other is None:
        return (y1, 0)
    x2, y2 = other
    if (y2 - y1) % (x2 - x1):
        return None
    slope = (y2 - y1) // (x2 - x1)
    intercept = y1 - slope * x1
    if all(intercept + slope * x == y for x, y in points):
        return (intercept, slope)
    return None


def make_linear_morphism(alphabet: Iterable[int] | None, images: Mapping[int, WordLike]) -> LinearMorphism:
    table = {int(a): as_word(w) for a, w in images.items()}
    letters = sorted(table) if alphabet is None else sorted(int(a) for a in alphabet)
    missing = [a for a in letters if a not in table]
    if missing:
        raise WordError(f"no image given for letters {missing}")
    if not letters:
        raise WordError("empty alphabet")
    lengths = _affine_fit([(x, len(table[x])) for x in letters])
    sums = _affine_fit([(x, sum(table[x])) for x in letters])
    if lengths is None or sums is None:
        raise NotLinear(
            f"image {'lengths' if lengths is None else 'sums'} are not affine in the letter value"
        )
    matrix = ((lengths[0], lengths[1]), (sums[0], sums[1]))
    return LinearMorphism(tuple((a, table[a]) for a in letters), matrix=matrix)


def apply(h: Morphism, w: WordLike) -> Word:
    out = []
    for c in as_word(w):
        out.extend(h.image(c))
    return tuple(out)


def _check_prolongable(h: Morphism, seed: int):
    img = h.image(seed)
    if not img or img[0] != seed:
        raise NotProlongable(f"h({seed}) = {word_str(img)} does not start with {seed}")


def iterate_prefix(h: Morphism, seed: int, n: int) -> Word:
    """h^n(seed); successive iterates are prefixes of each other."""
    _check_prolongable(h, seed)
    w: Word = (seed,)
    for _ in range(n):
        w = apply(h, w)
    return w


def prefix_of_length(h: Morphism, seed: int, length: int, max_iter: int = 64) -> Word:
    """Prefix of h^omega(seed) of the requested length."""
    _check_prolongable(h, seed)
    w: Word = (seed,)
    for _ in range(max_iter):
        if len(w) >= length:
            return w[:length]
        nxt = apply(h, w)
        if len(nxt) == len(w):
            break
        w = nxt
    if len(w) >= length:
        return w[:length]
    raise NonStabilizing(f"fixed point of seed {seed} does not reach length {length}")


def factors(w: Word, length: int) -> set:
    return {w[i:i + length] for i in range(len(w) - length + 1)}


@dataclass(frozen=True)
class FactorSet:
    """All length-``length`` factors of a fixed point, with the iterate that realizes them."""

    length: int
    factors: frozenset
    iterate: int
    prefix: Word  # h^iterate(seed)


def _closed_under(h: Morphism, F: set, L: int) -> bool:
    # Every length-L window of h(x) is covered by h(u), |u| = m.
    m = -(-(L - 1) // h.min_length) + 1
    if m > L:
        return False
    short = {u[i:i + m] for u in F for i in range(L - m + 1)}
    for u in short:
        img = apply(h, u)
        for i in range(len(img) - L + 1):
            if img[i:i + L] not in F:
                return False
    return True


def factors_of_fixed_point(h: Morphism, seed: int, length: int, max_iter: int = 30) -> FactorSet:
    """Length-``length`` factors of h^omega(seed).

    Iterates until the factor set of h^n(seed) equals that of h^(n+1)(seed),
    confirms it at n+2, and checks that the set is closed under taking
    length-``length`` windows of images of its own factors, which makes the
    answer exact rather than heuristic. ``iterate`` is the first such n.
    """
    if length < 1:
        raise WordError("factor length must be >= 1")
    _check_prolongable(h, seed)
    if h.min_length < 1:
        raise NonStabilizing("erasing morphism")
    words = [(seed,)]
    sets = [factors(words[0], length) if length <= 1 else None]
    for n in range(max_iter + 1):
        while len(words) < n + 3:
            nxt = apply(h, words[-1])
            words.append(nxt)
            sets.append(factors(nxt, length) if len(nxt) >= length else None)
        F = sets[n]
        if F is not None and F == sets[n + 1] == sets[n + 2] and _closed_under(h, F, length):
            return FactorSet(length, frozenset(F), n, words[n])
        # only the last two iterates are needed from here on
        words[n] = sets[n] = None
    raise NonStabilizing(f"length-{length} factors did not stabilize within {max_iter} iterations")


def is_primitive(N: np.ndarray) -> bool:
    n = N.shape[0]
    P = (N > 0).astype(np.int64)
    A = P.copy()
    # Wielandt: primitive iff A^((n-1)^2+1) > 0
    for _ in range((n - 1) ** 2 + 1):
        if (A > 0).all():
            return True
        A = ((A @ P) > 0).astype(np.int64)
    return bool((A > 0).all())


def letter_frequency(h: Morphism, seed: int, target: int, tol: float = 1e-12) -> float:
    """Frequency of ``target`` in h^omega(seed) from the Perron eigenvector."""
    _check_prolongable(h, seed)
    N = h.incidence_matrix()
    if not is_primitive(N):
        raise NotPrimitive("incidence matrix has no entrywise-positive power")
    letters = h.alphabet
    if target not in letters:
        return 0.0
    if len(letters) == 1:
        return 1.0
    if len(letters) == 2:
        (p, q), (r, s) = N.tolist()
        lam = ((p + s) + math.sqrt((p - s) ** 2 + 4 * q * r)) / 2
        # (N - lam I) v = 0 with v = (q, lam - p); q > 0 by primitivity
        v = np.array([q, lam - p], dtype=float)
    else:
        v = np.ones(len(letters)) / len(letters)
        Nf = N.astype(float)
        for _ in range(100000):
            nxt = Nf @ v
            nxt /= nxt.sum()
            if np.abs(nxt - v).max() < tol:
                v = nxt
                break
            v = nxt
    v = v / v.sum()
    return float(v[letters.index(target)])


_RULE = re.compile(r"(\d)\s*->\s*(\d+)")


def parse_morphism(text: str, linear: bool = True) -> Morphism:
    """Parse ``"0->001 1->012 2->212"``; letters are single decimal digits."""
    text = text.strip().strip('"')
    rules = _RULE.findall(text)
    leftover = _RULE.sub("", text).strip()
    if not rules or leftover:
        raise WordError(f"cannot parse morphism spec {text!r}")
    table = {}
    for a, img in rules:
        if int(a) in table:
            raise WordError(f"letter {a} defined twice")
        table[int(a)] = as_word(img)
    if linear:
        return make_linear_morphism(None, table)
    return Morphism.from_mapping(table)


def format_morphism(h: Morphism) -> str:
    return " ".join(f"{a}->{word_str(w)}" for a, w in h.images)


def _named():
    f = make_linear_morphism((0, 1, 2), {0: "001", 1: "012", 2: "212"})
    g = make_linear_morphism((0, 1, 2), {
        0: "0001001110010001100011",
        1: "0001001110011101100011",
        2: "0111001110011101100011",
    })
    h = make_linear_morphism((0, 1), {0: "0001", 1: "011"})
    return f, g, h


F_MORPHISM, G_MORPHISM, H_MORPHISM = _named()


def iterate_chunks(h: Morphism, seed: int, n: int, inner: int = 6):
    """Yield h^n(seed) as consecutive uint8 numpy chunks.

    h^n(seed) = h^inner(c_1) h^inner(c_2) ... over the letters c_i of
    h^(n-inner)(seed); each chunk is h^inner of one run of those letters.
    """
    if max(h.alphabet) > 255 or min(h.alphabet) < 0:
        raise WordError("chunked expansion needs letters in 0..255")
    inner = min(inner, n)
    outer = iterate_prefix(h, seed, n - inner)
    blocks = {a: np.asarray(iterate_prefix_any(h, a, inner), dtype=np.uint8) for a in h.alphabet}
    step = 4096
    for i in range(0, len(outer), step):
        yield np.concatenate([blocks[c] for c in outer[i:i + step]])


def iterate_prefix_any(h: Morphism, letter: int, n: int) -> Word:
    """h^n(letter) without the prolongability requirement."""
    w: Word = (letter,)
    for _ in range(n):
        w = apply(h, w)
    return w


def count_in_iterate(h: Morphism, seed: int, n: int, letter: int) -> tuple:
    """(occurrences of ``letter``, length) of h^n(seed), counted over streamed chunks."""
    hits = total = 0
    for chunk in iterate_chunks(h, seed, n):
        hits += int(np.count_nonzero(chunk == letter))
        total += len(chunk)
    return hits, total


def empirical_frequency_of_iterate(h: Morphism, seed: int, n: int, letter: int) -> Fraction:
    hits, total = count_in_iterate(h, seed, n, letter)
    return Fraction(hits, total)


def empirical_frequency(w: WordLike, letter: int) -> Fraction:
    w = as_word(w)
    if not w:
        raise WordError("frequency of the empty word is undefined")
    return Fraction(w.count(letter), len(w))
