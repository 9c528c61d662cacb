import math
import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wordavoid.errors import ParikhClassViolation, WordError
from wordavoid.growth import (
    GOLDEN_FREQUENCY,
    MultiSubstitution,
    PowerProduct,
    SubstitutionStats,
    base_substitutions,
    best_composition,
    beta,
    compose_stats,
    composition,
    composition_stats,
    identity_substitution,
    maximizer,
    sample_and_verify,
    table_rows,
    truncate,
)

from oracles import enumerate_substitution

BASES = base_substitutions()


def stats_tuple(st_):
    return st_.lengths, tuple(c.value for c in st_.counts), st_.parikh


def test_base_stats():
    th0, th1 = BASES["0"].stats(), BASES["1"].stats()
    assert stats_tuple(th0)[:2] == ((4, 3), (1, 2))
    assert stats_tuple(th1)[:2] == ((3, 4), (2, 1))
    assert BASES["2"].stats().parikh[1] == (2, 1)


def test_theta_01():
    st_ = composition_stats("01")
    assert stats_tuple(st_)[:2] == ((13, 11), (8, 4))
    sets = enumerate_substitution({c: BASES[c].images for c in "01"}, "01")
    assert [len(s) for s in sets] == [8, 4]
    assert [{len(w) for w in s} for s in sets] == [{13}, {11}]


def test_identity_leaves_stats():
    ident = identity_substitution()
    for c in "0123":
        assert compose_stats(ident, BASES[c]) == BASES[c].stats()
        assert compose_stats(BASES[c], ident) == BASES[c].stats()
    assert composition_stats("") == ident.stats()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_stats_match_enumeration(k):
    images = {c: BASES[c].images for c in "0123"}
    for x in map("".join, product("0123", repeat=k)):
        st_ = composition_stats(x)
        sets = enumerate_substitution(images, x)
        for a in (0, 1):
            assert st_.counts[a].value == len(sets[a])
            assert {len(w) for w in sets[a]} == {st_.lengths[a]}
            assert {(w.count(0), w.count(1)) for w in sets[a]} == {st_.parikh[a]}
        assert composition(x).stats() == st_


def test_associativity():
    for a, b, c in product("0123", repeat=3):
        A, B, C = (BASES[x].stats() for x in (a, b, c))
        assert compose_stats(A, compose_stats(B, C)) == compose_stats(compose_stats(A, B), C)


def test_parikh_violation():
    bad = MultiSubstitution((("01", "11"), ("1",)))
    with pytest.raises(ParikhClassViolation):
        bad.stats()
    with pytest.raises(WordError):
        MultiSubstitution((("01", "1"), ("1",)))


def test_beta_examples():
    assert truncate(beta(BASES["1"].stats())) == "1.13503537"
    assert truncate(beta(composition_stats("1101"))) == "1.17123737"
    flat = SubstitutionStats((3, 5), (PowerProduct.of(1), PowerProduct.of(1)), ((1, 2), (3, 2)))
    assert beta(flat) == 1.0
    with pytest.raises(WordError):
        beta(flat, alpha=0.3, eps=0.3)


def test_beta_theta0_by_hand():
    a, e = GOLDEN_FREQUENCY, 1e-5
    expected = 2 ** ((1 - a - e) / ((a + e) * 4 + (1 - a + e) * 3))
    assert math.isclose(beta(BASES["0"].stats()), expected, rel_tol=1e-14)
    best = best_composition(1, bases="0")
    assert len(best) == 1 and best[0].x == "0" and math.isclose(best[0].beta, expected, rel_tol=1e-14)


def _stats(l0, l1, m0, m1):
    return SubstitutionStats((l0, l1), (PowerProduct.of(m0), PowerProduct.of(m1)), ((0, 0), (0, 0)))


def test_beta_monotone_on_grid():
    for l0, l1, m0, m1 in product(range(2, 7), range(2, 7), range(1, 6), range(1, 6)):
        b = beta(_stats(l0, l1, m0, m1))
        assert beta(_stats(l0, l1, m0 + 1, m1)) > b
        assert beta(_stats(l0, l1, m0, m1 + 1)) > b
        if m0 * m1 > 1:
            assert beta(_stats(l0 + 1, l1, m0, m1)) < b
            assert beta(_stats(l0, l1 + 1, m0, m1)) < b


@given(st.integers(1, 10 ** 12), st.integers(1, 10 ** 12))
def test_power_product(a, b):
    P, Q = PowerProduct.of(a), PowerProduct.of(b)
    assert (P * Q).value == a * b
    assert (P ** 3).value == a ** 3
    assert math.isclose(P.log(), math.log(a), abs_tol=1e-9)


def test_huge_counts_stay_finite():
    st_ = composition_stats("1" * 20)
    assert st_.counts[0].log10() > 1000
    assert 1 < beta(st_) < 2


def test_best_composition_examples():
    best, unique = maximizer(4)
    assert unique and best.x == "1101" and best.beta_truncated == "1.17123737"
    best, unique = maximizer(12)
    assert best.x == "001011111101" and best.beta_truncated == "1.17229185"
    ranked = best_composition(3)
    assert len(ranked) == 8
    assert [r.beta for r in ranked] == sorted((r.beta for r in ranked), reverse=True)
    with pytest.raises(WordError):
        best_composition(21)
    with pytest.raises(WordError):
        best_composition(0)


def test_keep_matches_full_ranking():
    full = best_composition(8)
    assert [r.x for r in best_composition(8, keep=5)] == [r.x for r in full[:5]]


@pytest.mark.slow
def test_extra_bases_never_win():
    for k in range(1, 11):
        two, _ = maximizer(k, "01")
        four, _ = maximizer(k, "0123")
        assert four.beta <= two.beta + 1e-12, k
        assert set(four.x) <= set("01"), (k, four.x)


def test_table_rows():
    rows = table_rows([1, 2])
    assert [r["x"] for r in rows] == ["1", "01"]
    assert rows[1]["l0"] == 13 and rows[1]["beta"] == "1.15986115"
    assert math.isclose(rows[1]["log10_m0"], math.log10(8))


def test_sample_and_verify():
    assert sample_and_verify("1", 30, 100).clean
    assert sample_and_verify("", 30, 5).clean
    assert sample_and_verify("0110", 30, 20, rng=random.Random(1)).clean
    bad = {"0": MultiSubstitution((("0000",), ("011", "101")))}
    rep = sample_and_verify("0", 30, 3, bases=bad)
    assert not rep.clean and rep.counterexample is not None and rep.trial == 0
