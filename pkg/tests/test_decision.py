import pytest

from wordavoid.decision import (
    AVOIDS,
    WITNESS,
    DecideConfig,
    _image_route,
    _template_route,
    check_hypotheses,
    decide_additive_k_avoidance,
)
from wordavoid.detectors import is_additive_power
from wordavoid.errors import HypothesisViolated
from wordavoid.templates import Template, ancestor_closure, bound_B, parent_derivations
from wordavoid.words import apply, as_word, factors_of_fixed_point, iterate_prefix, make_linear_morphism

from oracles import naive_additive


def lin(images):
    return make_linear_morphism(sorted(images), images)


def test_square_witness(f, g):
    rep = decide_additive_k_avoidance(f, g, 0, 2)
    assert rep.verdict == WITNESS
    word = as_word(rep.witness["word"])
    assert word == as_word("00") and is_additive_power(word, 2)
    assert naive_additive(apply(g, iterate_prefix(f, 0, 4)), 2) is not None


def test_cube_witness(f, g):
    rep = decide_additive_k_avoidance(f, g, 0, 3)
    assert rep.verdict == WITNESS and is_additive_power(as_word(rep.witness["word"]), 3)


def test_report_fields(f, g):
    rep = decide_additive_k_avoidance(f, g, 0, 4)
    d = rep.to_dict()
    assert d["verdict"] == AVOIDS
    assert d["outer_parent_count"] == 17056 and d["ancestor_count"] == 17104
    assert d["generation_log"] == [48, 0]
    assert d["max_delta"] == 2 and d["max_inner_bound"] == 22
    assert d["factor_iterate"] == 6
    assert d["short_scan"]["verdict"] == "clean" and d["short_scan"]["bound"] == 86
    assert d["image_route"]["prefix_scan"]["length"] == 48114


@pytest.mark.parametrize("f_images,g_images,seed,clause", [
    ({0: "02", 1: "012", 2: "0112"}, None, 0, "M_f invertible"),
    ({0: "001", 1: "012", 2: "212"}, {0: "0", 1: "01", 2: "011"}, 0, "|g(a)| >= 2"),
    ({0: "0", 1: "01", 2: "011"}, None, 0, "|f(a)| >= 2"),
    ({0: "001", 1: "012", 2: "212"}, None, 1, "prolongable"),
    ({0: "00", 1: "11", 2: "22"}, {0: "01", 1: "10"}, 0, "alphabet of f"),
])
def test_hypothesis_gate(f, g, f_images, g_images, seed, clause):
    ff = lin(f_images)
    gg = g if g_images is None else lin(g_images)
    with pytest.raises(HypothesisViolated) as err:
        decide_additive_k_avoidance(ff, gg, seed, 4)
    assert clause in str(err.value)


def test_eigenvalue_clause(g):
    # lengths 2 + x, sums x: M = [[2,1],[0,1]] has eigenvalue 1
    ff = lin({0: "00", 1: "010", 2: "0200"})
    with pytest.raises(HypothesisViolated, match="eigenvalues"):
        check_hypotheses(ff, g, 0)


def _routes(f2, g2, k):
    t0 = Template.zero(k)
    gp = parent_derivations(g2, t0)
    anc = ancestor_closure(f2, gp)
    loose = set(anc.loose) | {T for T, is_loose in gp.items() if is_loose}
    fs = factors_of_fixed_point(f2, 0, max(bound_B(f2, T) for T in anc) - 1)
    return _template_route(anc, loose, f2, fs.prefix), _image_route(f2, g2, 0, k, fs, 1, True)


def test_routes_both_flag_a_bad_pair(g):
    # the fixed point of 0->00 is 000..., so every image is full of powers
    f2 = lin({0: "00", 1: "11"})
    g2 = lin({0: g.image(0), 1: g.image(1)})
    template_route, (image_route, witness) = _routes(f2, g2, 4)
    assert not template_route["ok"] and template_route["violations"]
    assert not image_route["ok"] and witness is not None


def test_image_route_threads(f, g):
    fs = factors_of_fixed_point(f, 0, 9)
    one = _image_route(f, g, 0, 3, fs, 1, False)
    many = _image_route(f, g, 0, 3, fs, 4, False)
    assert one == many


def test_config_is_respected(f, g):
    with pytest.raises(Exception) as err:
        decide_additive_k_avoidance(f, g, 0, 4, DecideConfig(ancestor_cap=1000))
    assert "exceeded" in str(err.value)
