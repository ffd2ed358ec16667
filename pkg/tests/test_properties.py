"""Property suites: product homomorphisms, duality, P-R invariance, algebra laws."""
from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from qmzv.core import (
    PI,
    RHO,
    Y,
    LinComb,
    TypeTag,
    composition_of,
    enumerate_admissible,
    enumerate_compositions,
    is_admissible,
    weight,
    word_of,
    zword_to_pyword,
)
from qmzv.okounkov import enumerate_o, eval_o, f_o_product_holds, oword_expand
from qmzv.qseries import eval_lincomb, eval_nested_sum, eval_value
from qmzv.relations import gen_all, gen_dbsf, pure_words
from qmzv.shuffle import block_form, dual, from_block_form, normalize_typical, pr_expand, shuffle, shuffle_lincomb
from qmzv.stuffle import stuffle, stuffle_lincomb

N = 50
PRODUCT_TYPES = [TypeTag.I_TILDE, TypeTag.II, TypeTag.III, TypeTag.IV, TypeTag.IV_TILDE, TypeTag.G]
WORDS = {t: enumerate_admissible(t, 4) for t in PRODUCT_TYPES}
many = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def value(t, word):
    return eval_lincomb({word: 1}, type_=t, order=N)


def check_homomorphism(t, u, v):
    expected = value(t, u) * value(t, v)
    assert eval_lincomb(stuffle(t, u, v), type_=t, order=N) == expected
    sh = shuffle(zword_to_pyword(u, t), zword_to_pyword(v, t))
    assert eval_lincomb(sh, order=N) == expected


@pytest.mark.parametrize("t", [t for t in PRODUCT_TYPES if t is not TypeTag.IV], ids=str)
@many
@given(data=st.data())
def test_homomorphism(t, data):
    u = data.draw(st.sampled_from(WORDS[t]))
    v = data.draw(st.sampled_from(WORDS[t]))
    check_homomorphism(t, u, v)


@many
@given(st.sampled_from(WORDS[TypeTag.IV]), st.sampled_from(WORDS[TypeTag.IV]))
def test_homomorphism_iv(u, v):
    check_homomorphism(TypeTag.IV, u, v)


def test_homomorphism_i_exhaustive():
    # type I has only 15 words of weight <= 5, so every pair is checked
    words = enumerate_admissible(TypeTag.I, 5)
    assert len(words) ** 2 >= 200
    for u, v in product(words, repeat=2):
        check_homomorphism(TypeTag.I, u, v)


def test_homomorphism_o_exhaustive():
    # stuffle on all 400 pairs of weight <= 7, shuffle on the 144 pairs of weight <= 6
    words = list(zip(enumerate_o(7), enumerate_admissible("o", 7)))
    for (u, zu), (v, zv) in product(words, repeat=2):
        expected = eval_o(u, N) * eval_o(v, N)
        assert eval_lincomb(stuffle("o", zu, zv), type_="o", order=N) == expected
        if sum(u) <= 6 and sum(v) <= 6:
            sh = shuffle_lincomb(oword_expand(u), oword_expand(v))
            assert eval_lincomb(sh, order=N) == expected


@pytest.mark.parametrize("t", PRODUCT_TYPES + [TypeTag.O], ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_stuffle_laws(t, data):
    words = enumerate_admissible(t, 3)
    u, v, w = (data.draw(st.sampled_from(words)) for _ in range(3))
    uv = stuffle(t, u, v)
    assert uv == stuffle(t, v, u)
    left = stuffle_lincomb(t, uv, {w: 1})
    right = stuffle_lincomb(t, {u: 1}, stuffle(t, v, w))
    assert left == right
    for x in uv:
        assert is_admissible(x, t)
        assert weight(x) <= weight(u) + weight(v)
        assert max(len(u), len(v)) <= len(x) <= len(u) + len(v)
        if t in (TypeTag.II, TypeTag.G):
            assert weight(x) == weight(u) + weight(v)


# the shuffle algebra lives on words ending in y; rho means pi - 1,
# so identities hold after P-R expansion rather than letter by letter
py_words = st.text(alphabet=[RHO, PI, Y], max_size=4).map(lambda w: w + Y) | st.just("")


@settings(max_examples=200, deadline=None)
@given(py_words, py_words, py_words)
def test_shuffle_laws(a, b, c):
    ab = shuffle(a, b)
    assert ab == shuffle(b, a)
    assert pr_expand(shuffle_lincomb(ab, {c: 1})) == pr_expand(shuffle_lincomb({a: 1}, shuffle(b, c)))


@pytest.mark.parametrize("t", ["i~", "ii", "iii", "iv~"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_shuffle_closure(t, data):
    words = [word_of(c) for c in enumerate_compositions(t, 3)]
    u, v = data.draw(st.sampled_from(words)), data.draw(st.sampled_from(words))
    basis = set(enumerate_compositions(t, 6))
    typical = normalize_typical(t, shuffle(u, v))
    assert {composition_of(w) for w in typical} <= basis


PURE = pure_words(5, 5)


@pytest.mark.parametrize("p", PURE)
def test_duality(p):
    assert dual(dual(p)) == p
    a, b = eval_value(composition_of(p), 40), eval_value(composition_of(dual(p)), 40)
    assert a == b
    assert eval_nested_sum(*block_form(p), 40) == a


@pytest.mark.parametrize("c", enumerate_compositions("g", 4), ids=str)
def test_pr_invariance(c):
    w = word_of(c)
    expanded = pr_expand(w)
    assert PI not in "".join(expanded)
    assert eval_lincomb(expanded, order=40) == eval_value(c, 40)
    top = [x for x in expanded if len(x) == len(w)]
    assert top == [w.replace(PI, RHO)] and expanded[top[0]] == 1


@pytest.mark.parametrize("t", ["i~", "i", "ii", "iii", "iv", "iv~", "g"])
def test_soundness(t):
    w = 3 if t == "g" else 4
    sys_ = gen_all(t, w)
    assert sys_.check_soundness(100) == []


def test_soundness_g4():
    assert gen_all("g", 4).check_soundness(60) == []


def test_f_o_rule():
    assert all(f_o_product_holds(r, s, 50) for r in range(2, 9) for s in range(2, 9))


def block_forms(total):
    def comps(n):
        if n == 0:
            yield ()
            return
        for first in range(1, n + 1):
            for rest in comps(n - first):
                yield (first,) + rest

    for n in range(2, total + 1):
        for a_sum in range(1, n):
            for alphas in comps(a_sum):
                for betas in comps(n - a_sum):
                    if len(alphas) == len(betas):
                        yield alphas, betas


@pytest.mark.parametrize("ab", list(block_forms(5)), ids=str)
def test_nested_sum(ab):
    alphas, betas = ab
    c = composition_of(from_block_form(alphas, betas))
    assert eval_nested_sum(alphas, betas, 40) == eval_value(c, 40)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(enumerate_compositions("g", 3)), st.integers(5, 40))
def test_truncation_coherence(c, n):
    assert eval_value(c, 60).truncate(n) == eval_value(c, n)


@given(st.dictionaries(st.sampled_from("abc"), st.integers(-3, 3)))
def test_lincomb_no_zero_entries(d):
    lc = LinComb(d)
    assert 0 not in lc.values()
    assert 0 not in (lc - lc).values() and not (lc - lc)


def test_ds_rank_monotone():
    ranks = [gen_dbsf("ii", w).rank() for w in range(1, 5)]
    assert ranks == sorted(ranks)
