import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from flexigraph import membership
from flexigraph.membership import (MAGNUS_GRID, TruncSeries, Verdict, fox_coefficient,
                                   fp_normal_form, in_H, in_power_gamma, magnus)
from flexigraph.words import FreeWord, parse_word, reduce

letters3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=10)


def w(text):
    return parse_word(text, 3)


def test_magnus_examples():
    assert magnus(FreeWord.identity(3)).is_one()
    s = magnus(w("x1"), 0, 3)
    assert s.coeffs == {(): 1, (1,): 1}
    s = magnus(w("x1^-1"), 0, 3)
    assert s.coeffs == {(): 1, (1,): -1, (1, 1): 1}
    assert str(s) == "1 + -1*X1 + X1*X1"


@pytest.mark.parametrize("a", [-5, -3, -1, 1, 2, 4, 7])
def test_magnus_of_power_is_binomial(a):
    s = magnus(FreeWord.gen(2, 3, a), 0, 6)
    for n in range(1, 6):
        expect = comb(a, n) if a > 0 else (-1) ** n * comb(-a + n - 1, n)
        assert s.coefficient((2,) * n) == expect


def test_in_power_gamma_examples():
    assert in_power_gamma(w("x1^2"), 2) is Verdict.TRIVIAL_IMAGE
    assert in_power_gamma(w("x1^-1*x2^-1*x1*x2"), 2) is Verdict.TRIVIAL_IMAGE
    assert in_power_gamma(w("x1*x2*x1"), 3) is Verdict.CERTIFIED_OUT


def test_fox_examples():
    assert fox_coefficient(w("x1"), (1,)) == 1
    assert fox_coefficient(w("x1^-1"), (1,)) == -1
    assert fox_coefficient(w("x1^2*x2^3"), (1, 2)) == 6


def _truncated_product(series_list, d):
    # independent dense oracle: polynomials as dicts, multiplied naively
    out = {(): 1}
    for s in series_list:
        nxt = {}
        for m1, c1 in out.items():
            for m2, c2 in s.items():
                if len(m1) + len(m2) < d:
                    nxt[m1 + m2] = nxt.get(m1 + m2, 0) + c1 * c2
        out = {k: v for k, v in nxt.items() if v}
    return out


@settings(max_examples=60)
@given(letters3)
def test_magnus_against_dense_oracle(letters):
    word = reduce(letters, 3)
    d = 4
    per_letter = []
    for g in word.letters:
        i = abs(g)
        per_letter.append({(): 1, (i,): 1} if g > 0 else
                          {(i,) * n: (-1) ** n for n in range(d)})
    assert magnus(word, 0, d).coeffs == _truncated_product(per_letter, d)


@given(letters3, letters3, st.sampled_from(MAGNUS_GRID))
def test_magnus_is_multiplicative(a, b, md):
    m, d = md
    u, v = reduce(a, 3), reduce(b, 3)
    assert magnus(u * v, m, d) == magnus(u, m, d) * magnus(v, m, d)
    assert (magnus(u.inverse(), m, d) * magnus(u, m, d)).is_one()


@given(letters3)
def test_magnus_order_detects_commutators(a):
    u = reduce(a, 3)
    v = w("x1*x2")
    c = u.inverse() * v.inverse() * u * v
    assert magnus(c, 0, 2).is_one()


def test_fp_normal_form_examples():
    assert fp_normal_form([(1, 3)], 3).is_identity()
    assert fp_normal_form([(2, 1), (3, 1), (2, 1)], 3).syllables == ((2, 1), (3, 1), (2, 1))
    assert fp_normal_form([(3, 3)], 3).syllables == ((3, 3),)


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_in_H_examples(ell):
    assert in_H(FreeWord.gen(1, 3, ell), ell)
    long = FreeWord((2, -3) * ell, 3)
    assert in_H(long, ell) and len(long) == 2 * ell
    assert not in_H(FreeWord.gen(2, 3, ell), ell)


def test_x2_squared_not_in_H():
    assert not in_H(w("x2^2"), 2)


@settings(max_examples=60)
@given(st.integers(2, 5), st.lists(st.tuples(letters3, st.sampled_from([0, 1]), st.sampled_from([1, -1])),
                                    max_size=4))
def test_in_H_accepts_products_of_conjugates(ell, parts):
    gens = [FreeWord.gen(1, 3, ell), FreeWord((2, -3) * ell, 3)]
    acc = FreeWord.identity(3)
    for conj, k, sign in parts:
        c = reduce(conj, 3)
        acc = acc * c.inverse() * (gens[k] ** sign) * c
    assert in_H(acc, ell)


@given(letters3)
def test_in_H_respects_abelian_obstruction(a):
    # the x1-exponent sum must vanish mod ell for members
    u = reduce(a, 3)
    if in_H(u, 3):
        from flexigraph.words import abelianize
        assert abelianize(u)[0] % 3 == 0


def test_suites_small():
    assert membership.fox_suite(50, seed=1)["verdict"] == "PASS"
    assert membership.magnus_suite(10, seed=1)["verdict"] == "PASS"


def test_reports_shape():
    r = membership.verify_power_gamma(2, 2)
    assert r["theorem"] == "B" and r["verdict"] == "PASS"
    assert r["trivial_image"] == ["1", "x1^2", "x1^-2", "x2^2", "x2^-2"]
    assert isinstance(r["claim"], str)


def test_seed_determinism():
    assert membership.fox_suite(30, seed=3) == membership.fox_suite(30, seed=3)
    rng = random.Random(0)
    word, idx, exps = membership.random_power_word(rng, 3)
    assert all(i != j for i, j in zip(idx, idx[1:]))
    assert all(exps)
