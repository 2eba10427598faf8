import itertools

import pytest
from hypothesis import given, settings, strategies as st

from flexigraph import amalgam
from flexigraph.amalgam import (A, B, IDENTITY, Z, AmalgamNF, GWord, X_WORDS, conj_action,
                                conjugacy_orbit, gword, normal_form, phi, schreier_rewrite,
                                star_ball, star_ball_size, star_length)
from flexigraph.errors import NotInKernel
from flexigraph.words import FreeWord, parse_word

gletters = st.lists(st.tuples(st.sampled_from("abz"), st.integers(-5, 5)), max_size=12)


def test_normal_form_examples():
    assert normal_form(B) == AmalgamNF(1, (1,))
    assert normal_form(gword("z*z")) == IDENTITY
    x1 = normal_form(gword("z*a^2*z*a^2"))
    assert x1 == AmalgamNF(0, (0, 2, 2))
    assert x1.star_length == 4
    assert x1.z_count == 2


def test_text():
    assert IDENTITY.to_text() == "1"
    assert normal_form(gword("b*z*a^2")).to_text() == "(ab) * a * z * a^2"


def _d4():
    return {normal_form(GWord((("a", r), ("b", s)))) for r in range(4) for s in range(2)}


def test_d4_has_eight_elements_and_star_length_le_1():
    d4 = _d4()
    assert len(d4) == 8
    assert all(g.star_length <= 1 for g in d4)


def _brute_ball(radius):
    # every element of D4 (z D4)^k with k z's has a word of the form d0 z d1 ... z dk
    d4 = [GWord((("a", r), ("b", s))) for r in range(4) for s in range(2)]
    found = set()
    for k in range(radius + 1):
        for ds in itertools.product(d4, repeat=k + 1):
            w = ds[0]
            for d in ds[1:]:
                w = w * Z * d
            g = normal_form(w)
            if g.star_length <= radius:
                found.add(g)
    return found


@pytest.mark.parametrize("r,n", [(0, 2), (1, 10), (2, 22)])
def test_star_ball_sizes_against_brute_force(r, n):
    assert star_ball_size(r) == n
    ball = list(star_ball(r))
    assert len(ball) == len(set(ball)) == n
    assert set(ball) == _brute_ball(r)


def test_star_ball_contains_d4():
    assert _d4() <= set(star_ball(1))


def test_phi_examples():
    assert phi(gword("(a*b)^-1*z^-1*a*b*z")) == amalgam.IMAGE_IDENTITY
    assert phi(gword("z*a*z*a")) == amalgam.IMAGE_IDENTITY
    assert phi(A) == (1, 0, 0)
    assert len(amalgam.image_closure([phi(A)])) == 4


def test_phi_kills_relators_and_image_order_16():
    for text in amalgam.G_RELATORS.values():
        assert phi(gword(text)) == amalgam.IMAGE_IDENTITY
    assert phi(gword("(a*b*z)^2")) == amalgam.IMAGE_IDENTITY
    assert len(amalgam.image_closure([phi(A), phi(B), phi(Z)])) == 16


def test_kernel_generators():
    for i in (1, 2, 3):
        assert phi(X_WORDS[i]) == amalgam.IMAGE_IDENTITY
        assert schreier_rewrite(X_WORDS[i]) == FreeWord.gen(i, 3)


def test_conjugation_action():
    x1 = X_WORDS[1]
    assert schreier_rewrite(A.inverse() * x1 * A) == parse_word("x2^-1*x3", 3)
    assert schreier_rewrite(Z * x1 * Z) == parse_word("x1^-1", 3)
    assert conj_action(Z)[0] == parse_word("x1^-1", 3)
    assert conj_action(A)[0] == parse_word("x2^-1*x3", 3)


def test_conj_action_is_exact():
    for g in (A, B, Z):
        gi = g.inverse()
        for i, img in enumerate(conj_action(g), start=1):
            lhs = normal_form(gi * X_WORDS[i] * g)
            assert lhs == normal_form(amalgam.expand_x(img))


def test_orbit_of_x1_power():
    acts = [conj_action(g) for g in (A, B, Z)]
    orbit = conjugacy_orbit(FreeWord.gen(1, 3, 2), acts)
    assert len(orbit) == 2


def test_not_in_kernel():
    with pytest.raises(NotInKernel):
        schreier_rewrite(A)


def test_relator_checker_candidate_images():
    report = amalgam.check_relators(amalgam.SYM8_CANDIDATE_IMAGES, 8)
    for conv in ("left-to-right", "right-to-left"):
        assert not report[conv]["[ab,z]"]
        assert all(v for k, v in report[conv].items() if k != "[ab,z]")


def _gw(letters):
    return GWord(tuple(letters))


@given(gletters)
def test_nf_preserves_phi(letters):
    w = _gw(letters)
    assert phi(normal_form(w).to_gword()) == phi(w)


@given(gletters)
def test_nf_idempotent(letters):
    g = normal_form(_gw(letters))
    assert normal_form(g.to_gword()) == g
    assert star_length(g.to_gword()) == g.star_length


@given(gletters, gletters)
def test_nf_inverse_and_product(a, b):
    u, v = normal_form(_gw(a)), normal_form(_gw(b))
    assert (u * u.inverse()).is_identity()
    assert u * v == normal_form(_gw(a) * _gw(b))


@settings(max_examples=50)
@given(gletters)
def test_rewrite_roundtrip(letters):
    w = _gw(letters)
    t = amalgam.transversal()[phi(w)]
    k = w * t.inverse()
    assert normal_form(amalgam.expand_x(schreier_rewrite(k))) == normal_form(k)
