from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from scobcheck.errors import MissingImage
from scobcheck.parsing import parse_word
from scobcheck.words import Word, commutator, conjugate, free_reduce, render_word, substitute

from conftest import letters, words

W = parse_word


def test_cancellation_examples():
    assert Word([("t", 1), ("t", -1), ("a", 1)]) == W("a")
    assert Word([("a", 1), ("b", 1), ("b", -1), ("b", 1)]) == W("a b")
    fixed = [("x", -1), ("y", 1), ("x", 1), ("y", 1)]
    assert Word(fixed).letters == tuple(fixed)


def test_identity_and_rendering():
    assert not Word()
    assert render_word(Word()) == "1"
    assert render_word(W("t t t a^-3")) == "t^3 a^-3"
    assert str(W("x^-1 y t^-1 x^-1 t")) == "x^-1 y t^-1 x^-1 t"


def test_substitute_monodromy_images():
    images = {"tau": W("xi"), "xi": W("tau xi")}
    assert substitute(W("tau"), images) == W("xi")
    assert substitute(W("xi"), images) == W("tau xi")
    assert substitute(W("tau xi^-1"), images) == W("tau^-1")


def test_substitute_missing_image():
    with pytest.raises(MissingImage):
        substitute(W("a b"), {"a": W("b")})


def test_bad_exponent_rejected():
    with pytest.raises(ValueError):
        Word([("a", 2)])


def test_powers_and_syllables():
    assert Word.gen("t", 3) * Word.gen("a", -3) == Word.from_syllables([("t", 3), ("a", -3)])
    assert (W("a b") ** -2) == W("b^-1 a^-1 b^-1 a^-1")
    assert W("a^2 b^-1 a").syllables() == [("a", 2), ("b", -1), ("a", 1)]
    assert W("a b a^-1").exponent_sum("a") == 0
    assert W("a b a^-1").occurrences("a") == 2


def test_cyclic_reduction_and_key():
    assert W("b a c b^-1").cyclic_reduce() == W("a c")
    assert W("a b c").cyclic_key() == W("c a b").cyclic_key() == W("c^-1 b^-1 a^-1").cyclic_key()
    assert W("a b c").cyclic_key() != W("a c b").cyclic_key()


def test_commutator_and_conjugate():
    a, b = Word.gen("a"), Word.gen("b")
    assert commutator(a, b) == W("a b a^-1 b^-1")
    assert conjugate(a, b) == W("b a b^-1")


@settings(max_examples=1000)
@given(letters())
def test_free_reduce_idempotent(raw):
    once = free_reduce(raw)
    assert free_reduce(once) == once
    assert len(once) <= len(raw)
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(once, once[1:]))


@given(words())
def test_word_times_inverse_is_identity(w):
    assert w * w.inverse() == Word()
    assert w.inverse().inverse() == w


@given(words(), words(), st.fixed_dictionaries({g: words(max_size=4) for g in "abc"}))
def test_substitute_is_a_homomorphism(u, v, images):
    assert substitute(u * v, images) == substitute(u, images) * substitute(v, images)


@given(words())
def test_substitute_identity_map(w):
    assert substitute(w, {g: Word.gen(g) for g in "abc"}) == w


@given(words(), st.permutations(["a", "b", "c"]))
def test_renaming_is_invertible_and_length_preserving(w, perm):
    fwd = {g: Word.gen(h) for g, h in zip("abc", perm)}
    back = {h: Word.gen(g) for g, h in zip("abc", perm)}
    img = substitute(w, fwd)
    assert len(img) == len(w)
    assert substitute(img, back) == w


@given(words())
def test_render_parse_round_trip(w):
    assert parse_word(render_word(w)) == w
