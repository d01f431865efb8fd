import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from morita.fields import GF, QQ
from morita.ncpoly import (NCPoly, ParseError, UnknownGenerator, inverse_name, invert_word,
                           join_reduced, parse_poly, reduce_word, render)

letters = st.sampled_from(["a", "a^-1", "b", "b^-1", "x"])
words = st.lists(letters, max_size=12)


def naive_reduce(word, rng):
    """Cancel a randomly chosen adjacent inverse pair until none is left."""
    w = list(word)
    while True:
        spots = [i for i in range(len(w) - 1) if w[i + 1] == inverse_name(w[i])]
        if not spots:
            return tuple(w)
        i = rng.choice(spots)
        del w[i:i + 2]


@given(words, st.integers(0, 2**32))
def test_reduction_is_confluent(word, seed):
    r = reduce_word(word)
    assert naive_reduce(word, random.Random(seed)) == r
    assert all(r[i + 1] != inverse_name(r[i]) for i in range(len(r) - 1))
    assert reduce_word(r) == r


@given(words, words)
def test_join_of_reduced_words(u, v):
    u, v = reduce_word(u), reduce_word(v)
    assert join_reduced(u, v) == reduce_word(u + v)
    assert join_reduced(u, invert_word(u)) == ()


def test_parse_and_render_round_trip():
    p = parse_poly("3*a*a^-1*b - 1")
    assert p == parse_poly("3*b - 1")
    assert parse_poly(render(p)) == p
    assert render(parse_poly("1/2*x - x")) == "-1/2*x"


def test_powers_expand():
    assert parse_poly("a^2*a^-1") == NCPoly.gen("a")


def test_known_generators_are_enforced():
    with pytest.raises(UnknownGenerator):
        parse_poly("a*zz", known=["a", "a^-1"])
    with pytest.raises(ParseError):
        parse_poly("x^-1", known=["x"])
    for bad in ("", "a *", "a b", "+"):
        with pytest.raises(ParseError):
            parse_poly(bad)


def test_coefficients_live_in_the_field():
    p = parse_poly("3*a + a", GF(2))
    assert p == NCPoly.zero(GF(2))
    q = parse_poly("a", QQ) * parse_poly("a^-1", QQ)
    assert q == NCPoly.const(1)
