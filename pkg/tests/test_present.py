import random

import pytest
from hypothesis import given, strategies as st

from commlen.corpus import random_reduced
from commlen.present import (
    CommutatorPresentation,
    Decomposition,
    commutator_letters,
    expand,
    lift,
    peel,
    peel_letters,
    presentation,
    verify,
)
from commlen.words import Alphabet, AlphabetError, Word, free_reduce, invert_letters, parse, reduce

XY = Alphabet(("x", "y"))


def P(*pairs, alphabet=XY):
    return presentation([(parse(u, alphabet), parse(v, alphabet)) for u, v in pairs], alphabet)


def test_peel_examples():
    u, v, r = peel(Decomposition(parse("[x,y]", XY), (1, 2, 3, 4)))
    assert (u.letters, v.letters, r.letters) == ((1,), (2,), ())
    w = reduce(parse("[x,y]^2", XY))
    u, v, r = peel(Decomposition(w, (1, 2, 3, 4)))
    assert (u.letters, v.letters) == ((1,), (2,))
    assert r == reduce(parse("[x,y]", XY))


def test_decomposition_validation():
    w = parse("[x,y]", XY)
    with pytest.raises(ValueError):
        Decomposition(w, (1, 3, 2, 4))
    with pytest.raises(ValueError):
        Decomposition(parse("x y y^-1 x^-1", XY), (1, 2, 3, 4))
    d = Decomposition(w, (1, 2, 3, 4))
    assert (d.a, d.b) == (1, 2)
    assert all(len(f) == 0 for f in d.factors())


def build(rng, n_gens):
    """A word W1 a^-1 W2 b^-1 W3 a W4 b W5 and its quadruple."""
    parts = [list(random_reduced(rng, rng.randint(0, 4), n_gens)) for _ in range(5)]
    a = rng.choice([1, -1]) * rng.randint(1, n_gens)
    b = rng.choice([1, -1]) * rng.randint(1, n_gens)
    letters, quad = [], []
    for part, mid in zip(parts, [-a, -b, a, b, None]):
        letters += part
        if mid is not None:
            letters.append(mid)
            quad.append(len(letters))
    return tuple(letters), tuple(quad)


def test_peel_identity_random():
    rng = random.Random(21)
    for _ in range(2000):
        letters, quad = build(rng, rng.randint(1, 4))
        u, v, r = peel_letters(letters, quad)
        assert free_reduce(commutator_letters(u, v) + r) == free_reduce(letters)


def test_lift_examples():
    p = P(("x", "y"))
    assert lift(Word(XY, ()), p) == p
    lifted = lift(parse("x", XY), p)
    assert lifted.to_json() == [["x", "xyx^-1"]]
    assert expand(lifted) == reduce(parse("x [x,y] x^-1", XY))


letters2 = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6).map(free_reduce)


@given(letters2, letters2, st.lists(st.tuples(letters2, letters2), max_size=3))
def test_lift_is_conjugation_and_action(c1, c2, raw):
    p = CommutatorPresentation(XY, tuple(raw))
    w1, w2 = Word(XY, c1), Word(XY, c2)
    lifted = lift(w1, p)
    assert expand(lifted).letters == free_reduce(c1 + expand(p).letters + invert_letters(c1))
    twice = lift(w2, lifted)
    once = lift(Word(XY, free_reduce(c2 + c1)), p)
    assert expand(twice) == expand(once)


def test_expand_examples():
    assert expand(P(("x", "y"))).letters == (-1, -2, 1, 2)
    target = reduce(parse("[x,y]^3", XY))
    assert verify(P(("x^-1yx", "x^-2yxy^-1"), ("yxy^-1", "y^2")), target)
    assert verify(P(("yx^2", "yxyx^-1y^-1")), parse("[x,y][x^-1,y^-1]", XY))
    assert not verify(P(("x", "y")), target)
    assert expand(CommutatorPresentation(XY)).letters == ()


def test_verify_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        verify(P(("x", "y")), parse("[a,b]"))


def test_presentation_text_and_json():
    p = P(("x^-1yx", "x^-2yxy^-1"), ("yxy^-1", "y^2"))
    assert str(p) == "[x^-1yx,x^-2yxy^-1][yxy^-1,y^2]"
    assert str(CommutatorPresentation(XY)) == "1"
    assert CommutatorPresentation.from_json(p.to_json(), XY) == p


def test_presentation_alphabet_merges():
    p = presentation([(parse("x", Alphabet(("x",))), parse("z", Alphabet(("x", "y", "z"))))])
    assert p.alphabet.names == ("x", "y", "z")
