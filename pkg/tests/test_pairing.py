import random

import pytest
from hypothesis import given, settings, strategies as st

from commlen.corpus import random_product, random_reduced
from commlen.pairing import (
    _branch_and_bound,
    _branch_and_bound_py,
    NotInCommutatorSubgroup,
    Pairing,
    cl_bardakov,
    cl_bardakov_stats,
    extremal_pairing,
    formula_cl,
    pairing_count,
    pairings,
    v_statistic,
)
from commlen.words import Alphabet, cyclic_reduce_letters, free_reduce, invert_letters, parse

XY = Alphabet(("x", "y"))


def L(text):
    return parse(text, XY).letters


def test_pairing_counts():
    assert [p.pi for p in pairings(L("[x,y]"))] == [(3, 4, 1, 2)]
    assert len(list(pairings(L("x x x^-1 x^-1")))) == 2
    assert len(list(pairings(L("[x,y]^2")))) == 4
    assert pairing_count(L("[x,y]^2")) == 4


def test_pairings_are_distinct_and_valid():
    w = L("[x,y]^3")
    seen = {p.pi for p in pairings(w)}
    assert len(seen) == pairing_count(w) == 36


def test_v_examples():
    assert v_statistic(Pairing(L("[x,y]"), (3, 4, 1, 2))) == 1
    assert [v_statistic(p) for p in pairings(L("[x,y]^2"))] == [1, 1, 1, 1]
    assert v_statistic(Pairing((1, -1), (2, 1))) == 2


def test_pairing_validation():
    with pytest.raises(ValueError):
        Pairing((1, -1), (1, 2))
    with pytest.raises(ValueError):
        Pairing((1, 1, -1, -1), (2, 1, 4, 3))


def test_extremal_examples():
    r = extremal_pairing(L("[x,y]"))
    assert (r.v, r.cl) == (1, 1)
    r = extremal_pairing(L("[x,y]^2"))
    assert (r.v, r.cl) == (1, 2)
    r = extremal_pairing(free_reduce(L("[x,y][x^-1,y^-1]")))
    assert (r.v, r.cl) == (3, 1)


def test_cl_bardakov_commutator_powers():
    assert [cl_bardakov(L(f"[x,y]^{n}")) for n in (1, 2, 3)] == [1, 2, 2]
    assert cl_bardakov(L("1")) == 0
    assert cl_bardakov(L("x y x^-1 y^-1 y x y^-1 x^-1")) == 0


def test_not_in_commutator_subgroup():
    with pytest.raises(NotInCommutatorSubgroup) as exc:
        cl_bardakov(L("x y"))
    assert exc.value.sums == (1, 1)
    with pytest.raises(NotInCommutatorSubgroup):
        list(pairings(L("x")))


def test_formula_rejects_wrong_parity():
    assert formula_cl(4, 1) == 1
    with pytest.raises(ArithmeticError):
        formula_cl(4, 2)


def corpus(seed, count, k=3, max_len=3):
    rng = random.Random(seed)
    return [random_product(rng, rng.randint(1, k), max_len, rng.choice((2, 3))) for _ in range(count)]


def test_integrality_and_upper_bound():
    for w in corpus(11, 60):
        if not w or pairing_count(w) > 20_000:
            continue
        cl = cl_bardakov(w, prune=False)
        n = len(w)
        seen = []
        for p in pairings(w):
            v = v_statistic(p)
            assert (2 - 2 * v + n) % 4 == 0
            assert formula_cl(n, v) >= cl
            seen.append(v)
        assert formula_cl(n, max(seen)) == cl


def test_formula_without_cyclic_reduction():
    # unreduced and conjugated inputs give the same value
    rng = random.Random(12)
    for w in corpus(13, 30):
        g = random_reduced(rng, rng.randint(1, 3), 3)
        conj = free_reduce(g + w + invert_letters(g))
        assert cl_bardakov(conj) == cl_bardakov(w)
        padded = g + invert_letters(g) + w
        if len(padded) <= 16:
            assert extremal_pairing(padded).cl == cl_bardakov(w)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_branch_and_bound_matches_exhaustive(seed):
    rng = random.Random(seed)
    w = random_product(rng, rng.randint(1, 3), 4, 2)
    if not w or pairing_count(w) > 20_000:
        return
    ex = cl_bardakov_stats(w, prune=False)
    bb = cl_bardakov_stats(w, prune=True)
    assert ex[0] == bb[0]


def test_branch_and_bound_visits_valid_pairings():
    w = free_reduce(L("[x,y]^3"))
    n = len(w)
    best = extremal_pairing(w, prune=False).cl

    def visit(images, v):
        Pairing(w, tuple(j + 1 for j in images))
        assert formula_cl(n, v) >= best

    assert extremal_pairing(w, prune=True, visit=visit).cl == best


def test_enumerated_counts_are_reproducible():
    w = L("[x,y]^3")
    assert cl_bardakov_stats(w, prune=False) == cl_bardakov_stats(w, prune=False)
    assert cl_bardakov_stats(w, prune=True) == cl_bardakov_stats(w, prune=True)


def test_compiled_search_matches_reference():
    rng = random.Random(14)
    for _ in range(150):
        w = cyclic_reduce_letters(random_product(rng, rng.randint(1, 3), 3, rng.choice((2, 3))))[1]
        if not w:
            continue
        a, b = _branch_and_bound(w), _branch_and_bound_py(w)
        assert (a.v, a.pairing, a.enumerated, a.v_counts) == (b.v, b.pairing, b.enumerated, b.v_counts)


def test_histogram_covers_every_scored_pairing():
    w = free_reduce(L("[x,y]^3"))
    r = extremal_pairing(w, prune=False)
    assert sum(r.v_counts.values()) == r.enumerated
    assert max(r.v_counts) == r.v
