import itertools
import random

import pytest

from commlen import _kernels
from commlen.corpus import random_product
from commlen.pairing import NotInCommutatorSubgroup, cl_bardakov
from commlen.present import Decomposition, commutator_letters, expand_pairs, verify
from commlen.search import (
    SearchError,
    _children,
    all_minimal_presentations_bfs,
    bfs,
    cl_bfs,
    decompositions,
    guided_quad,
    is_commutator,
    minimal_presentation_bfs,
    minimal_presentation_guided,
    minimal_presentation_literal,
    residue,
)
from commlen.words import (
    Alphabet,
    Word,
    canonical_rotation,
    conjugate,
    cyclic_reduce_letters,
    free_reduce,
    parse,
    reduce,
)

XY = Alphabet(("x", "y"))


def R(text):
    return reduce(parse(text, XY))


def brute_quads(letters):
    return [
        q
        for q in itertools.combinations(range(1, len(letters) + 1), 4)
        if letters[q[2] - 1] == -letters[q[0] - 1] and letters[q[3] - 1] == -letters[q[1] - 1]
    ]


def reduced_words(n, gens=2):
    alphabet = [g * s for g in range(1, gens + 1) for s in (1, -1)]
    for w in itertools.product(alphabet, repeat=n):
        if all(w[i] != -w[i + 1] for i in range(n - 1)):
            yield w


def test_decompositions_examples():
    ds = list(decompositions(R("[x,y]")))
    assert [d.quad for d in ds] == [(1, 2, 3, 4)]
    assert (ds[0].a, ds[0].b) == (1, 2)
    assert list(decompositions(Word(XY, (1, 2)))) == []
    w = R("[x,y]^2")
    assert [d.quad for d in decompositions(w)] == brute_quads(w.letters)


def test_decompositions_exhaustive_small():
    for n in range(4, 11):
        for w in reduced_words(n):
            found = [d.quad for d in decompositions(Word(XY, w))]
            assert found == brute_quads(w)


def test_decompositions_need_reduced():
    with pytest.raises(ValueError):
        list(decompositions(Word(XY, (1, -1, 2, -2))))


def test_residue_examples():
    K, c = residue(Decomposition(R("[x,y]"), (1, 2, 3, 4)))
    assert (K.letters, c.letters) == ((), ())
    K, c = residue(Decomposition(R("[x,y]^2"), (1, 2, 3, 4)))
    # W5 = [x,y] itself; its least rotation is x y x^-1 y^-1, reached by conjugating with x^-1 y^-1
    assert K.letters == canonical_rotation(R("[x,y]").letters)[0] == (1, 2, -1, -2)
    assert c.letters == (-1, -2)


def test_residue_conjugator_identity():
    rng = random.Random(31)
    for _ in range(100):
        letters = random_product(rng, 2, 4, 3)
        w = Word(Alphabet(("x", "y", "z")), letters)
        for d in itertools.islice(decompositions(w), 20):
            K, c = residue(d)
            q = d.quad
            raw = letters[: q[0] - 1] + letters[q[2] : q[3] - 1] + letters[q[1] : q[2] - 1] + letters[q[0] : q[1] - 1] + letters[q[3] :]
            assert len(raw) == len(letters) - 4
            assert conjugate(c, K).letters == free_reduce(raw)


def test_kernel_children_match_reference():
    rng = random.Random(32)
    for _ in range(60):
        K = cyclic_reduce_letters(random_product(rng, rng.randint(1, 3), 3, 2))[1]
        K = canonical_rotation(K)[0]
        if not K:
            continue
        nodes, lens = _kernels.to_matrix([_kernels.pack(K)])
        owner, quads, out, olen = _kernels.expand_batch(nodes, lens, True)
        got = [
            (tuple(q), _kernels.unpack(out[i, : olen[i]].tobytes()))
            for i, q in enumerate(quads.tolist())
        ]
        assert got == _children(K)


def test_cl_bfs_examples():
    assert cl_bfs(R("[x,y]"))[0] == 1
    assert cl_bfs(R("[x,y]^3"))[0] == 2
    assert cl_bfs(R("[x,y][x^-1,y^-1]"))[0] == 1
    assert cl_bfs(R("1"))[0] == 0


def test_cl_bfs_rejects_outside_commutator_subgroup():
    with pytest.raises(NotInCommutatorSubgroup):
        cl_bfs(R("x y"))


def test_presentations_verify():
    for text in ["[x,y]", "[x,y]^2", "[x,y]^3", "[x,y][x^-1,y^-1]", "1", "y[x,y]^2y^-1"]:
        w = R(text)
        cl = cl_bfs(w)[0]
        for solver in (minimal_presentation_bfs, minimal_presentation_guided, minimal_presentation_literal):
            p, _ = solver(w)
            assert len(p) == cl
            assert verify(p, w)


def test_bfs_and_guided_single_commutator():
    p, _ = minimal_presentation_bfs(R("[x,y]"))
    assert p.pairs == (((1,), (2,)),)
    p, _ = minimal_presentation_guided(R("[x,y]"))
    assert p.pairs == (((1,), (2,)),)


def test_guided_hand_trace():
    K = R("[x,y]").letters
    assert guided_quad(K, (3, 4, 1, 2)) == (1, 2, 3, 4)


def test_guided_steps_lower_cl():
    rng = random.Random(33)
    for _ in range(30):
        w = random_product(rng, rng.randint(1, 3), 3, 2)
        p, st = minimal_presentation_guided(w, check=True)
        assert len(p) == cl_bardakov(w)


def test_all_min_presentations_distinct_and_valid():
    w = R("[x,y]^3")
    found, _ = all_minimal_presentations_bfs(w)
    assert len(found) > 1
    assert len({p.pairs for p in found}) == len(found)
    assert all(len(p) == 2 and verify(p, w) for p in found)


def test_is_commutator_examples():
    wit = is_commutator(R("[x,y]"))
    assert (wit.g, wit.u, wit.v) == ((), (1,), (2,))
    assert is_commutator(R("[x,y]^2")) is None
    w = R("[x,y][x^-1,y^-1]")
    wit = is_commutator(w)
    assert wit is not None and wit.expand() == w.letters
    assert is_commutator(R("1")).quad is None


def test_is_commutator_matches_cl():
    rng = random.Random(34)
    for _ in range(60):
        w = random_product(rng, rng.randint(1, 2), 3, 2)
        wit = is_commutator(w)
        assert (wit is not None) == (cl_bfs(w)[0] <= 1)
        if wit is not None:
            assert free_reduce(wit.g + commutator_letters(wit.u, wit.v) + tuple(-a for a in reversed(wit.g))) == free_reduce(w)


def test_dedup_soundness():
    rng = random.Random(35)
    for _ in range(25):
        w = random_product(rng, rng.randint(1, 2), 3, 2)
        if len(w) > 14:
            continue
        assert cl_bfs(w, dedup=False)[0] == cl_bfs(w)[0]


def test_literal_search_agrees():
    rng = random.Random(36)
    for _ in range(15):
        w = random_product(rng, rng.randint(1, 2), 2, 2)
        p, _ = minimal_presentation_literal(w)
        assert len(p) == cl_bfs(w)[0]


def test_literal_search_limit():
    with pytest.raises(SearchError):
        minimal_presentation_literal(R("[x,y]^4"), max_nodes=10)


def test_threads_give_identical_results():
    rng = random.Random(37)
    for _ in range(5):
        w = random_product(rng, 3, 4, 2)
        one = minimal_presentation_bfs(w, workers=1)
        four = minimal_presentation_bfs(w, workers=4)
        assert one[0] == four[0]
        a, b = one[1].to_json(), four[1].to_json()
        a.pop("elapsed_ms"), b.pop("elapsed_ms")
        assert a == b


def test_stats_recorded():
    res = bfs(R("[x,y]^3"))
    assert res.cl == 2
    assert res.stats.nodes_expanded >= 1
    assert len(res.stats.frontier_sizes) == 1
    assert expand_pairs([]) == ()
