"""Seeded random words and corpus files."""

from __future__ import annotations

import random
from pathlib import Path

from .present import expand_pairs
from .words import Alphabet, Letters, Word, alphabet_for, exponent_sum_vector, parse


def random_reduced(rng: random.Random, length: int, n_gens: int) -> Letters:
    """Uniform letter by letter, rejecting a letter that would cancel."""
    letters = [g * s for g in range(1, n_gens + 1) for s in (1, -1)]
    out: list[int] = []
    while len(out) < length:
        a = rng.choice(letters)
        if out and out[-1] == -a:
            continue
        out.append(a)
    return tuple(out)


def random_product(rng: random.Random, k: int, max_len: int, n_gens: int) -> Letters:
    """``red([u1,v1]...[uk,vk])`` with factor lengths uniform in 1..max_len."""
    pairs = [
        (
            random_reduced(rng, rng.randint(1, max_len), n_gens),
            random_reduced(rng, rng.randint(1, max_len), n_gens),
        )
        for _ in range(k)
    ]
    return expand_pairs(pairs)


def random_in_commutator_subgroup(rng: random.Random, length: int, n_gens: int) -> Letters:
    """A random reduced word of exactly ``length`` with all exponent sums zero."""
    if length % 2:
        raise ValueError("words in [F,F] have even length")
    while True:
        w = random_reduced(rng, length, n_gens)
        if not any(exponent_sum_vector(w, n_gens)):
            return w


def random_words(
    k: int, max_len: int, n_gens: int, seed: int, count: int, length: int | None = None
) -> list[Word]:
    if min(k, max_len, n_gens, count) < 1:
        raise ValueError("k, L, N and count must all be at least 1")
    rng = random.Random(seed)
    alphabet = alphabet_for(n_gens)
    if length is not None:
        return [Word(alphabet, random_in_commutator_subgroup(rng, length, n_gens)) for _ in range(count)]
    return [Word(alphabet, random_product(rng, k, max_len, n_gens)) for _ in range(count)]


def mixed_corpus(
    seed: int, count: int, max_k: int = 3, max_len: int = 4, gens=(2, 3)
) -> list[tuple[int, Word]]:
    """``(k, word)`` for products of k random commutators, k in 1..max_k,
    over a random choice of generator count; cl(word) <= k."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, max_k)
        n_gens = rng.choice(gens)
        out.append((k, Word(alphabet_for(n_gens), random_product(rng, k, max_len, n_gens))))
    return out


def read_corpus(path: str | Path, alphabet: Alphabet | None = None) -> list[tuple[str, Word]]:
    """One expression per line; ``#`` starts a comment."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        text = line.split("#", 1)[0].strip()
        if text:
            out.append((text, parse(text, alphabet)))
    return out
