"""Commutator presentations and the one-step peeling identity.

If ``w = W1 a^-1 W2 b^-1 W3 a W4 b W5`` without cancellation then

    w = [W1 W4 W3 a W1^-1, W1 W4 b W2^-1 W3^-1 W4^-1 W1^-1] W1 W4 W3 W2 W5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import Alphabet, Letters, Word, format_letters, free_reduce, invert_letters, parse

Pair = tuple[Letters, Letters]


@dataclass(frozen=True)
class Decomposition:
    """A reduced word with a 1-based quadruple ``i1 < i2 < i3 < i4`` such that
    ``letter(i3) = letter(i1)^-1`` (that is ``a``) and
    ``letter(i4) = letter(i2)^-1`` (that is ``b``)."""

    word: Word
    quad: tuple[int, int, int, int]

    def __post_init__(self):
        ls = self.word.letters
        i1, i2, i3, i4 = self.quad
        if not 1 <= i1 < i2 < i3 < i4 <= len(ls):
            raise ValueError(f"bad quadruple {self.quad} for length {len(ls)}")
        if ls[i3 - 1] != -ls[i1 - 1] or ls[i4 - 1] != -ls[i2 - 1]:
            raise ValueError(f"quadruple {self.quad} does not match the letter pattern")

    @property
    def a(self) -> int:
        return self.word.letters[self.quad[2] - 1]

    @property
    def b(self) -> int:
        return self.word.letters[self.quad[3] - 1]

    def factors(self) -> tuple[Word, Word, Word, Word, Word]:
        ls = self.word.letters
        i1, i2, i3, i4 = self.quad
        cuts = [(0, i1 - 1), (i1, i2 - 1), (i2, i3 - 1), (i3, i4 - 1), (i4, len(ls))]
        return tuple(Word(self.word.alphabet, ls[s:e]) for s, e in cuts)


def split_letters(letters: Sequence[int], quad: Sequence[int]):
    i1, i2, i3, i4 = quad
    return (
        tuple(letters[: i1 - 1]),
        tuple(letters[i1 : i2 - 1]),
        tuple(letters[i2 : i3 - 1]),
        tuple(letters[i3 : i4 - 1]),
        tuple(letters[i4:]),
    )


def peel_letters(letters: Sequence[int], quad: Sequence[int]) -> tuple[Letters, Letters, Letters]:
    w1, w2, w3, w4, w5 = split_letters(letters, quad)
    a = letters[quad[2] - 1]
    b = letters[quad[3] - 1]
    w1i = invert_letters(w1)
    u = free_reduce(w1 + w4 + w3 + (a,) + w1i)
    v = free_reduce(w1 + w4 + (b,) + invert_letters(w2) + invert_letters(w3) + invert_letters(w4) + w1i)
    r = free_reduce(w1 + w4 + w3 + w2 + w5)
    return u, v, r


def commutator_letters(u: Sequence[int], v: Sequence[int]) -> Letters:
    return free_reduce(invert_letters(u) + invert_letters(v) + tuple(u) + tuple(v))


def expand_pairs(pairs: Iterable[Pair]) -> Letters:
    out: list[int] = []
    for u, v in pairs:
        out.extend(invert_letters(u))
        out.extend(invert_letters(v))
        out.extend(u)
        out.extend(v)
    return free_reduce(out)


def conjugate_letters(c: Sequence[int], h: Sequence[int]) -> Letters:
    return free_reduce(tuple(c) + tuple(h) + invert_letters(c))


def lift_pairs(c: Sequence[int], pairs: Iterable[Pair]) -> list[Pair]:
    if not c:
        return list(pairs)
    return [(conjugate_letters(c, u), conjugate_letters(c, v)) for u, v in pairs]


@dataclass(frozen=True)
class CommutatorPresentation:
    alphabet: Alphabet
    pairs: tuple[Pair, ...] = ()

    def __len__(self) -> int:
        return len(self.pairs)

    def words(self) -> list[tuple[Word, Word]]:
        return [(Word(self.alphabet, u), Word(self.alphabet, v)) for u, v in self.pairs]

    def to_json(self) -> list[list[str]]:
        fmt = self.alphabet
        return [[format_letters(u, fmt), format_letters(v, fmt)] for u, v in self.pairs]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], alphabet: Alphabet) -> "CommutatorPresentation":
        pairs = tuple(
            (free_reduce(parse(u, alphabet).letters), free_reduce(parse(v, alphabet).letters))
            for u, v in data
        )
        return cls(alphabet, pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return "".join(f"[{u},{v}]" for u, v in self.to_json())


def peel(d: Decomposition) -> tuple[Word, Word, Word]:
    letters = d.word.letters
    u, v, r = peel_letters(letters, d.quad)
    if free_reduce(commutator_letters(u, v) + r) != free_reduce(letters):
        raise AssertionError(f"peeling identity failed for {d}")
    alpha = d.word.alphabet
    return Word(alpha, u), Word(alpha, v), Word(alpha, r)


def lift(c: Word, p: CommutatorPresentation) -> CommutatorPresentation:
    """Conjugate every pair by ``c``: ``c [u,v] c^-1 = [c u c^-1, c v c^-1]``."""
    alphabet = p.alphabet if c.alphabet == p.alphabet else p.alphabet.compatible(c.alphabet)
    return CommutatorPresentation(alphabet, tuple(lift_pairs(free_reduce(c.letters), p.pairs)))


def expand(p: CommutatorPresentation) -> Word:
    return Word(p.alphabet, expand_pairs(p.pairs))


def verify(p: CommutatorPresentation, w: Word) -> bool:
    if p.alphabet != w.alphabet:
        p.alphabet.compatible(w.alphabet)
    return expand_pairs(p.pairs) == free_reduce(w.letters)


def presentation(pairs: Iterable[tuple[Word, Word]], alphabet: Alphabet | None = None) -> CommutatorPresentation:
    """Build from Word pairs; components are stored reduced."""
    pairs = list(pairs)
    if alphabet is None:
        alphabet = Alphabet(("x", "y")) if not pairs else pairs[0][0].alphabet
        for u, v in pairs:
            alphabet = alphabet.compatible(u.alphabet).compatible(v.alphabet)
    stored = tuple((free_reduce(u.letters), free_reduce(v.letters)) for u, v in pairs)
    return CommutatorPresentation(alphabet, stored)
