"""Words in a free group F(x_1, ..., x_N).

Letters are stored as nonzero ints: ``g`` for the generator with 1-based
index ``g`` and ``-g`` for its inverse.  The raw-tuple helpers at the top
(``free_reduce``, ``cyclic_reduce_letters``, ``least_rotation`` ...) are
what the search loops use; :class:`Word` wraps a tuple together with its
:class:`Alphabet` for the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

Letters = tuple[int, ...]

_GEN_RE = re.compile(r"[a-z][0-9]*\Z")


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AlphabetError(ValueError):
    pass


# -- raw letter-tuple operations ------------------------------------------


def free_reduce(letters: Iterable[int]) -> Letters:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-a for a in reversed(letters))


def cyclic_reduce_letters(letters: Sequence[int]) -> tuple[Letters, Letters]:
    """Split reduced ``letters`` as ``c K c^-1`` with ``K`` cyclically reduced.

    The input must already be freely reduced.  Returns ``(c, K)``.
    """
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return tuple(letters[:i]), tuple(letters[i : j + 1])


def letter_key(a: int) -> int:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return 2 * a - 2 if a > 0 else -2 * a - 1


def least_rotation(keys: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(keys)
    if n == 0:
        return 0
    s = list(keys) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            # i == -1 here
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(letters: Letters) -> tuple[Letters, int]:
    """Return the least rotation of a cyclic word and the offset it starts at.

    ``letters == letters[:r] + canon`` rotated, i.e. the input equals
    ``g canon g^-1`` with ``g = letters[:r]``.
    """
    if not letters:
        return letters, 0
    r = least_rotation([letter_key(a) for a in letters])
    return letters[r:] + letters[:r], r


def exponent_sum_vector(letters: Iterable[int], n_gens: int) -> list[int]:
    sums = [0] * n_gens
    for a in letters:
        if a > 0:
            sums[a - 1] += 1
        else:
            sums[-a - 1] -= 1
    return sums


# -- alphabet, letters, words ------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise AlphabetError("alphabet must contain at least one generator")
        if len(set(self.names)) != len(self.names):
            raise AlphabetError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not _GEN_RE.match(name):
                raise AlphabetError(f"bad generator name {name!r}")

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Build from a comma separated list such as ``"x,y,z"``."""
        return cls(tuple(part.strip() for part in text.split(",") if part.strip()))

    @property
    def N(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise AlphabetError(f"unknown generator {name!r}") from None

    def compatible(self, other: "Alphabet") -> "Alphabet":
        """The larger of two alphabets when one extends the other."""
        a, b = (self, other) if len(self.names) >= len(other.names) else (other, self)
        if a.names[: len(b.names)] != b.names:
            raise AlphabetError(f"alphabet mismatch: {self.names} vs {other.names}")
        return a


DEFAULT_ALPHABET = Alphabet(("x", "y"))


def alphabet_for(n_gens: int) -> Alphabet:
    if n_gens <= 3:
        return Alphabet(("x", "y", "z")[:n_gens])
    return Alphabet(tuple(f"x{i}" for i in range(1, n_gens + 1)))


class Letter(NamedTuple):
    gen: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    @property
    def code(self) -> int:
        return self.gen * self.sign


@dataclass(frozen=True)
class Word:
    """A (not necessarily reduced) word over an alphabet."""

    alphabet: Alphabet
    letters: Letters = ()

    def __post_init__(self):
        n = self.alphabet.N
        for a in self.letters:
            if a == 0 or abs(a) > n:
                raise AlphabetError(f"letter code {a} outside alphabet of size {n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def letter(self, i: int) -> Letter:
        """1-based access."""
        a = self.letters[i - 1]
        return Letter(abs(a), 1 if a > 0 else -1)

    def _with(self, letters: Iterable[int]) -> "Word":
        return Word(self.alphabet, tuple(letters))

    def is_empty(self) -> bool:
        return not self.letters

    def is_reduced(self) -> bool:
        ls = self.letters
        return all(ls[i + 1] != -ls[i] for i in range(len(ls) - 1))

    def is_cyclically_reduced(self) -> bool:
        ls = self.letters
        return self.is_reduced() and (len(ls) < 2 or ls[0] != -ls[-1])


def _common(u: Word, v: Word) -> Alphabet:
    if u.alphabet == v.alphabet:
        return u.alphabet
    return u.alphabet.compatible(v.alphabet)


def reduce(w: Word) -> Word:
    return w._with(free_reduce(w.letters))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """``(c, K)`` with ``red(w) = c K c^-1`` and ``K`` cyclically reduced."""
    c, k = cyclic_reduce_letters(free_reduce(w.letters))
    return w._with(c), w._with(k)


def canonical_cyclic(k: Word) -> Word:
    if not k.is_cyclically_reduced():
        raise ValueError(f"{k} is not cyclically reduced")
    return k._with(canonical_rotation(k.letters)[0])


def rotate(w: Word, r: int) -> Word:
    if not w.letters:
        return w
    r %= len(w.letters)
    return w._with(w.letters[r:] + w.letters[:r])


def multiply(*words: Word) -> Word:
    if not words:
        raise ValueError("multiply needs at least one word")
    alphabet = words[0].alphabet
    for w in words[1:]:
        alphabet = alphabet.compatible(w.alphabet) if w.alphabet != alphabet else alphabet
    return Word(alphabet, free_reduce(a for w in words for a in w.letters))


def inverse(w: Word) -> Word:
    return w._with(free_reduce(invert_letters(w.letters)))


def conjugate(g: Word, h: Word) -> Word:
    """``g h g^-1``, reduced."""
    return multiply(g, h, inverse(g))


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u^-1 v^-1 u v``, reduced."""
    return multiply(inverse(u), inverse(v), u, v)


def exponent_sums(w: Word) -> list[int]:
    return exponent_sum_vector(w.letters, w.alphabet.N)


def in_commutator_subgroup(w: Word) -> bool:
    return not any(exponent_sums(w))


def identity(alphabet: Alphabet = DEFAULT_ALPHABET) -> Word:
    return Word(alphabet, ())


# -- text form ----------------------------------------------------------------


def format_letters(letters: Sequence[int], alphabet: Alphabet) -> str:
    if not letters:
        return "1"
    parts = []
    i = 0
    n = len(letters)
    while i < n:
        a = letters[i]
        j = i
        while j < n and letters[j] == a:
            j += 1
        k = (j - i) * (1 if a > 0 else -1)
        name = alphabet.names[abs(a) - 1]
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return "".join(parts)


def format_word(w: Word) -> str:
    return format_letters(w.letters, w.alphabet)


class _Parser:
    # expr := factor { [ws|'*'] factor }
    # factor := atom ['^' integer]
    # atom := generator | '[' expr ',' expr ']' | '(' expr ')' | '1'

    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.pos = 0
        self.fixed = alphabet
        self.names: list[str] = list(alphabet.names) if alphabet else []

    def error(self, message: str):
        raise WordSyntaxError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> list[int]:
        if not self.text.strip():
            self.error("empty expression")
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> list[int]:
        out = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                ch = self.peek()
                if not ch:
                    self.error("dangling '*'")
            if not ch or ch in ",])":
                return out
            out.extend(self.factor())

    def factor(self) -> list[int]:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.pos += 1
        self.skip()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            self.error("expected integer exponent")
        self.pos = m.end()
        k = int(m.group())
        if k < 0:
            base = list(invert_letters(base))
            k = -k
        return base * k

    def atom(self) -> list[int]:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            u = self.expr()
            self.expect(",")
            v = self.expr()
            self.expect("]")
            return list(invert_letters(u)) + list(invert_letters(v)) + u + v
        if ch == "(":
            self.pos += 1
            u = self.expr()
            self.expect(")")
            return u
        if ch == "1":
            self.pos += 1
            return []
        m = re.compile(r"[a-z][0-9]*").match(self.text, self.pos)
        if not m:
            self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")
        name = m.group()
        if name not in self.names:
            if self.fixed is not None:
                raise AlphabetError(f"unknown generator {name!r} at position {self.pos}")
            self.names.append(name)
        self.pos = m.end()
        return [self.names.index(name) + 1]


def parse(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse the word grammar; the result is expanded but not reduced.

    Without ``alphabet`` generators are numbered by first appearance.
    """
    p = _Parser(text, alphabet)
    letters = p.parse()
    if alphabet is None:
        alphabet = Alphabet(tuple(p.names)) if p.names else DEFAULT_ALPHABET
    return Word(alphabet, tuple(letters))
