"""Permutations of {1..n}, induced permutations and the cycle/conjugator pair
used when four positions are cut out of a word.

Composition is right to left: ``compose(s, t)(i) == s(t(i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Permutation:
    """``images[i-1]`` is the image of ``i``; everything is 1-based."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i - 1]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


@dataclass(frozen=True)
class Injection:
    """Injective map {1..m} -> {1..n}; ``images[y-1]`` is the image of ``y``."""

    images: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(set(self.images)) != len(self.images):
            raise ValueError(f"{self.images} is not injective")
        if any(not 1 <= x <= self.n for x in self.images):
            raise ValueError(f"{self.images} leaves 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, y: int) -> int:
        return self.images[y - 1]


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def from_cycles(n: int, *cycles: Sequence[int]) -> Permutation:
    images = list(range(1, n + 1))
    for cyc in cycles:
        for k, i in enumerate(cyc):
            images[i - 1] = cyc[(k + 1) % len(cyc)]
    return Permutation(tuple(images))


def long_cycle(n: int) -> Permutation:
    return Permutation(tuple(range(2, n + 1)) + (1,)) if n else Permutation(())


def transposition(n: int, i: int, j: int) -> Permutation:
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"bad transposition ({i} {j}) in S_{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return Permutation(tuple(images))


def compose(s: Permutation, t: Permutation) -> Permutation:
    if s.n != t.n:
        raise ValueError(f"degree mismatch: {s.n} vs {t.n}")
    si = s.images
    return Permutation(tuple(si[x - 1] for x in t.images))


def invert(s: Permutation) -> Permutation:
    images = [0] * s.n
    for i, x in enumerate(s.images, 1):
        images[x - 1] = i
    return Permutation(tuple(images))


def count_cycles(images: Sequence[int]) -> int:
    """Orbit count of a 0-based image list.  Hot path for the pairing search."""
    n = len(images)
    seen = bytearray(n)
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        i = start
        while not seen[i]:
            seen[i] = 1
            i = images[i]
    return count


def orbit_count(s: Permutation) -> int:
    return count_cycles([x - 1 for x in s.images])


def induce_subset(s: Permutation, subset: Iterable[int]) -> dict[int, int]:
    """First-return map of ``s`` on ``subset``, as a dict ``y -> s^m(y)(y)``."""
    ys = set(subset)
    if not ys:
        raise ValueError("subset must be nonempty")
    out = {}
    for y in ys:
        x = s(y)
        while x not in ys:
            x = s(x)
        out[y] = x
    return out


def induce_injection(s: Permutation, alpha: Injection) -> Permutation:
    if alpha.n != s.n:
        raise ValueError(f"injection codomain {alpha.n} does not match degree {s.n}")
    back = {x: y for y, x in enumerate(alpha.images, 1)}
    first_return = induce_subset(s, alpha.images)
    return Permutation(tuple(back[first_return[x]] for x in alpha.images))


def _check_quad(n: int, quad: Sequence[int]):
    if n < 5:
        raise ValueError(f"need n >= 5, got {n}")
    if len(quad) != 4 or not (1 <= quad[0] < quad[1] < quad[2] < quad[3] <= n):
        raise ValueError(f"need 1 <= i1 < i2 < i3 < i4 <= {n}, got {tuple(quad)}")


def complement_embedding(n: int, quad: Sequence[int]) -> Injection:
    """The increasing map {1..n-4} -> {1..n} missing the four given points."""
    _check_quad(n, quad)
    skip = set(quad)
    return Injection(tuple(x for x in range(1, n + 1) if x not in skip), n)


def cut_cycle(n: int, quad: Sequence[int]) -> Permutation:
    """``(1..n)(i1,i3)(i2,i4)``, the long cycle rewired at the four cut points."""
    _check_quad(n, quad)
    i1, i2, i3, i4 = quad
    return compose(long_cycle(n), compose(transposition(n, i1, i3), transposition(n, i2, i4)))


def tilde_order(n: int, quad: Sequence[int]) -> list[int]:
    """The points 1..n-4 in the order the induced cut cycle visits them."""
    _check_quad(n, quad)
    i1, i2, i3, i4 = quad
    return [
        *range(1, i1),
        *range(i3 - 2, i4 - 3),
        *range(i2 - 1, i3 - 2),
        *range(i1, i2 - 1),
        *range(i4 - 3, n - 3),
    ]


def tilde_cycle(n: int, quad: Sequence[int]) -> Permutation:
    """Closed form of ``induce_injection(cut_cycle(n, quad), complement_embedding(n, quad))``."""
    order = tilde_order(n, quad)
    return from_cycles(n - 4, order)


def gamma(n: int, quad: Sequence[int]) -> Permutation:
    """Conjugator with ``tilde_cycle = gamma^-1 (1..n-4) gamma``.

    Sends the k-th point visited by the tilde cycle to k.
    """
    order = tilde_order(n, quad)
    images = [0] * (n - 4)
    for k, x in enumerate(order, 1):
        images[x - 1] = k
    return Permutation(tuple(images))
