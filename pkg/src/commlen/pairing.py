"""Pairings on words and commutator length via Bardakov's formula.

A pairing on ``W = a_1 ... a_n`` is a fixed-point-free involution ``pi`` of
the positions with ``a_pi(i) = a_i^-1``.  For ``v(pi)``, the number of
orbits of ``(1..n) pi``, and any pairing maximising it,

    cl(w) = (1 - v) / 2 + n / 4.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from . import _bnb
from .perm import count_cycles
from .words import Word, cyclic_reduce_letters, exponent_sum_vector, free_reduce


class NotInCommutatorSubgroup(ValueError):
    def __init__(self, sums: Sequence[int]):
        super().__init__(f"word is not in [F,F]: exponent sums {tuple(sums)}")
        self.sums = tuple(sums)


def check_commutator_subgroup(letters: Sequence[int]):
    n_gens = max((abs(a) for a in letters), default=0)
    sums = exponent_sum_vector(letters, n_gens)
    if any(sums):
        raise NotInCommutatorSubgroup(sums)


@dataclass(frozen=True)
class Pairing:
    letters: tuple[int, ...]
    pi: tuple[int, ...]  # 1-based images

    def __post_init__(self):
        n = len(self.letters)
        if len(self.pi) != n:
            raise ValueError("pairing size does not match word length")
        for i, j in enumerate(self.pi, 1):
            if j == i or self.pi[j - 1] != i:
                raise ValueError(f"not a fixed-point-free involution at {i}")
            if self.letters[j - 1] != -self.letters[i - 1]:
                raise ValueError(f"positions {i} and {j} do not hold inverse letters")


@dataclass(frozen=True)
class ExtremalResult:
    pairing: Pairing
    v: int
    cl: int
    enumerated: int
    v_counts: dict[int, int] = field(default_factory=dict, compare=False)  # v -> scored pairings


def formula_cl(n: int, v: int) -> int:
    num = 2 - 2 * v + n
    if num % 4:
        raise ArithmeticError(f"(1 - {v})/2 + {n}/4 is not an integer")
    return num // 4


def v_of_images(pi0: Sequence[int]) -> int:
    """``v`` for a 0-based pairing image list."""
    n = len(pi0)
    return count_cycles([(j + 1) % n for j in pi0])


def v_statistic(p: Pairing) -> int:
    return v_of_images([j - 1 for j in p.pi])


def _letters(w) -> tuple[int, ...]:
    return tuple(w.letters) if isinstance(w, Word) else tuple(w)


def _blocks(letters: Sequence[int]) -> list[tuple[list[int], list[int]]]:
    by_gen: dict[int, tuple[list[int], list[int]]] = {}
    for i, a in enumerate(letters):
        pos, neg = by_gen.setdefault(abs(a), ([], []))
        (pos if a > 0 else neg).append(i)
    return [by_gen[g] for g in sorted(by_gen)]


def _iter_images(letters: Sequence[int]) -> Iterator[list[int]]:
    """0-based image lists of all pairings, in the documented order.

    For each generator (ascending) the occurrences of ``g`` are matched to
    a lexicographic permutation of the occurrences of ``g^-1``; generators
    are combined by nested iteration, the last generator varying fastest.
    The yielded list is reused between iterations.
    """
    check_commutator_subgroup(letters)
    blocks = _blocks(letters)
    pi0 = [0] * len(letters)
    choices = [list(itertools.permutations(neg)) for _, neg in blocks]
    for combo in itertools.product(*choices):
        for (pos, _), perm in zip(blocks, combo):
            for i, j in zip(pos, perm):
                pi0[i] = j
                pi0[j] = i
        yield pi0


def pairings(w) -> Iterator[Pairing]:
    letters = _letters(w)
    for pi0 in _iter_images(letters):
        yield Pairing(letters, tuple(j + 1 for j in pi0))


def pairing_count(w) -> int:
    count = 1
    for pos, _ in _blocks(_letters(w)):
        count *= _factorial(len(pos))
    return count


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _v_cap(letters: Sequence[int]) -> int:
    # cl >= 1 whenever the word is nontrivial in F
    n = len(letters)
    return n // 2 - 1 if free_reduce(letters) else n // 2 + 1


Visitor = Callable[[Sequence[int], int], None]

# beyond this many pairings the automatic policy switches to branch and bound
EXHAUSTIVE_LIMIT = 200_000


def _exhaustive(letters: tuple[int, ...], visit: Visitor | None = None) -> ExtremalResult:
    n = len(letters)
    cap = _v_cap(letters)
    best_v, best = -1, None
    enumerated = 0
    counts: Counter[int] = Counter()
    for pi0 in _iter_images(letters):
        enumerated += 1
        v = count_cycles([(j + 1) % n for j in pi0])
        counts[v] += 1
        if visit is not None:
            visit(pi0, v)
        if v > best_v:
            best_v, best = v, tuple(j + 1 for j in pi0)
            if v >= cap:
                break
    return ExtremalResult(Pairing(letters, best), best_v, formula_cl(n, best_v), enumerated, dict(counts))


def _face_bound(pi0: list[int]) -> int:
    """Upper bound on ``v`` over all completions of a partial pairing.

    Unmatched positions are marked -1.  Matched chains of ``i -> pi(i)+1``
    either close into cycles (final) or run from ``u+1`` to an unmatched
    ``e`` for some unmatched ``u``; writing ``rho(u) = e`` the completion
    adds ``o(rho pi')`` cycles for the remaining involution ``pi'``.  Euler's
    formula on each component of the map (vertices = cycles of rho,
    edges = pairs of pi') bounds that by ``2 comp + r - c(rho)`` with
    ``comp <= min(c(rho), r)``.
    """
    n = len(pi0)
    seen = bytearray(n)
    rho = {}
    for u in range(n):
        if pi0[u] != -1:
            continue
        cur = (u + 1) % n
        while pi0[cur] != -1:
            seen[cur] = 1
            cur = (pi0[cur] + 1) % n
        rho[u] = cur
    closed = 0
    for start in range(n):
        if seen[start] or pi0[start] == -1:
            continue
        closed += 1
        cur = start
        while not seen[cur]:
            seen[cur] = 1
            cur = (pi0[cur] + 1) % n
    r = len(rho) // 2
    if r == 0:
        return closed
    c = 0
    done = set()
    for u in rho:
        if u in done:
            continue
        c += 1
        while u not in done:
            done.add(u)
            u = rho[u]
    return closed + r + 2 * min(c, r) - c


def _branch_and_bound(letters: tuple[int, ...], visit: Visitor | None = None) -> ExtremalResult:
    """Compiled search unless a visitor needs to see each pairing."""
    if visit is not None:
        return _branch_and_bound_py(letters, visit)
    check_commutator_subgroup(letters)
    n = len(letters)
    best_v, best, leaves, hist = _bnb.branch_and_bound(
        np.array(letters, dtype=np.int64), _v_cap(letters), (1 + n // 2) % 2
    )
    counts = {v: int(c) for v, c in enumerate(hist.tolist()) if c}
    pi = tuple(int(j) + 1 for j in best)
    return ExtremalResult(Pairing(letters, pi), int(best_v), formula_cl(n, int(best_v)), int(leaves), counts)


def _branch_and_bound_py(letters: tuple[int, ...], visit: Visitor | None = None) -> ExtremalResult:
    n = len(letters)
    cap = _v_cap(letters)
    parity = (1 + n // 2) % 2  # every complete pairing has v of this parity
    check_commutator_subgroup(letters)
    pi0 = [-1] * n
    free = {a: [i for i, b in enumerate(letters) if b == a] for a in set(letters)}
    best_v = -1
    best: tuple[int, ...] | None = None
    leaves = 0
    counts: Counter[int] = Counter()

    def dfs(left: int):
        nonlocal best_v, best, leaves
        if left == 0:
            leaves += 1
            v = v_of_images(pi0)
            counts[v] += 1
            if visit is not None:
                visit(pi0, v)
            if v > best_v:
                best_v, best = v, tuple(j + 1 for j in pi0)
            return
        bound = _face_bound(pi0)
        if bound % 2 != parity:
            bound -= 1
        if bound <= best_v:
            return
        # branch on the first free occurrence of the scarcest letter
        a = min((x for x in free if x > 0 and free[x]), key=lambda x: (len(free[x]), x))
        i = free[a].pop(0)
        partners = free[-a]
        for k in range(len(partners)):
            j = partners.pop(k)
            pi0[i], pi0[j] = j, i
            dfs(left - 1)
            pi0[i] = pi0[j] = -1
            partners.insert(k, j)
            if best_v >= cap:
                break
        free[a].insert(0, i)

    dfs(n // 2)
    return ExtremalResult(Pairing(letters, best), best_v, formula_cl(n, best_v), leaves, dict(counts))


def extremal_pairing(w, prune: bool | None = False, visit: Visitor | None = None) -> ExtremalResult:
    """A pairing of maximal ``v`` on ``w`` (any word in [F,F], reduced or not).

    ``prune=False`` walks every pairing (stopping once ``v`` hits the largest
    value possible); ``prune=True`` uses a depth-first branch and bound that
    is much faster on long words; ``None`` picks exhaustive enumeration when
    there are at most ``EXHAUSTIVE_LIMIT`` pairings.  ``enumerated`` counts
    complete pairings that were scored, and ``visit(images, v)`` sees each
    of them (0-based images, reused between calls).
    """
    letters = _letters(w)
    if not letters:
        raise ValueError("extremal pairing of the empty word")
    if prune is None:
        prune = pairing_count(letters) > EXHAUSTIVE_LIMIT
    return _branch_and_bound(letters, visit) if prune else _exhaustive(letters, visit)


def cl_bardakov(w, prune: bool | None = None) -> int:
    return cl_bardakov_stats(w, prune)[0]


def cl_bardakov_stats(w, prune: bool | None = None, visit: Visitor | None = None) -> tuple[int, int]:
    """``(cl, pairings_enumerated)``; the word is cyclically reduced first."""
    res = cl_bardakov_result(w, prune, visit)
    return (0, 0) if res is None else (res.cl, res.enumerated)


def cl_bardakov_result(w, prune: bool | None = None, visit: Visitor | None = None) -> ExtremalResult | None:
    """Extremal pairing of the cyclically reduced core; None for the trivial word."""
    letters = free_reduce(_letters(w))
    check_commutator_subgroup(letters)
    if not letters:
        return None
    _, core = cyclic_reduce_letters(letters)
    return extremal_pairing(core, prune, visit)
