"""Commutator length and minimal presentations by peeling one commutator at a time.

Every reduced word ``W`` in [F,F] factors without cancellation as
``W1 a^-1 W2 b^-1 W3 a W4 b W5`` in (usually) many ways, and some choice
leaves a residue ``W1 W4 W3 W2 W5`` of commutator length exactly one less.
The breadth-first search below explores residues level by level, keeping
one cyclic word per conjugacy class, and stops at the first level that
contains the empty word.
"""

from __future__ import annotations

import bisect
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import _kernels
from .pairing import check_commutator_subgroup, extremal_pairing, cl_bardakov
from .present import (
    CommutatorPresentation,
    Decomposition,
    Pair,
    commutator_letters,
    conjugate_letters,
    expand_pairs,
    lift_pairs,
    peel_letters,
)
from .words import (
    Letters,
    alphabet_for,
    Word,
    canonical_rotation,
    cyclic_reduce_letters,
    free_reduce,
    invert_letters,
)

Quad = tuple[int, int, int, int]


class SearchError(RuntimeError):
    """A solver produced something that failed its own verification."""


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    dedup_hits: int = 0
    frontier_sizes: list[int] = field(default_factory=list)
    pairings_enumerated: int = 0
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {
            "nodes_expanded": self.nodes_expanded,
            "dedup_hits": self.dedup_hits,
            "frontier_sizes": list(self.frontier_sizes),
            "pairings_enumerated": self.pairings_enumerated,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


# -- decompositions -------------------------------------------------------


def iter_quads(letters: Sequence[int]) -> Iterator[Quad]:
    """0-based quadruples in lexicographic order."""
    n = len(letters)
    pos: dict[int, list[int]] = {}
    for i, a in enumerate(letters):
        pos.setdefault(a, []).append(i)
    for i1 in range(n - 3):
        p3 = pos.get(-letters[i1])
        if not p3 or p3[-1] <= i1 + 1:
            continue
        for i2 in range(i1 + 1, n - 2):
            p4 = pos.get(-letters[i2])
            if not p4:
                continue
            for k3 in range(bisect.bisect_right(p3, i2), len(p3)):
                i3 = p3[k3]
                for k4 in range(bisect.bisect_right(p4, i3), len(p4)):
                    yield i1, i2, i3, p4[k4]


def decompositions(w: Word) -> Iterator[Decomposition]:
    if not w.is_reduced():
        raise ValueError(f"{w} is not reduced")
    for q in iter_quads(w.letters):
        yield Decomposition(w, (q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1))


def _raw_residue(K: Sequence[int], q: Quad) -> Letters:
    i1, i2, i3, i4 = q
    return K[:i1] + K[i3 + 1 : i4] + K[i2 + 1 : i3] + K[i1 + 1 : i2] + K[i4 + 1 :]


def canonical_residue(K: Letters, q: Quad) -> tuple[Letters, Letters]:
    """``(canonical cyclic residue, conjugator c)`` with
    ``red(W1 W4 W3 W2 W5) = c * canon * c^-1``; ``q`` is 0-based."""
    c, core = cyclic_reduce_letters(free_reduce(_raw_residue(K, q)))
    canon, r = canonical_rotation(core)
    return canon, free_reduce(c + core[:r])


def residue(d: Decomposition) -> tuple[Word, Word]:
    q = tuple(i - 1 for i in d.quad)
    canon, c = canonical_residue(d.word.letters, q)
    alpha = d.word.alphabet
    return Word(alpha, canon), Word(alpha, c)


def _children(K: Letters) -> list[tuple[Quad, Letters]]:
    """Pure-Python expansion of a node; reference for the compiled kernel."""
    out = []
    for q in iter_quads(K):
        c, core = cyclic_reduce_letters(free_reduce(_raw_residue(K, q)))
        out.append((q, canonical_rotation(core)[0]))
    return out


# -- breadth first search -------------------------------------------------


def _prepare(w) -> tuple[Letters, Letters, Letters]:
    """``(reduced, outer conjugator, cyclic core)``."""
    letters = free_reduce(tuple(w.letters) if isinstance(w, Word) else tuple(w))
    check_commutator_subgroup(letters)
    c, core = cyclic_reduce_letters(letters)
    return letters, c, core


CHUNK = 256


class _Runner:
    """Runs kernels over a level in fixed-size chunks, optionally on threads.

    Chunk boundaries do not depend on the worker count and results are
    consumed in chunk order, so output is identical for any ``workers``.
    """

    def __init__(self, workers: int):
        self.workers = max(1, workers)
        self.pool = ThreadPoolExecutor(self.workers) if self.workers > 1 else None

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()

    def _chunks(self, keys: list[bytes]):
        for lo in range(0, len(keys), CHUNK):
            yield lo, keys[lo : lo + CHUNK]

    def _waves(self, fn, keys: list[bytes]):
        chunks = list(self._chunks(keys))
        step = self.workers if self.pool is not None else 1
        for w in range(0, len(chunks), step):
            wave = chunks[w : w + step]
            if self.pool is None:
                results = [fn(*_kernels.to_matrix(c)) for _, c in wave]
            else:
                results = list(self.pool.map(lambda c: fn(*_kernels.to_matrix(c[1])), wave))
            yield from zip(wave, results)

    def hits(self, keys: list[bytes], first_only: bool) -> list[tuple[int, Quad]]:
        out = []
        for (lo, _), found in self._waves(lambda m, l: _kernels.find_hits(m, l, first_only), keys):
            for row in found.tolist():
                out.append((lo + row[0], tuple(row[1:])))
            if first_only and out:
                return out[:1]
        return out

    def children(self, keys: list[bytes], canon: bool):
        for (lo, chunk), (owner, quads, out, olen) in self._waves(
            lambda m, l: _kernels.expand_batch(m, l, canon), keys
        ):
            width = out.shape[1]
            buf = out.tobytes()
            ql = quads.tolist()
            for row, (o, m) in enumerate(zip(owner.tolist(), olen.tolist())):
                s = row * width
                yield chunk[o], ql[row], buf[s : s + m]


@dataclass
class BFSResult:
    cl: int
    root: bytes
    outer: Letters
    parents: dict  # packed key -> (parent key, 0-based quad) or None for the root
    hits: list[tuple[bytes, Quad]]  # (node, quad) whose residue reduces to 1
    stats: SearchStats


def _level_order(key: bytes):
    return len(key), key


def bfs(w, *, all_min: bool = False, workers: int = 1, dedup: bool = True, max_nodes: int | None = None) -> BFSResult:
    """Level-by-level search over residues.

    Each level is first scanned for a decomposition whose residue reduces
    to 1; if there is none, the level is expanded.  Residues are kept as
    canonical cyclic words and a residue seen anywhere earlier is dropped,
    which is sound because commutator length is a conjugacy invariant.
    With ``all_min`` every hit of the final level is recorded.
    """
    t0 = time.perf_counter()
    stats = SearchStats()
    letters, outer, core = _prepare(w)
    if not core:
        stats.elapsed_ms = (time.perf_counter() - t0) * 1e3
        return BFSResult(0, b"", outer, {b"": None}, [], stats)
    root = _kernels.pack(core)
    parents: dict = {root: None}
    if dedup:
        # the root itself stays as given so a one-step answer needs no conjugation
        parents.setdefault(_kernels.pack(canonical_rotation(core)[0]), None)
    frontier = [root]
    depth = 0
    runner = _Runner(workers)
    try:
        while True:
            found = runner.hits(frontier, first_only=not all_min)
            if found:
                stats.nodes_expanded += len(frontier) if all_min else found[0][0] + 1
                hits = [(frontier[i], q) for i, q in found]
                depth += 1
                break
            stats.nodes_expanded += len(frontier)
            nxt = []
            for parent, q, key in runner.children(frontier, canon=dedup):
                if dedup:
                    if key in parents:
                        stats.dedup_hits += 1
                        continue
                    parents[key] = (parent, tuple(q))
                nxt.append(key)
                if max_nodes is not None and len(nxt) > max_nodes:
                    raise SearchError(f"frontier exceeded {max_nodes} nodes")
            if not nxt:
                raise SearchError("search exhausted without reaching the empty word")
            nxt.sort(key=_level_order)
            stats.frontier_sizes.append(len(nxt))
            frontier = nxt
            depth += 1
    finally:
        runner.close()
    stats.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return BFSResult(depth, root, outer, parents, hits, stats)


def cl_bfs(w, workers: int = 1, dedup: bool = True) -> tuple[int, SearchStats]:
    res = bfs(w, workers=workers, dedup=dedup)
    return res.cl, res.stats


def _step(K: Letters, q: Quad) -> tuple[Pair, Letters, Letters]:
    """Peel ``q`` off canonical ``K``: ``K = [u,v] g child g^-1``."""
    u, v, r = peel_letters(K, [i + 1 for i in q])
    c, core = cyclic_reduce_letters(r)
    canon, rot = canonical_rotation(core)
    return (u, v), canon, free_reduce(c + core[:rot])


def _reconstruct(res: BFSResult, hit: tuple[bytes, Quad]) -> list[Pair]:
    chain = [hit]
    node = hit[0]
    while res.parents[node] is not None:
        parent, q = res.parents[node]
        chain.append((parent, q))
        node = parent
    chain.reverse()
    pairs: list[Pair] = []
    g = res.outer
    for step, (key, q) in enumerate(chain):
        pair, child, step_conj = _step(_kernels.unpack(key), q)
        expected = chain[step + 1][0] if step + 1 < len(chain) else b""
        if _kernels.pack(child) != expected:
            raise SearchError("stored search path does not replay")
        pairs.extend(lift_pairs(g, [pair]))
        g = free_reduce(g + step_conj)
    return pairs


def _checked(w_letters: Letters, pairs: list[Pair], alphabet, what: str) -> CommutatorPresentation:
    if expand_pairs(pairs) != w_letters:
        raise SearchError(f"{what} produced a presentation that does not expand to the input")
    return CommutatorPresentation(alphabet, tuple(pairs))


def _alphabet(w):
    if isinstance(w, Word):
        return w.alphabet
    n = max((abs(a) for a in w), default=0)
    return alphabet_for(max(n, 2))


def minimal_presentation_bfs(w, workers: int = 1) -> tuple[CommutatorPresentation, SearchStats]:
    res = bfs(w, workers=workers)
    letters = free_reduce(tuple(w.letters) if isinstance(w, Word) else tuple(w))
    pairs = _reconstruct(res, res.hits[0]) if res.hits else []
    pres = _checked(letters, pairs, _alphabet(w), "bfs")
    if len(pres) != res.cl:
        raise SearchError("presentation length differs from the search depth")
    return pres, res.stats


def all_minimal_presentations_bfs(w, workers: int = 1) -> tuple[list[CommutatorPresentation], SearchStats]:
    """Every distinct presentation obtained from the hits of the final level."""
    res = bfs(w, all_min=True, workers=workers)
    letters = free_reduce(tuple(w.letters) if isinstance(w, Word) else tuple(w))
    alphabet = _alphabet(w)
    if not res.hits:
        return [_checked(letters, [], alphabet, "bfs")], res.stats
    out: list[CommutatorPresentation] = []
    seen = set()
    for hit in res.hits:
        pres = _checked(letters, _reconstruct(res, hit), alphabet, "bfs")
        if pres.pairs not in seen:
            seen.add(pres.pairs)
            out.append(pres)
    return out, res.stats


# -- guided descent -------------------------------------------------------


def guided_quad(K: Sequence[int], pi: Sequence[int]) -> Quad:
    """The decomposition read off an extremal pairing (1-based in and out).

    ``i2`` is the last position paired forward, ``i4`` its partner, ``i3``
    the first position strictly between them whose generator differs from
    that of ``b``, and ``i1`` the partner of ``i3``.
    """
    n = len(K)
    i2 = max(i for i in range(1, n + 1) if pi[i - 1] > i)
    i4 = pi[i2 - 1]
    gen_b = abs(K[i4 - 1])
    i3 = next((j for j in range(i2 + 1, i4) if abs(K[j - 1]) != gen_b), None)
    if i3 is None:
        raise AssertionError(f"no admissible i3 between {i2} and {i4}")
    i1 = pi[i3 - 1]
    if not i1 < i2:
        raise AssertionError(f"i1={i1} is not before i2={i2}")
    return i1, i2, i3, i4


def minimal_presentation_guided(w, *, prune: bool = True, check: bool = False) -> tuple[CommutatorPresentation, SearchStats]:
    """Descend along extremal pairings; every step lowers cl by exactly one.

    ``check`` recomputes cl of each residue independently (slow).
    """
    t0 = time.perf_counter()
    stats = SearchStats()
    letters, g, K = _prepare(w)
    pairs: list[Pair] = []
    expected = None
    while K:
        res = extremal_pairing(K, prune=prune)
        stats.pairings_enumerated += res.enumerated
        stats.nodes_expanded += 1
        if expected is None:
            expected = res.cl
        i1, i2, i3, i4 = guided_quad(K, res.pairing.pi)
        u, v, r = peel_letters(K, (i1, i2, i3, i4))
        pairs.extend(lift_pairs(g, [(u, v)]))
        c, K = cyclic_reduce_letters(r)
        g = free_reduce(g + c)
        if check and cl_bardakov(K) != res.cl - 1:
            raise SearchError("guided step did not lower commutator length by one")
        stats.frontier_sizes.append(len(K))
    pres = _checked(letters, pairs, _alphabet(w), "guided")
    if expected is not None and len(pres) != expected:
        raise SearchError("guided descent used more steps than cl")
    stats.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return pres, stats


def cl_guided(w) -> tuple[int, SearchStats]:
    pres, stats = minimal_presentation_guided(w)
    return len(pres), stats


# -- single commutators ---------------------------------------------------


@dataclass(frozen=True)
class CommutatorWitness:
    """``w = g [u, v] g^-1``."""

    g: Letters
    u: Letters
    v: Letters
    quad: Quad | None  # 1-based, None for the trivial word

    def expand(self) -> Letters:
        return conjugate_letters(self.g, commutator_letters(self.u, self.v))


def is_commutator(w) -> CommutatorWitness | None:
    """First decomposition (lexicographic) whose residue reduces to 1."""
    letters = free_reduce(tuple(w.letters) if isinstance(w, Word) else tuple(w))
    check_commutator_subgroup(letters)
    if not letters:
        return CommutatorWitness((), (), (), None)
    for q in iter_quads(letters):
        if free_reduce(_raw_residue(letters, q)):
            continue
        i1, i2, i3, i4 = q
        w1, w2, w3, w4, _ = (
            letters[:i1],
            letters[i1 + 1 : i2],
            letters[i2 + 1 : i3],
            letters[i3 + 1 : i4],
            None,
        )
        a, b = letters[i3], letters[i4]
        wit = CommutatorWitness(
            free_reduce(w1 + w4),
            free_reduce(w3 + (a,) + w4),
            free_reduce((b,) + invert_letters(w2) + invert_letters(w3)),
            (i1 + 1, i2 + 1, i3 + 1, i4 + 1),
        )
        if wit.expand() != letters:
            raise SearchError(f"commutator witness failed to verify at {wit.quad}")
        return wit
    return None


# -- undeduplicated reference search --------------------------------------


def minimal_presentation_literal(w, max_nodes: int = 200_000) -> tuple[CommutatorPresentation, SearchStats]:
    """Tuple search without any conjugacy identification.

    Nodes carry the exact reduced residue and the pairs peeled so far;
    decompositions are taken of the reduced (not cyclically reduced)
    residue.  Exponential; meant for cross-checking on short words.
    """
    t0 = time.perf_counter()
    stats = SearchStats()
    letters = free_reduce(tuple(w.letters) if isinstance(w, Word) else tuple(w))
    check_commutator_subgroup(letters)
    found: list[Pair] | None = [] if not letters else None
    level: list[tuple[tuple[Pair, ...], Letters]] = [((), letters)]
    while found is None:
        nxt = []
        for pairs, r in level:
            stats.nodes_expanded += 1
            for q in iter_quads(r):
                u, v, r2 = peel_letters(r, [i + 1 for i in q])
                item = (pairs + ((u, v),), r2)
                if not r2:
                    found = list(item[0])
                    break
                nxt.append(item)
            if found is not None:
                break
            if len(nxt) > max_nodes:
                raise SearchError(f"literal search exceeded {max_nodes} nodes")
        stats.frontier_sizes.append(len(nxt))
        level = nxt
    pres = _checked(letters, found, _alphabet(w), "literal search")
    stats.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return pres, stats
