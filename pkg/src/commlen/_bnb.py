"""Compiled branch and bound over pairings.

Mirrors ``pairing._branch_and_bound`` step for step (same branching
letter, same partner order, same pruning), so the optimum, the witness
and the number of scored leaves agree with the pure-Python search.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _face_bound(pi, n, seen, rho, done):
    seen[:] = 0
    done[:] = 0
    free = 0
    for u in range(n):
        if pi[u] != -1:
            continue
        free += 1
        cur = (u + 1) % n
        while pi[cur] != -1:
            seen[cur] = 1
            cur = (pi[cur] + 1) % n
        rho[u] = cur
    closed = 0
    for start in range(n):
        if seen[start] or pi[start] == -1:
            continue
        closed += 1
        cur = start
        while not seen[cur]:
            seen[cur] = 1
            cur = (pi[cur] + 1) % n
    r = free // 2
    if r == 0:
        return closed
    c = 0
    for u in range(n):
        if pi[u] != -1 or done[u]:
            continue
        c += 1
        while not done[u]:
            done[u] = 1
            u = rho[u]
    return closed + r + 2 * min(c, r) - c


@njit(cache=True)
def _leaf_v(pi, n, seen):
    seen[:] = 0
    v = 0
    for s in range(n):
        if seen[s]:
            continue
        v += 1
        cur = s
        while not seen[cur]:
            seen[cur] = 1
            cur = (pi[cur] + 1) % n
    return v


@njit(cache=True)
def branch_and_bound(letters, cap, parity):
    """``(best_v, best 0-based images, leaves, histogram of leaf v)``."""
    n = letters.shape[0]
    half = n // 2
    n_gens = 0
    for x in letters:
        n_gens = max(n_gens, abs(x))
    pi = np.full(n, -1, np.int64)
    best = np.zeros(n, np.int64)
    hist = np.zeros(n + 2, np.int64)
    seen = np.zeros(n, np.uint8)
    done = np.zeros(n, np.uint8)
    rho = np.zeros(n, np.int64)
    free_pos = np.zeros(n_gens + 1, np.int64)  # unmatched occurrences of g
    for x in letters:
        if x > 0:
            free_pos[x] += 1
    sel = np.zeros(half + 1, np.int64)
    cur_j = np.zeros(half + 1, np.int64)
    best_v = -1
    leaves = 0
    d = 0
    entering = True
    while d >= 0:
        if entering:
            entering = False
            if d == half:
                v = _leaf_v(pi, n, seen)
                leaves += 1
                hist[v] += 1
                if v > best_v:
                    best_v = v
                    best[:] = pi
                d -= 1
                continue
            bound = _face_bound(pi, n, seen, rho, done)
            if bound % 2 != parity:
                bound -= 1
            if bound <= best_v:
                d -= 1
                continue
            g = 0
            for h in range(1, n_gens + 1):
                if free_pos[h] > 0 and (g == 0 or free_pos[h] < free_pos[g]):
                    g = h
            i = 0
            while pi[i] != -1 or letters[i] != g:
                i += 1
            free_pos[g] -= 1
            sel[d] = i
            cur_j[d] = -1
        # try the next partner at depth d
        i = sel[d]
        prev = cur_j[d]
        stop = False
        if prev >= 0:
            pi[i] = -1
            pi[prev] = -1
            stop = best_v >= cap
        j = -1
        if not stop:
            want = -letters[i]
            for k in range(prev + 1, n):
                if pi[k] == -1 and letters[k] == want:
                    j = k
                    break
        if j >= 0:
            pi[i] = j
            pi[j] = i
            cur_j[d] = j
            d += 1
            entering = True
        else:
            free_pos[letters[i]] += 1
            d -= 1
    return best_v, best, leaves, hist
