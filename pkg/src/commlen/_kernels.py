"""numba kernels for residue expansion.

Letters are packed as ``2 * (g - 1) + (1 if inverse)`` in int8 arrays, so
inversion is ``^ 1`` and byte order agrees with the canonical letter order
(x < x^-1 < y < y^-1 < ...).  Quadruples are 0-based and enumerated in
lexicographic order, exactly like ``search.iter_quads``.  All kernels
release the GIL so frontier chunks can run on a thread pool.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def pack(letters) -> bytes:
    return bytes(2 * a - 2 if a > 0 else -2 * a - 1 for a in letters)


def unpack(key: bytes) -> tuple[int, ...]:
    return tuple((k >> 1) + 1 if not k & 1 else -((k >> 1) + 1) for k in key)


def to_matrix(keys: list[bytes]) -> tuple[np.ndarray, np.ndarray]:
    width = max((len(k) for k in keys), default=0) or 1
    mat = np.zeros((len(keys), width), dtype=np.int8)
    lens = np.zeros(len(keys), dtype=np.int32)
    for r, k in enumerate(keys):
        mat[r, : len(k)] = np.frombuffer(k, dtype=np.int8)
        lens[r] = len(k)
    return mat, lens


@njit(cache=True, nogil=True)
def _count_quads(K, n):
    c = 0
    for i1 in range(n - 3):
        a = K[i1] ^ 1
        for i2 in range(i1 + 1, n - 2):
            b = K[i2] ^ 1
            for i3 in range(i2 + 1, n - 1):
                if K[i3] != a:
                    continue
                for i4 in range(i3 + 1, n):
                    if K[i4] == b:
                        c += 1
    return c


@njit(cache=True, nogil=True)
def _push_range(K, lo, hi, st, top):
    for i in range(lo, hi):
        x = K[i]
        if top > 0 and st[top - 1] == (x ^ 1):
            top -= 1
        else:
            st[top] = x
            top += 1
    return top


@njit(cache=True, nogil=True)
def _residue(K, n, i1, i2, i3, i4, st):
    # W1 W4 W3 W2 W5, freely reduced into st; returns its length
    top = _push_range(K, 0, i1, st, 0)
    top = _push_range(K, i3 + 1, i4, st, top)
    top = _push_range(K, i2 + 1, i3, st, top)
    top = _push_range(K, i1 + 1, i2, st, top)
    top = _push_range(K, i4 + 1, n, st, top)
    return top


@njit(cache=True, nogil=True)
def _least_rotation(s, lo, m, f, dbl):
    # Booth's algorithm on s[lo:lo+m]
    for t in range(m):
        dbl[t] = s[lo + t]
        dbl[m + t] = s[lo + t]
    for t in range(2 * m):
        f[t] = -1
    k = 0
    for j in range(1, 2 * m):
        sj = dbl[j]
        i = f[j - k - 1]
        while i != -1 and sj != dbl[k + i + 1]:
            if sj < dbl[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != dbl[k + i + 1]:
            if sj < dbl[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


@njit(cache=True, nogil=True)
def expand_batch(nodes, lens, canon):
    """All children of every node.

    Returns ``(owner, quads, out, olen)``: row ``r`` is the child of node
    ``owner[r]`` by 0-based quadruple ``quads[r]``, stored in
    ``out[r, :olen[r]]`` (cyclically reduced, rotated to canonical form
    when ``canon``).
    """
    total = 0
    for r in range(nodes.shape[0]):
        total += _count_quads(nodes[r], lens[r])
    width = max(nodes.shape[1] - 4, 1)
    owner = np.empty(total, np.int32)
    quads = np.empty((total, 4), np.int16)
    out = np.zeros((total, width), np.int8)
    olen = np.empty(total, np.int32)
    st = np.empty(nodes.shape[1] + 1, np.int8)
    f = np.empty(2 * nodes.shape[1] + 2, np.int32)
    dbl = np.empty(2 * nodes.shape[1] + 2, np.int8)
    row = 0
    for r in range(nodes.shape[0]):
        K = nodes[r]
        n = lens[r]
        for i1 in range(n - 3):
            a = K[i1] ^ 1
            for i2 in range(i1 + 1, n - 2):
                b = K[i2] ^ 1
                for i3 in range(i2 + 1, n - 1):
                    if K[i3] != a:
                        continue
                    for i4 in range(i3 + 1, n):
                        if K[i4] != b:
                            continue
                        top = _residue(K, n, i1, i2, i3, i4, st)
                        lo = 0
                        hi = top - 1
                        while lo < hi and st[lo] == (st[hi] ^ 1):
                            lo += 1
                            hi -= 1
                        m = top - 2 * lo
                        rot = 0
                        if canon and m > 0:
                            rot = _least_rotation(st, lo, m, f, dbl)
                        for t in range(m):
                            out[row, t] = st[lo + (rot + t) % m]
                        owner[row] = r
                        quads[row, 0] = i1
                        quads[row, 1] = i2
                        quads[row, 2] = i3
                        quads[row, 3] = i4
                        olen[row] = m
                        row += 1
    return owner, quads, out, olen


@njit(cache=True, nogil=True)
def _reduces_to_one(K, n, i1, i2, i3, i4, st):
    # early exit once the stack cannot drain before the input runs out
    remaining = n - 4
    top = 0
    for seg in range(5):
        if seg == 0:
            lo, hi = 0, i1
        elif seg == 1:
            lo, hi = i3 + 1, i4
        elif seg == 2:
            lo, hi = i2 + 1, i3
        elif seg == 3:
            lo, hi = i1 + 1, i2
        else:
            lo, hi = i4 + 1, n
        for i in range(lo, hi):
            x = K[i]
            remaining -= 1
            if top > 0 and st[top - 1] == (x ^ 1):
                top -= 1
            else:
                st[top] = x
                top += 1
                if top > remaining:
                    return False
    return top == 0


@njit(cache=True, nogil=True)
def find_hits(nodes, lens, first_only):
    """Quadruples whose residue reduces to 1.

    Returns an ``(h, 5)`` array of ``(node, i1, i2, i3, i4)``.  With
    ``first_only`` the scan stops at the first node that has a hit and
    reports only its lexicographically first quadruple.
    """
    cap = 16
    hits = np.empty((cap, 5), np.int32)
    h = 0
    st = np.empty(nodes.shape[1] + 1, np.int8)
    for r in range(nodes.shape[0]):
        K = nodes[r]
        n = lens[r]
        done = False
        for i1 in range(n - 3):
            if done:
                break
            a = K[i1] ^ 1
            for i2 in range(i1 + 1, n - 2):
                if done:
                    break
                b = K[i2] ^ 1
                for i3 in range(i2 + 1, n - 1):
                    if done:
                        break
                    if K[i3] != a:
                        continue
                    for i4 in range(i3 + 1, n):
                        if K[i4] != b:
                            continue
                        if _reduces_to_one(K, n, i1, i2, i3, i4, st):
                            if h == cap:
                                cap *= 2
                                grown = np.empty((cap, 5), np.int32)
                                grown[:h] = hits[:h]
                                hits = grown
                            hits[h, 0] = r
                            hits[h, 1] = i1
                            hits[h, 2] = i2
                            hits[h, 3] = i3
                            hits[h, 4] = i4
                            h += 1
                            if first_only:
                                done = True
                                break
        if first_only and h > 0:
            break
    return hits[:h]
