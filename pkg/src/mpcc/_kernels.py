"""Compiled inner loops for the connectivity engine."""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def _sift_down(heap, size, i):
    # max-heap on heap[:size]
    x = heap[i]
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and heap[c + 1] > heap[c]:
            c += 1
        if heap[c] <= x:
            break
        heap[i] = heap[c]
        i = c
    heap[i] = x


@numba.njit(cache=True)
def _sift_up(heap, i):
    x = heap[i]
    while i > 0:
        p = (i - 1) // 2
        if heap[p] >= x:
            break
        heap[i] = heap[p]
        i = p
    heap[i] = x


@numba.njit(cache=True)
def two_hop_candidates(indptr, indices, level, initiators, quota):
    """Pick up to ``quota[i]`` new 2-hop partners for each ``initiators[i]``.

    For initiator ``v`` the candidate pool is
    ``{u : exists w in N(u) & N(v), level(u) == level(w) == level(v)}`` minus
    ``v`` and its current neighbors; the smallest ids are chosen.

    The ``k`` best candidates seen so far sit in a max-heap. Neighbor lists are
    sorted, so a list scan stops at the first id not below the heap top once
    the heap is full. A list also never needs more than ``k + d_same + 1``
    same-level entries: by then ``k`` valid ids or excluded ids (at most
    ``d_same + 1`` of them) have been passed.

    Returns ``(src, dst, pool_size, scanned)`` where ``pool_size[i]`` is the
    number of distinct valid candidates met; it is exact whenever it is below
    the quota. ``scanned`` counts list entries touched.
    """
    n = indptr.size - 1
    stamp = np.zeros(n, dtype=np.int64)
    cap = 1024
    out_src = np.empty(cap, dtype=np.int64)
    out_dst = np.empty(cap, dtype=np.int64)
    pool_size = np.zeros(initiators.size, dtype=np.int64)
    heap = np.empty(max(n, 1), dtype=np.int64)
    count = 0
    scanned = 0
    for i in range(initiators.size):
        v = initiators[i]
        k = quota[i]
        if k <= 0:
            continue
        lv = level[v]
        tag = i + 1
        stamp[v] = tag
        d_same = 0
        for j in range(indptr[v], indptr[v + 1]):
            stamp[indices[j]] = tag
            if level[indices[j]] == lv:
                d_same += 1
        limit = k + d_same + 1
        size = 0
        met = 0
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if level[w] != lv:
                continue
            taken = 0
            start = indptr[w]
            stop = indptr[w + 1]
            t = start
            while t < stop:
                u = indices[t]
                t += 1
                if size == k and u >= heap[0]:
                    break
                if level[u] != lv:
                    continue
                taken += 1
                if stamp[u] != tag:
                    stamp[u] = tag
                    met += 1
                    if size < k:
                        heap[size] = u
                        _sift_up(heap, size)
                        size += 1
                    else:
                        heap[0] = u
                        _sift_down(heap, size, 0)
                if taken >= limit:
                    break
            scanned += t - start
        pool_size[i] = met
        if size == 0:
            continue
        chosen = np.sort(heap[:size])
        if count + size > out_src.size:
            newcap = max(out_src.size * 2, count + size)
            s2 = np.empty(newcap, dtype=np.int64)
            d2 = np.empty(newcap, dtype=np.int64)
            s2[:count] = out_src[:count]
            d2[:count] = out_dst[:count]
            out_src, out_dst = s2, d2
        for t in range(size):
            out_src[count] = v
            out_dst[count] = chosen[t]
            count += 1
    return out_src[:count], out_dst[:count], pool_size, scanned


@numba.njit(cache=True)
def csr_from_pairs(n, us, vs):
    """Normalized symmetric CSR from raw endpoint arrays.

    Self-loops are skipped, rows come out sorted and duplicates collapsed.
    Two bucket passes (by head, then by tail in head order) sort every row
    without comparisons, so the cost is linear in the number of pairs.
    """
    counts = np.zeros(n + 1, dtype=np.int64)
    for i in range(us.size):
        a = us[i]
        b = vs[i]
        if a != b:
            counts[a + 1] += 1
            counts[b + 1] += 1
    for v in range(n):
        counts[v + 1] += counts[v]
    total = counts[n]
    # pass 1: tails grouped by head (the arc set is symmetric)
    by_head = np.empty(total, dtype=np.int64)
    pos = counts[:n].copy()
    for i in range(us.size):
        a = us[i]
        b = vs[i]
        if a != b:
            by_head[pos[b]] = a
            pos[b] += 1
            by_head[pos[a]] = b
            pos[a] += 1
    # pass 2: visiting heads in increasing order fills every tail row sorted
    rows = np.empty(total, dtype=np.int64)
    pos[:] = counts[:n]
    for b in range(n):
        for j in range(counts[b], counts[b + 1]):
            a = by_head[j]
            if pos[a] > counts[a] and rows[pos[a] - 1] == b:
                continue
            rows[pos[a]] = b
            pos[a] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    k = 0
    for v in range(n):
        for j in range(counts[v], pos[v]):
            rows[k] = rows[j]
            k += 1
        indptr[v + 1] = k
    return indptr, rows[:k].copy()


@numba.njit(cache=True)
def upper_edges(indptr, indices):
    """``(m, 2)`` array of ``u < v`` pairs in lexicographic order."""
    n = indptr.size - 1
    m = 0
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            if indices[j] > v:
                m += 1
    out = np.empty((m, 2), dtype=np.int64)
    k = 0
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            if indices[j] > v:
                out[k, 0] = v
                out[k, 1] = indices[j]
                k += 1
    return out


@numba.njit(cache=True)
def highest_neighbor(indptr, indices, level):
    """Per vertex: top neighbor level (-1 if none) and its lowest-id holder."""
    n = indptr.size - 1
    top = np.full(n, -1, dtype=np.int64)
    h = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            # rows are sorted, so the first hit at a level is its lowest id
            if level[u] > top[v]:
                top[v] = level[u]
                h[v] = u
    return top, h


@numba.njit(cache=True)
def nearest_leader(indptr, indices, old_level, leader, follower):
    """Lowest-id leader of equal old level within distance 2 of each follower.

    Returns ``n`` where none exists. Distance 2 is resolved through every
    middle vertex ``w``: the lowest leader id per level among ``N(w)`` is
    tabulated once, then looked up by each follower neighbor of ``w``.
    """
    n = indptr.size - 1
    choice = np.full(n, n, dtype=np.int64)
    lv_buf = np.empty(64, dtype=np.int64)
    id_buf = np.empty(64, dtype=np.int64)
    for w in range(n):
        lo = indptr[w]
        hi = indptr[w + 1]
        if hi == lo:
            continue
        # distance 1 from w, for w itself a follower
        if follower[w]:
            for j in range(lo, hi):
                x = indices[j]
                if leader[x] and old_level[x] == old_level[w]:
                    if x < choice[w]:
                        choice[w] = x
                    break
        # distance 2 through w
        k = 0
        for j in range(lo, hi):
            x = indices[j]
            if not leader[x]:
                continue
            lx = old_level[x]
            found = False
            for t in range(k):
                if lv_buf[t] == lx:
                    found = True
                    break
            if not found:
                if k == lv_buf.size:
                    lv2 = np.empty(2 * k, dtype=np.int64)
                    id2 = np.empty(2 * k, dtype=np.int64)
                    lv2[:k] = lv_buf
                    id2[:k] = id_buf
                    lv_buf, id_buf = lv2, id2
                # first hit per level is the lowest id (rows sorted)
                lv_buf[k] = lx
                id_buf[k] = x
                k += 1
        if k == 0:
            continue
        for j in range(lo, hi):
            v = indices[j]
            if not follower[v]:
                continue
            lv = old_level[v]
            for t in range(k):
                if lv_buf[t] == lv:
                    x = id_buf[t]
                    if x != v and x < choice[v]:
                        choice[v] = x
                    break
    return choice
