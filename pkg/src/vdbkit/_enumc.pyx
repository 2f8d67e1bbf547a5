# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled branch-and-prune enumerator of connected simple graphs.

Walks the candidate-edge list in order, deciding include/exclude per edge,
and collects the histogram of edge-class profiles (m_{i,j} counts) over
every leaf graph.  Mirrors ``vdbkit._enum_py`` exactly: same pruning, same
DFS order (include before exclude), same first-found example per profile.
"""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset, memcmp, memcpy
from libc.stdint cimport uint64_t, uint8_t, int64_t

DEF MAXN = 16
DEF MAXE = 120
DEF MAXP = 120


cdef struct State:
    int n
    int m
    int E
    int maxd
    int mind
    int sorted_
    int P
    int ea[MAXE]
    int eb[MAXE]
    int forced[MAXE]
    int nfin[MAXE]
    int fin[MAXE][MAXN]
    int pidx[MAXN][MAXN]
    uint64_t zob[MAXP]
    int deg[MAXN]
    int rem[MAXN]
    int parent[MAXN]
    int size[MAXN]
    int unfinished[MAXN]
    int cho[MAXE]
    int comps
    int c
    int deficit
    # hash table, insertion-ordered
    int64_t cap
    int64_t used
    int64_t* slot
    uint64_t* hashes
    uint64_t* counts
    uint64_t* ex_lo
    uint64_t* ex_hi
    uint8_t* keys
    int oom
    uint64_t visited
    uint64_t nodes
    uint8_t key[MAXP]


cdef inline int find(State* s, int x) noexcept nogil:
    while s.parent[x] != x:
        x = s.parent[x]
    return x


cdef inline int unite(State* s, int a, int b) noexcept nogil:
    """Union by size; returns the absorbed root, or -1 if already joined."""
    cdef int ra = find(s, a)
    cdef int rb = find(s, b)
    cdef int t
    if ra == rb:
        return -1
    if s.size[ra] < s.size[rb]:
        t = ra
        ra = rb
        rb = t
    s.parent[rb] = ra
    s.size[ra] += s.size[rb]
    s.unfinished[ra] += s.unfinished[rb]
    s.comps -= 1
    return rb


cdef inline void separate(State* s, int rb) noexcept nogil:
    cdef int ra
    if rb < 0:
        return
    ra = s.parent[rb]
    s.parent[rb] = rb
    s.size[ra] -= s.size[rb]
    s.unfinished[ra] -= s.unfinished[rb]
    s.comps += 1


cdef int finish(State* s, int p) noexcept nogil:
    """Close the vertices whose last candidate edge is p.

    Returns the number processed; a negative value -(k+1) means the k-th
    closure failed (after being applied), so the caller undoes k+1 of them.
    """
    cdef int i, v, r, j
    for i in range(s.nfin[p]):
        v = s.fin[p][i]
        r = find(s, v)
        s.unfinished[r] -= 1
        if s.unfinished[r] == 0 and s.size[r] < s.n:
            return -(i + 1)
        if s.sorted_:
            if v > 0 and s.deg[v] > s.deg[v - 1]:
                return -(i + 1)
            for j in range(v + 1, s.n):
                if s.deg[j] > s.deg[v]:
                    return -(i + 1)
    return s.nfin[p]


cdef inline void unfinish(State* s, int p, int k) noexcept nogil:
    cdef int i
    for i in range(k - 1, -1, -1):
        s.unfinished[find(s, s.fin[p][i])] += 1


cdef int grow(State* s) noexcept nogil:
    cdef int64_t newcap = s.cap * 2
    cdef int64_t* nslot = <int64_t*> malloc(newcap * sizeof(int64_t))
    cdef int64_t i, e, h
    if nslot == NULL:
        return 0
    for i in range(newcap):
        nslot[i] = -1
    for e in range(s.used):
        h = <int64_t> (s.hashes[e] & <uint64_t> (newcap - 1))
        while nslot[h] >= 0:
            h = (h + 1) & (newcap - 1)
        nslot[h] = e
    free(s.slot)
    s.slot = nslot
    s.cap = newcap
    return 1


cdef int reserve_entries(State* s, int64_t n_entries) noexcept nogil:
    """Entry arrays are sized cap/2; reallocate alongside the slot table."""
    cdef uint64_t* h2 = <uint64_t*> malloc(n_entries * sizeof(uint64_t))
    cdef uint64_t* c2 = <uint64_t*> malloc(n_entries * sizeof(uint64_t))
    cdef uint64_t* l2 = <uint64_t*> malloc(n_entries * sizeof(uint64_t))
    cdef uint64_t* u2 = <uint64_t*> malloc(n_entries * sizeof(uint64_t))
    cdef uint8_t* k2 = <uint8_t*> malloc(n_entries * s.P + 1)
    if h2 == NULL or c2 == NULL or l2 == NULL or u2 == NULL or k2 == NULL:
        free(h2); free(c2); free(l2); free(u2); free(k2)
        return 0
    if s.used > 0:
        memcpy(h2, s.hashes, s.used * sizeof(uint64_t))
        memcpy(c2, s.counts, s.used * sizeof(uint64_t))
        memcpy(l2, s.ex_lo, s.used * sizeof(uint64_t))
        memcpy(u2, s.ex_hi, s.used * sizeof(uint64_t))
        memcpy(k2, s.keys, s.used * s.P)
    free(s.hashes); free(s.counts); free(s.ex_lo); free(s.ex_hi); free(s.keys)
    s.hashes = h2
    s.counts = c2
    s.ex_lo = l2
    s.ex_hi = u2
    s.keys = k2
    return 1


cdef void leaf(State* s) noexcept nogil:
    cdef int i, v, a, b, idx
    cdef uint64_t h = 0
    cdef int64_t slot, e
    if s.comps != 1 or s.deficit > 0:
        return
    if s.sorted_:
        for v in range(1, s.n):
            if s.deg[v] > s.deg[v - 1]:
                return
    s.visited += 1
    memset(s.key, 0, s.P)
    for i in range(s.c):
        a = s.ea[s.cho[i]]
        b = s.eb[s.cho[i]]
        idx = s.pidx[s.deg[a]][s.deg[b]]
        s.key[idx] += 1
        h += s.zob[idx]
    h ^= h >> 29
    h *= <uint64_t> 0xbf58476d1ce4e5b9
    h ^= h >> 32
    slot = <int64_t> (h & <uint64_t> (s.cap - 1))
    while True:
        e = s.slot[slot]
        if e < 0:
            break
        if s.hashes[e] == h and memcmp(s.keys + e * s.P, s.key, s.P) == 0:
            s.counts[e] += 1
            return
        slot = (slot + 1) & (s.cap - 1)
    if 2 * (s.used + 1) > s.cap:
        if not reserve_entries(s, s.cap) or not grow(s):
            s.oom = 1
            return
        slot = <int64_t> (h & <uint64_t> (s.cap - 1))
        while s.slot[slot] >= 0:
            slot = (slot + 1) & (s.cap - 1)
    e = s.used
    s.used += 1
    s.slot[slot] = e
    s.hashes[e] = h
    s.counts[e] = 1
    memcpy(s.keys + e * s.P, s.key, s.P)
    s.ex_lo[e] = 0
    s.ex_hi[e] = 0
    for i in range(s.c):
        if s.cho[i] < 64:
            s.ex_lo[e] |= (<uint64_t> 1) << s.cho[i]
        else:
            s.ex_hi[e] |= (<uint64_t> 1) << (s.cho[i] - 64)


cdef void rec(State* s, int p) noexcept nogil:
    cdef int a, b, r, k, left, ok
    s.nodes += 1
    if s.oom:
        return
    if s.c == s.m:
        leaf(s)
        return
    left = s.m - s.c
    if s.E - p < left:
        return
    if s.comps - 1 > left or s.deficit > 2 * left:
        return
    a = s.ea[p]
    b = s.eb[p]

    ok = s.forced[p] != 0 and s.deg[a] < s.maxd and s.deg[b] < s.maxd
    if ok and s.sorted_:
        if a > 0 and (s.deg[a] >= s.deg[a - 1] or s.deg[b] >= s.deg[a - 1]):
            ok = 0
        if s.deg[b] + 1 > s.deg[a] + s.rem[a]:
            ok = 0
    if ok:
            r = unite(s, a, b)
            if s.deg[a] < s.mind:
                s.deficit -= 1
            if s.deg[b] < s.mind:
                s.deficit -= 1
            s.deg[a] += 1
            s.deg[b] += 1
            s.rem[a] -= 1
            s.rem[b] -= 1
            s.cho[s.c] = p
            s.c += 1
            k = finish(s, p)
            if k >= 0:
                rec(s, p + 1)
            else:
                k = -k
            unfinish(s, p, k)
            s.c -= 1
            s.rem[a] += 1
            s.rem[b] += 1
            s.deg[a] -= 1
            s.deg[b] -= 1
            if s.deg[a] < s.mind:
                s.deficit += 1
            if s.deg[b] < s.mind:
                s.deficit += 1
            separate(s, r)

    if s.forced[p] != 1:
        s.rem[a] -= 1
        s.rem[b] -= 1
        if s.deg[a] + s.rem[a] >= s.mind and s.deg[b] + s.rem[b] >= s.mind:
            k = finish(s, p)
            if k >= 0:
                rec(s, p + 1)
            else:
                k = -k
            unfinish(s, p, k)
        s.rem[a] += 1
        s.rem[b] += 1


def enumerate_profiles(int n, int m, int max_degree, int min_degree, edges,
                       prefix=(), bint degree_sorted=False):
    """Enumerate connected graphs on ``edges`` and histogram their profiles.

    Returns ``(visited, nodes, entries)`` where each entry is
    ``(key_bytes, count, example_mask)`` in first-found order.  ``key_bytes``
    holds m_{i,j} at pair index ``j*(j-1)//2 + i - 1`` for 1 <= i <= j <= D,
    D = min(max_degree, n - 1).
    """
    cdef State* s = <State*> calloc(1, sizeof(State))
    cdef int i, j, v, p, D, last
    cdef uint64_t z
    cdef int64_t e
    if s == NULL:
        raise MemoryError
    try:
        if n < 1 or n > MAXN:
            raise ValueError(f"n must be in 1..{MAXN}")
        s.n = n
        s.m = m
        s.E = len(edges)
        if s.E > MAXE:
            raise ValueError("too many candidate edges")
        D = min(max_degree, n - 1)
        if D < 1:
            D = 1
        s.maxd = D
        s.mind = min_degree
        s.sorted_ = 1 if degree_sorted else 0
        s.P = D * (D + 1) // 2
        for i in range(1, D + 1):
            for j in range(i, D + 1):
                s.pidx[i][j] = j * (j - 1) // 2 + i - 1
                s.pidx[j][i] = s.pidx[i][j]
        z = <uint64_t> 0x9e3779b97f4a7c15
        for i in range(s.P):
            z += <uint64_t> 0x9e3779b97f4a7c15
            s.zob[i] = (z ^ (z >> 30)) * <uint64_t> 0xbf58476d1ce4e5b9
        for v in range(n):
            s.parent[v] = v
            s.size[v] = 1
            s.unfinished[v] = 1
            s.deg[v] = 0
            s.rem[v] = 0
        s.comps = n
        s.deficit = n * min_degree if min_degree > 0 else 0
        for p in range(s.E):
            a, b = edges[p]
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError("bad candidate edge")
            s.ea[p] = a
            s.eb[p] = b
            s.rem[a] += 1
            s.rem[b] += 1
            s.forced[p] = -1
        if len(prefix) > s.E:
            raise ValueError("prefix longer than the candidate-edge list")
        for p, bit in enumerate(prefix):
            s.forced[p] = 1 if bit else 0
        for v in range(n):
            last = -1
            for p in range(s.E):
                if s.ea[p] == v or s.eb[p] == v:
                    last = p
            if last >= 0:
                s.fin[last][s.nfin[last]] = v
                s.nfin[last] += 1
        # isolated-by-construction vertices close at once
        for v in range(n):
            if s.rem[v] == 0:
                s.unfinished[v] = 0
                if n > 1:
                    s.comps = n + 1  # forces prune: vertex can never connect
        s.cap = 1024
        s.slot = <int64_t*> malloc(s.cap * sizeof(int64_t))
        if s.slot == NULL or not reserve_entries(s, s.cap):
            raise MemoryError
        for e in range(s.cap):
            s.slot[e] = -1
        if s.comps <= n:
            with nogil:
                rec(s, 0)
        if s.oom:
            raise MemoryError("profile table allocation failed")
        out = []
        for e in range(s.used):
            out.append((bytes(s.keys[e * s.P:(e + 1) * s.P]), s.counts[e],
                        int(s.ex_lo[e]) | (int(s.ex_hi[e]) << 64)))
        return int(s.visited), int(s.nodes), out
    finally:
        free(s.slot); free(s.hashes); free(s.counts)
        free(s.ex_lo); free(s.ex_hi); free(s.keys)
        free(s)
