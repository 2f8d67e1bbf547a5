"""Pure-Python enumeration kernel.

Line-for-line twin of the compiled ``_enumc`` kernel: identical pruning,
identical include-before-exclude DFS order, identical first-found example
per profile.  Used when the extension is unavailable or when
``VDBKIT_PURE_PYTHON=1``; practical up to n of about 7.
"""

from __future__ import annotations

import sys

MAXN = 16
MAXE = 120


def enumerate_profiles(n, m, max_degree, min_degree, edges, prefix=(), degree_sorted=False):
    """See ``vdbkit._enumc.enumerate_profiles``; same signature and result."""
    if n < 1 or n > MAXN:
        raise ValueError(f"n must be in 1..{MAXN}")
    E = len(edges)
    if E > MAXE:
        raise ValueError("too many candidate edges")
    D = max(min(max_degree, n - 1), 1)
    P = D * (D + 1) // 2
    ea = []
    eb = []
    rem = [0] * n
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise ValueError("bad candidate edge")
        ea.append(a)
        eb.append(b)
        rem[a] += 1
        rem[b] += 1
    if len(prefix) > E:
        raise ValueError("prefix longer than the candidate-edge list")
    forced = [-1] * E
    for p, bit in enumerate(prefix):
        forced[p] = 1 if bit else 0
    fin = [[] for _ in range(E)]
    for v in range(n):
        last = -1
        for p in range(E):
            if ea[p] == v or eb[p] == v:
                last = p
        if last >= 0:
            fin[last].append(v)

    pidx = [[0] * (D + 1) for _ in range(D + 1)]
    for i in range(1, D + 1):
        for j in range(i, D + 1):
            pidx[i][j] = pidx[j][i] = j * (j - 1) // 2 + i - 1

    deg = [0] * n
    parent = list(range(n))
    size = [1] * n
    unfinished = [1] * n
    cho = []
    st = {"comps": n, "deficit": n * min_degree if min_degree > 0 else 0,
          "visited": 0, "nodes": 0}
    table = {}

    for v in range(n):
        if rem[v] == 0:
            unfinished[v] = 0
            if n > 1:
                return 0, 0, []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def unite(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return -1
        if size[ra] < size[rb]:
            ra, rb = rb, ra
        parent[rb] = ra
        size[ra] += size[rb]
        unfinished[ra] += unfinished[rb]
        st["comps"] -= 1
        return rb

    def separate(rb):
        if rb < 0:
            return
        ra = parent[rb]
        parent[rb] = rb
        size[ra] -= size[rb]
        unfinished[ra] -= unfinished[rb]
        st["comps"] += 1

    def finish(p):
        for i, v in enumerate(fin[p]):
            r = find(v)
            unfinished[r] -= 1
            if unfinished[r] == 0 and size[r] < n:
                return -(i + 1)
            if degree_sorted:
                if v > 0 and deg[v] > deg[v - 1]:
                    return -(i + 1)
                for j in range(v + 1, n):
                    if deg[j] > deg[v]:
                        return -(i + 1)
        return len(fin[p])

    def unfinish(p, k):
        for i in range(k - 1, -1, -1):
            unfinished[find(fin[p][i])] += 1

    def leaf():
        if st["comps"] != 1 or st["deficit"] > 0:
            return
        if degree_sorted:
            for v in range(1, n):
                if deg[v] > deg[v - 1]:
                    return
        st["visited"] += 1
        key = bytearray(P)
        for q in cho:
            key[pidx[deg[ea[q]]][deg[eb[q]]]] += 1
        key = bytes(key)
        entry = table.get(key)
        if entry is not None:
            entry[0] += 1
        else:
            mask = 0
            for q in cho:
                mask |= 1 << q
            table[key] = [1, mask]

    def rec(p):
        st["nodes"] += 1
        c = len(cho)
        if c == m:
            leaf()
            return
        left = m - c
        if E - p < left:
            return
        if st["comps"] - 1 > left or st["deficit"] > 2 * left:
            return
        a = ea[p]
        b = eb[p]

        ok = forced[p] != 0 and deg[a] < D and deg[b] < D
        if ok and degree_sorted:
            if a > 0 and (deg[a] >= deg[a - 1] or deg[b] >= deg[a - 1]):
                ok = False
            if deg[b] + 1 > deg[a] + rem[a]:
                ok = False
        if ok:
            r = unite(a, b)
            if deg[a] < min_degree:
                st["deficit"] -= 1
            if deg[b] < min_degree:
                st["deficit"] -= 1
            deg[a] += 1
            deg[b] += 1
            rem[a] -= 1
            rem[b] -= 1
            cho.append(p)
            k = finish(p)
            if k >= 0:
                rec(p + 1)
            else:
                k = -k
            unfinish(p, k)
            cho.pop()
            rem[a] += 1
            rem[b] += 1
            deg[a] -= 1
            deg[b] -= 1
            if deg[a] < min_degree:
                st["deficit"] += 1
            if deg[b] < min_degree:
                st["deficit"] += 1
            separate(r)

        if forced[p] != 1:
            rem[a] -= 1
            rem[b] -= 1
            if deg[a] + rem[a] >= min_degree and deg[b] + rem[b] >= min_degree:
                k = finish(p)
                if k >= 0:
                    rec(p + 1)
                else:
                    k = -k
                unfinish(p, k)
            rem[a] += 1
            rem[b] += 1

    limit = sys.getrecursionlimit()
    if limit < E + 100:
        sys.setrecursionlimit(E + 100)
    rec(0)
    out = [(key, cnt, mask) for key, (cnt, mask) in table.items()]
    return st["visited"], st["nodes"], out
