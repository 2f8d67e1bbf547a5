"""Simple undirected graphs stored as adjacency bitrows.

Each vertex owns one Python ``int`` whose bit ``j`` is set when the vertex is
adjacent to ``j``.  Graphs are immutable; every structural operation returns
a fresh value.
"""

from __future__ import annotations

import enum
import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import (
    DuplicateEdge,
    GraphFormatError,
    IndexOutOfRange,
    InvalidMove,
    NotConnected,
    SelfLoop,
)


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    m: int = field(compare=False, default=-1)

    def __post_init__(self):
        if self.n < 1 or len(self.rows) != self.n:
            raise ValueError("rows must hold one bitrow per vertex, n >= 1")
        if self.m < 0:
            object.__setattr__(self, "m", sum(r.bit_count() for r in self.rows) // 2)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        row = self.rows[v]
        out = []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (min, max) pairs in lexicographic order."""
        return [(a, b) for a in range(self.n) for b in self.neighbors(a) if a < b]

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return from_edge_list(self.n, [(perm[a], perm[b]) for a, b in self.edges()])

    def digest(self) -> str:
        from .graph6 import encode_graph6

        return hashlib.sha1(encode_graph6(self)).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, edges={self.edges()})"


class SwapMove(NamedTuple):
    """Replace edges ux, vy by uy, vx."""

    u: int
    x: int
    v: int
    y: int


class SwapCheck(enum.Enum):
    VALID = "valid"
    VERTICES_NOT_DISTINCT = "vertices_not_distinct"
    NOT_EDGE = "not_edge"
    ALREADY_EDGE = "already_edge"
    DEGREE_ORDER_VIOLATED = "degree_order_violated"
    DISCONNECTS = "disconnects"

    def __bool__(self) -> bool:
        return self is SwapCheck.VALID


@dataclass(frozen=True)
class DegreeProfile:
    counts: dict[int, int]
    max_degree: int
    min_degree: int

    def __getitem__(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    @property
    def degree_set(self) -> frozenset[int]:
        return frozenset(d for d, c in self.counts.items() if c)


@dataclass(frozen=True)
class EdgeClassCounts:
    """m_{i,j}: number of edges joining a degree-i and a degree-j vertex (i <= j)."""

    counts: dict[tuple[int, int], int]

    def __getitem__(self, pair: tuple[int, int]) -> int:
        i, j = pair
        return self.counts.get((min(i, j), max(i, j)), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def degree_profile(self) -> DegreeProfile:
        """Recover n_i from the class counts (valid when no vertex is isolated)."""
        incid: Counter[int] = Counter()
        for (i, j), c in self.counts.items():
            incid[i] += c
            incid[j] += c
        counts = {}
        for d, inc in incid.items():
            if inc % d:
                raise ValueError(f"class counts inconsistent at degree {d}")
            counts[d] = inc // d
        counts = dict(sorted((d, c) for d, c in counts.items() if c))
        return DegreeProfile(counts, max(counts, default=0), min(counts, default=0))

    def key(self) -> tuple[tuple[tuple[int, int], int], ...]:
        return tuple(sorted((p, c) for p, c in self.counts.items() if c))


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 1:
        raise IndexOutOfRange("a graph needs at least one vertex")
    rows = [0] * n
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"edge ({a}, {b}) outside 0..{n - 1}")
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a}")
        if rows[a] >> b & 1:
            raise DuplicateEdge(f"edge ({min(a, b)}, {max(a, b)}) given twice")
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return Graph(n, tuple(rows))


def reach(g: Graph, start: int = 0, rows: tuple[int, ...] | list[int] | None = None) -> int:
    """Bitmask of vertices reachable from ``start`` (BFS over bitrows)."""
    rows = g.rows if rows is None else rows
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= rows[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return reach(g) == (1 << g.n) - 1


def cyclomatic_number(g: Graph) -> int:
    if not is_connected(g):
        raise NotConnected("cyclomatic number is defined here for connected graphs only")
    return g.m - g.n + 1


def degree_profile(g: Graph) -> DegreeProfile:
    degs = g.degrees()
    counts = dict(sorted(Counter(degs).items()))
    return DegreeProfile(counts, max(degs), min(degs))


def edge_class_counts(g: Graph) -> EdgeClassCounts:
    degs = g.degrees()
    counts: Counter[tuple[int, int]] = Counter()
    for a, b in g.edges():
        i, j = degs[a], degs[b]
        counts[(min(i, j), max(i, j))] += 1
    return EdgeClassCounts(dict(sorted(counts.items())))


def is_chemical(g: Graph) -> bool:
    return max(g.degrees()) <= 4


def _swapped_rows(g: Graph, s: SwapMove) -> list[int]:
    u, x, v, y = s
    rows = list(g.rows)
    rows[u] ^= (1 << x) | (1 << y)
    rows[x] ^= (1 << u) | (1 << v)
    rows[v] ^= (1 << y) | (1 << x)
    rows[y] ^= (1 << v) | (1 << u)
    return rows


def check_swap_shape(g: Graph, s: SwapMove) -> SwapCheck:
    """All hypotheses of the swap except connectivity of the result."""
    u, x, v, y = s
    if len({u, x, v, y}) != 4 or not all(0 <= t < g.n for t in s):
        return SwapCheck.VERTICES_NOT_DISTINCT
    if not (g.has_edge(u, x) and g.has_edge(v, y)):
        return SwapCheck.NOT_EDGE
    if g.has_edge(u, y) or g.has_edge(v, x):
        return SwapCheck.ALREADY_EDGE
    if g.degree(u) < g.degree(v) or g.degree(y) < g.degree(x):
        return SwapCheck.DEGREE_ORDER_VIOLATED
    return SwapCheck.VALID


def validate_swap(g: Graph, s: SwapMove) -> SwapCheck:
    verdict = check_swap_shape(g, s)
    if not verdict:
        return verdict
    if reach(g, 0, _swapped_rows(g, s)) != (1 << g.n) - 1:
        return SwapCheck.DISCONNECTS
    return SwapCheck.VALID


def apply_swap(g: Graph, s: SwapMove) -> Graph:
    verdict = validate_swap(g, s)
    if not verdict:
        raise InvalidMove(f"{s}: {verdict.value}")
    return Graph(g.n, tuple(_swapped_rows(g, s)), g.m)


def iter_swap_candidates(g: Graph) -> Iterator[SwapMove]:
    """Every (u, x, v, y) passing ``check_swap_shape``, in lexicographic order."""
    degs = g.degrees()
    rows = g.rows
    for u in range(g.n):
        for x in g.neighbors(u):
            for v in range(g.n):
                if v == u or v == x or degs[u] < degs[v] or rows[v] >> x & 1:
                    continue
                for y in g.neighbors(v):
                    if y == u or y == x or degs[y] < degs[x] or rows[u] >> y & 1:
                        continue
                    yield SwapMove(u, x, v, y)


def to_edge_list_text(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{a} {b}" for a, b in edges]
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parse the ``n m`` header plus ``a b`` lines format."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge-list input")
    try:
        n, m = (int(t) for t in lines[0].split())
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"unparseable edge list: {exc}") from None
    if any(len(e) != 2 for e in edges):
        raise GraphFormatError("every edge line needs exactly two indices")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)
