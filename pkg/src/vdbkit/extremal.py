"""Minimizer construction, structural certificates and swap descent."""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .errors import Infeasible, InvalidMove, NotConnected, RetriesExhausted
from .graph import (
    Graph,
    SwapMove,
    _swapped_rows,
    cyclomatic_number,
    degree_profile,
    edge_class_counts,
    from_edge_list,
    is_chemical,
    is_connected,
    iter_swap_candidates,
    reach,
    validate_swap,
)
from .weights import WeightFunction, check_hypotheses, closed_form_min, degree_weight, ti_value


def construct_minimizer(n: int, k: int) -> Graph:
    """One graph with the extremal class counts for (n, k).

    Start from the Moebius ladder on 2(k-1) vertices (K4 for k = 3), drop the
    rung 0 -- (k-1), and join its two ends by a path through the remaining
    n - 2k + 2 vertices.
    """
    check_hypotheses(n, k)
    t = k - 1
    edges = [(i, (i + 1) % (2 * t)) for i in range(2 * t)]
    edges += [(i, i + t) for i in range(1, t)]
    path = [0, *range(2 * t, n), t]
    edges += list(zip(path, path[1:]))
    return from_edge_list(n, edges)


@dataclass
class ExtremalCertificate:
    n: int
    k: int
    degree_set_ok: bool
    m22: int
    m23: int
    m33: int
    counts_ok: bool
    connected_ok: bool
    chemical_ok: bool
    ti_matches_closed_form: dict[str, bool] = field(default_factory=dict)
    ti_values: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.degree_set_ok and self.counts_ok and self.connected_ok
                and self.chemical_ok and all(self.ti_matches_closed_form.values()))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d


def check_certificate(g: Graph, weights: Iterable[WeightFunction] = (), rel_tol: float = 1e-9) -> ExtremalCertificate:
    if not is_connected(g):
        raise NotConnected("certificates apply to connected graphs")
    n = g.n
    k = cyclomatic_number(g)
    prof = degree_profile(g)
    cls = edge_class_counts(g)
    m22, m23, m33 = cls[2, 2], cls[2, 3], cls[3, 3]
    others = any(p not in ((2, 2), (2, 3), (3, 3)) and c for p, c in cls.counts.items())
    counts_ok = (not others and m23 == 2 and m22 == n - 2 * k + 1 and m33 == 3 * k - 4)
    cert = ExtremalCertificate(
        n=n, k=k,
        degree_set_ok=prof.degree_set == {2, 3},
        m22=m22, m23=m23, m33=m33,
        counts_ok=counts_ok,
        connected_ok=True,
        chemical_ok=is_chemical(g),
    )
    for w in weights:
        value = ti_value(g, w)
        cert.ti_values[w.label()] = value
        try:
            target = closed_form_min(n, k, w)
        except ValueError:
            cert.ti_matches_closed_form[w.label()] = False
            continue
        cert.ti_matches_closed_form[w.label()] = math.isclose(value, target, rel_tol=rel_tol)
    return cert


def _local_delta(degs: list[int], s: SwapMove, w: WeightFunction) -> float:
    du, dx, dv, dy = degs[s.u], degs[s.x], degs[s.v], degs[s.y]
    return (degree_weight(w, du, dy) + degree_weight(w, dv, dx)
            - degree_weight(w, du, dx) - degree_weight(w, dv, dy))


def swap_delta(g: Graph, s: SwapMove, w: WeightFunction) -> float:
    """TI(G*) - TI(G) from the four edges the swap touches."""
    verdict = validate_swap(g, s)
    if not verdict:
        raise InvalidMove(f"{s}: {verdict.value}")
    return _local_delta(g.degrees(), s, w)


@dataclass(frozen=True)
class TraceStep:
    step: int
    move: tuple[int, int, int, int] | None
    delta: float
    ti: float

    def to_json(self) -> str:
        return json.dumps({"step": self.step, "move": list(self.move) if self.move else None,
                           "delta": self.delta, "ti": self.ti})


def best_valid_move(g: Graph, w: WeightFunction, eps: float = 1e-9) -> tuple[SwapMove, float] | None:
    """Most negative valid swap (ties: smallest (u, x, v, y)); None if none beats -eps."""
    degs = g.degrees()
    scored = []
    for s in iter_swap_candidates(g):
        d = _local_delta(degs, s, w)
        if d < -eps:
            scored.append((d, s))
    scored.sort()
    full = (1 << g.n) - 1
    for d, s in scored:
        if reach(g, 0, _swapped_rows(g, s)) == full:
            return s, d
    return None


def greedy_descent(g: Graph, w: WeightFunction, eps: float = 1e-9,
                   max_steps: int = 100_000) -> tuple[Graph, list[TraceStep]]:
    """Steepest descent over valid swaps until no move improves by more than eps."""
    if not is_connected(g):
        raise NotConnected("descent starts from a connected graph")
    ti = ti_value(g, w)
    trace = [TraceStep(0, None, 0.0, ti)]
    for step in range(1, max_steps + 1):
        found = best_valid_move(g, w, eps)
        if found is None:
            break
        s, d = found
        g = Graph(g.n, tuple(_swapped_rows(g, s)), g.m)
        ti = ti_value(g, w)
        trace.append(TraceStep(step, tuple(s), d, ti))
    return g, trace


def trace_is_monotone(trace: list[TraceStep], tol: float = 1e-12) -> bool:
    return all(b.ti <= a.ti + tol for a, b in zip(trace, trace[1:]))


def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = next(i for i in range(n) if degree[i] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [i for i in range(n) if degree[i] == 1]
    edges.append((u, w))
    return edges


def random_k_cyclic(n: int, k: int, seed: int, chemical: bool = False,
                    max_tries: int = 10_000) -> Graph:
    """Random spanning tree (Pruefer code) plus k extra edges, seeded."""
    if n < 3 or k < 0:
        raise Infeasible("random_k_cyclic needs n >= 3 and k >= 0")
    m = n + k - 1
    if m > n * (n - 1) // 2:
        raise Infeasible(f"no simple graph on {n} vertices has {m} edges")
    if chemical and 2 * m > 4 * n:
        raise Infeasible(f"no chemical graph on {n} vertices has {m} edges")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = set(_prufer_tree(n, rng))
        while len(edges) < m:
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                edges.add((min(a, b), max(a, b)))
        g = from_edge_list(n, sorted(edges))
        if not chemical or is_chemical(g):
            return g
    raise RetriesExhausted(f"no chemical sample after {max_tries} tries")
