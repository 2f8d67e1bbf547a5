"""Exhaustive enumeration oracle.

Every connected simple graph with ``n`` vertices and ``m`` edges (optionally
under a degree cap and/or floor) is visited by the branch-and-prune kernel,
which records the histogram of edge-class profiles.  Minimum index values,
minimizing profiles and lemma predicates are then read off that histogram,
so one enumeration answers every weight at once.

``symmetry="labeled"`` walks all labeled graphs.  ``symmetry="degree_sorted"``
only keeps labelings whose degree sequence is non-increasing in the vertex
index; every isomorphism class has such a labeling, so minima and profile
sets are unchanged while the leaf count drops by orders of magnitude.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from . import kernel
from .errors import CapExceeded, HypothesisViolated, Infeasible, ParameterError
from .graph import EdgeClassCounts, Graph, from_edge_list
from .graph6 import encode_graph6
from .property_lab import GridSpec, Verdict, check_property_pstar
from .weights import WeightFunction, check_hypotheses, closed_form_min, extremal_counts, ti_from_counts

MAX_N = 16
CHECKPOINT_VERSION = 1
SLACK = 1e-9


@dataclass(frozen=True)
class EnumerationSpec:
    n: int
    m: int
    max_degree: int | None = None
    min_degree: int | None = None
    weight: WeightFunction | None = None
    collect: str = "min"  # "min" or "histogram"
    symmetry: str = "labeled"  # "labeled" or "degree_sorted"

    def __post_init__(self):
        n, m = self.n, self.m
        if n > MAX_N:
            raise CapExceeded(f"enumeration is capped at n = {MAX_N}")
        if n < 1:
            raise Infeasible("need at least one vertex")
        if self.collect not in ("min", "histogram"):
            raise ParameterError(f"unknown collect mode {self.collect!r}")
        if self.symmetry not in ("labeled", "degree_sorted"):
            raise ParameterError(f"unknown symmetry mode {self.symmetry!r}")
        if self.collect == "min" and self.weight is None:
            raise ParameterError("collect='min' needs a weight")
        if m > n * (n - 1) // 2:
            raise Infeasible(f"m={m} exceeds C({n},2)")
        if m < n - 1:
            raise Infeasible(f"no connected graph on {n} vertices has {m} edges")
        if self.max_degree is not None and 2 * m > n * self.max_degree:
            raise Infeasible(f"2m={2 * m} exceeds n * max_degree")
        if self.min_degree is not None and 2 * m < n * self.min_degree:
            raise Infeasible(f"2m={2 * m} is below n * min_degree")

    def identity(self) -> dict[str, Any]:
        return {
            "n": self.n, "m": self.m,
            "max_degree": self.max_degree, "min_degree": self.min_degree,
            "weight": self.weight.identity() if self.weight else None,
            "symmetry": self.symmetry,
        }


@dataclass(frozen=True)
class ProfileStat:
    """One edge-class profile with the number of enumerated graphs carrying it."""

    counts: EdgeClassCounts
    graphs: int
    example: Graph

    @property
    def degree_counts(self) -> dict[int, int]:
        return self.counts.degree_profile().counts

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree_profile": {str(d): c for d, c in self.degree_counts.items()},
            "edge_classes": {f"{i},{j}": c for (i, j), c in self.counts.key()},
            "graphs": self.graphs,
            "example_graph6": encode_graph6(self.example).decode(),
        }


@dataclass
class SearchResult:
    spec: EnumerationSpec
    min_value: float | None
    minimizer_profiles: list[ProfileStat]
    graphs_visited: int
    example_minimizer: str | None
    lemma_violations: list[dict[str, Any]] = field(default_factory=list)
    histogram: list[ProfileStat] = field(default_factory=list)
    nodes: int = 0
    backend: str = ""
    elapsed_seconds: float = 0.0

    def minimum_for(self, w: WeightFunction) -> tuple[float, list[ProfileStat]]:
        return minimize_histogram(self.histogram, w)

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = {
            "spec": self.spec.identity(),
            "min_value": self.min_value,
            "minimizer_profiles": [p.to_dict() for p in self.minimizer_profiles],
            "example_minimizer_graph6": self.example_minimizer,
            "graphs_visited": self.graphs_visited,
            "lemma_violations": self.lemma_violations,
        }
        if timing:
            # run diagnostics: node counts depend on how the tree was split
            d["search_nodes"] = self.nodes
            d["elapsed_seconds"] = self.elapsed_seconds
            d["backend"] = self.backend
        return d


def candidate_edges(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


_PAIRS = [(i, j) for j in range(1, MAX_N) for i in range(1, j + 1)]  # kernel key order


def _decode_key(key: bytes) -> EdgeClassCounts:
    return EdgeClassCounts({_PAIRS[idx]: c for idx, c in enumerate(key) if c})


def _mask_graph(n: int, edges: list[tuple[int, int]], mask: int) -> Graph:
    return from_edge_list(n, [e for q, e in enumerate(edges) if mask >> q & 1])


def minimize_histogram(hist: Iterable[ProfileStat], w: WeightFunction,
                       slack: float = SLACK) -> tuple[float, list[ProfileStat]]:
    scored = [(ti_from_counts(p.counts, w), p) for p in hist]
    if not scored:
        return math.nan, []
    best = min(v for v, _ in scored)
    return best, [p for v, p in scored if v <= best + slack]


def _run_subtree(args):
    name, n, m, maxd, mind, edges, prefix, sorted_ = args
    return kernel.get_kernel(name)(n, m, maxd, mind, edges, prefix, sorted_)


def _checkpoint_path(spec: EnumerationSpec, checkpoint: str | os.PathLike | None) -> Path | None:
    if checkpoint is not None:
        return Path(checkpoint)
    env = os.environ.get("VDB_CHECKPOINT_DIR")
    if not env:
        return None
    ident = dict(spec.identity())
    ident.pop("weight")
    tag = hashlib.sha1(json.dumps(ident, sort_keys=True).encode()).hexdigest()[:12]
    return Path(env) / f"enum-{spec.n}-{spec.m}-{tag}.json"


def _load_checkpoint(path: Path, ident: dict, depth: int) -> dict[int, tuple]:
    if not path.exists():
        return {}
    data = json.loads(path.read_text())
    if data.get("version") != CHECKPOINT_VERSION or data.get("spec") != ident or data.get("split_depth") != depth:
        raise ParameterError(f"checkpoint {path} belongs to a different run")
    return {int(k): (v["visited"], v["nodes"], [(bytes.fromhex(e[0]), e[1], int(e[2])) for e in v["entries"]])
            for k, v in data["done"].items()}


def _save_checkpoint(path: Path, ident: dict, depth: int, done: dict[int, tuple]) -> None:
    data = {
        "version": CHECKPOINT_VERSION,
        "spec": ident,
        "split_depth": depth,
        "done": {str(k): {"visited": v[0], "nodes": v[1],
                          "entries": [[key.hex(), cnt, str(mask)] for key, cnt, mask in v[2]]}
                 for k, v in sorted(done.items())},
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(data))
    os.replace(tmp, path)


def enumerate_min(spec: EnumerationSpec, workers: int = 1, backend: str | None = None,
                  checkpoint: str | os.PathLike | None = None,
                  split_depth: int | None = None) -> SearchResult:
    """Exhaustive search over the class described by ``spec``.

    With ``workers > 1`` or a checkpoint, the search tree is cut at the first
    ``split_depth`` candidate edges and the subtrees are run independently;
    results are merged in DFS order, so the output never depends on the
    worker count.
    """
    t0 = time.perf_counter()
    n, m = spec.n, spec.m
    edges = candidate_edges(n)
    maxd = spec.max_degree if spec.max_degree is not None else n - 1
    mind = spec.min_degree if spec.min_degree is not None else 0
    sorted_ = spec.symmetry == "degree_sorted"
    name = backend or kernel.BACKEND
    ckpt = _checkpoint_path(spec, checkpoint)
    if split_depth is None:
        split_depth = 6 if (workers > 1 or ckpt is not None) else 0
    split_depth = min(split_depth, len(edges))
    prefixes = list(itertools.product((1, 0), repeat=split_depth))
    jobs = [(name, n, m, maxd, mind, edges, p, sorted_) for p in prefixes]

    ident = dict(spec.identity())
    ident.pop("weight")
    ident["collect"] = "histogram"
    done = _load_checkpoint(ckpt, ident, split_depth) if ckpt else {}
    todo = [i for i in range(len(jobs)) if i not in done]

    if workers > 1 and len(todo) > 1:
        pool_cls = ThreadPoolExecutor if kernel.releases_gil(name) else ProcessPoolExecutor
        with pool_cls(max_workers=workers) as pool:
            for i, res in zip(todo, pool.map(_run_subtree, [jobs[i] for i in todo])):
                done[i] = res
                if ckpt:
                    _save_checkpoint(ckpt, ident, split_depth, done)
    else:
        for i in todo:
            done[i] = _run_subtree(jobs[i])
            if ckpt:
                _save_checkpoint(ckpt, ident, split_depth, done)

    visited = nodes = 0
    merged: dict[bytes, list] = {}
    for i in range(len(jobs)):
        v, nd, entries = done[i]
        visited += v
        nodes += nd
        for key, cnt, mask in entries:
            slot = merged.get(key)
            if slot is None:
                merged[key] = [cnt, mask]
            else:
                slot[0] += cnt
    hist = [ProfileStat(_decode_key(k), c, _mask_graph(n, edges, mask)) for k, (c, mask) in merged.items()]

    result = SearchResult(spec, None, [], visited, None, histogram=hist, nodes=nodes, backend=name)
    if spec.weight is not None and hist:
        result.min_value, result.minimizer_profiles = minimize_histogram(hist, spec.weight)
        exact = min(result.minimizer_profiles, key=lambda p: ti_from_counts(p.counts, spec.weight))
        result.example_minimizer = encode_graph6(exact.example).decode()
    if spec.collect != "histogram":
        result.histogram = []
    result.elapsed_seconds = time.perf_counter() - t0
    return result


# ---------------------------------------------------------------------------
# verifications


def _is_certified(w: WeightFunction, grid: GridSpec) -> bool:
    return check_property_pstar(w, grid).pstar_holds is Verdict.PASS


@dataclass
class AlmostRegularReport:
    n_max: int
    rows: list[dict[str, Any]]
    violations: list[dict[str, Any]]
    skipped_weights: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_almost_regular_minimizers(n_max: int, weights: list[WeightFunction],
                                     backend: str | None = None,
                                     symmetry: str = "labeled",
                                     grid: GridSpec = GridSpec()) -> AlmostRegularReport:
    """Check Delta - delta <= 1 on every minimizing profile for all n <= n_max, all m."""
    if n_max > 8:
        raise CapExceeded("the almost-regular sweep is capped at n_max = 8")
    skipped = [w.label() for w in weights if not _is_certified(w, grid)]
    active = [w for w in weights if w.label() not in skipped]
    rows, violations = [], []
    for n in range(1, n_max + 1):
        for m in range(max(n - 1, 0), n * (n - 1) // 2 + 1):
            res = enumerate_min(EnumerationSpec(n, m, collect="histogram", symmetry=symmetry),
                                backend=backend)
            for w in active:
                best, mins = minimize_histogram(res.histogram, w)
                spreads = [p.counts.degree_profile() for p in mins] if m else []
                gaps = [pr.max_degree - pr.min_degree for pr in spreads] or [0]
                row = {"n": n, "m": m, "weight": w.label(), "min_value": best,
                       "minimizer_profiles": len(mins), "max_gap": max(gaps),
                       "some_minimizer_almost_regular": min(gaps) <= 1}
                rows.append(row)
                for p, gap in zip(mins, gaps):
                    if gap > 1:
                        violations.append({**row, "profile": p.to_dict()})
    return AlmostRegularReport(n_max, rows, violations, skipped)


@dataclass
class LemmaReport:
    n: int
    k: int
    graphs_checked: int
    profiles_checked: int
    violations: list[dict[str, Any]]

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_structural_lemmas(n: int, k: int, backend: str | None = None,
                             symmetry: str = "labeled") -> LemmaReport:
    """n_2 >= 4 and m_{2,2} >= 1 for every k-cyclic graph with delta >= 2, Delta >= 4."""
    if k < 1 or n < 5 * (k - 1):
        raise HypothesisViolated(f"need n >= 5(k-1) with k >= 1; got n={n}, k={k}")
    m = n + k - 1
    try:
        res = enumerate_min(EnumerationSpec(n, m, min_degree=2, collect="histogram", symmetry=symmetry),
                            backend=backend)
    except Infeasible:
        return LemmaReport(n, k, 0, 0, [])
    graphs = profiles = 0
    violations = []
    for p in res.histogram:
        prof = p.counts.degree_profile()
        if prof.max_degree < 4:
            continue
        graphs += p.graphs
        profiles += 1
        failed = []
        if prof[2] < 4:
            failed.append("n2 >= 4")
        if p.counts[2, 2] < 1:
            failed.append("m22 >= 1")
        if failed:
            violations.append({"failed": failed, **p.to_dict()})
    return LemmaReport(n, k, graphs, profiles, violations)


CLASSES = ("chemical", "delta2", "all")


@dataclass
class TheoremReport:
    spec: EnumerationSpec
    weight: WeightFunction
    cls: str
    result: SearchResult
    closed_form: float
    match: bool
    profiles_match: bool

    @property
    def passed(self) -> bool:
        return self.match and self.profiles_match

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = self.result.to_dict(timing=timing)
        d.update({
            "class": self.cls,
            "weight": self.weight.identity(),
            "closed_form": self.closed_form,
            "match": self.match,
            "profiles_match": self.profiles_match,
            "pass": self.passed,
        })
        return d


def class_spec(n: int, k: int, cls: str, weight: WeightFunction | None = None,
               symmetry: str = "degree_sorted", collect: str = "min") -> EnumerationSpec:
    m = n + k - 1
    if cls == "chemical":
        return EnumerationSpec(n, m, max_degree=4, weight=weight, symmetry=symmetry, collect=collect)
    if cls == "delta2":
        # n - 1 vertices of degree >= 2 leave at most 2m - 2(n - 1) for the last one
        return EnumerationSpec(n, m, max_degree=2 * m - 2 * (n - 1), min_degree=2,
                               weight=weight, symmetry=symmetry, collect=collect)
    if cls == "all":
        return EnumerationSpec(n, m, weight=weight, symmetry=symmetry, collect=collect)
    raise ParameterError(f"unknown class {cls!r}; choose from {CLASSES}")


def theorem_report(spec: EnumerationSpec, res: SearchResult, w: WeightFunction, cls: str,
                   n: int, k: int) -> TheoremReport:
    target = closed_form_min(n, k, w)
    best, mins = minimize_histogram(res.histogram, w) if res.histogram else (res.min_value, res.minimizer_profiles)
    expected = tuple(sorted(extremal_counts(n, k).items()))
    profiles_ok = bool(mins) and all(p.counts.key() == expected for p in mins)
    if res.histogram:
        res = SearchResult(res.spec, best, mins, res.graphs_visited, None, nodes=res.nodes,
                           backend=res.backend, elapsed_seconds=res.elapsed_seconds,
                           histogram=res.histogram)
        exact = min(mins, key=lambda p: ti_from_counts(p.counts, w))
        res.example_minimizer = encode_graph6(exact.example).decode()
    return TheoremReport(spec, w, cls, res, target,
                         math.isclose(best, target, rel_tol=1e-9), profiles_ok)


def verify_theorem(n: int, k: int, weight: WeightFunction, cls: str = "chemical",
                   workers: int = 1, backend: str | None = None,
                   checkpoint: str | os.PathLike | None = None,
                   symmetry: str = "degree_sorted",
                   grid: GridSpec = GridSpec()) -> TheoremReport:
    """Exhaustive minimum over the class vs the closed form and extremal profile."""
    check_hypotheses(n, k)
    if not _is_certified(weight, grid):
        raise ParameterError(f"{weight.label()} is not P*-certified on the grid")
    spec = class_spec(n, k, cls, weight, symmetry)
    res = enumerate_min(spec, workers=workers, backend=backend, checkpoint=checkpoint)
    return theorem_report(spec, res, weight, cls, n, k)


def verify_theorem_many(n: int, k: int, weights: list[WeightFunction], cls: str = "chemical",
                        **kw) -> list[TheoremReport]:
    """One enumeration, one report per weight."""
    check_hypotheses(n, k)
    grid = kw.pop("grid", GridSpec())
    for w in weights:
        if not _is_certified(w, grid):
            raise ParameterError(f"{w.label()} is not P*-certified on the grid")
    spec = class_spec(n, k, cls, None, kw.pop("symmetry", "degree_sorted"), collect="histogram")
    res = enumerate_min(spec, **kw)
    return [theorem_report(spec, res, w, cls, n, k) for w in weights]
