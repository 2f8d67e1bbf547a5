"""Symmetric edge weights I(x, y) and the degree-based indices built on them.

A :class:`WeightFunction` evaluates on Python floats or numpy arrays alike,
so the property checks can probe whole grids at once.  Index values on graphs
only ever need integer degrees and go through a cached lookup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .errors import DomainError, HypothesisViolated, IndexOverflow, ParameterError
from .graph import EdgeClassCounts, Graph, edge_class_counts

FAMILIES = (
    "sombor",
    "general_sombor",
    "p_sombor",
    "general_sum_connectivity",
    "general_randic",
    "exponential",
    "custom",
)

# short names used on the command line
CLI_NAMES = {
    "sombor": "sombor",
    "gsombor": "general_sombor",
    "psombor": "p_sombor",
    "gsc": "general_sum_connectivity",
    "grandic": "general_randic",
}


@dataclass(frozen=True)
class WeightFunction:
    family: str
    params: tuple[tuple[str, float], ...] = ()
    inner: WeightFunction | None = None
    table: tuple[tuple[float, ...], ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown weight family {self.family!r}")
        p = dict(self.params)
        if self.family in ("general_sombor", "general_sum_connectivity", "general_randic"):
            if p.get("alpha", 0.0) == 0.0 or not math.isfinite(p["alpha"]):
                raise ParameterError(f"{self.family} needs a finite alpha != 0")
        elif self.family == "p_sombor":
            if p.get("p", 0.0) == 0.0 or not math.isfinite(p["p"]):
                raise ParameterError("p_sombor needs a finite p != 0")
        elif self.family == "exponential":
            if self.inner is None:
                raise ParameterError("exponential weight needs an inner weight")
        elif self.family == "custom":
            if not self.table:
                raise ParameterError("custom weight needs a table")

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    @property
    def continuous(self) -> bool:
        """False when the weight is only defined on integer degrees."""
        if self.family == "custom":
            return False
        if self.family == "exponential":
            return self.inner.continuous
        return True

    @property
    def dmax(self) -> float:
        if self.family == "custom":
            return len(self.table)
        if self.family == "exponential":
            return self.inner.dmax
        return math.inf

    def identity(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family}
        out.update(self.params)
        if self.inner is not None:
            out["inner"] = self.inner.identity()
        if self.table is not None:
            out["table"] = [list(r) for r in self.table]
        return out

    def label(self) -> str:
        if self.family == "exponential":
            return f"exp({self.inner.label()})"
        args = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.family}({args})" if args else self.family

    def __call__(self, x, y):
        """Unchecked evaluation; scalars give floats, arrays give arrays."""
        f = self.family
        if f == "sombor":
            return np.sqrt(x * x + y * y) if _is_array(x, y) else math.sqrt(x * x + y * y)
        if f == "general_sombor":
            return (x * x + y * y) ** self.param("alpha")
        if f == "p_sombor":
            p = self.param("p")
            return (x**p + y**p) ** (1.0 / p)
        if f == "general_sum_connectivity":
            return (x + y) ** self.param("alpha")
        if f == "general_randic":
            return (x * y) ** self.param("alpha")
        if f == "exponential":
            inner = self.inner(x, y)
            if _is_array(x, y):
                with np.errstate(over="raise"):
                    try:
                        return np.exp(inner)
                    except FloatingPointError:
                        raise IndexOverflow(f"exp of {self.inner.label()} overflows") from None
            try:
                return math.exp(inner)
            except OverflowError:
                raise IndexOverflow(f"exp({inner}) overflows a double") from None
        # custom
        if _is_array(x, y):
            t = np.asarray(self.table)
            xi = np.asarray(x).astype(int)
            yi = np.asarray(y).astype(int)
            return t[xi - 1, yi - 1]
        return self.table[int(x) - 1][int(y) - 1]


def _is_array(x, y) -> bool:
    return isinstance(x, np.ndarray) or isinstance(y, np.ndarray)


def sombor() -> WeightFunction:
    return WeightFunction("sombor")


def general_sombor(alpha: float) -> WeightFunction:
    return WeightFunction("general_sombor", (("alpha", float(alpha)),))


def p_sombor(p: float) -> WeightFunction:
    return WeightFunction("p_sombor", (("p", float(p)),))


def general_sum_connectivity(alpha: float) -> WeightFunction:
    return WeightFunction("general_sum_connectivity", (("alpha", float(alpha)),))


def general_randic(alpha: float) -> WeightFunction:
    return WeightFunction("general_randic", (("alpha", float(alpha)),))


def exponential_of(inner: WeightFunction) -> WeightFunction:
    return WeightFunction("exponential", inner=inner)


def custom(table) -> WeightFunction:
    """Weight given as a dense symmetric table over integer degrees 1..len(table)."""
    rows = tuple(tuple(float(v) for v in row) for row in table)
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        raise ParameterError("custom table must be square and non-empty")
    for i in range(d):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ParameterError(f"custom table not symmetric at ({i + 1}, {j + 1})")
    return WeightFunction("custom", table=rows)


def from_identity(ident: dict[str, Any]) -> WeightFunction:
    fam = ident["family"]
    if fam == "exponential":
        return exponential_of(from_identity(ident["inner"]))
    if fam == "custom":
        return custom(ident["table"])
    params = tuple((k, float(v)) for k, v in ident.items() if k != "family")
    return WeightFunction(fam, params)


def eval_weight(w: WeightFunction, x: float, y: float) -> float:
    """I(x, y) with domain checks."""
    if not (x >= 1 and y >= 1):
        raise DomainError(f"weights are defined for x, y >= 1, got ({x}, {y})")
    if not w.continuous:
        if x != int(x) or y != int(y):
            raise DomainError(f"{w.label()} is defined on integer degrees only")
        if max(x, y) > w.dmax:
            raise DomainError(f"{w.label()} is tabulated up to degree {w.dmax}")
    return float(w(x, y))


@lru_cache(maxsize=65536)
def degree_weight(w: WeightFunction, i: int, j: int) -> float:
    """Cached I(i, j) for integer degrees."""
    return eval_weight(w, i, j)


@dataclass(frozen=True)
class IndexValue:
    value: float
    index_id: dict[str, Any]
    graph_digest: str

    def __float__(self) -> float:
        return self.value


def ti_value(g: Graph, w: WeightFunction) -> float:
    """Sum of I(d_u, d_v) over the edges of ``g``; 0 for an edgeless graph."""
    degs = g.degrees()
    return math.fsum(degree_weight(w, degs[a], degs[b]) for a, b in g.edges())


def ti_from_counts(counts: EdgeClassCounts | dict, w: WeightFunction) -> float:
    """Same index from the class counts: sum of m_{i,j} I(i, j)."""
    items = counts.counts.items() if isinstance(counts, EdgeClassCounts) else counts.items()
    return math.fsum(c * degree_weight(w, i, j) for (i, j), c in items)


def compute_ti(g: Graph, w: WeightFunction) -> IndexValue:
    return IndexValue(ti_value(g, w), w.identity(), g.digest())


def compute_ti_by_classes(g: Graph, w: WeightFunction) -> IndexValue:
    return IndexValue(ti_from_counts(edge_class_counts(g), w), w.identity(), g.digest())


def compute_exponential_ti(g: Graph, w: WeightFunction) -> IndexValue:
    return compute_ti(g, exponential_of(w))


def check_hypotheses(n: int, k: int) -> None:
    if k < 3 or n < 5 * (k - 1):
        raise HypothesisViolated(f"need k >= 3 and n >= 5(k-1); got n={n}, k={k}")


def extremal_counts(n: int, k: int) -> dict[tuple[int, int], int]:
    """Class counts m_{2,2}, m_{2,3}, m_{3,3} of the minimizers for (n, k)."""
    check_hypotheses(n, k)
    return {(2, 2): n - 2 * k + 1, (2, 3): 2, (3, 3): 3 * k - 4}


def closed_form_min(n: int, k: int, w: WeightFunction) -> float:
    """2 I(2,3) + (n - 2k + 1) I(2,2) + (3k - 4) I(3,3)."""
    check_hypotheses(n, k)
    return (
        2 * eval_weight(w, 2, 3)
        + (n - 2 * k + 1) * eval_weight(w, 2, 2)
        + (3 * k - 4) * eval_weight(w, 3, 3)
    )


def weight_from_cli(name: str, alpha: float | None = None, p: float | None = None) -> WeightFunction:
    """Build a weight from a CLI index name such as ``gsc`` or ``exp:sombor``."""
    if name.startswith("exp:"):
        return exponential_of(weight_from_cli(name[4:], alpha=alpha, p=p))
    fam = CLI_NAMES.get(name)
    if fam is None:
        raise ParameterError(f"unknown index {name!r}; choose from {sorted(CLI_NAMES)} or exp:<inner>")
    if fam == "sombor":
        if alpha is not None or p is not None:
            raise ParameterError("sombor takes no parameters")
        return sombor()
    if fam == "p_sombor":
        if p is None or alpha is not None:
            raise ParameterError("psombor needs --p (and no --alpha)")
        return p_sombor(p)
    if alpha is None or p is not None:
        raise ParameterError(f"{name} needs --alpha (and no --p)")
    return WeightFunction(fam, (("alpha", float(alpha)),))
