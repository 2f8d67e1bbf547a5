"""Grid certification of properties P and P* for an edge weight.

Property P asks that I(x, y) increase in each argument and that
h(x) = I(a, x) - I(b, x) be non-increasing in x whenever a >= b.  P* adds
H(a, b) > 0 for all integers a > b + 1 >= 2, with

    H(a, b) = a [I(a, a) - I(a - 1, a)] - b [I(b + 1, b) - I(b, b)].

Everything here is a finite check on a grid: integer degrees 1..dmax plus a
real grid of step ``continuous_step`` on [1, dmax].  A Pass is a grid
certificate, never a proof.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .errors import DomainError, IndexOverflow, ParameterError
from .weights import WeightFunction

# parameter ranges on which the corresponding corollaries assert P*
PROVEN_RANGES = {
    "general_sombor": (0.5, 1.0, True, False),
    "p_sombor": (1.0, 2.0, False, True),
    "general_sum_connectivity": (0.0, 1.0, False, False),
}
PARAM_NAME = {
    "general_sombor": "alpha",
    "p_sombor": "p",
    "general_sum_connectivity": "alpha",
    "general_randic": "alpha",
}


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GridSpec:
    dmax: int = 50
    continuous_step: float = 0.05
    strictness_tolerance: float = 1e-12

    def __post_init__(self):
        if self.dmax < 4:
            raise ParameterError("dmax must be at least 4 to cover chemical degrees")
        if not self.continuous_step > 0:
            raise ParameterError("continuous_step must be positive")
        if not self.strictness_tolerance >= 0:
            raise ParameterError("strictness_tolerance must be non-negative")


@dataclass(frozen=True)
class Counterexample:
    """One concrete violation; ``violation`` is re-derivable from ``args``."""

    condition: str
    args: dict[str, float]
    violation: float

    def reproduce(self, w: WeightFunction) -> float:
        return violation_amount(w, self.condition, self.args)


def violation_amount(w: WeightFunction, condition: str, args: dict[str, float]) -> float:
    """Signed quantity whose sign decides ``condition`` at ``args``.

    increasing:    I(x2, y) - I(x, y)                       (violated if < -eps)
    h_decreasing:  [I(a,x2)-I(b,x2)] - [I(a,x)-I(b,x)]      (violated if > eps)
    H_positive:    H(a, b)                                  (violated if <= eps)
    strict_probe:  phi(x2) - phi(x), phi(t) = I(t,y)-I(t,y-z) (violated if >= -eps)
    """
    f = lambda s, t: float(w(s, t))  # noqa: E731
    a = args
    if condition == "increasing":
        return f(a["x2"], a["y"]) - f(a["x"], a["y"])
    if condition == "h_decreasing":
        return (f(a["a"], a["x2"]) - f(a["b"], a["x2"])) - (f(a["a"], a["x"]) - f(a["b"], a["x"]))
    if condition == "H_positive":
        return compute_H(w, int(a["a"]), int(a["b"]))
    if condition == "strict_probe":
        y, z = a["y"], a["z"]
        return (f(a["x2"], y) - f(a["x2"], y - z)) - (f(a["x"], y) - f(a["x"], y - z))
    raise ValueError(f"unknown condition {condition!r}")


@dataclass(frozen=True)
class PCheck:
    verdict: Verdict
    counterexample: Counterexample | None
    increase_margin: float  # smallest forward difference seen
    h_margin: float  # largest change of h seen (<= 0 when P holds)
    points: int


@dataclass
class PropertyReport:
    weight_id: dict[str, Any]
    p_holds: Verdict
    pstar_holds: Verdict
    counterexample: Counterexample | None
    checked_domain: GridSpec
    certification: str = "grid"
    increase_margin: float | None = None
    h_margin: float | None = None
    min_H: float | None = None
    min_H_at: tuple[int, int] | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["p_holds"] = self.p_holds.value
        d["pstar_holds"] = self.pstar_holds.value
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _grid(w: WeightFunction, grid: GridSpec) -> tuple[np.ndarray, int]:
    dmax = int(min(grid.dmax, w.dmax))
    ints = np.arange(1, dmax + 1, dtype=float)
    if not w.continuous:
        return ints, dmax
    count = int(math.floor((dmax - 1) / grid.continuous_step + 1e-9)) + 1
    real = np.round(1.0 + grid.continuous_step * np.arange(count), 12)
    return np.unique(np.concatenate([ints, real])), dmax


def compute_H(w: WeightFunction, a: int, b: int) -> float:
    """H(a, b); defined for integers with a > b + 1 >= 2."""
    if a != int(a) or b != int(b):
        raise DomainError("H is defined on integer arguments")
    if b < 1 or a <= b + 1:
        raise DomainError(f"H(a, b) needs a > b + 1 >= 2, got a={a}, b={b}")
    f = lambda s, t: float(w(s, t))  # noqa: E731
    return a * (f(a, a) - f(a - 1, a)) - b * (f(b + 1, b) - f(b, b))


def check_property_p(w: WeightFunction, grid: GridSpec = GridSpec()) -> PCheck:
    """Monotonicity of I and of h on the grid (non-strict, within epsilon)."""
    eps = grid.strictness_tolerance
    xs, dmax = _grid(w, grid)
    try:
        with np.errstate(over="raise", invalid="raise"):
            V = np.asarray(w(xs[:, None], xs[None, :]), dtype=float)
    except (IndexOverflow, FloatingPointError):
        return PCheck(Verdict.INCONCLUSIVE, None, math.nan, math.nan, len(xs))

    inc = np.diff(V, axis=0)  # inc[i, j] = I(x_{i+1}, y_j) - I(x_i, y_j)
    inc_y = np.diff(V, axis=1)
    margin = float(min(inc.min(), inc_y.min()))
    bad = np.argwhere(inc < -eps)
    if bad.size:
        i, j = bad[0]
        args = {"x": float(xs[i]), "x2": float(xs[i + 1]), "y": float(xs[j])}
        cex = Counterexample("increasing", args, violation_amount(w, "increasing", args))
        return PCheck(Verdict.FAIL, cex, margin, math.nan, len(xs))
    bad = np.argwhere(inc_y < -eps)
    if bad.size:
        i, j = bad[0]
        # symmetric weight: report as increase in the first argument
        args = {"x": float(xs[j]), "x2": float(xs[j + 1]), "y": float(xs[i])}
        cex = Counterexample("increasing", args, violation_amount(w, "increasing", args))
        return PCheck(Verdict.FAIL, cex, margin, math.nan, len(xs))

    # change of h(x) = I(a,x) - I(b,x) between neighbouring x, for a, b adjacent on the grid
    mixed = np.diff(inc, axis=1)
    h_margin = float(mixed.max()) if mixed.size else 0.0
    bad = np.argwhere(mixed > eps)
    if bad.size:
        i, j = bad[0]
        args = {"a": float(xs[i + 1]), "b": float(xs[i]), "x": float(xs[j]), "x2": float(xs[j + 1])}
        cex = Counterexample("h_decreasing", args, violation_amount(w, "h_decreasing", args))
        return PCheck(Verdict.FAIL, cex, margin, h_margin, len(xs))

    # every integer pair a > b, not only neighbours, on integer x
    Vi = np.asarray(w(np.arange(1, dmax + 1, dtype=float)[:, None],
                      np.arange(1, dmax + 1, dtype=float)[None, :]), dtype=float)
    D = np.diff(Vi, axis=1)  # D[a-1, x-1] = I(a, x+1) - I(a, x)
    runmin = np.minimum.accumulate(D, axis=0)
    excess = D[1:] - runmin[:-1]  # row r is a = r + 2 against its best b < a
    h_margin = max(h_margin, float(excess.max()) if excess.size else 0.0)
    bad = np.argwhere(excess > eps)
    if bad.size:
        r, col = bad[0]
        a = r + 2
        b = int(np.argmin(D[: a - 1, col])) + 1
        args = {"a": float(a), "b": float(b), "x": float(col + 1), "x2": float(col + 2)}
        cex = Counterexample("h_decreasing", args, violation_amount(w, "h_decreasing", args))
        return PCheck(Verdict.FAIL, cex, margin, h_margin, len(xs))
    return PCheck(Verdict.PASS, None, margin, h_margin, len(xs))


def check_property_pstar(w: WeightFunction, grid: GridSpec = GridSpec()) -> PropertyReport:
    pc = check_property_p(w, grid)
    report = PropertyReport(
        weight_id=w.identity(),
        p_holds=pc.verdict,
        pstar_holds=Verdict.INCONCLUSIVE,
        counterexample=pc.counterexample,
        checked_domain=grid,
        increase_margin=pc.increase_margin,
        h_margin=pc.h_margin,
    )
    if not w.continuous:
        report.notes.append("integer grid only: weight is tabulated on integer degrees")
    if w.dmax < grid.dmax:
        report.notes.append(f"grid truncated to the table's degree range 1..{int(w.dmax)}")
    if pc.verdict is not Verdict.PASS:
        report.pstar_holds = pc.verdict
        return report

    eps = grid.strictness_tolerance
    dmax = int(min(grid.dmax, w.dmax))
    best = (math.inf, None)
    try:
        for a in range(3, dmax + 1):
            for b in range(1, a - 1):
                h = compute_H(w, a, b)
                if h < best[0]:
                    best = (h, (a, b))
                if not h > eps:
                    report.pstar_holds = Verdict.FAIL
                    report.counterexample = Counterexample(
                        "H_positive", {"a": float(a), "b": float(b)}, h)
                    report.min_H, report.min_H_at = best
                    return report
    except IndexOverflow:
        report.notes.append("H evaluation overflowed")
        return report
    report.min_H, report.min_H_at = best
    report.pstar_holds = Verdict.PASS
    return report


@dataclass(frozen=True)
class ProbeResult:
    verdict: Verdict
    margin: float  # largest successive difference of phi; < 0 means strictly decreasing
    counterexample: Counterexample | None


def difference_probe_decreasing(w: WeightFunction, y: float, z: float,
                                grid: GridSpec = GridSpec()) -> ProbeResult:
    """Strict decrease of x -> I(x, y) - I(x, y - z) on the x grid."""
    if not (y >= z > 0):
        raise DomainError(f"probe needs y >= z > 0, got y={y}, z={z}")
    if y - z < 1:
        raise DomainError("probe needs y - z >= 1 so every argument stays in the domain")
    eps = grid.strictness_tolerance
    xs, _ = _grid(w, grid)
    phi = np.asarray(w(xs, np.full_like(xs, y)) - w(xs, np.full_like(xs, y - z)), dtype=float)
    d = np.diff(phi)
    margin = float(d.max())
    bad = np.flatnonzero(d >= -eps)
    if bad.size:
        i = int(bad[0])
        args = {"x": float(xs[i]), "x2": float(xs[i + 1]), "y": float(y), "z": float(z)}
        cex = Counterexample("strict_probe", args, violation_amount(w, "strict_probe", args))
        return ProbeResult(Verdict.FAIL, margin, cex)
    return ProbeResult(Verdict.PASS, margin, None)


def in_proven_range(family: str, value: float) -> bool:
    if family not in PROVEN_RANGES:
        return False
    lo, hi, lo_closed, hi_closed = PROVEN_RANGES[family]
    above = value >= lo if lo_closed else value > lo
    below = value <= hi if hi_closed else value < hi
    return above and below


@dataclass
class SweepResult:
    family: str
    parameter: str
    samples: list[tuple[float, PropertyReport]]
    certified_ranges: list[tuple[float, float]]

    @property
    def all_pass(self) -> bool:
        return all(r.pstar_holds is Verdict.PASS for _, r in self.samples)

    def to_json(self, **kw) -> str:
        return json.dumps(
            [{"family": self.family, self.parameter: v, **r.to_dict()} for v, r in self.samples],
            **kw,
        )


def sweep_parameters(family: str, lo: float, hi: float, step: float,
                     grid: GridSpec = GridSpec()) -> SweepResult:
    """P* reports for ``family`` at lo, lo + step, ... up to hi (inclusive)."""
    if family not in PARAM_NAME:
        raise ParameterError(f"{family!r} has no sweepable parameter")
    if not lo < hi or not step > 0:
        raise ParameterError("sweep needs lo < hi and step > 0")
    name = PARAM_NAME[family]
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    samples = []
    for i in range(count):
        value = round(lo + i * step, 10)
        try:
            w = WeightFunction(family, ((name, value),))
        except ParameterError as exc:
            rep = PropertyReport({"family": family, name: value}, Verdict.INCONCLUSIVE,
                                 Verdict.INCONCLUSIVE, None, grid, notes=[str(exc)])
            samples.append((value, rep))
            continue
        rep = check_property_pstar(w, grid)
        if family in PROVEN_RANGES and not in_proven_range(family, value):
            rep.notes.append("outside the parameter range with a published P* proof; no claim either way")
        samples.append((value, rep))

    ranges: list[tuple[float, float]] = []
    start = None
    for idx, (value, rep) in enumerate(samples):
        if rep.pstar_holds is Verdict.PASS:
            if start is None:
                start = value
            end = value
        elif start is not None:
            ranges.append((start, end))
            start = None
    if start is not None:
        ranges.append((start, end))
    return SweepResult(family, name, samples, ranges)
