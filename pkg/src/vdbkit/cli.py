"""Command-line front end.

Exit codes: 0 success / Pass, 1 verification Fail, 2 input error,
3 domain or hypothesis error.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
from pathlib import Path

from . import __version__
from .errors import (
    DomainError,
    GraphInputError,
    HypothesisViolated,
    Infeasible,
    IndexOverflow,
    NotConnected,
    ParameterError,
    VDBError,
)
from .extremal import (
    check_certificate,
    construct_minimizer,
    greedy_descent,
    random_k_cyclic,
    trace_is_monotone,
)
from .graph import Graph, cyclomatic_number, from_edge_list_text, is_connected, to_edge_list_text
from .graph6 import decode_graph6, encode_graph6
from .oracle import CLASSES, verify_almost_regular_minimizers, verify_structural_lemmas, verify_theorem
from .property_lab import GridSpec, Verdict, check_property_pstar, sweep_parameters
from .weights import CLI_NAMES, check_hypotheses, closed_form_min, compute_exponential_ti, ti_value, weight_from_cli

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_graph(path: str, fmt: str) -> Graph:
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise InputError(str(exc)) from None
    if fmt == "auto":
        suffix = Path(path).suffix.lower()
        if suffix in (".edges", ".txt", ".el"):
            fmt = "edges"
        elif suffix in (".g6", ".graph6"):
            fmt = "graph6"
        else:
            first = data.strip().split(b"\n", 1)[0]
            fmt = "edges" if len(first.split()) == 2 else "graph6"
    try:
        if fmt == "edges":
            return from_edge_list_text(data.decode("ascii"))
        lines = [ln for ln in data.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise InputError(f"expected exactly one graph6 line, found {len(lines)}")
        return decode_graph6(lines[0])
    except (GraphInputError, UnicodeDecodeError) as exc:
        raise InputError(str(exc)) from None


def _weight(args):
    # bad flag combinations are input errors, caught before any computation
    try:
        return weight_from_cli(args.index, alpha=args.alpha, p=args.p)
    except ParameterError as exc:
        raise InputError(str(exc)) from None


def _emit(args, payload: dict, summary: str, timing_keys=()) -> None:
    """Summary to stdout; JSON to --out (without timing fields) or stdout with --json."""
    if getattr(args, "out", None):
        clean = {k: v for k, v in payload.items() if k not in timing_keys}
        text = json.dumps(clean, indent=2 if args.pretty else None, sort_keys=True)
        Path(args.out).write_text(text + "\n")
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2 if args.pretty else None, sort_keys=True))
    else:
        print(summary)


def cmd_compute(args) -> int:
    g = _read_graph(args.input, args.format)
    w = _weight(args)
    ti = ti_value(g, w)
    payload = {
        "index": args.index,
        "params": w.identity(),
        "n": g.n,
        "m": g.m,
        "k": cyclomatic_number(g) if is_connected(g) else None,
        "ti": ti,
    }
    if args.exponential:
        payload["exponential_ti"] = compute_exponential_ti(g, w).value
    summary = f"{w.label()}: TI = {ti:.12g} (n={g.n}, m={g.m}, k={payload['k']})"
    _emit(args, payload, summary)
    return EXIT_OK


def cmd_property(args) -> int:
    grid = GridSpec(args.dmax, args.step, args.tol)
    rep = check_property_pstar(_weight(args), grid)
    lines = [f"P:  {rep.p_holds.value}", f"P*: {rep.pstar_holds.value} (grid-certified, dmax={grid.dmax})"]
    if rep.counterexample:
        c = rep.counterexample
        lines.append(f"counterexample: {c.condition} at {c.args} (value {c.violation:.6g})")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return EXIT_OK if rep.pstar_holds is Verdict.PASS else EXIT_FAIL


def cmd_sweep(args) -> int:
    family = CLI_NAMES.get(args.index, args.index)
    grid = GridSpec(args.dmax, args.step, args.tol)
    res = sweep_parameters(family, args.lo, args.hi, args.by, grid)
    payload = {"family": family, "parameter": res.parameter,
               "certified_ranges": res.certified_ranges,
               "samples": json.loads(res.to_json())}
    summary = (f"{family}: {sum(r.pstar_holds is Verdict.PASS for _, r in res.samples)}/"
               f"{len(res.samples)} samples pass P*; certified ranges {res.certified_ranges}")
    _emit(args, payload, summary)
    return EXIT_OK if res.all_pass else EXIT_FAIL


def cmd_construct(args) -> int:
    w = _weight(args)
    g = construct_minimizer(args.n, args.k)
    text = to_edge_list_text(g) if args.format == "edges" else encode_graph6(g).decode() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    cert = check_certificate(g, [w])
    classes = {"2,2": cert.m22, "2,3": cert.m23, "3,3": cert.m33}
    status = "Pass" if cert.passed else "Fail"
    print(f"certificate {status}: n={cert.n} k={cert.k} classes {classes}", file=sys.stderr)
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    w = _weight(args)
    check_hypotheses(args.n, args.k)
    rep = verify_theorem(args.n, args.k, w, args.cls, workers=args.workers,
                         checkpoint=args.checkpoint, symmetry=args.symmetry)
    payload = rep.to_dict()
    summary = (f"{args.cls} n={args.n} k={args.k} {rep.weight.label()}: min={rep.result.min_value:.12g} "
               f"closed form={rep.closed_form:.12g} match={rep.match} profiles={rep.profiles_match} "
               f"-> {'Pass' if rep.passed else 'Fail'}")
    _emit(args, payload, summary, timing_keys=("elapsed_seconds", "backend", "search_nodes"))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_descend(args) -> int:
    w = _weight(args)
    if args.from_minimizer:
        starts = [construct_minimizer(args.n, args.k)]
    else:
        starts = [random_k_cyclic(args.n, args.k, args.seed + i, chemical=args.chemical)
                  for i in range(args.seeds)]
    try:
        bound = closed_form_min(args.n, args.k, w)
    except HypothesisViolated:
        bound = None
    finals, runs = [], []
    trace_dir = Path(args.trace_dir) if args.trace_dir else None
    if trace_dir:
        trace_dir.mkdir(parents=True, exist_ok=True)
    monotone = True
    for i, g in enumerate(starts):
        final, trace = greedy_descent(g, w)
        ok = trace_is_monotone(trace)
        monotone &= ok
        finals.append(trace[-1].ti)
        runs.append({"start": encode_graph6(g).decode(), "steps": len(trace) - 1,
                     "initial_ti": trace[0].ti, "final_ti": trace[-1].ti, "monotone": ok})
        if trace_dir:
            (trace_dir / f"trace_{i:04d}.jsonl").write_text("".join(s.to_json() + "\n" for s in trace))
    above = None if bound is None else all(f >= bound - 1e-9 for f in finals)
    payload = {"n": args.n, "k": args.k, "weight": w.identity(), "runs": runs,
               "min_final": min(finals), "median_final": statistics.median(finals),
               "closed_form": bound, "all_monotone": monotone, "all_at_or_above_closed_form": above}
    summary = (f"{len(runs)} descents: min final {min(finals):.10g}, median {statistics.median(finals):.10g}, "
               f"closed form {bound if bound is None else format(bound, '.10g')}, monotone={monotone}")
    _emit(args, payload, summary)
    return EXIT_OK if monotone and above is not False else EXIT_FAIL


def cmd_lemmas(args) -> int:
    rep = verify_structural_lemmas(args.n, args.k, symmetry=args.symmetry)
    payload = {"n": rep.n, "k": rep.k, "graphs_checked": rep.graphs_checked,
               "profiles_checked": rep.profiles_checked, "violations": rep.violations, "pass": rep.passed}
    _emit(args, payload, f"n={rep.n} k={rep.k}: {rep.graphs_checked} graphs with delta>=2, Delta>=4; "
                         f"{len(rep.violations)} violations")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_almost_regular(args) -> int:
    try:
        weights = [weight_from_cli(spec.split(":")[0], **_param_kw(spec)) for spec in args.weights]
    except (ParameterError, ValueError) as exc:
        raise InputError(str(exc)) from None
    rep = verify_almost_regular_minimizers(args.n_max, weights, symmetry=args.symmetry)
    payload = {"n_max": rep.n_max, "rows": rep.rows, "violations": rep.violations,
               "skipped_weights": rep.skipped_weights, "pass": rep.passed}
    _emit(args, payload, f"n <= {rep.n_max}: {len(rep.rows)} (n, m, weight) cases, "
                         f"{len(rep.violations)} violations")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _param_kw(spec: str) -> dict:
    """``gsc:0.5`` -> alpha=0.5, ``psombor:1.5`` -> p=1.5."""
    if ":" not in spec:
        return {}
    name, value = spec.split(":", 1)
    return {"p": float(value)} if name == "psombor" else {"alpha": float(value)}


def _index_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--index", required=required, default=None if required else "sombor",
                   help="sombor, gsombor, psombor, gsc, grandic or exp:<inner>")
    p.add_argument("--alpha", type=float, help="exponent for gsombor, gsc, grandic")
    p.add_argument("--p", type=float, help="order for psombor")


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print JSON instead of a summary")
    p.add_argument("--pretty", action="store_true", help="indent JSON")


def _grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dmax", type=int, default=50)
    p.add_argument("--step", type=float, default=0.05, help="real-grid step")
    p.add_argument("--tol", type=float, default=1e-12, help="violation tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vdbkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"vdbkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate an index on a graph")
    p.add_argument("input", help="graph file (.g6 or .edges), or - for stdin")
    p.add_argument("--format", choices=("auto", "graph6", "edges"), default="auto")
    p.add_argument("--exponential", action="store_true", help="also report the exponential index")
    _index_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("property", help="grid-certify properties P and P*")
    _index_args(p)
    _grid_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_property)

    p = sub.add_parser("sweep", help="P* reports across a parameter range")
    p.add_argument("--index", required=True, help="gsombor, psombor, gsc or grandic")
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--by", type=float, required=True, help="parameter step")
    _grid_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("construct", help="write a minimizer for (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("graph6", "edges"), default="graph6")
    p.add_argument("--out")
    _index_args(p, required=False)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exhaustive check of the extremal theorem")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=CLASSES, default="chemical")
    p.add_argument("--symmetry", choices=("degree_sorted", "labeled"), default="degree_sorted")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--checkpoint", help="resumable cursor file")
    _index_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("descend", help="greedy swap descent from random starts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seeds", type=int, default=10, help="number of random starts")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--chemical", action="store_true")
    p.add_argument("--from-minimizer", action="store_true", help="start from the constructed minimizer")
    p.add_argument("--trace-dir", help="write one JSON-lines trace per start here")
    _index_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("lemmas", help="check n2 >= 4 and m22 >= 1 exhaustively")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--symmetry", choices=("degree_sorted", "labeled"), default="labeled")
    _output_args(p)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("almost-regular", help="check Delta - delta <= 1 for minimizers, all small graphs")
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--weights", nargs="+", default=["sombor", "gsc:0.5", "psombor:1.5"])
    p.add_argument("--symmetry", choices=("degree_sorted", "labeled"), default="labeled")
    _output_args(p)
    p.set_defaults(func=cmd_almost_regular)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, ParameterError, HypothesisViolated, Infeasible, IndexOverflow,
            NotConnected) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except VDBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
