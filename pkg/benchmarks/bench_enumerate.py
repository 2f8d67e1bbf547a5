"""Time the compiled and pure-Python enumeration kernels on the same searches.

    python3 benchmarks/bench_enumerate.py
    python3 benchmarks/bench_enumerate.py --case 9 11 4 0 sorted --repeat 3
"""

import argparse
import statistics
import time

from vdbkit import kernel
from vdbkit.oracle import candidate_edges

# (n, m, max_degree, min_degree, degree_sorted)
DEFAULT_CASES = [
    (6, 8, 5, 0, False),
    (7, 9, 6, 0, False),
    (8, 10, 3, 2, False),
    (9, 11, 4, 0, True),
    (8, 10, 4, 0, False),
    (9, 11, 4, 2, False),
    (10, 12, 4, 0, True),
]


def run_case(name, n, m, maxd, mind, srt, repeat):
    fn = kernel.get_kernel(name)
    edges = candidate_edges(n)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        visited, nodes, entries = fn(n, m, maxd, mind, edges, (), srt)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), visited, nodes, len(entries)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--case", nargs=5, action="append", metavar=("N", "M", "MAXD", "MIND", "MODE"),
                    help="MODE is 'sorted' or 'labeled'; may be repeated")
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--skip-python-above", type=int, default=5_000_000,
                    help="skip the Python kernel when the compiled run visits more nodes than this")
    args = ap.parse_args()

    cases = DEFAULT_CASES
    if args.case:
        cases = [(int(n), int(m), int(a), int(b), mode == "sorted") for n, m, a, b, mode in args.case]

    print(f"kernels available: {sorted(kernel.KERNELS)}; import-time choice: {kernel.BACKEND}")
    print(f"{'case':<28}{'leaves':>12}{'nodes':>14}{'compiled s':>12}{'python s':>11}{'speedup':>9}")
    for n, m, maxd, mind, srt in cases:
        label = f"n={n} m={m} D<={maxd} d>={mind} {'sorted' if srt else 'labeled'}"
        if "compiled" not in kernel.KERNELS:
            tp, visited, nodes, _ = run_case("python", n, m, maxd, mind, srt, args.repeat)
            print(f"{label:<28}{visited:>12}{nodes:>14}{'-':>12}{tp:>11.3f}{'-':>9}")
            continue
        tc, visited, nodes, profiles = run_case("compiled", n, m, maxd, mind, srt, args.repeat)
        if nodes > args.skip_python_above:
            print(f"{label:<28}{visited:>12}{nodes:>14}{tc:>12.3f}{'skipped':>11}{'-':>9}")
            continue
        tp, visited_py, _, profiles_py = run_case("python", n, m, maxd, mind, srt, args.repeat)
        assert (visited_py, profiles_py) == (visited, profiles), "kernels disagree"
        print(f"{label:<28}{visited:>12}{nodes:>14}{tc:>12.3f}{tp:>11.3f}{tp / tc:>8.0f}x")


if __name__ == "__main__":
    main()
