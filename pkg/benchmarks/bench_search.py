"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_search.py [--repeat 3]

Each instance is solved by both kernels; the permutations must agree.
"""

import argparse
import time

from antimagic import HAVE_COMPILED, search_label
from antimagic.generators import caterpillar, cycle, path, random_caterpillar


def instances():
    """(name, graph, ops) triples that the first-found search settles quickly.

    Sum-mode search on large caterpillars can take exponential time to find
    its lexicographically first labeling, so those runs use products only.
    """
    for m in (8, 10, 12):
        yield f"path-{m}", path(m), "+*"
        yield f"cycle-{m}", cycle(m), "+*"
    yield "caterpillar-9", caterpillar(4, {1: 2, 2: 2, 3: 1}), "+*"
    yield "random-cat-54", random_caterpillar(0, 30, 70), "+*"
    for seed in range(1, 6):
        g = random_caterpillar(seed, 30, 70)
        yield f"random-cat-{g.m}", g, "*"


def timed(g, op, use_compiled, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        lab = search_label(g, range(1, g.m + 1), op, mode="backtrack", use_compiled=use_compiled)
        best = min(best, time.perf_counter() - t0)
    return best, lab


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_COMPILED:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    print(f"{'instance':<20}{'op':>3}{'m':>5}{'pure [ms]':>12}{'compiled [ms]':>15}{'speedup':>9}")
    for name, g, ops in instances():
        for op in ops:
            tp, lp = timed(g, op, False, args.repeat)
            tc, lc = timed(g, op, True, args.repeat)
            assert lp.labels == lc.labels, name
            print(f"{name:<20}{op:>3}{g.m:>5}{tp * 1e3:>12.2f}{tc * 1e3:>15.2f}{tp / tc:>9.1f}")


if __name__ == "__main__":
    main()
