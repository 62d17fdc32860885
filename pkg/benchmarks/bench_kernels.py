"""Compare the compiled search kernels against the pure-Python fallback.

The fallback is selected by the PATTERNKIT_NO_NUMBA environment variable,
which patternkit._kernels reads at import time, so each path runs in its own
subprocess.  Run from the repository root:

    python3 benchmarks/bench_kernels.py

Compilation time is excluded by a warm-up call before timing starts; both
paths run the identical seeded workload and must produce identical results
(the worker prints a checksum that the driver compares).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time
import zlib


def _workload(seed: int, realizer_runs: int, avoiding_runs: int):
    import numpy as np

    from patternkit._kernels import (
        USING_NUMBA,
        lex_least_realizer,
        max_avoiding_elems,
        pattern_arrays,
    )
    from patternkit.core import Pattern

    rng = random.Random(seed)

    def coloring_matrix(window: int):
        m = np.zeros((window, window), dtype=np.uint8)
        for x in range(window):
            for y in range(x + 1, window):
                m[x, y] = m[y, x] = rng.randint(0, 1)
        return m

    def pattern(size: int):
        bits = tuple(rng.randint(0, 1) for _ in range(size * (size - 1) // 2))
        return pattern_arrays(Pattern(size, bits))[0]

    checksum = 0

    # warm-up triggers JIT compilation (or is a cheap no-op on the fallback)
    warm = coloring_matrix(8)
    lex_least_realizer(warm, np.arange(8), pattern(3))
    max_avoiding_elems(warm, np.arange(8), pattern(3))

    t0 = time.perf_counter()
    for _ in range(realizer_runs):
        window = rng.randint(20, 32)
        m = coloring_matrix(window)
        pm = pattern(rng.randint(3, 5))
        hit = lex_least_realizer(m, np.arange(window), pm)
        checksum = zlib.crc32(repr(hit).encode(), checksum)
    realizer_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(avoiding_runs):
        window = rng.randint(14, 18)
        m = coloring_matrix(window)
        pm = pattern(3)
        out = max_avoiding_elems(m, np.arange(window), pm)
        checksum = zlib.crc32(repr(out).encode(), checksum)
    avoiding_s = time.perf_counter() - t0

    return {
        "numba": USING_NUMBA,
        "realizer_s": realizer_s,
        "avoiding_s": avoiding_s,
        "checksum": checksum,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--realizer-runs", type=int, default=2000)
    parser.add_argument("--avoiding-runs", type=int, default=200)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(_workload(args.seed, args.realizer_runs,
                                   args.avoiding_runs)))
        return 0

    results = {}
    for label, no_numba in (("numba", ""), ("fallback", "1")):
        env = dict(os.environ, PATTERNKIT_NO_NUMBA=no_numba)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--seed", str(args.seed),
             "--realizer-runs", str(args.realizer_runs),
             "--avoiding-runs", str(args.avoiding_runs)],
            env=env, capture_output=True, text=True, check=True)
        results[label] = json.loads(proc.stdout)

    if results["numba"]["checksum"] != results["fallback"]["checksum"]:
        print("ERROR: the two paths produced different results", file=sys.stderr)
        return 1
    if not results["numba"]["numba"]:
        print("note: numba unavailable; both rows use the fallback",
              file=sys.stderr)

    print(f"{'kernel':<24}{'runs':>8}{'numba':>12}{'fallback':>12}{'speedup':>10}")
    for kernel, key, runs in (
        ("lex_least_realizer", "realizer_s", args.realizer_runs),
        ("max_avoiding_elems", "avoiding_s", args.avoiding_runs),
    ):
        a = results["numba"][key]
        b = results["fallback"][key]
        speed = b / a if a > 0 else float("inf")
        print(f"{kernel:<24}{runs:>8}{a:>11.3f}s{b:>11.3f}s{speed:>9.1f}x")
    print("checksums match; identical outputs on both paths")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
