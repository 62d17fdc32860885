"""Seeded randomized and exhaustive suites checking the algebraic and
combinatorial laws the rest of the package relies on.

Each suite returns a SuiteResult with the instances tried and any
counterexamples found; the CLI batch runner and the test suite both drive
these functions, so a law violation shows up identically in both places.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import (
    FiniteColoring,
    PartialColoring,
    Pattern,
    avoids,
    dual,
    flip,
)
from .algebra import (
    classify,
    is_divergent,
    is_i_merging,
    is_irreducible,
    join,
)
from .classifier import enumerate_patterns
from .stabilize import fg_avoids


@dataclass(frozen=True)
class SuiteResult:
    name: str
    runs: int
    counterexamples: tuple[str, ...] = ()
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.skipped


def _random_pattern(rng: random.Random, max_size: int, min_size: int = 2) -> Pattern:
    size = rng.randint(min_size, max_size)
    npairs = size * (size - 1) // 2
    return Pattern(size, tuple(rng.randint(0, 1) for _ in range(npairs)))


def _random_coloring(rng: random.Random, window: int) -> FiniteColoring:
    m = np.zeros((window, window), dtype=np.uint8)
    for x in range(window):
        for y in range(x + 1, window):
            m[x, y] = m[y, x] = rng.randint(0, 1)
    return FiniteColoring(window, m)


def suite_join_associative(rng: random.Random, count: int = 10_000) -> SuiteResult:
    """(p ⊎ q) ⊎ r equals p ⊎ (q ⊎ r) for random triples."""
    bad = []
    for _ in range(count):
        p, q, r = (_random_pattern(rng, 5) for _ in range(3))
        if join(join(p, q), r) != join(p, join(q, r)):
            bad.append(f"{p} {q} {r}")
    return SuiteResult("join-associative", count, tuple(bad[:5]), skipped=count == 0)


def suite_join_divergence(rng: random.Random, count: int = 10_000) -> SuiteResult:
    """If either operand is divergent, so is the join."""
    bad = []
    for _ in range(count):
        p, q = _random_pattern(rng, 5), _random_pattern(rng, 5)
        if (is_divergent(p) or is_divergent(q)) and not is_divergent(join(p, q)):
            bad.append(f"{p} {q}")
    return SuiteResult("join-divergence", count, tuple(bad[:5]), skipped=count == 0)


def suite_default_merging(max_size: int = 6) -> SuiteResult:
    """Every pattern merges for the complement of its first limit color and
    for its last limit color; exhaustive over small sizes."""
    bad, runs = [], 0
    for size in range(2, max_size + 1):
        for p in enumerate_patterns(size):
            runs += 1
            if not is_i_merging(p, 1 - p(0, size - 1)):
                bad.append(f"{p} color {1 - p(0, size - 1)}")
            if not is_i_merging(p, p(size - 2, size - 1)):
                bad.append(f"{p} color {p(size - 2, size - 1)}")
    return SuiteResult("default-merging", runs, tuple(bad[:5]))


def suite_convergent_merging(max_size: int = 6) -> SuiteResult:
    """Convergent patterns of size >= 3 are merging; exhaustive."""
    bad, runs = [], 0
    for size in range(3, max_size + 1):
        for p in enumerate_patterns(size):
            runs += 1
            if not is_divergent(p) and not (is_i_merging(p, 0) and is_i_merging(p, 1)):
                bad.append(str(p))
    return SuiteResult("convergent-merging", runs, tuple(bad[:5]))


def suite_irreducibility_criterion(max_size: int = 5) -> SuiteResult:
    """Definitional and split-criterion irreducibility agree; exhaustive."""
    bad, runs = [], 0
    for size in range(1, max_size + 1):
        for p in enumerate_patterns(size):
            runs += 1
            if is_irreducible(p, "definitional") != is_irreducible(p, "criterion"):
                bad.append(str(p))
    return SuiteResult("irreducibility-criterion", runs, tuple(bad[:5]))


def suite_duality(rng: random.Random, count: int = 2_000) -> SuiteResult:
    """Avoidance is invariant under simultaneously flipping coloring and pattern."""
    bad = []
    for _ in range(count):
        window = rng.randint(3, 9)
        f = _random_coloring(rng, window)
        p = _random_pattern(rng, 4)
        H = [x for x in range(window) if rng.random() < 0.7]
        if avoids(f, H, p) != avoids(flip(f), H, dual(p)):
            bad.append(f"{p} H={H}")
    return SuiteResult("duality", count, tuple(bad[:5]), skipped=count == 0)


def _stabilized_instance(rng: random.Random, max_window: int = 10,
                         max_pattern: int = 4):
    """Random (f, g, E, F, p) with F stabilizing E under witness g."""
    window = rng.randint(4, max_window)
    f = _random_coloring(rng, window)
    split = rng.randint(1, window - 1)
    E = sorted(x for x in range(split) if rng.random() < 0.7)
    F = sorted(y for y in range(split, window) if rng.random() < 0.7)
    g = PartialColoring({x: rng.randint(0, 1) for x in range(window)})
    m = f.matrix.copy()
    for x in E:
        for y in F:
            m[x, y] = m[y, x] = g(x)
    return FiniteColoring(window, m), g, E, F, _random_pattern(rng, max_pattern)


def suite_stabilized_avoidance_equivalence(rng: random.Random,
                                           count: int = 10_000) -> SuiteResult:
    """With F stabilizing E under g: E is witnessed-avoiding for p exactly
    when E plus any single element of F still avoids p."""
    bad, runs = [], 0
    while runs < count:
        f, g, E, F, p = _stabilized_instance(rng)
        if not F:
            continue
        runs += 1
        lhs = fg_avoids(f, g, E, p)
        rhs = all(avoids(f, sorted(set(E) | {y}), p) for y in F)
        if lhs != rhs:
            bad.append(f"{p} E={E} F={F}")
    return SuiteResult("stabilized-avoidance-equivalence", runs, tuple(bad[:5]),
                       skipped=count == 0)


def suite_avoidance_union(rng: random.Random, count: int = 10_000) -> SuiteResult:
    """Irreducible p: if F stabilizes E under g and both sides are
    witnessed-avoiding, so is their union."""
    bad, runs = [], 0
    while runs < count:
        f, g, E, F, p = _stabilized_instance(rng)
        if p.size < 3 or not is_irreducible(p):
            continue
        if not (fg_avoids(f, g, E, p) and fg_avoids(f, g, F, p)):
            continue
        runs += 1
        if not fg_avoids(f, g, sorted(set(E) | set(F)), p):
            bad.append(f"{p} E={E} F={F}")
    return SuiteResult("avoidance-union", runs, tuple(bad[:5]), skipped=count == 0)


def _merging_pool(max_size: int = 4) -> dict[int, list[Pattern]]:
    pool: dict[int, list[Pattern]] = {0: [], 1: []}
    for size in range(3, max_size + 1):
        for p in enumerate_patterns(size):
            fl = classify(p)
            if fl.divergent:
                for i in (0, 1):
                    if (fl.merging0 if i == 0 else fl.merging1):
                        pool[i].append(p)
    return pool


def suite_merging_union(rng: random.Random, count: int = 10_000) -> SuiteResult:
    """Divergent i-merging p: a g-homogeneous E below an F homogeneous for the
    opposite color, with constant cross colors and a p-avoiding union, yields
    a witnessed-avoiding union."""
    pool = _merging_pool()
    bad, runs = [], 0
    while runs < count:
        i = rng.randint(0, 1)
        p = rng.choice(pool[i])
        window = rng.randint(4, 10)
        f0 = _random_coloring(rng, window)
        split = rng.randint(1, window - 1)
        E = sorted(x for x in range(split) if rng.random() < 0.6)
        F = sorted(y for y in range(split, window) if rng.random() < 0.6)
        gE = rng.randint(0, 1)
        g = PartialColoring({**{x: gE for x in E}, **{y: 1 - i for y in F}})
        cross = rng.randint(0, 1)
        m = f0.matrix.copy()
        for x in E:
            for y in F:
                m[x, y] = m[y, x] = cross
        f = FiniteColoring(window, m)
        union = sorted(set(E) | set(F))
        if not avoids(f, union, p):
            continue
        runs += 1
        if not fg_avoids(f, g, union, p):
            bad.append(f"{p} i={i} E={E} F={F} cross={cross}")
    return SuiteResult("merging-union", runs, tuple(bad[:5]), skipped=count == 0)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "join-associative": lambda rng, count: suite_join_associative(rng, count),
    "join-divergence": lambda rng, count: suite_join_divergence(rng, count),
    "default-merging": lambda rng, count: suite_default_merging(),
    "convergent-merging": lambda rng, count: suite_convergent_merging(),
    "irreducibility-criterion": lambda rng, count: suite_irreducibility_criterion(),
    "duality": lambda rng, count: suite_duality(rng, min(count, 2_000)),
    "stabilized-avoidance-equivalence":
        lambda rng, count: suite_stabilized_avoidance_equivalence(rng, count),
    "avoidance-union": lambda rng, count: suite_avoidance_union(rng, count),
    "merging-union": lambda rng, count: suite_merging_union(rng, count),
}


def run_suites(seed: int = 0, count: int = 10_000,
               names: Optional[list[str]] = None) -> list[SuiteResult]:
    chosen = names if names is not None else list(SUITES)
    results = []
    for name in chosen:
        rng = random.Random(seed ^ zlib.crc32(name.encode()))
        results.append(SUITES[name](rng, count))
    return results
