"""Finite-horizon simulators for the three stage-based priority constructions,
driven by table-backed mock oracles, plus trace verification.

All oracle behaviour is data: the tables model enumeration approximations,
prefix functionals and bi-array functionals.  Nothing here performs real
relativized computation; the builders only replay the stage logic against the
supplied tables, and the verifier re-checks the structural invariants of the
resulting traces and colorings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .core import (
    FiniteColoring,
    Pattern,
    PatternError,
    StableColoring,
    minus,
    restrict,
)

# ---------------------------------------------------------------------------
# requirement indexing


def pattern_index(p: Pattern) -> int:
    """Rank of p among all patterns of size >= 2, ordered by (size, bits)."""
    if p.size < 2:
        raise PatternError("only patterns of size >= 2 are indexed")
    idx = 0
    for l in range(2, p.size):
        idx += 2 ** (l * (l - 1) // 2)
    return idx + int("".join(str(b) for b in p.bits), 2)


def index_pattern(idx: int) -> Pattern:
    if idx < 0:
        raise PatternError("pattern index must be nonnegative")
    l = 2
    while True:
        block = 2 ** (l * (l - 1) // 2)
        if idx < block:
            npairs = l * (l - 1) // 2
            bits = tuple(int(b) for b in format(idx, f"0{npairs}b"))
            return Pattern(l, bits)
        idx -= block
        l += 1


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(k: int) -> tuple[int, int]:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    b = k - w * (w + 1) // 2
    return w - b, b


def h_bound(k: int) -> int:
    """Total restraint capacity of all requirements of priority below k."""
    total = 0
    for kk in range(k):
        a, _e = cantor_unpair(kk)
        total += index_pattern(a).size - 1
    return total


# ---------------------------------------------------------------------------
# mock oracle types


@dataclass(frozen=True)
class ApproxOracle:
    """Stage-indexed enumeration approximations, one set per (index, stage).

    Entries are (e, from_stage, elements); at stage s the latest entry for e
    with from_stage <= s is in effect, clipped to [0, s).  Indices with no
    entry enumerate nothing.  Flickering membership is expressed by stacking
    entries.
    """

    entries: tuple[tuple[int, int, frozenset[int]], ...]

    def query(self, e: int, s: int) -> frozenset[int]:
        best: Optional[tuple[int, frozenset[int]]] = None
        for ee, s0, elems in self.entries:
            if ee == e and s0 <= s and (best is None or s0 > best[0]):
                best = (s0, elems)
        if best is None:
            return frozenset()
        return frozenset(x for x in best[1] if 0 <= x < s)

    def indices(self) -> list[int]:
        return sorted({e for e, _, _ in self.entries})


def age(o: ApproxOracle, e: int, x: int, s: int) -> Optional[int]:
    """Length of the membership run of x ending at stage s, if any."""
    if x not in o.query(e, s):
        return None
    t = 0
    while t < s and x in o.query(e, s - t - 1):
        t += 1
    return t


@dataclass(frozen=True)
class PrefixFunctional:
    """Prefix-monotone enumeration: output(sigma, s) is the union of the
    entry outputs whose prefix is an initial segment of sigma and whose
    stage has been reached.  Monotone in both arguments by construction."""

    entries: tuple[tuple[str, int, frozenset[int]], ...]

    def __post_init__(self):
        for tau, _s0, _out in self.entries:
            if tau.strip("01"):
                raise PatternError(f"entry prefix {tau!r} is not a binary string")

    def output(self, sigma: str, s: int) -> frozenset[int]:
        out: set[int] = set()
        for tau, s0, elems in self.entries:
            if s0 <= s and len(tau) <= s and sigma.startswith(tau):
                out |= elems
        return frozenset(out)

    def qualifying_prefixes(self, s: int, targets: frozenset[int]) -> list[str]:
        """Entry prefixes already producing an element of targets at stage s."""
        return sorted({
            tau for tau, s0, elems in self.entries
            if s0 <= s and len(tau) <= s and elems & targets
        })


def prefix_free_cover(prefixes: Iterable[str]) -> list[str]:
    """Minimal antichain with the same union of cylinders."""
    ps = sorted(set(prefixes), key=lambda t: (len(t), t))
    cover: list[str] = []
    for tau in ps:
        if not any(tau.startswith(rho) for rho in cover):
            cover.append(tau)
    return cover


def cover_measure(prefixes: Iterable[str]) -> Fraction:
    """Exact measure of the union of the cylinders."""
    return sum((Fraction(1, 2 ** len(t)) for t in prefix_free_cover(prefixes)),
               Fraction(0))


def requires_attention_measure(state: Sequence[frozenset[int]],
                               fn: PrefixFunctional, m: int, s: int,
                               p: Pattern) -> bool:
    """Measure of oracles producing an element of [m, s] exceeds 1 - 1/(2|p|)."""
    if len(state) >= p.size:
        return False
    targets = frozenset(range(m, s + 1))
    return cover_measure(fn.qualifying_prefixes(s, targets)) > 1 - Fraction(1, 2 * p.size)


def joint_meeting_measure(fn: PrefixFunctional, s: int,
                          target_sets: Sequence[frozenset[int]]) -> Fraction:
    """Exact measure of oracles whose output meets every target set."""
    quals = [fn.qualifying_prefixes(s, t) for t in target_sets]
    if any(not q for q in quals):
        return Fraction(0)
    maxlen = max(len(tau) for q in quals for tau in q)

    def walk(sigma: str) -> Fraction:
        if all(any(sigma.startswith(tau) for tau in q) for q in quals):
            return Fraction(1)
        if len(sigma) >= maxlen:
            return Fraction(0)
        return (walk(sigma + "0") + walk(sigma + "1")) / 2

    return walk("")


@dataclass(frozen=True)
class BiArrayFunctional:
    """Bi-array of finite sets with convergence stages.

    primary entries (n, stage, E) require min E > n; secondary entries
    (n, m, stage, F) require min F > m.
    """

    primary: tuple[tuple[int, int, frozenset[int]], ...] = ()
    secondary: tuple[tuple[int, int, int, frozenset[int]], ...] = ()

    def __post_init__(self):
        for n, _s, E in self.primary:
            if E and min(E) <= n:
                raise PatternError(f"primary entry for {n} must have min > {n}")
        for _n, m, _s, F in self.secondary:
            if F and min(F) <= m:
                raise PatternError(f"secondary entry for (.,{m}) must have min > {m}")

    def E(self, n: int, s: int) -> Optional[frozenset[int]]:
        for nn, s0, elems in self.primary:
            if nn == n and s0 <= s:
                return elems
        return None

    def F(self, n: int, m: int, s: int) -> Optional[frozenset[int]]:
        for nn, mm, s0, elems in self.secondary:
            if nn == n and mm == m and s0 <= s:
                return elems
        return None

    def primary_args(self) -> list[int]:
        return sorted({n for n, _, _ in self.primary})

    def secondary_args(self) -> list[tuple[int, int]]:
        return sorted({(n, m) for n, m, _, _ in self.secondary})


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceEvent:
    stage: int
    kind: str           # act / restrain / release / attention / injury / marker / commit / color
    requirement: str
    detail: tuple[tuple[str, str], ...] = ()

    def get(self, key: str) -> str:
        for k, v in self.detail:
            if k == key:
                return v
        raise KeyError(key)


def _detail(**kwargs) -> tuple[tuple[str, str], ...]:
    return tuple((k, str(v)) for k, v in kwargs.items())


@dataclass
class ConstructionTrace:
    builder: str        # dnc / measure / stable2dim
    stages: int
    events: tuple[TraceEvent, ...]
    final: dict = field(default_factory=dict)
    aux: dict = field(default_factory=dict)   # oracle references for re-checks


# ---------------------------------------------------------------------------
# no-injury builder against enumeration approximations


def oldest_blocks(o: ApproxOracle, e: int, s: int, p: Pattern, f_so_far,
                  count: int, _ages: Optional[dict[int, int]] = None
                  ) -> Optional[list[list[int]]]:
    """Up to `count` pairwise disjoint realizers of the truncation of p inside
    the stage-s enumeration, picked greedily by decreasing minimum age with
    ties broken toward the least minimum element; None when fewer exist."""
    if count < 1:
        raise PatternError("block count must be >= 1")
    elems = sorted(o.query(e, s))
    pm_ = minus(p)
    if count * pm_.size > len(elems):
        return None
    mat = f_so_far.matrix if isinstance(f_so_far, FiniteColoring) else np.asarray(f_so_far)
    (pmat,) = _kernels.pattern_arrays(pm_)
    ages = _ages if _ages is not None else {x: age(o, e, x, s) for x in elems}
    blocks: list[list[int]] = []
    remaining = list(elems)
    while len(blocks) < count:
        hit = None
        for t in sorted({ages[x] for x in remaining}, reverse=True):
            sub = np.asarray([x for x in remaining if ages[x] >= t], dtype=np.int64)
            hit = _kernels.lex_least_realizer(mat, sub, pmat)
            if hit is not None:
                break
        if hit is None:
            return None
        blocks.append(hit)
        for x in hit:
            remaining.remove(x)
    return blocks


def build_dnc_coloring(o: ApproxOracle, stages: int
                       ) -> tuple[FiniteColoring, ConstructionTrace]:
    """Stage loop: restraints are released at every stage start; each
    requirement with priority ordinal below the stage picks an unrestrained
    oldest block realizing its truncation and colors the block toward the
    stage top; unassigned pairs stay 0."""
    if stages < 1:
        raise PatternError("need at least one stage")
    matrix = np.zeros((stages, stages), dtype=np.uint8)
    events: list[TraceEvent] = []
    nonempty = set(o.indices())
    # incremental ages per oracle index, updated once per stage
    ages: dict[int, dict[int, int]] = {e: {} for e in nonempty}
    prev_sets: dict[int, frozenset[int]] = {e: frozenset() for e in nonempty}

    for s in range(stages):
        for e in nonempty:
            cur = o.query(e, s)
            ages[e] = {x: (ages[e].get(x, -1) + 1 if x in prev_sets[e] else 0)
                       for x in cur}
            prev_sets[e] = cur
        restrained: set[int] = set()
        for k in range(s):
            a, e = cantor_unpair(k)
            if e not in nonempty or not prev_sets[e]:
                continue
            p = index_pattern(a)
            count = h_bound(k) + 1
            blocks = oldest_blocks(o, e, s, p, matrix, count, _ages=ages[e])
            if blocks is None:
                continue
            pick = next((b for b in blocks if not restrained & set(b)), None)
            if pick is None:
                continue
            req = f"R[{a},{e}]"
            restrained.update(pick)
            events.append(TraceEvent(s, "restrain", req,
                                     _detail(elements=",".join(map(str, pick)))))
            for i, x in enumerate(pick):
                c = p(i, p.size - 1)
                matrix[x, s] = matrix[s, x] = c
                events.append(TraceEvent(s, "color", req, _detail(x=x, y=s, c=c)))
            events.append(TraceEvent(s, "act", req,
                                     _detail(block=",".join(map(str, pick)))))
    f = FiniteColoring(stages, matrix)
    trace = ConstructionTrace("dnc", stages, tuple(events), final={}, aux={"oracle": o})
    return f, trace


# ---------------------------------------------------------------------------
# finite-injury builder against prefix functionals (measure requirements)


def build_measure_coloring(fs: Sequence[PrefixFunctional],
                           patterns: Sequence[Pattern], stages: int
                           ) -> tuple[FiniteColoring, ConstructionTrace]:
    """Marker/state machine: the highest-priority strategy whose attention
    measure clears its threshold stacks the interval [marker, stage] onto its
    state, moves markers, injures lower priorities, and commits the stacked
    intervals to the limit colors prescribed by its pattern."""
    if stages < 1:
        raise PatternError("need at least one stage")
    if len(fs) != len(patterns):
        raise PatternError("one pattern per functional required")
    if any(p.size < 2 for p in patterns):
        raise PatternError("patterns must have size >= 2")
    n = len(fs)
    markers = [0] * n
    states: list[list[frozenset[int]]] = [[] for _ in range(n)]
    commitments: dict[int, int] = {}
    matrix = np.zeros((stages, stages), dtype=np.uint8)
    events: list[TraceEvent] = []

    for s in range(stages):
        # color first: the attention stage itself lies inside the interval
        # being stacked, so it must carry the commitments in force before
        # this attention
        for x in range(s):
            c = commitments.get(x, 0)
            matrix[x, s] = matrix[s, x] = c
        winner = next((j for j in range(n)
                       if requires_attention_measure(states[j], fs[j],
                                                     markers[j], s, patterns[j])),
                      None)
        if winner is not None:
            j, p = winner, patterns[winner]
            req = f"R[{j}]"
            t = len(states[j])
            F_t = frozenset(range(markers[j], s + 1))
            states[j].append(F_t)
            events.append(TraceEvent(s, "attention", req,
                                     _detail(length=t + 1,
                                             block=",".join(map(str, sorted(F_t))))))
            markers[j] = s + 1
            events.append(TraceEvent(s, "marker", req, _detail(to=s + 1)))
            for jj in range(winner + 1, n):
                if states[jj] or markers[jj] < s + 1:
                    events.append(TraceEvent(s, "injury", f"R[{jj}]",
                                             _detail(by=req)))
                states[jj] = []
                markers[jj] = max(markers[jj], s + 1)
            if t < p.size - 1:
                for i, F_i in enumerate(states[j]):
                    c = p(i, t + 1)
                    for x in sorted(F_i):
                        commitments[x] = c
                        events.append(TraceEvent(s, "commit", req,
                                                 _detail(x=x, limit=c, start=s)))
    f = FiniteColoring(stages, matrix)
    trace = ConstructionTrace(
        "measure", stages, tuple(events),
        final={
            "states": {f"R[{j}]": [sorted(F) for F in states[j]] for j in range(n)},
            "markers": {f"R[{j}]": markers[j] for j in range(n)},
            "commitments": dict(commitments),
        },
        aux={"functionals": list(fs), "patterns": list(patterns)},
    )
    return f, trace


# ---------------------------------------------------------------------------
# finite-injury builder against bi-array functionals (stable output)


def build_stable_2dim_coloring(bs: Sequence[BiArrayFunctional], stages: int
                               ) -> tuple[StableColoring, ConstructionTrace]:
    """Two-step attention machine: a first attention restrains a primary set
    and commits it away from the target limit class; a second attention,
    available once a primary/secondary pair with the right cross color has
    emerged in the built coloring, commits the pair to its final classes."""
    if stages < 1:
        raise PatternError("need at least one stage")
    n = 2 * len(bs)
    partially = [False] * n
    fully = [False] * n
    restraints: list[set[int]] = [set() for _ in range(n)]
    commitments: dict[int, int] = {}
    matrix = np.zeros((stages, stages), dtype=np.uint8)
    events: list[TraceEvent] = []

    def cross_color_ok(E, F, want):
        return all(matrix[x, y] == want for x in E for y in F)

    for s in range(stages):
        for x in range(s):
            c = commitments.get(x, 0)
            matrix[x, s] = matrix[s, x] = c
        acted = None
        for j in range(n):
            e, i = divmod(j, 2)
            fn = bs[e]
            higher = set().union(*restraints[:j]) if j else set()
            allowed = set(range(e + 1, s))
            second = None
            if not fully[j]:
                for nn, mm in fn.secondary_args():
                    E, F = fn.E(nn, s), fn.F(nn, mm, s)
                    if E is None or F is None or not E or not F:
                        continue
                    if not (E <= allowed and F <= allowed and max(E) < min(F)):
                        continue
                    if (E | F) & higher:
                        continue
                    if cross_color_ok(E, F, 1 - i):
                        second = (nn, mm, E, F)
                        break
            first = None
            if second is None and not partially[j]:
                for nn in fn.primary_args():
                    E = fn.E(nn, s)
                    if E is None or not E or not E <= allowed or E & higher:
                        continue
                    first = (nn, E)
                    break
            if second is not None:
                nn, mm, E, F = second
                req = f"R[{e},{i}]"
                restraints[j] = set(E | F)
                events.append(TraceEvent(s, "attention", req,
                                         _detail(kind="second", n=nn, m=mm)))
                events.append(TraceEvent(s, "restrain", req,
                                         _detail(elements=",".join(map(str, sorted(E | F))))))
                for x in sorted(E):
                    commitments[x] = i
                    events.append(TraceEvent(s, "commit", req,
                                             _detail(x=x, limit=i, start=s)))
                for x in sorted(F):
                    commitments[x] = 1 - i
                    events.append(TraceEvent(s, "commit", req,
                                             _detail(x=x, limit=1 - i, start=s)))
                fully[j] = partially[j] = True
                acted = j
                break
            if first is not None:
                nn, E = first
                req = f"R[{e},{i}]"
                restraints[j] = set(E)
                events.append(TraceEvent(s, "attention", req,
                                         _detail(kind="first", n=nn)))
                events.append(TraceEvent(s, "restrain", req,
                                         _detail(elements=",".join(map(str, sorted(E))))))
                for x in sorted(E):
                    commitments[x] = 1 - i
                    events.append(TraceEvent(s, "commit", req,
                                             _detail(x=x, limit=1 - i, start=s)))
                partially[j] = True
                acted = j
                break
        if acted is not None:
            for jj in range(acted + 1, n):
                if partially[jj] or fully[jj] or restraints[jj]:
                    events.append(TraceEvent(s, "injury", f"R[{jj // 2},{jj % 2}]",
                                             _detail(by=f"R[{acted // 2},{acted % 2}]")))
                partially[jj] = fully[jj] = False
                restraints[jj] = set()

    f = FiniteColoring(stages, matrix)
    limits = tuple(commitments.get(x, 0) for x in range(stages))
    sc = StableColoring(f, limits)
    trace = ConstructionTrace(
        "stable2dim", stages, tuple(events),
        final={
            "satisfied": {f"R[{j // 2},{j % 2}]":
                          ("full" if fully[j] else "partial" if partially[j] else "none")
                          for j in range(n)},
            "commitments": dict(commitments),
        },
        aux={"functionals": list(bs)},
    )
    return sc, trace


# ---------------------------------------------------------------------------
# trace verification


KNOWN_CHECKS = ("restraints", "commitments", "p1", "p2", "finite-actions")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    stage: Optional[int] = None
    message: str = ""


@dataclass(frozen=True)
class VerifyReport:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _check_restraints(trace: ConstructionTrace, f) -> CheckResult:
    per_stage = trace.builder == "dnc"
    active: dict[str, set[int]] = {}
    stage = -1
    for ev in trace.events:
        if ev.stage != stage and per_stage:
            active = {}
        stage = ev.stage
        if ev.kind == "restrain":
            elems = {int(x) for x in ev.get("elements").split(",") if x}
            for req, other in active.items():
                if req != ev.requirement and other & elems:
                    return CheckResult("restraints", False, ev.stage,
                                       f"{ev.requirement} overlaps {req}")
            active[ev.requirement] = elems
        elif ev.kind in ("release", "injury"):
            active.pop(ev.requirement, None)
    return CheckResult("restraints", True)


def _check_commitments(trace: ConstructionTrace, f) -> CheckResult:
    base = f.base if isinstance(f, StableColoring) else f
    commits: dict[int, list[tuple[int, int]]] = {}
    for ev in trace.events:
        if ev.kind == "commit":
            x, c, start = int(ev.get("x")), int(ev.get("limit")), int(ev.get("start"))
            commits.setdefault(x, []).append((start, c))
        elif ev.kind == "color":
            # explicit color events must match the finished coloring
            x, y, c = int(ev.get("x")), int(ev.get("y")), int(ev.get("c"))
            if base(x, y) != c:
                return CheckResult("commitments", False, ev.stage,
                                   f"color event ({x},{y})={c} contradicts coloring")
    for x, seq in commits.items():
        seq.sort()
        for idx, (start, c) in enumerate(seq):
            end = seq[idx + 1][0] if idx + 1 < len(seq) else base.window
            for s in range(max(start + 1, x + 1), end):
                if base(x, s) != c:
                    return CheckResult("commitments", False, s,
                                       f"vertex {x} committed to {c} but colored {base(x, s)}")
    return CheckResult("commitments", True)


def _check_p1(trace: ConstructionTrace, f) -> CheckResult:
    if trace.builder != "measure":
        return CheckResult("p1", True, message="not applicable")
    patterns = {f"R[{j}]": p for j, p in enumerate(trace.aux["patterns"])}
    for req, state in trace.final["states"].items():
        if not state:
            continue
        p = patterns[req]
        pt = restrict(p, range(len(state)))
        if pt.size == 1:
            continue
        for sel in itertools.product(*state):
            from .core import realizes
            if not realizes(f, sel, pt):
                return CheckResult("p1", False, None,
                                   f"{req}: selection {sel} fails")
    return CheckResult("p1", True)


def _check_p2(trace: ConstructionTrace, f) -> CheckResult:
    if trace.builder != "measure":
        return CheckResult("p2", True, message="not applicable")
    fns = {f"R[{j}]": fn for j, fn in enumerate(trace.aux["functionals"])}
    patterns = {f"R[{j}]": p for j, p in enumerate(trace.aux["patterns"])}
    s = trace.stages - 1
    for req, state in trace.final["states"].items():
        fn, p = fns[req], patterns[req]
        bound = 1 - Fraction(1, 2 * p.size)
        for F_i in state:
            mu = cover_measure(fn.qualifying_prefixes(s, frozenset(F_i)))
            if not mu > bound:
                return CheckResult("p2", False, None,
                                   f"{req}: measure {mu} for {sorted(F_i)} not above {bound}")
        if len(state) == p.size:
            joint = joint_meeting_measure(fn, s, [frozenset(F) for F in state])
            if not joint > Fraction(1, 2):
                return CheckResult("p2", False, None,
                                   f"{req}: joint measure {joint} not above 1/2")
    return CheckResult("p2", True)


def _check_finite_actions(trace: ConstructionTrace, f) -> CheckResult:
    if trace.builder == "dnc":
        return CheckResult("finite-actions", True, message="no-injury builder")
    if trace.builder == "measure":
        bounds = {f"R[{j}]": p.size for j, p in enumerate(trace.aux["patterns"])}
    else:
        bounds = {}
    default = 2  # first + second attention between injuries
    counts: dict[str, int] = {}
    for ev in trace.events:
        if ev.kind == "attention":
            counts[ev.requirement] = counts.get(ev.requirement, 0) + 1
            if counts[ev.requirement] > bounds.get(ev.requirement, default):
                return CheckResult("finite-actions", False, ev.stage,
                                   f"{ev.requirement} acted too often without injury")
        elif ev.kind == "injury":
            counts[ev.requirement] = 0
    return CheckResult("finite-actions", True)


_CHECKS = {
    "restraints": _check_restraints,
    "commitments": _check_commitments,
    "p1": _check_p1,
    "p2": _check_p2,
    "finite-actions": _check_finite_actions,
}


def verify_trace(trace: ConstructionTrace, coloring,
                 checks: Sequence[str] = KNOWN_CHECKS) -> VerifyReport:
    results = []
    for name in checks:
        if name not in _CHECKS:
            raise PatternError(f"unknown trace check {name!r}")
        results.append(_CHECKS[name](trace, coloring))
    return VerifyReport(tuple(results))
