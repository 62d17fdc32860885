"""Finite-bound evaluators for the three forcing questions.

Each question quantifies universally over vertex 2-colorings up to a
compactness bound n and existentially over witnessed-avoiding finite subsets
of the reservoir.  The colorings only ever get evaluated on elements of the
reservoir below the bound, so the evaluators quantify over assignments to
X ∩ [0, n] rather than all of [0, n]; reported failure witnesses are padded
with zeros back to [0, n].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .core import FiniteColoring, PartialColoring, Pattern, PatternError
from .stabilize import fg_avoids

MAX_BOUND = 14


@dataclass(frozen=True)
class BoundedPredicate:
    """A decidable predicate phi(F, x) with an explicit witness bound."""

    name: str
    fn: Callable[[frozenset[int], int], bool]
    bound: int = 0

    def holds(self, F: Iterable[int], x: int) -> bool:
        return bool(self.fn(frozenset(F), x))

    def satisfied_by(self, F: Iterable[int]) -> bool:
        fs = frozenset(F)
        return any(self.fn(fs, x) for x in range(self.bound + 1))


def _check_bound(f: FiniteColoring, n: int) -> None:
    if n < 0:
        raise PatternError("bound must be nonnegative")
    if n >= f.window:
        raise PatternError(f"bound {n} exceeds window [0,{f.window})")
    if n > MAX_BOUND:
        raise PatternError(f"bound {n} exceeds the hard cap {MAX_BOUND}")


def _window_part(X: Iterable[int], n: int) -> list[int]:
    return sorted(x for x in X if 0 <= x <= n)


def _colorings(support: Sequence[int]):
    """All vertex 2-colorings of the support, as PartialColorings."""
    for bits in itertools.product((0, 1), repeat=len(support)):
        yield PartialColoring(dict(zip(support, bits)))


def _subsets_ascending(xs: Sequence[int]):
    for k in range(len(xs) + 1):
        yield from itertools.combinations(xs, k)


def _pad(g: PartialColoring, n: int) -> dict[int, int]:
    return {x: (g(x) if x in g else 0) for x in range(n + 1)}


def _find_rho_omega(f, sigma, Xn, p, phi, g) -> Optional[tuple[int, ...]]:
    for rho in _subsets_ascending(Xn):
        if not fg_avoids(f, g, rho, p):
            continue
        if phi.satisfied_by(frozenset(sigma) | set(rho)):
            return rho
    return None


def eval_question_omega(f: FiniteColoring, sigma: Iterable[int], X: Iterable[int],
                        p: Pattern, phi: BoundedPredicate, n: int,
                        collect_failure: bool = False):
    """True when every coloring of X∩[0,n] admits a witnessed-avoiding rho
    making phi fire; with collect_failure, return (verdict, failing coloring
    on [0,n] or None) instead of a bare boolean."""
    _check_bound(f, n)
    ss, Xn = sorted(sigma), _window_part(X, n)
    if ss and Xn and ss[-1] >= Xn[0]:
        raise PatternError("stem must lie entirely below the reservoir")
    for g in _colorings(Xn):
        if _find_rho_omega(f, ss, Xn, p, phi, g) is None:
            return (False, _pad(g, n)) if collect_failure else False
    return (True, None) if collect_failure else True


def _homogeneous(rho: Sequence[int], g: PartialColoring) -> bool:
    return len({g(x) for x in rho}) <= 1


def eval_question_i(f: FiniteColoring, sigma: Iterable[int], X: Iterable[int],
                    p: Pattern, phi: BoundedPredicate, n: int,
                    collect_failure: bool = False):
    """As eval_question_omega but universally over pairs (h0, h1) and with rho
    required homogeneous for both."""
    _check_bound(f, n)
    ss, Xn = sorted(sigma), _window_part(X, n)
    if ss and Xn and ss[-1] >= Xn[0]:
        raise PatternError("stem must lie entirely below the reservoir")
    for h0 in _colorings(Xn):
        for h1 in _colorings(Xn):
            hit = None
            for rho in _subsets_ascending(Xn):
                if not (_homogeneous(rho, h0) and _homogeneous(rho, h1)):
                    continue
                if not fg_avoids(f, h0, rho, p):
                    continue
                if phi.satisfied_by(frozenset(ss) | set(rho)):
                    hit = rho
                    break
            if hit is None:
                fail = (_pad(h0, n), _pad(h1, n))
                return (False, fail) if collect_failure else False
    return (True, None) if collect_failure else True


def eval_question_disjunctive(f: FiniteColoring, sigma0: Iterable[int],
                              sigma1: Iterable[int], X: Iterable[int],
                              p0: Pattern, p1: Pattern,
                              phi0: BoundedPredicate, phi1: BoundedPredicate,
                              n: int, collect_failure: bool = False):
    """For every coloring h there must be a side i and a rho ⊆ X avoiding p_i
    with witness h such that phi_i(sigma_i ∪ rho) fires; the side may vary
    with h."""
    _check_bound(f, n)
    Xn = _window_part(X, n)
    sides = [(sorted(sigma0), p0, phi0), (sorted(sigma1), p1, phi1)]
    for ss, _p, _phi in sides:
        if ss and Xn and ss[-1] >= Xn[0]:
            raise PatternError("stem must lie entirely below the reservoir")
    for h in _colorings(Xn):
        ok = any(
            _find_rho_omega(f, ss, Xn, p, phi, h) is not None
            for ss, p, phi in sides
        )
        if not ok:
            return (False, _pad(h, n)) if collect_failure else False
    return (True, None) if collect_failure else True


def least_bound(evaluate: Callable[[int], bool], cap: int) -> Optional[int]:
    """Least n <= cap at which the evaluator returns true, if any."""
    if cap > MAX_BOUND:
        raise PatternError(f"cap {cap} exceeds the hard cap {MAX_BOUND}")
    for n in range(cap + 1):
        if evaluate(n):
            return n
    return None


# ---------------------------------------------------------------------------
# small closed predicate catalogue (also used by the CLI)


def pred_true() -> BoundedPredicate:
    return BoundedPredicate("true", lambda F, x: True)


def pred_false() -> BoundedPredicate:
    return BoundedPredicate("false", lambda F, x: False)


def pred_size_at_least(k: int) -> BoundedPredicate:
    return BoundedPredicate(f"size>={k}", lambda F, x: len(F) >= k)


def pred_contains(v: int) -> BoundedPredicate:
    return BoundedPredicate(f"contains:{v}", lambda F, x: v in F)


def pred_homogeneous(f: FiniteColoring, color: int, min_size: int = 2) -> BoundedPredicate:
    """F spans only edges of the given color and has at least min_size vertices."""
    def check(F: frozenset[int], x: int) -> bool:
        if len(F) < min_size:
            return False
        return all(f(a, b) == color for a, b in itertools.combinations(sorted(F), 2))
    return BoundedPredicate(f"homogeneous:{color}:{min_size}", check)


def catalogue_predicate(spec: str, f: Optional[FiniteColoring] = None) -> BoundedPredicate:
    """Parse a predicate description: true, false, size>=K, contains:V,
    homogeneous:C[:MIN]."""
    if spec == "true":
        return pred_true()
    if spec == "false":
        return pred_false()
    if spec.startswith("size>="):
        return pred_size_at_least(int(spec[len("size>="):]))
    if spec.startswith("contains:"):
        return pred_contains(int(spec.split(":", 1)[1]))
    if spec.startswith("homogeneous:"):
        parts = spec.split(":")
        if f is None:
            raise PatternError("homogeneity predicate needs the ambient coloring")
        color = int(parts[1])
        min_size = int(parts[2]) if len(parts) > 2 else 2
        return pred_homogeneous(f, color, min_size)
    raise PatternError(f"unknown predicate {spec!r}")
