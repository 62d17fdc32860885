"""Patterns, finite pair-colorings, and the realization / avoidance predicates.

A pattern is a total 2-coloring of the unordered pairs over [0, l).  Its
canonical text form is "l:bits" where the bits list the pair colors in
lexicographic order (0,1), (0,2), ..., (0,l-1), (1,2), ...

A finite coloring is the same thing over a window [0, N); it plays the role
of an ambient edge 2-coloring restricted to a finite scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels


class PatternError(ValueError):
    """Malformed pattern text or size/arity violation."""


def _pair_index(i: int, j: int, l: int) -> int:
    # lexicographic rank of (i, j), i < j, among all pairs over [0, l)
    return i * l - i * (i + 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class Pattern:
    """A 2-coloring of unordered pairs over [0, size)."""

    size: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.size < 1:
            raise PatternError("pattern size must be >= 1")
        want = self.size * (self.size - 1) // 2
        if len(self.bits) != want:
            raise PatternError(
                f"pattern of size {self.size} needs {want} pair colors, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise PatternError("pair colors must be 0 or 1")

    def __call__(self, x: int, y: int) -> int:
        if x == y:
            raise PatternError(f"no color for the degenerate pair ({x},{x})")
        if x > y:
            x, y = y, x
        if not (0 <= x < y < self.size):
            raise PatternError(f"pair ({x},{y}) outside pattern of size {self.size}")
        return self.bits[_pair_index(x, y, self.size)]

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return format_pattern(self)

    def __repr__(self) -> str:
        return f"Pattern({format_pattern(self)!r})"

    def pairs(self) -> Iterable[tuple[int, int, int]]:
        """Yield (i, j, color) in lexicographic pair order."""
        for i, j in itertools.combinations(range(self.size), 2):
            yield i, j, self(i, j)


def parse_pattern(text: str) -> Pattern:
    """Parse "l:bits" into a Pattern; inverse of format_pattern."""
    head, sep, bits = text.partition(":")
    if not sep:
        raise PatternError(f"expected 'l:bits', got {text!r}")
    try:
        size = int(head)
    except ValueError:
        raise PatternError(f"bad pattern size {head!r}") from None
    if size < 1:
        raise PatternError(f"pattern size must be >= 1, got {size}")
    want = size * (size - 1) // 2
    if len(bits) != want:
        raise PatternError(f"expected {want} bits for size {size}, got {len(bits)}")
    if bits.strip("01"):
        raise PatternError(f"pair colors must be 0/1 bits, got {bits!r}")
    return Pattern(size, tuple(int(b) for b in bits))


def format_pattern(p: Pattern) -> str:
    return f"{p.size}:" + "".join(str(b) for b in p.bits)


def pattern_from_colors(size: int, colors) -> Pattern:
    """Build a pattern from a callable or dict giving the color of each pair i < j."""
    get = colors.__getitem__ if hasattr(colors, "__getitem__") else colors
    bits = tuple(get((i, j)) if hasattr(colors, "__getitem__") else colors(i, j)
                 for i, j in itertools.combinations(range(size), 2))
    return Pattern(size, bits)


def dual(p: Pattern) -> Pattern:
    """Flip the color of every pair."""
    return Pattern(p.size, tuple(1 - b for b in p.bits))


def minus(p: Pattern) -> Pattern:
    """Drop the last vertex; defined for size >= 2."""
    if p.size < 2:
        raise PatternError("cannot drop the last vertex of a size-1 pattern")
    return restrict(p, range(p.size - 1))


def restrict(p: Pattern, vertices: Iterable[int]) -> Pattern:
    """Induced pattern on the given vertices, relabeled by rank."""
    vs = list(vertices)
    if not vs:
        raise PatternError("cannot restrict to the empty vertex set")
    if sorted(set(vs)) != vs:
        raise PatternError(f"vertex subset must be strictly increasing, got {vs}")
    if vs[0] < 0 or vs[-1] >= p.size:
        raise PatternError(f"vertex subset {vs} out of range for size {p.size}")
    return pattern_from_colors(len(vs), lambda a, b: p(vs[a], vs[b]))


@dataclass(frozen=True)
class FiniteColoring:
    """A symmetric 2-coloring of pairs over the window [0, window)."""

    window: int
    matrix: np.ndarray = field(compare=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.uint8)
        if m.shape != (self.window, self.window):
            raise PatternError(f"expected a {self.window}x{self.window} color matrix")
        if not np.array_equal(m, m.T):
            raise PatternError("pair colors must be symmetric")
        object.__setattr__(self, "matrix", m)

    def __call__(self, x: int, y: int) -> int:
        if x == y:
            raise PatternError(f"no color for the degenerate pair ({x},{x})")
        return int(self.matrix[x, y])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteColoring)
                and self.window == other.window
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.window, self.matrix.tobytes()))


def coloring_from_function(window: int, colors) -> FiniteColoring:
    m = np.zeros((window, window), dtype=np.uint8)
    for x, y in itertools.combinations(range(window), 2):
        m[x, y] = m[y, x] = colors(x, y)
    return FiniteColoring(window, m)


def constant_coloring(window: int, color: int = 0) -> FiniteColoring:
    m = np.full((window, window), color, dtype=np.uint8)
    np.fill_diagonal(m, 0)
    return FiniteColoring(window, m)


def flip(f: FiniteColoring) -> FiniteColoring:
    """Invert the color of every edge of the window."""
    m = 1 - f.matrix
    np.fill_diagonal(m, 0)
    return FiniteColoring(f.window, m)


@dataclass(frozen=True)
class StableColoring:
    """A finite coloring plus a declared limit color per vertex.

    At this scale the limit of each column is data, not something computed
    from the window.
    """

    base: FiniteColoring
    limit: tuple[int, ...]

    def __post_init__(self):
        if len(self.limit) != self.base.window:
            raise PatternError("one limit bit per window vertex required")
        if any(b not in (0, 1) for b in self.limit):
            raise PatternError("limits must be 0 or 1")

    def limit_class(self, color: int) -> list[int]:
        """Vertices whose declared limit is the given color."""
        return [x for x, c in enumerate(self.limit) if c == color]


@dataclass(frozen=True)
class PartialColoring:
    """A partial vertex 2-coloring, used as a stabilization witness."""

    assignments: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if any(c not in (0, 1) for c in self.assignments.values()):
            raise PatternError("witness colors must be 0 or 1")
        object.__setattr__(self, "assignments", dict(self.assignments))

    def __call__(self, x: int) -> int:
        try:
            return self.assignments[x]
        except KeyError:
            raise PatternError(f"witness undefined on vertex {x}") from None

    def __contains__(self, x: int) -> bool:
        return x in self.assignments

    def defined_on(self, vertices: Iterable[int]) -> bool:
        return all(x in self.assignments for x in vertices)

    def extended(self, x: int, color: int) -> "PartialColoring":
        d = dict(self.assignments)
        d[x] = color
        return PartialColoring(d)

    def __hash__(self):
        return hash(tuple(sorted(self.assignments.items())))

    def __eq__(self, other):
        return isinstance(other, PartialColoring) and self.assignments == other.assignments


@dataclass(frozen=True)
class Embedding:
    """An injective vertex map witnessing a sub-pattern occurrence."""

    map: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.map)) != len(self.map):
            raise PatternError("embedding entries must be pairwise distinct")


# ---------------------------------------------------------------------------
# realization / avoidance


def _check_window_subset(f: FiniteColoring, vertices: Iterable[int]) -> list[int]:
    vs = sorted(vertices)
    if vs and (vs[0] < 0 or vs[-1] >= f.window):
        raise PatternError(f"vertices {vs} outside window [0,{f.window})")
    return vs


def realizes(f: FiniteColoring, F: Iterable[int], p: Pattern) -> bool:
    """Does F, listed increasingly, match p edge-for-edge under f?"""
    xs = _check_window_subset(f, F)
    if len(xs) != p.size:
        raise PatternError(f"realization needs exactly {p.size} vertices, got {len(xs)}")
    return all(f(xs[i], xs[j]) == p(i, j) for i, j in itertools.combinations(range(p.size), 2))


def find_realizer(f: FiniteColoring, H: Iterable[int], p: Pattern) -> Optional[frozenset[int]]:
    """Lexicographically least subset of H realizing p, if any."""
    hs = _check_window_subset(f, H)
    if len(hs) < p.size:
        return None
    hit = _kernels.lex_least_realizer(f.matrix, np.asarray(hs, dtype=np.int64),
                                      *_kernels.pattern_arrays(p))
    if hit is None:
        return None
    return frozenset(hit)


def avoids(f: FiniteColoring, H: Iterable[int], p: Pattern) -> bool:
    """No subset of H realizes p.  Nonempty sets never avoid the size-1 pattern."""
    return find_realizer(f, H, p) is None


def embeddings(q: Pattern, p: Pattern, mode: str = "injective") -> list[Embedding]:
    """All maps g with q(x,y) = p(g(x),g(y)); monotone mode keeps increasing g only."""
    if mode not in ("injective", "monotone"):
        raise PatternError(f"unknown embedding mode {mode!r}")
    if q.size > p.size:
        return []
    if mode == "monotone":
        candidates = itertools.combinations(range(p.size), q.size)
    else:
        candidates = itertools.permutations(range(p.size), q.size)
    out = []
    for g in candidates:
        if all(q(x, y) == p(g[x], g[y]) for x, y in itertools.combinations(range(q.size), 2)):
            out.append(Embedding(g))
    return out


def is_subpattern(q: Pattern, p: Pattern, mode: str = "injective") -> bool:
    if mode not in ("injective", "monotone"):
        raise PatternError(f"unknown embedding mode {mode!r}")
    if q.size > p.size:
        return False
    if mode == "monotone":
        candidates = itertools.combinations(range(p.size), q.size)
    else:
        candidates = itertools.permutations(range(p.size), q.size)
    pairs = list(itertools.combinations(range(q.size), 2))
    return any(all(q(x, y) == p(g[x], g[y]) for x, y in pairs) for g in candidates)


def strongly_realizes(sc: StableColoring, F: Iterable[int], p: Pattern) -> bool:
    """F realizes the truncation of p and every vertex's declared limit matches
    the last-column specification p(., |p|-1)."""
    if p.size < 2:
        raise PatternError("strong realization needs a pattern of size >= 2")
    xs = sorted(F)
    if len(xs) != p.size - 1:
        raise PatternError(f"strong realization needs {p.size - 1} vertices, got {len(xs)}")
    if not realizes(sc.base, xs, minus(p)):
        return False
    return all(sc.limit[x] == p(i, p.size - 1) for i, x in enumerate(xs))


def strongly_appears(sc: StableColoring, H: Iterable[int], p: Pattern) -> bool:
    """Some (|p|-1)-subset of H strongly realizes p."""
    if p.size < 2:
        raise PatternError("strong appearance needs a pattern of size >= 2")
    hs = sorted(H)
    last = p.size - 1
    spec = [p(i, last) for i in range(last)]
    # limit check first: it prunes to the vertices with the right declared limit
    return any(
        all(sc.limit[x] == spec[i] for i, x in enumerate(xs))
        and realizes(sc.base, xs, minus(p))
        for xs in itertools.combinations(hs, p.size - 1)
    )
