"""The join operator and the structural predicates on patterns.

Join glues two patterns at one shared vertex: the last vertex of the left
pattern is identified with the first vertex of the right one, and every
cross pair inherits the left pattern's last-column color.  Irreducibility,
divergence and the merging predicates all quantify over contiguous splits
of the vertex line, which is enough because a join seam is always
contiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import Pattern, PatternError, pattern_from_colors, restrict


def join(p: Pattern, q: Pattern) -> Pattern:
    """Pattern of size |p|+|q|-1 gluing q's first vertex onto p's last."""
    lp = p.size

    def color(x: int, y: int) -> int:
        if y < lp:
            return p(x, y)
        if x >= lp - 1:
            return q(x - lp + 1, y - lp + 1)
        return p(x, lp - 1)

    return pattern_from_colors(lp + q.size - 1, color)


def decompositions(p: Pattern) -> list[tuple[Pattern, Pattern]]:
    """All splits p = left ⊎ right with both sides of size >= 2.

    A seam is always contiguous, so each split point k yields at most one
    candidate pair, verified by re-joining.
    """
    out = []
    for k in range(2, p.size):
        left = restrict(p, range(k))
        right = restrict(p, range(k - 1, p.size))
        if join(left, right) == p:
            out.append((left, right))
    return out


def is_irreducible(p: Pattern, method: str = "definitional") -> bool:
    if method == "definitional":
        return not decompositions(p)
    if method == "criterion":
        # every split F = [0,k), G = [k,l) with F nonempty and |G| >= 2 must
        # contain a cross pair of differing colors from a single F-vertex
        l = p.size
        for k in range(1, l - 1):
            if not any(
                p(x, y) != p(x, z)
                for x in range(k)
                for y in range(k, l)
                for z in range(y + 1, l)
            ):
                return False
        return True
    raise PatternError(f"unknown irreducibility method {method!r}")


def is_divergent(p: Pattern) -> bool:
    """Last column non-constant; sizes <= 2 are convergent."""
    l = p.size
    if l <= 2:
        return False
    last = [p(x, l - 1) for x in range(l - 1)]
    return any(c != last[0] for c in last)


def is_i_merging(p: Pattern, i: int) -> bool:
    """Split condition over contiguous nontrivial splits of [0, l-1)."""
    if i not in (0, 1):
        raise PatternError("merging color must be 0 or 1")
    l = p.size
    for k in range(1, l - 2 + 1):
        F = range(k)
        G = range(k, l - 1)
        if any(p(x, l - 1) == 1 - i for x in F):
            continue
        if any(p(x, l - 1) == i for x in G):
            continue
        colors = {p(x, y) for x in F for y in G}
        if len(colors) > 1:
            continue
        return False
    return True


def is_merging(p: Pattern) -> bool:
    return is_i_merging(p, 0) and is_i_merging(p, 1)


@dataclass(frozen=True)
class ClassificationFlags:
    divergent: bool
    irreducible: bool
    merging0: bool
    merging1: bool

    @property
    def convergent(self) -> bool:
        return not self.divergent

    @property
    def reducible(self) -> bool:
        return not self.irreducible

    @property
    def merging(self) -> bool:
        return self.merging0 and self.merging1


@lru_cache(maxsize=None)
def classify(p: Pattern) -> ClassificationFlags:
    return ClassificationFlags(
        divergent=is_divergent(p),
        irreducible=is_irreducible(p),
        merging0=is_i_merging(p, 0),
        merging1=is_i_merging(p, 1),
    )
