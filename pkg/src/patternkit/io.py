"""Flat-file formats: colorings, trees, oracle tables, and line-oriented
structured records.

Formats are plain text and deterministic, so golden files can be compared
byte-for-byte.  A coloring file starts with the window size, followed by one
row per vertex listing its colors toward all larger vertices; a stable
coloring appends a final line with one declared limit bit per vertex.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .core import FiniteColoring, Pattern, PatternError, StableColoring, parse_pattern
from .constructions import (
    ApproxOracle,
    BiArrayFunctional,
    ConstructionTrace,
    PrefixFunctional,
    TraceEvent,
)
from .stabilize import BinaryTree


# ---------------------------------------------------------------------------
# colorings


def format_coloring(f: FiniteColoring) -> str:
    lines = [str(f.window)]
    for x in range(f.window - 1):
        lines.append("".join(str(int(f.matrix[x, y])) for y in range(x + 1, f.window)))
    return "\n".join(lines) + "\n"


def format_stable_coloring(sc: StableColoring) -> str:
    return format_coloring(sc.base) + "".join(str(b) for b in sc.limit) + "\n"


def _parse_coloring_lines(lines: list[str]) -> tuple[FiniteColoring, list[str]]:
    if not lines:
        raise PatternError("empty coloring file")
    try:
        window = int(lines[0])
    except ValueError:
        raise PatternError(f"bad window size {lines[0]!r}") from None
    need = max(window - 1, 0)
    rows = lines[1:1 + need]
    if len(rows) < need:
        raise PatternError(f"expected {need} rows for window {window}")
    m = np.zeros((window, window), dtype=np.uint8)
    for x, row in enumerate(rows):
        if len(row) != window - 1 - x or row.strip("01"):
            raise PatternError(f"bad row {x}: {row!r}")
        for k, b in enumerate(row):
            y = x + 1 + k
            m[x, y] = m[y, x] = int(b)
    return FiniteColoring(window, m), lines[1 + need:]


def parse_coloring(text: str) -> FiniteColoring:
    f, rest = _parse_coloring_lines([l for l in text.splitlines() if l.strip() != ""])
    if rest:
        raise PatternError("trailing content after coloring rows")
    return f


def parse_stable_coloring(text: str) -> StableColoring:
    f, rest = _parse_coloring_lines([l for l in text.splitlines() if l.strip() != ""])
    if len(rest) != 1:
        raise PatternError("stable coloring needs exactly one limit line")
    limits = rest[0]
    if len(limits) != f.window or limits.strip("01"):
        raise PatternError(f"bad limit line {limits!r}")
    return StableColoring(f, tuple(int(b) for b in limits))


# ---------------------------------------------------------------------------
# trees


def format_tree(t: BinaryTree) -> str:
    return "\n".join(sorted(t.nodes, key=lambda s: (len(s), s))) + "\n"


def parse_tree(text: str) -> BinaryTree:
    nodes = {line.strip() for line in text.splitlines()}
    return BinaryTree(frozenset(nodes))


# ---------------------------------------------------------------------------
# oracle tables


def _format_elems(elems: Iterable[int]) -> str:
    es = sorted(elems)
    return ",".join(map(str, es)) if es else "-"


def _parse_elems(text: str) -> frozenset[int]:
    if text == "-":
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise PatternError(f"bad element list {text!r}") from None


def format_approx_oracle(o: ApproxOracle) -> str:
    lines = [f"{e} {s0} {_format_elems(elems)}"
             for e, s0, elems in sorted(o.entries)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_approx_oracle(text: str) -> ApproxOracle:
    entries = []
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise PatternError(f"bad enumeration entry {line!r}")
        entries.append((int(parts[0]), int(parts[1]), _parse_elems(parts[2])))
    return ApproxOracle(tuple(entries))


def _content_lines(text: str) -> list[str]:
    return [l.strip() for l in text.splitlines()
            if l.strip() and not l.lstrip().startswith("#")]


def format_measure_oracle(fns: list[PrefixFunctional], patterns: list[Pattern]) -> str:
    lines = []
    for fn, p in zip(fns, patterns):
        lines.append(f"functional {p}")
        for tau, s0, elems in fn.entries:
            lines.append(f"{tau or '-'} {s0} {_format_elems(elems)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_measure_oracle(text: str) -> tuple[list[PrefixFunctional], list[Pattern]]:
    fns: list[PrefixFunctional] = []
    patterns: list[Pattern] = []
    entries: list[tuple[str, int, frozenset[int]]] = []
    started = False
    for line in _content_lines(text):
        parts = line.split()
        if parts[0] == "functional":
            if started:
                fns.append(PrefixFunctional(tuple(entries)))
                entries = []
            if len(parts) != 2:
                raise PatternError(f"bad functional header {line!r}")
            patterns.append(parse_pattern(parts[1]))
            started = True
        else:
            if not started:
                raise PatternError("entry before any functional header")
            if len(parts) != 3:
                raise PatternError(f"bad prefix entry {line!r}")
            tau = "" if parts[0] == "-" else parts[0]
            entries.append((tau, int(parts[1]), _parse_elems(parts[2])))
    if started:
        fns.append(PrefixFunctional(tuple(entries)))
    return fns, patterns


def format_biarray_oracle(bs: list[BiArrayFunctional]) -> str:
    lines = []
    for fn in bs:
        lines.append("functional")
        for n, s0, elems in fn.primary:
            lines.append(f"E {n} {s0} {_format_elems(elems)}")
        for n, m, s0, elems in fn.secondary:
            lines.append(f"F {n} {m} {s0} {_format_elems(elems)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_biarray_oracle(text: str) -> list[BiArrayFunctional]:
    out: list[BiArrayFunctional] = []
    primary: list = []
    secondary: list = []
    started = False
    for line in _content_lines(text):
        parts = line.split()
        if parts[0] == "functional":
            if started:
                out.append(BiArrayFunctional(tuple(primary), tuple(secondary)))
                primary, secondary = [], []
            started = True
        elif parts[0] == "E" and len(parts) == 4:
            primary.append((int(parts[1]), int(parts[2]), _parse_elems(parts[3])))
        elif parts[0] == "F" and len(parts) == 5:
            secondary.append((int(parts[1]), int(parts[2]), int(parts[3]),
                              _parse_elems(parts[4])))
        else:
            raise PatternError(f"bad bi-array entry {line!r}")
        if parts[0] in ("E", "F") and not started:
            raise PatternError("entry before any functional header")
    if started:
        out.append(BiArrayFunctional(tuple(primary), tuple(secondary)))
    return out


# ---------------------------------------------------------------------------
# structured records: one record per line, whitespace-separated key:value pairs


def emit_record(pairs: Mapping[str, object]) -> str:
    toks = []
    for k, v in pairs.items():
        sv = str(v)
        if " " in sv or " " in k or not k:
            raise PatternError(f"record field {k!r}={sv!r} contains whitespace")
        toks.append(f"{k}:{sv}")
    return " ".join(toks)


def parse_record(line: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for tok in line.split():
        k, sep, v = tok.partition(":")
        if not sep or not k:
            raise PatternError(f"bad record token {tok!r}")
        out[k] = v
    return out


def trace_records(trace: ConstructionTrace) -> list[str]:
    lines = [emit_record({"builder": trace.builder, "stages": trace.stages})]
    for ev in trace.events:
        rec = {"stage": ev.stage, "event": ev.kind, "req": ev.requirement}
        rec.update(dict(ev.detail))
        lines.append(emit_record(rec))
    return lines


def parse_trace_records(text: str) -> list[dict[str, str]]:
    return [parse_record(line) for line in _content_lines(text)]
