"""Instance, witness, and result files.

Instance files are line based with 1-based vertex ids::

    c <comment>
    p tj <n> <m> <k>
    e <u> <v>      (m lines)
    i <v>          (k lines)
    j <v>          (k lines)

Comments of the form ``c <key> <value>`` are collected as metadata, e.g.
``c genus-upper-bound 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import build_graph
from .instance import InstanceError, TokenInstance

Move = tuple[int, int]


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class InstanceFile:
    instance: TokenInstance
    metadata: dict[str, str] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)


def _ints(parts: list[str], count: int, lineno: int, what: str) -> list[int]:
    if len(parts) != count:
        raise FormatError(lineno, f"{what} expects {count} integers, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(lineno, f"{what} has a non-integer field") from None


def parse_instance(text: str) -> InstanceFile:
    header: tuple[int, int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    i_side: list[int] = []
    j_side: list[int] = []
    metadata: dict[str, str] = {}
    comments: list[str] = []
    last = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "c":
            body = line[1:].strip()
            comments.append(body)
            if len(rest) >= 2:
                metadata[rest[0]] = " ".join(rest[1:])
            continue
        if tag == "p":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            if not rest or rest[0] != "tj":
                raise FormatError(lineno, "header must start with 'p tj'")
            n, m, k = _ints(rest[1:], 3, lineno, "header 'p tj'")
            if min(n, m, k) < 0:
                raise FormatError(lineno, "header counts must be non-negative")
            header = (n, m, k)
            continue
        if header is None:
            raise FormatError(lineno, f"'{tag}' line before header")
        n = header[0]
        if tag == "e":
            u, v = _ints(rest, 2, lineno, "edge line")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(lineno, f"vertex {x} outside [1, {n}]")
            if u == v:
                raise FormatError(lineno, f"self-loop on {u}")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise FormatError(lineno, f"duplicate edge {u} {v}")
            seen_edges.add(key)
            edges.append((u - 1, v - 1))
        elif tag in ("i", "j"):
            (v,) = _ints(rest, 1, lineno, f"'{tag}' line")
            if not 1 <= v <= n:
                raise FormatError(lineno, f"vertex {v} outside [1, {n}]")
            side = i_side if tag == "i" else j_side
            if v - 1 in side:
                raise FormatError(lineno, f"vertex {v} listed twice in {tag.upper()}")
            side.append(v - 1)
        else:
            raise FormatError(lineno, f"unknown line type '{tag}'")

    if header is None:
        raise FormatError(max(last, 1), "missing 'p tj' header")
    n, m, k = header
    if len(edges) != m:
        raise FormatError(last, f"header declares {m} edges, found {len(edges)}")
    for name, side in (("i", i_side), ("j", j_side)):
        if len(side) != k:
            raise FormatError(last, f"header declares k={k}, found {len(side)} '{name}' lines")
    try:
        inst = TokenInstance(build_graph(n, edges), frozenset(i_side), frozenset(j_side))
    except InstanceError as exc:
        raise FormatError(last, str(exc)) from None
    return InstanceFile(inst, metadata, comments)


def read_instance(path) -> InstanceFile:
    with open(path) as fh:
        return parse_instance(fh.read())


def emit_instance(inst: TokenInstance, comments: Iterable[str] = ()) -> str:
    g = inst.graph
    lines = [f"c {c}" for c in comments]
    lines.append(f"p tj {g.vertex_count} {g.edge_count} {inst.k}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    lines.extend(f"i {v + 1}" for v in sorted(inst.i))
    lines.extend(f"j {v + 1}" for v in sorted(inst.j))
    return "\n".join(lines) + "\n"


def emit_witness(moves: Sequence[Move]) -> str:
    return "".join(f"m {u + 1} {v + 1}\n" for u, v in moves)


def parse_witness(text: str) -> list[Move]:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *rest = line.split()
        if tag != "m":
            raise FormatError(lineno, f"expected 'm <u> <v>', got '{tag}'")
        u, v = _ints(rest, 2, lineno, "move line")
        moves.append((u - 1, v - 1))
    return moves
