"""Split the vertices outside ``X = I | J`` by how many neighbors they have in X.

A vertex with no neighbor or one neighbor in X lands in ``c1``, exactly two
in ``c2`` and three or more in ``c3``. Vertices of ``c2`` are further grouped
by their X-neighborhood: ``pair_members[(u, v)]`` holds every outside vertex
whose neighbors inside X are exactly ``u`` and ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph
from .instance import check_tokens

Pair = tuple[int, int]

_EMPTY: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Classification:
    i: frozenset[int]
    j: frozenset[int]
    x: frozenset[int]
    signature: dict[int, frozenset[int]]
    c1: frozenset[int]
    c2: frozenset[int]
    c3: frozenset[int]
    pair_members: dict[Pair, frozenset[int]]

    @property
    def k(self) -> int:
        return len(self.i)

    @property
    def pairs(self) -> list[Pair]:
        return sorted(self.pair_members)


def classify(g: Graph, i: Iterable[int], j: Iterable[int]) -> Classification:
    i, j = check_tokens(g, i, j)
    x = i | j

    # Walk edges out of X only; untouched outside vertices have an empty signature.
    touched: dict[int, list[int]] = {}
    for u in sorted(x):
        for w in g.adjacency[u]:
            if w not in x:
                touched.setdefault(w, []).append(u)

    signature: dict[int, frozenset[int]] = {}
    c1: list[int] = []
    c2: list[int] = []
    c3: list[int] = []
    members: dict[Pair, list[int]] = {}
    for v in range(g.vertex_count):
        if v in x:
            continue
        nbrs = touched.get(v)
        if nbrs is None:
            signature[v] = _EMPTY
            c1.append(v)
            continue
        signature[v] = frozenset(nbrs)
        if len(nbrs) <= 1:
            c1.append(v)
        elif len(nbrs) == 2:
            c2.append(v)
            members.setdefault((nbrs[0], nbrs[1]), []).append(v)
        else:
            c3.append(v)

    return Classification(
        i=i,
        j=j,
        x=x,
        signature=signature,
        c1=frozenset(c1),
        c2=frozenset(c2),
        c3=frozenset(c3),
        pair_members={y: frozenset(vs) for y, vs in sorted(members.items())},
    )


def pair_bound(genus: int, x_size: int) -> int:
    """Upper bound on the number of pairs for a graph of the given genus, floored at 0."""
    return max(0, 3 * x_size + 6 * (genus - 1))


def c3_bound(genus: int, k: int) -> int:
    return 16 * genus * genus + 8 * genus * (2 * k - 1) + 8 * k


def pair_count_bound_report(cls: Classification, g_known: int | None = None) -> dict:
    """Counts of pairs and of ``c3``, checked against the genus bounds when a
    trusted genus is available. Purely diagnostic."""
    report = {
        "pair_count": len(cls.pair_members),
        "c3_size": len(cls.c3),
    }
    if g_known is None:
        return report
    if g_known < 0:
        raise ValueError(f"genus must be non-negative, got {g_known}")
    pb = pair_bound(g_known, len(cls.x))
    cb = c3_bound(g_known, cls.k)
    report.update(
        genus=g_known,
        pair_bound=pb,
        pair_bound_holds=report["pair_count"] <= pb,
        c3_bound=cb,
        c3_bound_holds=report["c3_size"] <= cb,
    )
    return report
