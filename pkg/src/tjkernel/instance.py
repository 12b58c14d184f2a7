from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, GraphError, check_vertex_set, find_internal_edge


class InstanceError(ValueError):
    """Token sets violate the Token Jumping preconditions."""


def check_tokens(
    g: Graph, i: Iterable[int], j: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """Validate two token sets and return them as frozensets.

    Both must be in range, independent, of equal size, and non-empty.
    """
    try:
        i = check_vertex_set(g, i)
        j = check_vertex_set(g, j)
    except GraphError as exc:
        raise InstanceError(str(exc)) from None
    for name, s in (("I", i), ("J", j)):
        bad = find_internal_edge(g, s)
        if bad is not None:
            raise InstanceError(f"{name} is not independent: edge {bad}")
    if len(i) != len(j):
        raise InstanceError(f"|I| = {len(i)} differs from |J| = {len(j)}")
    if not i:
        raise InstanceError("token sets must be non-empty")
    return i, j


@dataclass(frozen=True)
class TokenInstance:
    graph: Graph
    i: frozenset[int]
    j: frozenset[int]

    def __post_init__(self) -> None:
        i, j = check_tokens(self.graph, self.i, self.j)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)

    @property
    def k(self) -> int:
        return len(self.i)
