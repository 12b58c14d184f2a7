"""Seeded graph families with trusted genus metadata.

Token sets are drawn with numpy's PCG64 bit generator seeded by the 64-bit
``seed``: each set is a sorted ``k``-subset sampled without replacement and
rejected until it is independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .graph import Graph, build_graph, is_independent
from .instance import check_tokens

PRNG_NAME = "numpy-PCG64"
MAX_TRIES = 10_000

FAMILIES = (
    "grid",
    "torus",
    "outerplanar_fan",
    "complete_bipartite",
    "random_gnp",
    "planted_c2",
)


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GeneratorError(f"unknown family {self.family!r}")
        if not 0 <= self.seed < 2**64:
            raise GeneratorError(f"seed must fit in 64 bits, got {self.seed}")


@dataclass(frozen=True)
class GeneratedInstance:
    spec: FamilySpec
    graph: Graph
    i: frozenset[int]
    j: frozenset[int]
    genus_upper_bound: int | None = None
    k23_free: bool | None = None

    @property
    def k(self) -> int:
        return len(self.i)


def _need(params: dict, name: str, lo: int) -> int:
    if name not in params:
        raise GeneratorError(f"missing parameter {name!r}")
    val = params[name]
    if int(val) != val or val < lo:
        raise GeneratorError(f"parameter {name!r} must be an integer >= {lo}, got {val}")
    return int(val)


def grid_graph(m: int, n: int) -> Graph:
    edges = []
    for r in range(m):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1))
            if r + 1 < m:
                edges.append((v, v + n))
    return build_graph(m * n, edges)


def torus_graph(m: int, n: int) -> Graph:
    edges = []
    for r in range(m):
        for c in range(n):
            v = r * n + c
            edges.append((v, r * n + (c + 1) % n))
            edges.append((v, ((r + 1) % m) * n + c))
    return build_graph(m * n, edges)


def fan_graph(n: int) -> Graph:
    """Apex 0 joined to every vertex of the path 1..n-1."""
    edges = [(0, v) for v in range(1, n)]
    edges += [(v, v + 1) for v in range(1, n - 1)]
    return build_graph(n, edges)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return build_graph(a + b, [(u, a + w) for u in range(a) for w in range(b)])


def bipartite_genus(a: int, b: int) -> int:
    # Ringel's formula for K_{a,b}.
    if a < 2 or b < 2:
        return 0
    return ((a - 2) * (b - 2) + 3) // 4


def gnp_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    edges = []
    draws = rng.random(n * (n - 1) // 2)
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[idx] < p:
                edges.append((u, v))
            idx += 1
    return build_graph(n, edges)


def planted_c2_graph(k: int, m: int) -> tuple[Graph, frozenset[int], frozenset[int]]:
    """Hubs 0 and 1 with a path of ``m`` common neighbors, plus token vertices.

    Hub 0 carries a token of I and hub 1 a token of J. The remaining ``k - 1``
    tokens of each set sit on fresh vertices: I-vertices hang off hub 1 and
    J-vertices off hub 0, so the path vertices see exactly the hubs in X.
    """
    path = list(range(2, 2 + m))
    extra_i = list(range(2 + m, 2 + m + k - 1))
    extra_j = list(range(2 + m + k - 1, 2 + m + 2 * (k - 1)))
    edges = [(h, w) for h in (0, 1) for w in path]
    edges += list(zip(path, path[1:]))
    edges += [(1, a) for a in extra_i] + [(0, b) for b in extra_j]
    n = 2 + m + 2 * (k - 1)
    return build_graph(n, edges), frozenset([0, *extra_i]), frozenset([1, *extra_j])


def sample_independent(
    g: Graph, k: int, rng: np.random.Generator, tries: int = MAX_TRIES
) -> frozenset[int]:
    if k < 1 or k > g.vertex_count:
        raise GeneratorError(f"cannot place {k} tokens on {g.vertex_count} vertices")
    for _ in range(tries):
        s = frozenset(int(v) for v in rng.choice(g.vertex_count, size=k, replace=False))
        if is_independent(g, s):
            return s
    raise GeneratorError(f"no independent {k}-subset found after {tries} tries")


def generate(
    spec: FamilySpec,
    k: int,
    placement: tuple[Iterable[int], Iterable[int]] | None = None,
) -> GeneratedInstance:
    """Build the instance for ``spec`` with ``k`` tokens per side.

    ``placement`` fixes I and J instead of sampling them.
    """
    if k < 1:
        raise GeneratorError(f"k must be positive, got {k}")
    p = spec.params
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    genus: int | None
    k23: bool | None
    fixed: tuple[frozenset[int], frozenset[int]] | None = None

    if spec.family == "grid":
        m, n = _need(p, "m", 1), _need(p, "n", 1)
        g, genus, k23 = grid_graph(m, n), 0, True
    elif spec.family == "torus":
        m, n = _need(p, "m", 3), _need(p, "n", 3)
        # Two vertices of C_m x C_n never share three neighbors.
        g, genus, k23 = torus_graph(m, n), 1, True
    elif spec.family == "outerplanar_fan":
        n = _need(p, "n", 2)
        g, genus, k23 = fan_graph(n), 0, True
    elif spec.family == "complete_bipartite":
        a, b = _need(p, "a", 1), _need(p, "b", 1)
        g = complete_bipartite_graph(a, b)
        genus, k23 = bipartite_genus(a, b), min(a, b) < 2 or max(a, b) < 3
    elif spec.family == "random_gnp":
        n = _need(p, "n", 1)
        prob = p.get("p")
        if prob is None or not 0.0 <= float(prob) <= 1.0:
            raise GeneratorError(f"parameter 'p' must lie in [0, 1], got {prob}")
        g, genus, k23 = gnp_graph(n, float(prob), rng), None, None
    else:
        m = _need(p, "m", 1)
        g, pi, pj = planted_c2_graph(k, m)
        genus, k23, fixed = 0, m < 3, (pi, pj)

    if placement is not None:
        try:
            fixed = check_tokens(g, *placement)
        except ValueError as exc:
            raise GeneratorError(str(exc)) from None
        if len(fixed[0]) != k:
            raise GeneratorError(f"placement has {len(fixed[0])} tokens, expected {k}")
    if fixed is None:
        fixed = (sample_independent(g, k, rng), sample_independent(g, k, rng))
    return GeneratedInstance(spec, g, fixed[0], fixed[1], genus, k23)
