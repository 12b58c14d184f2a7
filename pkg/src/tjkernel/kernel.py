"""Kernelization for Token Jumping on bounded-genus graphs.

The pipeline never looks at an embedding or the genus:

1. classify the vertices outside ``X = I | J``;
2. look for ``k`` independent vertices among those with at most one
   neighbor in X, in which case the instance is a YES-instance;
3. for every pair ``Y = {u, v}`` shrink its common-neighbor class ``C_Y``
   to a linear forest ``Z_Y`` with :func:`filter_pair` and, when that forest
   has at least ``4k + 4`` vertices, keep only ``2k + 2`` independent
   vertices of it.

The kernel is the subgraph induced by the surviving vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .classify import Classification, Pair, classify
from .graph import Graph, IdMap, degeneracy_order, greedy_independent_set, induced_subgraph
from .instance import InstanceError, TokenInstance
from .oracle import YES, Move, solve, validate_sequence

GENERAL = "general"
K23_FREE = "k23_free"
MODES = (GENERAL, K23_FREE)


class WitnessError(RuntimeError):
    pass


class ContractError(RuntimeError):
    """An internal postcondition failed."""


def heawood(g: int) -> int:
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    return (7 + math.isqrt(1 + 48 * g)) // 2


def f_m(g: int) -> int:
    """Bound on pairwise non-homotopic u-v paths on a genus-g surface."""
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    return max(1, 4 * g)


def kernel_size_expression(g: int, k: int, c1_factor: int | None = None) -> int:
    """Closed-form kernel size bound, before the final simplification.

    ``c1_factor`` is the multiplier ``c`` certified by a failed C1 search
    (``|C1| < c * k``); it defaults to the Heawood number.
    """
    fm = f_m(g)
    c = heawood(g) if c1_factor is None else c1_factor
    return (
        16 * g * g + 12 * fm * g + 40 * g * k + 12 * fm * k + 16 * g - 12 * fm
        + c * k + 10 * k + 24 * k * k - 24
    )


def kernel_size_bound(g: int, k: int) -> int:
    if g == 0:
        return 24 * k * k + 26 * k
    return 64 * g * g + 88 * g * k + heawood(g) * k - 32 * g + 10 * k + 24 * k * k


def k23_free_kernel_bound(g: int, k: int) -> int:
    return 18 * g + heawood(g) * k + 18 * k


OUTERPLANAR_KERNEL_FACTOR = 21


# ---------------------------------------------------------------------------
# C1 shortcut


def greedy_c1_shortcut(g: Graph, cls: Classification, k: int) -> frozenset[int] | None:
    """Find ``k`` independent vertices in C1, or None.

    Runs the greedy along the min-degree elimination order of ``G[C1]``,
    which keeps at least ``ceil(|C1| / (d + 1))`` vertices for degeneracy
    ``d``. A failure therefore certifies ``|C1| < (d + 1) * k``.
    """
    found, _ = _c1_search(g, cls.c1, k)
    return found


def _c1_search(
    g: Graph, c1: frozenset[int], k: int
) -> tuple[frozenset[int] | None, int | None]:
    if not c1:
        return None, None
    sub, ids = induced_subgraph(g, c1)
    order, d = degeneracy_order(sub)
    if k <= 0 or len(c1) < k:
        return None, d
    chosen = greedy_independent_set(sub, order, limit=k)
    if len(chosen) < k:
        return None, d
    return ids.lift(chosen), d


def _gather(g: Graph, start: frozenset[int], target: frozenset[int]) -> list[Move]:
    """Move tokens from ``start`` onto the independent set ``target``.

    Tokens already on ``target`` stay put. Each round places one pending
    target: a free target takes the smallest stray token, a target blocked by
    a single stray token takes that token.
    """
    current = set(start)
    moves: list[Move] = []
    pending = sorted(target - current)
    while pending:
        progress = False
        for t in pending:
            blockers = g.adjacency[t] & current
            stray = sorted(current - target)
            if not blockers:
                src = stray[0]
            elif len(blockers) == 1 and next(iter(blockers)) not in target:
                src = next(iter(blockers))
            else:
                continue
            moves.append((src, t))
            current.discard(src)
            current.add(t)
            pending.remove(t)
            progress = True
            break
        if not progress:
            raise WitnessError(f"stuck with targets {pending} still open")
    return moves


def c1_witness(
    g: Graph, i: Iterable[int], j: Iterable[int], i_m: Iterable[int]
) -> list[Move]:
    """Jump sequence ``I -> I_m -> J`` through an independent set inside C1.

    Every vertex of ``I_m`` has at most one neighbor in ``I | J``, so while
    gathering tokens onto ``I_m`` a pending target is either free or blocked
    by exactly one token, which can jump onto it directly. The second phase
    is the reverse of gathering ``J`` onto ``I_m``.
    """
    i, j, i_m = frozenset(i), frozenset(j), frozenset(i_m)
    seq = _gather(g, i, i_m) + [(v, u) for u, v in reversed(_gather(g, j, i_m))]
    check = validate_sequence(g, i, j, seq)
    if not check:
        raise WitnessError(f"witness fails at step {check.index}: {check.reason}")
    return seq


# ---------------------------------------------------------------------------
# Filtering


@dataclass
class FilterResult:
    pair: Pair
    z: frozenset[int]
    removed_by_external: dict[int, frozenset[int]] = field(default_factory=dict)
    removed_by_degree: list[int] = field(default_factory=list)
    removed_by_cycle: list[int] = field(default_factory=list)


def _components(g: Graph, z: frozenset[int]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(z):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if w in z and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def filter_pair(g: Graph, y: Pair, c_y: Iterable[int]) -> FilterResult:
    """Shrink ``C_Y`` to a linear forest no outside vertex sees three times.

    Three passes over ``Z`` (initially ``C_Y``), each in ascending id order:
    every vertex outside ``C_Y | Y`` with three or more neighbors in ``C_Y``
    strips its neighbors from ``Z``; then any vertex of degree three or more
    in ``G[Z]`` is dropped; finally the smallest vertex of every remaining
    cycle is dropped.
    """
    c_y = frozenset(c_y)
    z = set(c_y)
    result = FilterResult(pair=y, z=frozenset())

    outside = set()
    for w in c_y:
        outside.update(g.adjacency[w])
    outside -= c_y
    outside.difference_update(y)
    for v in sorted(outside):
        nbrs = g.adjacency[v]
        if len(nbrs & c_y) >= 3:
            gone = nbrs & z
            if gone:
                result.removed_by_external[v] = frozenset(gone)
                z -= gone

    # Degrees only drop as vertices leave, so one pass leaves max degree <= 2.
    for w in sorted(z):
        if len(g.adjacency[w] & z) >= 3:
            z.discard(w)
            result.removed_by_degree.append(w)

    frozen = frozenset(z)
    for comp in _components(g, frozen):
        if len(comp) >= 3 and all(len(g.adjacency[v] & frozen) == 2 for v in comp):
            victim = min(comp)
            z.discard(victim)
            result.removed_by_cycle.append(victim)

    result.z = frozenset(z)
    return result


def _path_order(g: Graph, z: frozenset[int], comp: list[int]) -> list[int]:
    ends = [v for v in comp if len(g.adjacency[v] & z) <= 1]
    start = min(ends)
    walk = [start]
    prev, cur = None, start
    while True:
        nxt = [w for w in g.adjacency[cur] & z if w != prev]
        if not nxt:
            return walk
        prev, cur = cur, nxt[0]
        walk.append(cur)


def is_linear_forest(g: Graph, z: Iterable[int]) -> bool:
    z = frozenset(z)
    if any(len(g.adjacency[v] & z) > 2 for v in z):
        return False
    edges = sum(len(g.adjacency[v] & z) for v in z) // 2
    # With max degree 2, acyclic means one fewer edge than vertices per component.
    return edges == len(z) - len(_components(g, z))


def extract_t(g: Graph, fr: FilterResult, k: int) -> frozenset[int] | None:
    """Pick ``2k + 2`` independent vertices of ``Z_Y`` once ``|Z_Y| >= 4k + 4``.

    Each path of the forest is walked from its smaller endpoint taking every
    other vertex; paths are visited in order of their smallest member.
    """
    z = fr.z
    if not is_linear_forest(g, z):
        raise ContractError(f"filtered set for pair {fr.pair} is not a linear forest")
    if len(z) < 4 * k + 4:
        return None
    picked: list[int] = []
    for comp in _components(g, z):
        picked.extend(_path_order(g, z, comp)[::2])
    if len(picked) < 2 * k + 2:
        raise ContractError("linear forest yielded too few alternate vertices")
    return frozenset(picked[: 2 * k + 2])


# ---------------------------------------------------------------------------
# Kernel assembly


@dataclass
class PairAction:
    pair: Pair
    action: str
    c_size: int
    z_size: int | None
    t_size: int | None

    def as_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "action": self.action,
            "c_size": self.c_size,
            "z_size": self.z_size,
            "t_size": self.t_size,
        }


@dataclass
class ReductionStats:
    mode: str
    k: int
    n_before: int
    x_size: int
    c1_size: int
    c2_size: int
    c3_size: int
    pair_count: int
    c1_degeneracy: int | None = None
    c2_size_after: int | None = None
    n_after: int | None = None
    pairs: list[PairAction] = field(default_factory=list)
    filters: list[FilterResult] = field(default_factory=list, repr=False)
    genus: int | None = None

    def bounds(self) -> dict:
        """Size-bound evaluations; empty unless a trusted genus was supplied."""
        if self.genus is None:
            return {}
        g, k = self.genus, self.k
        out = {
            "genus": g,
            "heawood": heawood(g),
            "f_m": f_m(g),
            "kernel_size_bound": kernel_size_bound(g, k),
        }
        if self.mode == K23_FREE:
            out["k23_free_kernel_bound"] = k23_free_kernel_bound(g, k)
        if self.n_after is not None:
            out["kernel_size_bound_holds"] = self.n_after <= out["kernel_size_bound"]
        return out

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.k,
            "input_n": self.n_before,
            "x_size": self.x_size,
            "c1_size": self.c1_size,
            "c2_size": self.c2_size,
            "c3_size": self.c3_size,
            "pair_count": self.pair_count,
            "c1_degeneracy": self.c1_degeneracy,
            "c2_size_after": self.c2_size_after,
            "kernel_n": self.n_after,
            "pairs": [p.as_dict() for p in self.pairs],
            **self.bounds(),
        }


@dataclass
class KernelOutcome:
    """Either ``decision == "yes"`` (with an optional witness on the input
    graph) or ``decision == "reduced"`` with the kernel and its id map."""

    decision: str
    stats: ReductionStats
    witness: list[Move] | None = None
    instance: TokenInstance | None = None
    id_map: IdMap | None = None

    @property
    def decided(self) -> bool:
        return self.decision == YES


def build_kernel(
    g: Graph,
    i: Iterable[int],
    j: Iterable[int],
    mode: str = GENERAL,
    genus: int | None = None,
    witness_budget: int | None = 100_000,
) -> KernelOutcome:
    """Kernelize ``(g, i, j)``.

    ``genus`` is only used to report bounds. In ``k23_free`` mode pair
    filtering is skipped; a pair with three or more common neighbors proves
    the input is not K_{2,3}-free and is rejected.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    cls = classify(g, i, j)
    k = cls.k
    stats = ReductionStats(
        mode=mode,
        k=k,
        n_before=g.vertex_count,
        x_size=len(cls.x),
        c1_size=len(cls.c1),
        c2_size=len(cls.c2),
        c3_size=len(cls.c3),
        pair_count=len(cls.pair_members),
        genus=genus,
    )

    i_m, stats.c1_degeneracy = _c1_search(g, cls.c1, k)
    if i_m is not None:
        try:
            seq = c1_witness(g, cls.i, cls.j, i_m)
        except WitnessError:
            if solve(g, cls.i, cls.j, witness_budget).decision != YES:
                raise
            seq = None
        return KernelOutcome(YES, stats, witness=seq)

    drop: set[int] = set()
    for y in cls.pairs:
        c_y = cls.pair_members[y]
        if mode == K23_FREE:
            if len(c_y) > 2:
                raise InstanceError(
                    f"vertices {y[0]} and {y[1]} share {len(c_y)} common neighbors; "
                    "graph contains K_2,3"
                )
            stats.pairs.append(PairAction(y, "kept", len(c_y), None, None))
            continue
        fr = filter_pair(g, y, c_y)
        stats.filters.append(fr)
        t = extract_t(g, fr, k)
        if t is None:
            stats.pairs.append(PairAction(y, "kept", len(c_y), len(fr.z), None))
        else:
            drop.update(c_y - t)
            stats.pairs.append(PairAction(y, "replaced", len(c_y), len(fr.z), len(t)))

    sub, ids = induced_subgraph(g, (v for v in g.vertices() if v not in drop))
    kernel = TokenInstance(sub, ids.lower(cls.i), ids.lower(cls.j))
    stats.c2_size_after = len(cls.c2) - len(drop)
    stats.n_after = sub.vertex_count
    return KernelOutcome("reduced", stats, instance=kernel, id_map=ids)


def contains_k23(g: Graph) -> tuple[tuple[int, int], tuple[int, int, int]] | None:
    """Find two vertices with three common neighbors.

    Returns ``((a, b), (x, y, z))`` for the smallest such ``(a, b)``.
    """
    for a in g.vertices():
        # Count common neighbors with every b > a reached through a 2-path.
        via: dict[int, list[int]] = {}
        for w in sorted(g.adjacency[a]):
            for b in g.adjacency[w]:
                if b > a:
                    via.setdefault(b, []).append(w)
        hits = [b for b, ws in via.items() if len(ws) >= 3]
        if hits:
            b = min(hits)
            x, y, z = via[b][:3]
            return (a, b), (x, y, z)
    return None
