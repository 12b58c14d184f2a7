"""Exact Token Jumping decision by breadth-first search over token placements.

A state is a sorted tuple of occupied vertices. From a state one token may
jump to any vertex that is unoccupied and has no occupied neighbor once the
jumping token has left.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph import Graph
from .instance import TokenInstance, check_tokens

Move = tuple[int, int]
State = tuple[int, ...]

DEFAULT_BUDGET = 5_000_000

YES = "yes"
NO = "no"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SearchStats:
    states_visited: int = 0
    states_generated: int = 0
    frontier_peak: int = 0
    decided: str = ""


@dataclass(frozen=True)
class SolveResult:
    decision: str
    witness: list[Move] | None
    stats: SearchStats = field(compare=False)


def _successors(g: Graph, state: State) -> Iterator[tuple[Move, State]]:
    # Count how many tokens cover each vertex's closed neighborhood.
    cover = [0] * g.vertex_count
    for t in state:
        cover[t] += 1
        for w in g.adjacency[t]:
            cover[w] += 1
    occupied = set(state)
    for idx, u in enumerate(state):
        own = g.adjacency[u]
        rest = state[:idx] + state[idx + 1:]
        for v in range(g.vertex_count):
            if v in occupied:
                continue
            # The departing token on u contributes one to cover[v] iff v ~ u.
            if cover[v] - (1 if v in own else 0) != 0:
                continue
            yield (u, v), tuple(sorted(rest + (v,)))


def _path_moves(parent: dict[State, tuple[State, Move] | None], end: State) -> list[Move]:
    moves: list[Move] = []
    s = end
    while parent[s] is not None:
        s, mv = parent[s]
        moves.append(mv)
    moves.reverse()
    return moves


def solve(
    g: Graph,
    i: Iterable[int],
    j: Iterable[int],
    budget: int | None = DEFAULT_BUDGET,
    bidirectional: bool = False,
) -> SolveResult:
    """Decide whether ``i`` can be transformed into ``j``.

    Returns a shortest witness on ``yes``. ``budget`` caps the number of
    distinct states discovered; exceeding it yields ``budget_exceeded``.
    """
    i, j = check_tokens(g, i, j)
    start, goal = tuple(sorted(i)), tuple(sorted(j))
    if bidirectional:
        return _solve_bidirectional(g, start, goal, budget)

    stats = SearchStats(states_generated=1)
    if start == goal:
        stats.decided = YES
        return SolveResult(YES, [], stats)

    parent: dict[State, tuple[State, Move] | None] = {start: None}
    queue = deque([start])
    while queue:
        stats.frontier_peak = max(stats.frontier_peak, len(queue))
        s = queue.popleft()
        stats.states_visited += 1
        for mv, t in _successors(g, s):
            if t in parent:
                continue
            parent[t] = (s, mv)
            stats.states_generated += 1
            if t == goal:
                stats.decided = YES
                return SolveResult(YES, _path_moves(parent, t), stats)
            if budget is not None and stats.states_generated > budget:
                stats.decided = BUDGET_EXCEEDED
                return SolveResult(BUDGET_EXCEEDED, None, stats)
            queue.append(t)
    stats.decided = NO
    return SolveResult(NO, None, stats)


def _solve_bidirectional(g: Graph, start: State, goal: State, budget: int | None) -> SolveResult:
    stats = SearchStats(states_generated=1 if start == goal else 2)
    if start == goal:
        stats.decided = YES
        return SolveResult(YES, [], stats)

    # Jumps are reversible, so the backward search uses the same successor relation.
    fwd: dict[State, tuple[State, Move] | None] = {start: None}
    bwd: dict[State, tuple[State, Move] | None] = {goal: None}
    fq, bq = deque([start]), deque([goal])

    def stitch(meet: State) -> list[Move]:
        head = _path_moves(fwd, meet)
        tail = [(v, u) for u, v in reversed(_path_moves(bwd, meet))]
        return head + tail

    while fq and bq:
        stats.frontier_peak = max(stats.frontier_peak, len(fq) + len(bq))
        forward = len(fq) <= len(bq)
        queue, seen, other = (fq, fwd, bwd) if forward else (bq, bwd, fwd)
        # Grow the smaller side one full layer at a time.
        for _ in range(len(queue)):
            s = queue.popleft()
            stats.states_visited += 1
            for mv, t in _successors(g, s):
                if t in seen:
                    continue
                seen[t] = (s, mv)
                stats.states_generated += 1
                if t in other:
                    stats.decided = YES
                    return SolveResult(YES, stitch(t), stats)
                if budget is not None and stats.states_generated > budget:
                    stats.decided = BUDGET_EXCEEDED
                    return SolveResult(BUDGET_EXCEEDED, None, stats)
                queue.append(t)
    stats.decided = NO
    return SolveResult(NO, None, stats)


@dataclass(frozen=True)
class Validation:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_sequence(
    g: Graph, i: Iterable[int], j: Iterable[int], seq: Sequence[Move]
) -> Validation:
    """Replay ``seq`` from ``i`` and report the first illegal step, if any."""
    current = set(i)
    target = set(j)
    n = g.vertex_count
    for idx, (u, v) in enumerate(seq):
        if not (0 <= u < n and 0 <= v < n):
            return Validation(False, idx, f"move ({u}, {v}) leaves [0, {n})")
        if u not in current:
            return Validation(False, idx, f"no token on {u}")
        if v in current:
            return Validation(False, idx, f"{v} is already occupied")
        current.discard(u)
        clash = g.adjacency[v] & current
        if clash:
            return Validation(False, idx, f"{v} is adjacent to token on {min(clash)}")
        current.add(v)
    if current != target:
        return Validation(False, len(seq), "final placement differs from target")
    return Validation(True)


def equivalent_under_oracle(
    a: TokenInstance, b: TokenInstance, budget: int | None = DEFAULT_BUDGET
) -> str:
    """``yes`` if both instances get the same answer, ``no`` if they differ,
    ``unknown`` if either search runs out of budget."""
    ra = solve(a.graph, a.i, a.j, budget)
    rb = solve(b.graph, b.i, b.j, budget)
    if BUDGET_EXCEEDED in (ra.decision, rb.decision):
        return "unknown"
    return "yes" if ra.decision == rb.decision else "no"
