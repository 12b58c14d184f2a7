import pytest
from hypothesis import given, settings, strategies as st

from tjkernel.classify import classify, pair_count_bound_report
from tjkernel.graph import build_graph, is_independent
from tjkernel.instance import InstanceError

P5 = [(0, 1), (1, 2), (2, 3), (3, 4)]
K23 = [(a, b) for a in (0, 1) for b in (2, 3, 4)]
K33 = [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)]


def brute_signature(n, edges, x):
    """N(v) & X straight from the edge list."""
    sig = {v: set() for v in range(n) if v not in x}
    for a, b in edges:
        if a in x and b not in x:
            sig[b].add(a)
        if b in x and a not in x:
            sig[a].add(b)
    return sig


def test_path_endpoints():
    cls = classify(build_graph(5, P5), {0}, {4})
    assert cls.x == {0, 4}
    assert cls.signature == {1: {0}, 2: set(), 3: {4}}
    assert cls.c1 == {1, 2, 3}
    assert cls.c2 == set() and cls.c3 == set()
    assert cls.pairs == []


def test_k23_all_one_side_in_pair():
    cls = classify(build_graph(5, K23), {0}, {1})
    assert cls.c2 == {2, 3, 4}
    assert cls.pairs == [(0, 1)]
    assert cls.pair_members[(0, 1)] == {2, 3, 4}


def test_k33_signatures_match_brute_force():
    expected = brute_signature(6, K33, {0, 1, 3, 4})
    assert expected == {2: {3, 4}, 5: {0, 1}}
    cls = classify(build_graph(6, K33), {0, 1}, {3, 4})
    assert cls.signature == expected
    assert cls.c2 == {2, 5}
    assert cls.pairs == [(0, 1), (3, 4)]


def test_overlapping_token_sets_allowed():
    cls = classify(build_graph(5, P5), {0, 2}, {0, 4})
    assert cls.x == {0, 2, 4}
    assert cls.c2 == {1, 3}
    assert cls.pair_members == {(0, 2): {1}, (2, 4): {3}}


def test_rejects_dependent_tokens():
    with pytest.raises(InstanceError, match=r"\(0, 1\)"):
        classify(build_graph(5, P5), {0, 1}, {3, 4})


def test_rejects_unequal_sizes():
    with pytest.raises(InstanceError, match="differs"):
        classify(build_graph(5, P5), {0, 2}, {4})


@st.composite
def instances(draw):
    n = draw(st.integers(2, 14))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=40))
    g = build_graph(n, edges)
    # Greedy independent sets from two random vertex orders.
    def pick(order):
        s = []
        for v in order:
            if not g.neighbors(v) & set(s):
                s.append(v)
        return s
    a = pick(draw(st.permutations(range(n))))
    b = pick(draw(st.permutations(range(n))))
    k = draw(st.integers(1, min(len(a), len(b))))
    return g, edges, set(a[:k]), set(b[:k])


@settings(max_examples=300)
@given(instances())
def test_partition_and_signature_properties(inst):
    g, edges, i, j = inst
    assert is_independent(g, i) and is_independent(g, j)
    cls = classify(g, i, j)
    x = i | j
    outside = set(range(g.vertex_count)) - x
    assert cls.c1 | cls.c2 | cls.c3 == outside
    assert not (cls.c1 & cls.c2) and not (cls.c1 & cls.c3) and not (cls.c2 & cls.c3)
    assert cls.signature == brute_signature(g.vertex_count, edges, x)
    for v in outside:
        size = len(cls.signature[v])
        assert (v in cls.c1) == (size <= 1)
        assert (v in cls.c2) == (size == 2)
        assert (v in cls.c3) == (size >= 3)
    members = {}
    for v in cls.c2:
        members.setdefault(tuple(sorted(cls.signature[v])), set()).add(v)
    assert cls.pair_members == members
    assert all(cls.pair_members[y] for y in cls.pairs)


def test_bound_report_k23_exceeds_small_x_bound():
    cls = classify(build_graph(5, K23), {0}, {1})
    rep = pair_count_bound_report(cls, 0)
    assert rep["pair_count"] == 1
    assert rep["pair_bound"] == 0
    assert rep["pair_bound_holds"] is False


def test_bound_report_grid_x4():
    from tjkernel.generators import grid_graph

    g = grid_graph(3, 3)
    cls = classify(g, {0, 8}, {2, 6})
    rep = pair_count_bound_report(cls, 0)
    assert rep["pair_bound"] == 3 * 4 - 6
    assert rep["pair_count"] == len(cls.pairs)
    assert rep["c3_bound"] == 8 * 2


def test_bound_report_without_genus_only_counts():
    cls = classify(build_graph(5, K23), {0}, {1})
    assert pair_count_bound_report(cls) == {"pair_count": 1, "c3_size": 0}
