from itertools import combinations, combinations_with_replacement
from math import factorial

import pytest

from isoresidual.core import ResourceLimit, validate
from isoresidual.counting import f
from isoresidual.fiber import num_components
from isoresidual.realgraphs import (
    adjacency_components,
    delete_edge,
    endpoint_closure_violations,
    enumerate_saddle_graphs,
    enumerate_zero_graphs,
    export_dot,
    labeled_trees,
    local_rotations,
    unicyclic_graphs,
)


def _check_local_rules(g):
    for v, rot in enumerate(g.rotation):
        assert g.half_edges(v) == 2 * g.pole_orders[v] - 2
        for i, (_, end, gap) in enumerate(rot):
            nxt_end = rot[(i + 1) % len(rot)][1]
            assert gap % 2 == (end != nxt_end)
    assert g.euler_characteristic() == 2


def test_labeled_tree_counts():
    for n in range(1, 7):
        assert len(set(labeled_trees(n))) == max(1, n ** (n - 2))


def _connected(n, edges):
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for u, w in edges:
            for a, b in ((u, w), (w, u)):
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_unicyclic_graphs_match_brute_force(n):
    pairs = list(combinations(range(n), 2))
    brute = {m for m in combinations_with_replacement(pairs, n) if _connected(n, m)}
    assert set(unicyclic_graphs(n)) == brute


def test_local_rotation_parity():
    # one incoming and one outgoing end around a double pole: gaps (1, 1) only
    assert local_rotations([(0, 1), (1, 0)], 2) == [((0, 1, 1), (1, 0, 1))]
    # both incoming: gaps (0, 2) or (2, 0)
    assert len(local_rotations([(0, 1), (1, 1)], 2)) == 2
    # a simple pole cannot have mixed orientations
    assert local_rotations([(0, 1), (1, 0)], 0) == []


def test_four_simple_poles(stratum):
    zs = enumerate_zero_graphs(stratum("1,1,-1,-1,-1,-1"), 0)
    assert len(zs) == 2
    for g in zs:
        # a star centred at the positive pole
        assert all(h == 0 for _, h in g.edges)


@pytest.mark.parametrize("t", range(4, 8))
def test_simple_poles_give_permutations(t):
    s = validate((1, t - 3), (1,) * t)
    assert len(enumerate_zero_graphs(s, 0)) == factorial(t - 2)


@pytest.mark.parametrize("P", range(3))
def test_double_pole_trees(stratum, P):
    assert len(enumerate_zero_graphs(stratum("1,1,-2,-1,-1"), P)) == f(2, 3)


@pytest.mark.parametrize("mu", ["2,3,-1,-2,-4", "1,1,-2,-1,-1", "2,2,-2,-2,-2", "1,3,-3,-2,-1"])
def test_zero_graph_invariants(stratum, mu):
    s = stratum(mu)
    for P in range(s.p):
        zs = enumerate_zero_graphs(s, P)
        assert len(zs) == f(s.a1 + s.a2, s.p)
        assert len({g.key for g in zs}) == len(zs)
        for g in zs:
            assert g.num_edges == s.p - 1
            assert g.faces() == [(0, 2 * (s.a1 + s.a2) + 2)]
            assert all(h == P or t != P for t, h in g.edges)  # nothing leaves P
            _check_local_rules(g)


@pytest.mark.parametrize("mu", ["2,3,-1,-2,-4", "1,1,-2,-1,-1", "1,1,-1,-1,-1,-1", "2,2,-3,-2,-1"])
def test_saddle_graph_invariants(stratum, mu):
    s = stratum(mu)
    zs = enumerate_zero_graphs(s, 0)
    ss = enumerate_saddle_graphs(s, 0)
    assert endpoint_closure_violations(zs, ss) == []
    weights = sorted([2 * s.a1 + 2, 2 * s.a2 + 2])
    for sg in ss:
        g = sg.graph
        assert g.num_edges == s.p
        assert sorted(w for _, w in g.faces()) == weights
        for lab, w in g.faces():
            assert w == 2 * s.zero_orders[lab] + 2
        assert sg.length_form.is_partial_sum()
        assert sg.bottom != sg.top and sg.loop[0] == sg.top
        out_at_bottom = [e for e, (t, _) in enumerate(g.edges) if t == sg.bottom]
        assert len([e for e in out_at_bottom if g.edges[e][1] in sg.loop]) >= 2
        _check_local_rules(g)


def test_two_three_saddle_faces(stratum):
    ss = enumerate_saddle_graphs(stratum("2,3,-1,-2,-4"), 0)
    assert ss
    assert all(sorted(w for _, w in sg.graph.faces()) == [6, 8] for sg in ss)


def test_saddles_join_both_cyclic_orders(stratum):
    s = stratum("1,1,-1,-1,-1,-1")
    zs = enumerate_zero_graphs(s, 0)
    ss = enumerate_saddle_graphs(s, 0)
    pairs = {frozenset(e.key for e in sg.endpoints) for sg in ss}
    assert frozenset(g.key for g in zs) in pairs


def test_edge_deletion_keeps_half_edges(stratum):
    sg = enumerate_saddle_graphs(stratum("2,3,-1,-2,-4"), 0)[0]
    t = delete_edge(sg.graph, 0)
    assert t.num_edges == sg.graph.num_edges - 1
    assert [t.half_edges(v) for v in range(t.p)] == [sg.graph.half_edges(v) for v in range(t.p)]


@pytest.mark.parametrize(
    "mu, k",
    [
        ("1,1,-1,-1,-1,-1", 1),
        ("2,2,-1,-1,-1,-1,-1,-1", 2),
        ("2,2,-4,-1,-1", 2),
        ("3,3,-6,-1,-1", 3),
        ("1,2,-1,-1,-1,-1,-1", 1),
        ("1,1,-2,-1,-1", 1),
    ],
)
def test_adjacency_matches_component_count(stratum, mu, k):
    s = stratum(mu)
    assert adjacency_components(s, 0) == num_components(s) == k


def test_positive_pole_choice_does_not_matter(stratum):
    s = stratum("2,2,-4,-1,-1")
    assert {adjacency_components(s, P) for P in range(3)} == {2}


def test_parallel_enumeration_agrees(stratum):
    s = stratum("1,2,-1,-1,-1,-1,-1")
    one = enumerate_saddle_graphs(s, 0)
    two = enumerate_saddle_graphs(s, 0, jobs=2)
    assert [sg.graph.key for sg in one] == [sg.graph.key for sg in two]


def test_bounds(stratum):
    with pytest.raises(ResourceLimit):
        enumerate_zero_graphs(stratum("4,4,-8,-1,-1"), 0)
    with pytest.raises(ResourceLimit):
        enumerate_zero_graphs(stratum("1,6," + ",".join(["-1"] * 9)), 0)
    # override flag lifts the bound
    assert len(enumerate_zero_graphs(stratum("4,4,-8,-1,-1"), 0, max_order=8)) == f(8, 3)
    with pytest.raises(IndexError):
        enumerate_zero_graphs(stratum("1,1,-2,-1,-1"), 3)


def test_dot_export(stratum):
    assert export_dot([]).count("digraph") == 0
    assert export_dot([]).startswith("//")
    zs = enumerate_zero_graphs(stratum("1,1,-2,-1,-1"), 0)
    text = export_dot(zs[:1])
    assert text.count("digraph") == 1
    assert "[shape=point]" in text and "// face z1" in text
    assert export_dot(zs) == export_dot(enumerate_zero_graphs(stratum("1,1,-2,-1,-1"), 0))
