import random
from itertools import combinations
from pathlib import Path

import networkx as nx
from hypothesis import given, settings

from helpers import arenas, reduced_corpus
from trapgraph.arena import Arena, SQUARE, parse_arena, random_arena
from trapgraph.figures import single_tree_arena, split_jungle_arena, triangle, two_pairs
from trapgraph.oracle import stcc_oracle, strongly_trap_connected
from trapgraph.stcc import compute_stccs, parse_report, report_partition, routing_forest, stcc_roots

GOLDEN = Path(__file__).parent / "golden"


def check_structure(a, d):
    """Partition, root fixpoints and forest shape of one decomposition."""
    n = a.n
    assert sorted(v for c in d.components for v in c) == list(range(n))
    for k, c in enumerate(d.components):
        assert all(d.comp_id[v] == k for v in c)
    assert set(d.roots) == stcc_roots(d)
    for v in range(n):
        if v not in d.roots:
            assert d.tr_lowlink[v] < d.idx[v]
    parent = d.forest.parent_map()
    for child, par in d.forest.tree:
        assert d.idx[child] > d.idx[par]
    assert len(d.forest.cross_links) < max(a.m, 1)
    # each component hangs together as a subtree below its root
    for root, comp in zip(d.roots, d.components):
        for v in comp:
            if v != root:
                assert parent.get(v) in comp


def test_triangle():
    d = compute_stccs(triangle())
    assert d.partition() == [frozenset({0, 1, 2})]
    assert d.roots == (0,)
    check_structure(triangle(), d)


def test_disjoint_pairs():
    a = two_pairs()
    d = compute_stccs(a)
    assert d.partition() == [frozenset({0, 1}), frozenset({2, 3})]
    assert len(stcc_roots(d)) == 2
    k = 4
    arcs = [(2 * i + s, 2 * i + 1 - s) for i in range(k) for s in (0, 1)]
    b = Arena.build([f"q{i}" for i in range(2 * k)], [SQUARE] * (2 * k), arcs)
    assert len(stcc_roots(compute_stccs(b))) == k


def test_single_tree_matches_golden():
    a = single_tree_arena()
    d = compute_stccs(a)
    want = report_partition((GOLDEN / "single_tree.stcc").read_text())
    assert report_partition(d.report()) == want
    check_structure(a, d)


def test_split_jungle_roots_one_per_component():
    a = split_jungle_arena()
    d = compute_stccs(a)
    assert d.partition() == stcc_oracle(a)
    assert len(stcc_roots(d)) == len(stcc_oracle(a))
    names = {(a.names[u], a.names[v]) for u, v in routing_forest(d).tree
             if a.owner[u] is SQUARE}
    assert names <= {("B", "A"), ("E", "A"), ("G", "A")}


def test_report_format():
    d = compute_stccs(single_tree_arena())
    lines = d.report().splitlines()
    assert lines[0].startswith("stcc 0: root=")
    rows = parse_report(d.report())
    assert len(rows) == len(d.components)
    for root, members in rows:
        assert root in members and members == sorted(members)


def test_cycle_with_chords_forest():
    a = parse_arena("square a b c d e\narc a b\narc b c\narc c d\narc d e\narc e a\n"
                    "arc a c\narc c e\narc e b\n")
    d = compute_stccs(a)
    assert len(d.components) == 1
    f = routing_forest(d)
    assert len(f.tree) == a.n - 1
    parent = f.parent_map()
    for v in range(a.n):
        x = v
        while x in parent:
            x = parent[x]
        assert x == d.roots[0]
    assert f.cross_links and set(f.cross_links) <= set(a.arcs)


def test_singleton_forest_is_empty():
    d = compute_stccs(parse_arena("square x\n"))
    assert d.forest.tree == () and d.forest.cross_links == ()
    assert d.partition() == [frozenset({0})]


def test_agrees_with_oracle_on_reduced_arenas():
    for a in reduced_corpus(150, 11, seed=21):
        d = compute_stccs(a)
        assert d.partition() == stcc_oracle(a)
        check_structure(a, d)


@settings(max_examples=60, deadline=None)
@given(arenas(min_n=3, max_n=9, min_outdeg=2, circle_prob=0.5))
def test_agrees_with_oracle_property(a):
    d = compute_stccs(a)
    part = d.partition()
    assert part == stcc_oracle(a)
    for c1, c2 in combinations(part, 2):
        assert not strongly_trap_connected(a, c1 | c2)


def test_controller_only_is_scc_in_topological_order():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 120)
        m = rng.randint(0, min(n * (n - 1), 3 * n))
        a = random_arena(n, m, 0.0, 0, rng.getrandbits(32))
        g = nx.DiGraph()
        g.add_nodes_from(range(n))
        g.add_edges_from(a.arcs)
        d = compute_stccs(a)
        assert d.partition() == sorted((frozenset(c) for c in nx.strongly_connected_components(g)),
                                       key=min)
        # searching against the arcs emits source components first
        for u, v in a.arcs:
            assert d.comp_id[u] <= d.comp_id[v]
        check_structure(a, d)


def test_find_steps_bound():
    for n in (1000, 5000):
        a = random_arena(n, 3 * n, 0.25, 2, 9)
        d = compute_stccs(a)
        assert d.find_steps <= 5 * (1 + a.n + a.m)
