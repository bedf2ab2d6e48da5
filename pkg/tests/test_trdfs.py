from dataclasses import replace

import pytest
from hypothesis import given, settings

from helpers import arenas, reduced_corpus
from trapgraph.arena import ArenaError, SQUARE, parse_arena, random_arena
from trapgraph.figures import single_tree_arena, split_jungle_arena, triangle, two_pairs
from trapgraph.oracle import trap_reach
from trapgraph.trdfs import (ArcLabel, ancestor_reach_pairs, parse_log, reconstruct_check,
                             support, tr_dfs, validate_jungle)


def named(j, arcs):
    return {(j.names[u], j.names[v]) for u, v in arcs}


def idx_by_name(j):
    return {j.names[v]: j.idx[v] for v in range(j.n)}


def test_single_tree_reference():
    a = single_tree_arena()
    j = tr_dfs(a, check_invariants=True)
    idx = idx_by_name(j)
    assert [idx[x] for x in "ABDEGH"] == [1, 2, 3, 4, 5, 6]
    assert (idx["C"], idx["F"]) == (7, 8)
    assert named(j, j.tree_arcs()) == {("B", "A"), ("D", "B"), ("E", "D"), ("G", "D"),
                                      ("H", "A"), ("C", "A"), ("F", "A")}
    assert named(j, j.arcs_with(ArcLabel.FROND)) == {("A", "G")}
    assert named(j, j.arcs_with(ArcLabel.PETIOLE)) == {
        ("C", "B"), ("C", "E"), ("C", "H"), ("F", "E"), ("F", "G"), ("F", "H")}
    assert j.arcs_with(ArcLabel.CROSS) == [] and j.arcs_with(ArcLabel.RESIDUAL) == []
    assert j.unattached == frozenset()
    assert validate_jungle(a, j) == []


def test_split_jungle_reference():
    a = split_jungle_arena()
    j = tr_dfs(a, check_invariants=True)
    idx = idx_by_name(j)
    assert [idx[x] for x in "ABEGHCDF"] == list(range(1, 9))
    assert named(j, j.tree_arcs()) == {("B", "A"), ("E", "A"), ("G", "A")}
    assert {j.names[v] for v in j.unattached} == {"C", "D", "F"}
    H = a.index("H")
    assert j.palm_root[H] == H and j.tree_parent[H] is None
    assert validate_jungle(a, j) == []


def test_label_totality():
    for a in reduced_corpus(40, 30, seed=11):
        j = tr_dfs(a)
        assert len(j.labels) == a.m
        assert sum(len(j.arcs_with(lab)) for lab in ArcLabel) == a.m


def test_log_format_and_roundtrip():
    j = tr_dfs(single_tree_arena())
    text = j.format_log()
    first = text.splitlines()[0]
    assert first == "1. (B,A) tree"
    rows = parse_log(text)
    assert len(rows) == 12
    assert [r[0] for r in rows] == list(range(1, 13))
    # the two environment vertices finish the scan of H
    assert {(r[1], r[2]) for r in rows[-2:]} == {("C", "H"), ("F", "H")}


def test_environment_without_out_arcs_rejected():
    with pytest.raises(ArenaError):
        tr_dfs(parse_arena("square a\ncircle b\narc a b\n"))


def plain_reverse_dfs(a):
    """Textbook recursive DFS over in-arcs, classifying tree/frond/cross."""
    n = a.n
    seen, active, kind = [False] * n, [False] * n, {}

    def visit(v):
        seen[v] = active[v] = True
        for u in a.in_adj[v]:
            if not seen[u]:
                kind[(u, v)] = "tree"
                visit(u)
            else:
                kind[(u, v)] = "frond" if active[u] else "cross"
        active[v] = False

    for r in range(n):
        if not seen[r]:
            visit(r)
    return kind


@settings(max_examples=60)
@given(arenas(min_n=1, max_n=12, min_outdeg=0, circle_prob=0.0))
def test_controller_only_matches_plain_dfs(a):
    j = tr_dfs(a)
    want = plain_reverse_dfs(a)
    got = {arc: lab.value for arc, lab in j.label.items()}
    assert got == want
    assert not j.arcs_with(ArcLabel.PETIOLE) and not j.arcs_with(ArcLabel.RESIDUAL)


@settings(max_examples=80)
@given(arenas(min_n=2, max_n=9, min_outdeg=1))
def test_invariants_hold_on_general_arenas(a):
    j = tr_dfs(a, check_invariants=True)
    assert validate_jungle(a, j) == []


def test_validate_random_reduced():
    for a in reduced_corpus(200, 60, seed=3):
        assert validate_jungle(a, tr_dfs(a)) == []


def test_flipped_tree_arc_is_reported():
    a = split_jungle_arena()
    j = tr_dfs(a)
    A, B = a.index("A"), a.index("B")
    parent = list(j.tree_parent)
    parent[B], parent[A] = None, B
    bad = replace(j, tree_parent=tuple(parent))
    assert "tr-pt-1" in {v.axiom for v in validate_jungle(a, bad)}


def test_wrong_attachment_is_reported():
    a = single_tree_arena()
    j = tr_dfs(a)
    parent = list(j.tree_parent)
    parent[a.index("C")] = a.index("D")
    bad = replace(j, tree_parent=tuple(parent))
    found = validate_jungle(a, bad)
    assert any(v.axiom == "tr-pt-3" and "LCA" in v.witness for v in found)


def test_validate_size_mismatch():
    with pytest.raises(ArenaError):
        validate_jungle(triangle(), tr_dfs(single_tree_arena()))


def test_support_keeps_arena_arcs():
    for a in (single_tree_arena(), split_jungle_arena(), two_pairs()):
        j = tr_dfs(a)
        assert support(j, a) == a
    j = tr_dfs(single_tree_arena())
    assert named(j, j.synthetic_tree_arcs()) == {("C", "A"), ("F", "A")}


def test_reconstruct_references():
    for a in (single_tree_arena(), split_jungle_arena(), triangle()):
        assert reconstruct_check(tr_dfs(a), a)


def test_reconstruct_known_counterexample():
    # Rerunning on the idx-sorted support swaps the ready-stack order of v2
    # and v4 under v0, so v3 ends up below a different vertex.
    a = parse_arena("square v0 v1\ncircle v2\nsquare v3\ncircle v4\n"
                    "arc v0 v1\narc v3 v2\narc v0 v4\narc v1 v0\narc v1 v4\narc v3 v4\n"
                    "arc v4 v0\narc v2 v1\narc v2 v0\narc v4 v1\n")
    j = tr_dfs(a)
    assert validate_jungle(a, j) == []
    assert not reconstruct_check(j, a)


def test_ancestor_pairs_references():
    a = single_tree_arena()
    j = tr_dfs(a)
    everything = frozenset(range(a.n))
    assert (a.index("F"), a.index("A"), everything) in ancestor_reach_pairs(j)
    b = split_jungle_arena()
    k = tr_dfs(b)
    H = b.index("H")
    assert [p for p in ancestor_reach_pairs(k) if p[0] == H] == [(H, H, frozenset({H}))]
    assert all(p[0] not in k.unattached for p in ancestor_reach_pairs(k))


def test_ancestor_pairs_confirmed_by_oracle():
    for seed in range(40):
        n = 12 + seed % 10
        a = random_arena(n, 3 * n, 0.3 if seed % 2 else 0.5, 2, seed)
        for u, v, members in ancestor_reach_pairs(tr_dfs(a)):
            assert trap_reach(a, members, u, v)


def test_linear_work():
    for n in (500, 2000, 8000):
        a = random_arena(n, 3 * n, 0.25, 2, n)
        j = tr_dfs(a)
        assert j.find_steps <= 5 * (1 + a.n + a.m)
