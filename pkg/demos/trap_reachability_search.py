"""
The trap-reachability search and its jungle
===========================================

The search walks arcs backwards from Controller vertices.  Environment
vertices join a tree only once all of their successors are known, and are
hung under the lowest common ancestor of those successors.
"""

from trapgraph import single_tree_arena, split_jungle_arena, tr_dfs, validate_jungle
from trapgraph.oracle import trap_reach
from trapgraph.trdfs import ArcLabel, ancestor_reach_pairs

a = single_tree_arena()
j = tr_dfs(a, check_invariants=True)   # debug mode re-checks counters and LCAs

# Visit indices and tree parents
for v in sorted(range(a.n), key=j.idx.__getitem__):
    p = j.tree_parent[v]
    print(f"{a.names[v]}: idx={j.idx[v]} parent={'-' if p is None else a.names[p]}")

# The exploration log, one classified arc per line
print()
print(j.format_log(), end="")

# Every arc has exactly one label
print()
for lab in ArcLabel:
    arcs = [f"{a.names[u]}{a.names[v]}" for u, v in j.arcs_with(lab)]
    print(f"{lab.value:8s} {' '.join(arcs)}")
print("axiom violations:", validate_jungle(a, j) or "none")

# Inside one palm tree, Controller can force a visit from any vertex to any
# of its ancestors.  The brute-force oracle confirms each pair.
pairs = ancestor_reach_pairs(j)
print(f"{sum(trap_reach(a, m, u, v) for u, v, m in pairs)}/{len(pairs)} ancestor pairs confirmed")

# A second arena where three Environment vertices never find a common ancestor
b = split_jungle_arena()
k = tr_dfs(b)
print()
print("unattached:", sorted(b.names[v] for v in k.unattached))
print("palm trees:", {b.names[r]: sorted(b.names[x] for x in s) for r, s in k.palm_trees().items()})
