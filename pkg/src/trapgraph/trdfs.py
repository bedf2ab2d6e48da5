"""Trap-reachability depth-first search over arenas.

The search walks arcs backwards, starting from Controller vertices.  A
Controller in-neighbor joins the current tree as soon as it is met.  An
Environment in-neighbor waits until every one of its out-neighbors has been
visited; it is then hung under the lowest common ancestor of those
out-neighbors, provided that ancestor is still on the active path.  LCAs are
answered by a disjoint-set forest whose unions follow the tree being built.

The result is a *jungle*: a family of palm trees (tree arcs plus fronds,
petioles and cross-links) and a set of unattached Environment vertices.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .arena import Arena, ArenaError, CIRCLE, SQUARE
from .dsf import Dsf


class ArcLabel(enum.Enum):
    TREE = "tree"
    FROND = "frond"
    PETIOLE = "petiole"
    CROSS = "cross"
    RESIDUAL = "residual"


class InvariantError(AssertionError):
    """A run-time invariant check failed (debug mode only)."""


@dataclass(frozen=True)
class TrJungle:
    names: tuple
    owner: tuple
    arcs: tuple          # the arena's arcs, in declaration order
    labels: tuple        # one ArcLabel per arc
    idx: tuple           # visit index per vertex, 1..n
    tree_parent: tuple   # parent id or None
    palm_root: tuple     # root id or None for unattached vertices
    unattached: frozenset
    exploration_log: tuple  # ((u, v), ArcLabel) in the order arcs were examined
    find_steps: int = 0
    _label_map: dict = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.idx)

    @property
    def label(self) -> dict:
        if self._label_map is None:
            object.__setattr__(self, "_label_map", dict(zip(self.arcs, self.labels)))
        return self._label_map

    def arcs_with(self, lab: ArcLabel) -> list:
        return [arc for arc, l in zip(self.arcs, self.labels) if l is lab]

    def tree_arcs(self) -> list:
        """All tree arcs, including Environment attachments that are not arena arcs."""
        return [(v, p) for v, p in enumerate(self.tree_parent) if p is not None]

    def synthetic_tree_arcs(self) -> list:
        label = self.label
        return [(v, p) for v, p in self.tree_arcs() if (v, p) not in label]

    def jungle_arcs(self) -> list:
        """(u, v, label) for every arena arc, then each synthetic tree arc."""
        out = [(u, v, lab) for (u, v), lab in zip(self.arcs, self.labels)]
        out += [(u, v, ArcLabel.TREE) for u, v in self.synthetic_tree_arcs()]
        return out

    def children(self) -> list:
        ch = [[] for _ in range(self.n)]
        for v in sorted(range(self.n), key=self.idx.__getitem__):
            p = self.tree_parent[v]
            if p is not None:
                ch[p].append(v)
        return ch

    def palm_trees(self) -> dict:
        """Map each palm-tree root to the set of its vertices."""
        trees: dict = {}
        for v, r in enumerate(self.palm_root):
            if r is not None:
                trees.setdefault(r, set()).add(v)
        return {r: frozenset(s) for r, s in trees.items()}

    def format_log(self) -> str:
        nm = self.names
        return "".join(f"{k}. ({nm[u]},{nm[v]}) {lab.value}\n"
                       for k, ((u, v), lab) in enumerate(self.exploration_log, start=1))


def parse_log(text: str) -> list:
    """Parse ``format_log`` output back into ``[(step, u, v, label)]`` by name."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        step, arc, lab = line.split()
        u, v = arc.strip("()").split(",")
        out.append((int(step.rstrip(".")), u, v, ArcLabel(lab)))
    return out


def _naive_lca(parent: list, nodes) -> Optional[int]:
    nodes = list(nodes)
    path = []
    x = nodes[0]
    while x != -1:
        path.append(x)
        x = parent[x]
    common = set(path)
    for y in nodes[1:]:
        anc = set()
        while y != -1:
            anc.add(y)
            y = parent[y]
        common &= anc
    for x in path:  # deepest first
        if x in common:
            return x
    return None


def tr_dfs(a: Arena, check_invariants: bool = False) -> TrJungle:
    """Run the trap-reachability DFS and return the resulting jungle.

    Every Environment vertex must have at least one out-neighbor.  Controller
    vertices without out-arcs are allowed; they simply never get chosen by a
    player move.  With ``check_invariants`` the counter invariant and the
    LCA choice are re-verified naively at every step (quadratic; tests only).
    """
    n = a.n
    owner = a.owner
    out_adj, in_adj = a.out_adj, a.in_adj
    for v in range(n):
        if owner[v] is CIRCLE and not out_adj[v]:
            raise ArenaError(f"environment vertex {a.names[v]} has no out-arcs")
    is_sq = [o is SQUARE for o in owner]

    idx = [0] * n               # 0 means unvisited
    vertex_at = [0] * (n + 1)
    active = [False] * n
    parent = [-1] * n
    cnt = [len(o) for o in out_adj]
    low_ready = [n + 1] * n
    ready = [[] for _ in range(n)]
    dsf = Dsf(n)
    for v in range(n):
        dsf.make_set(v)

    tree_sq = set()   # Controller tree arcs, known at scan time
    fronds, crosses = set(), set()
    scanned = []      # arcs in examination order
    next_idx = 1
    stack = []        # frames: [vertex, position in its in-list]

    def check_cnt(literal):
        # cnt counts out-arcs not yet examined; once no scan is in progress
        # that is the number of unvisited out-neighbors
        done = set(scanned)
        for u in range(n):
            if not is_sq[u] and idx[u] == 0:
                want = sum(1 for x in out_adj[u] if (u, x) not in done)
                if literal:
                    lit = sum(1 for x in out_adj[u] if idx[x] == 0)
                    if lit != want:
                        raise InvariantError(f"cnt[{a.names[u]}] lags unvisited count {lit}")
                if cnt[u] != want:
                    raise InvariantError(f"cnt[{a.names[u]}]={cnt[u]}, expected {want}")

    for root in range(n):
        if not is_sq[root] or idx[root]:
            continue
        idx[root] = next_idx
        vertex_at[next_idx] = root
        next_idx += 1
        active[root] = True
        stack.append([root, 0])
        while stack:
            frame = stack[-1]
            v, pos = frame
            ins = in_adj[v]
            child = -1
            while pos < len(ins):
                u = ins[pos]
                pos += 1
                scanned.append((u, v))
                if idx[u] == 0:
                    if is_sq[u]:
                        tree_sq.add((u, v))
                        parent[u] = v
                        child = u
                        break
                    if idx[v] < low_ready[u]:
                        low_ready[u] = idx[v]
                    cnt[u] -= 1
                    if cnt[u] == 0:
                        gamma = dsf.find(vertex_at[low_ready[u]])
                        if check_invariants:
                            want = _naive_lca(parent, out_adj[u])
                            if active[gamma] and want != gamma:
                                raise InvariantError(
                                    f"attachment of {a.names[u]}: find gave {a.names[gamma]}, "
                                    f"LCA is {None if want is None else a.names[want]}")
                        if active[gamma]:
                            ready[gamma].append(u)
                    if check_invariants:
                        check_cnt(False)
                elif active[u]:
                    fronds.add((u, v))
                else:
                    crosses.add((u, v))
            frame[1] = pos
            if child < 0 and ready[v]:
                child = ready[v].pop()
                parent[child] = v
            if child >= 0:
                idx[child] = next_idx
                vertex_at[next_idx] = child
                next_idx += 1
                active[child] = True
                stack.append([child, 0])
                continue
            stack.pop()
            active[v] = False
            if stack:
                dsf.union(v, stack[-1][0])
            elif check_invariants:
                check_cnt(True)

    for v in range(n):
        if idx[v] == 0:
            idx[v] = next_idx
            next_idx += 1

    unattached = frozenset(v for v in range(n) if not is_sq[v] and parent[v] == -1)

    def classify(u, v):
        if u in unattached or v in unattached:
            return ArcLabel.RESIDUAL
        if not is_sq[u]:
            return ArcLabel.TREE if parent[u] == v else ArcLabel.PETIOLE
        if (u, v) in tree_sq:
            return ArcLabel.TREE
        if (u, v) in fronds:
            return ArcLabel.FROND
        if (u, v) in crosses:
            return ArcLabel.CROSS
        raise InvariantError(f"arc ({a.names[u]},{a.names[v]}) was never classified")

    labels = tuple(classify(u, v) for u, v in a.arcs)
    label_of = dict(zip(a.arcs, labels))
    seen = set(scanned)
    order = scanned + [arc for arc in a.arcs if arc not in seen]
    log = tuple((arc, label_of[arc]) for arc in order)

    palm_root = [None] * n
    for v in sorted(range(n), key=idx.__getitem__):
        if v in unattached:
            continue
        p = parent[v]
        palm_root[v] = v if p == -1 else palm_root[p]

    return TrJungle(
        names=a.names, owner=a.owner, arcs=a.arcs, labels=labels, idx=tuple(idx),
        tree_parent=tuple(None if p == -1 else p for p in parent),
        palm_root=tuple(palm_root), unattached=unattached,
        exploration_log=log, find_steps=dsf.find_steps,
    )


# --- structural checks -----------------------------------------------------

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: str

    def __str__(self):
        return f"{self.axiom}: {self.witness}"


class _Tree:
    """Ancestor queries on the jungle's tree arcs via entry/exit times."""

    def __init__(self, j: TrJungle):
        n = j.n
        self.parent = [(-1 if p is None else p) for p in j.tree_parent]
        ch = [[] for _ in range(n)]
        roots = []
        for v in range(n):
            p = self.parent[v]
            if p == -1:
                roots.append(v)
            elif 0 <= p < n:
                ch[p].append(v)
        self.tin = [-1] * n
        self.tout = [-1] * n
        clock = 0
        for r in roots:
            stack = [(r, 0)]
            self.tin[r] = clock
            clock += 1
            while stack:
                v, i = stack[-1]
                if i < len(ch[v]):
                    stack[-1] = (v, i + 1)
                    c = ch[v][i]
                    if self.tin[c] != -1:
                        continue
                    self.tin[c] = clock
                    clock += 1
                    stack.append((c, 0))
                else:
                    self.tout[v] = clock
                    clock += 1
                    stack.pop()
        # vertices on a parent cycle never get a time; treat them as isolated
        self.acyclic = all(t != -1 for t in self.tin)

    def is_ancestor(self, x: int, y: int) -> bool:
        """x is an ancestor of y (reflexive)."""
        if self.tin[x] < 0 or self.tin[y] < 0:
            return x == y
        return self.tin[x] <= self.tin[y] and self.tout[y] <= self.tout[x]

    def lca(self, nodes) -> Optional[int]:
        nodes = list(nodes)
        x = nodes[0]
        while x != -1:
            if all(self.is_ancestor(x, y) for y in nodes):
                return x
            x = self.parent[x]
            if x != -1 and self.tin[x] < 0:
                return None
        return None


def validate_jungle(a: Arena, j: TrJungle) -> list:
    """Check every structural axiom of a jungle against its arena.

    Returns a list of :class:`Violation`; empty means the jungle is sound.
    """
    if j.n != a.n:
        raise ArenaError(f"jungle has {j.n} vertices, arena has {a.n}")
    n = a.n
    nm = a.names
    out: list = []

    def bad(axiom, witness):
        out.append(Violation(axiom, witness))

    def arc_s(u, v):
        return f"({nm[u]},{nm[v]})"

    if sorted(j.idx) != list(range(1, n + 1)):
        bad("idx", "visit indices are not a bijection onto 1..n")
    if tuple(j.arcs) != tuple(a.arcs) or len(j.labels) != len(a.arcs):
        bad("labels", "labelled arcs differ from the arena's arcs")
        return out

    idx = j.idx
    label = j.label
    is_sq = [o is SQUARE for o in a.owner]
    unatt = j.unattached
    T = _Tree(j)
    if not T.acyclic:
        bad("tr-pt-1", "tree arcs contain a cycle")

    # (tr-pt-1): tree arcs form an inward forest with Controller roots and
    # decreasing indices toward the root
    for v in range(n):
        p = j.tree_parent[v]
        if p is None:
            if v not in unatt and not is_sq[v]:
                bad("tr-pt-1", f"root {nm[v]} is an environment vertex")
            continue
        if v in unatt:
            bad("tr-jn-4", f"unattached vertex {nm[v]} has a tree parent")
        if not idx[v] > idx[p]:
            bad("tr-pt-1", f"tree arc {arc_s(v, p)} has idx {idx[v]} <= {idx[p]}")
        if is_sq[v] and label.get((v, p)) is not ArcLabel.TREE:
            bad("tr-pt-1", f"controller tree arc {arc_s(v, p)} is not a labelled arena arc")
    for (u, v), lab in label.items():
        if lab is ArcLabel.TREE and j.tree_parent[u] != v:
            bad("tr-pt-1", f"arc {arc_s(u, v)} labelled tree but parent of {nm[u]} differs")

    root_of = j.palm_root
    for v in range(n):
        if v in unatt:
            if root_of[v] is not None:
                bad("tr-jn-4", f"unattached vertex {nm[v]} has a palm root")
            continue
        r = v
        while j.tree_parent[r] is not None and T.tin[r] >= 0:
            r = j.tree_parent[r]
            if T.tin[r] < 0:
                break
        if root_of[v] != r:
            bad("tr-jn-2", f"palm root of {nm[v]} recorded wrongly")

    for (u, v), lab in label.items():
        w = arc_s(u, v)
        if lab is ArcLabel.FROND:
            # (tr-pt-2)
            if not is_sq[u]:
                bad("tr-pt-2", f"frond {w} leaves an environment vertex")
            if u == v or not T.is_ancestor(u, v):
                bad("tr-pt-2", f"frond {w} does not reach a proper descendant")
        elif lab is ArcLabel.CROSS:
            if not is_sq[u]:
                bad("tr-pt-4", f"cross-link {w} leaves an environment vertex")
            if root_of[u] is not None and root_of[u] == root_of[v]:
                # (tr-pt-4)
                if T.is_ancestor(u, v):
                    bad("tr-pt-4", f"cross-link {w} reaches a descendant")
                if not ((T.is_ancestor(v, u) and u != v) or idx[u] < idx[v]):
                    bad("tr-pt-4", f"cross-link {w} points forward to a non-ancestor")
        elif lab is ArcLabel.RESIDUAL:
            if u not in unatt and v not in unatt:
                bad("residual", f"arc {w} labelled residual between attached vertices")
        if lab is not ArcLabel.RESIDUAL and (u in unatt or v in unatt):
            bad("residual", f"arc {w} touches an unattached vertex but is labelled {lab.value}")
        # (tr-jn-3): arcs between distinct palm trees
        ru, rv = root_of[u], root_of[v]
        if ru is not None and rv is not None and ru != rv:
            if not is_sq[u]:
                bad("tr-jn-3", f"inter-tree arc {w} leaves an environment vertex")
            if not idx[ru] < idx[rv]:
                bad("tr-jn-3", f"inter-tree arc {w} goes to an earlier palm tree")
            if lab is not ArcLabel.CROSS:
                bad("tr-jn-3", f"inter-tree arc {w} labelled {lab.value}")

    # (tr-pt-3): attached environment vertices
    for u in range(n):
        if is_sq[u] or u in unatt:
            continue
        p = j.tree_parent[u]
        if p is None:
            continue
        succ = set(a.out_adj[u])
        pet = {t for t in succ if label[(u, t)] is ArcLabel.PETIOLE}
        if p in pet or pet != succ - {p}:
            bad("tr-pt-3", f"petioles of {nm[u]} and its parent {nm[p]} do not split its out-arcs")
        if any(root_of[t] != root_of[u] for t in succ):
            bad("tr-pt-3", f"out-neighbors of {nm[u]} leave its palm tree")
        elif T.lca(succ) != p:
            bad("tr-pt-3", f"parent {nm[p]} of {nm[u]} is not the LCA of its out-neighbors")
        for t in succ:
            if not idx[u] > idx[t]:
                bad("tr-pt-3", f"{nm[u]} has idx {idx[u]} not above out-neighbor {nm[t]}")

    # (tr-jn-4): unattached vertices are environment vertices spanning trees
    for v in unatt:
        if is_sq[v]:
            bad("tr-jn-4", f"unattached vertex {nm[v]} is a controller vertex")
        roots = {root_of[t] for t in a.out_adj[v]}
        if len(roots) == 1 and None not in roots:
            bad("tr-jn-4", f"unattached {nm[v]} has all out-neighbors in one palm tree")
    return out


# --- derived views ---------------------------------------------------------

def support(j: TrJungle, a: Arena) -> Arena:
    """The jungle minus its environment-sourced tree arcs, as an arena.

    Environment tree arcs that are not arena arcs disappear.  An arena arc
    from an environment vertex to its own parent doubles as a petiole, so it
    stays.  The result therefore carries exactly the arena's arcs.
    """
    synthetic = set(j.synthetic_tree_arcs())
    keep = [arc for arc in j.arcs if arc not in synthetic]
    return Arena.build(a.names, a.owner, keep)


def reconstruct_check(j: TrJungle, a: Arena) -> bool:
    """Rerun the search on the support, reordered by visit index.

    Vertices are renumbered in ``idx`` order and every in-neighbor list is
    sorted by ``idx``.  The jungle is reproduced when tree parents,
    non-residual labels and the unattached set all coincide.
    """
    sup = support(j, a)
    order = sorted(range(a.n), key=j.idx.__getitem__)
    new_of = {old: new for new, old in enumerate(order)}
    # a stable sort by source rank leaves each in-list sorted by idx
    arcs = sorted(sup.arcs, key=lambda arc: new_of[arc[0]])
    re = Arena.build([sup.names[v] for v in order], [sup.owner[v] for v in order],
                     [(new_of[u], new_of[v]) for u, v in arcs])
    k = tr_dfs(re)
    parents = tuple(None if k.tree_parent[new_of[v]] is None else order[k.tree_parent[new_of[v]]]
                    for v in range(a.n))
    if parents != j.tree_parent:
        return False
    if {order[v] for v in k.unattached} != set(j.unattached):
        return False
    mine = {arc: lab for arc, lab in j.label.items() if lab is not ArcLabel.RESIDUAL}
    theirs = {(order[u], order[v]): lab for (u, v), lab in k.label.items()
              if lab is not ArcLabel.RESIDUAL}
    return mine == theirs


def ancestor_reach_pairs(j: TrJungle) -> list:
    """All (descendant, ancestor, palm-tree vertex set) triples, reflexive included."""
    trees = j.palm_trees()
    out = []
    for v in sorted(range(j.n), key=j.idx.__getitem__):
        r = j.palm_root[v]
        if r is None:
            continue
        members = trees[r]
        x = v
        while x is not None:
            out.append((v, x, members))
            x = j.tree_parent[x]
    return out
