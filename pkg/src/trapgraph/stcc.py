"""Linear-time decomposition of an arena into strongly trap-connected components.

This is the trap-reachability DFS extended with a Tarjan-style vertex stack
and lowlink values.  A component is emitted whenever a vertex finishes with
``lowlink == idx``.  Environment vertices that never attach are emitted as
singletons once the search is over.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arena import Arena, ArenaError, CIRCLE, SQUARE
from .dsf import Dsf


@dataclass(frozen=True)
class RoutingForest:
    tree: tuple         # (child, parent) in the order the unions happened
    cross_links: tuple  # (u, v): in-neighbor u of v found on the stack

    def parent_map(self) -> dict:
        return dict(self.tree)


@dataclass(frozen=True)
class StccDecomposition:
    names: tuple
    comp_id: tuple
    components: tuple    # tuples of vertex ids, in pop order
    roots: tuple
    tr_lowlink: tuple
    idx: tuple
    forest: RoutingForest
    find_steps: int = 0

    def partition(self) -> list:
        return sorted((frozenset(c) for c in self.components), key=min)

    def report(self) -> str:
        nm = self.names
        lines = []
        for k, (root, comp) in enumerate(zip(self.roots, self.components)):
            members = ",".join(sorted(nm[v] for v in comp))
            lines.append(f"stcc {k}: root={nm[root]} members={members}")
        return "".join(line + "\n" for line in lines)


def parse_report(text: str) -> list:
    """Parse a component report into ``[(root_name, [member names])]``."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        head, rest = line.split(":", 1)
        if not head.startswith("stcc "):
            raise ValueError(f"bad report line {line!r}")
        root_tok, mem_tok = rest.split()
        out.append((root_tok.split("=", 1)[1], mem_tok.split("=", 1)[1].split(",")))
    return out


def report_partition(text: str) -> set:
    """The set of member-name sets described by a report."""
    return {frozenset(m) for _, m in parse_report(text)}


def compute_stccs(a: Arena) -> StccDecomposition:
    """Decompose ``a`` into its strongly trap-connected components.

    Every Environment vertex needs an out-arc.  The traversal is iterative;
    frames keep the scan position in the in-neighbor list.
    """
    n = a.n
    out_adj, in_adj = a.out_adj, a.in_adj
    for v in range(n):
        if a.owner[v] is CIRCLE and not out_adj[v]:
            raise ArenaError(f"environment vertex {a.names[v]} has no out-arcs")
    is_sq = [o is SQUARE for o in a.owner]

    idx = [0] * n
    low = [0] * n
    vertex_at = [0] * (n + 1)
    on_stack = [False] * n
    cnt = [len(o) for o in out_adj]
    low_ready = [n + 1] * n
    ready = [[] for _ in range(n)]
    dsf = Dsf(n)
    for v in range(n):
        dsf.make_set(v)

    St = []
    comps, roots = [], []
    tree, cross = [], []
    next_idx = 1
    frames = []

    for root in range(n):
        if not is_sq[root] or idx[root]:
            continue
        idx[root] = low[root] = next_idx
        vertex_at[next_idx] = root
        next_idx += 1
        St.append(root)
        on_stack[root] = True
        frames.append([root, 0])
        while frames:
            frame = frames[-1]
            v, pos = frame
            ins = in_adj[v]
            child = -1
            while pos < len(ins):
                u = ins[pos]
                pos += 1
                if idx[u] == 0:
                    if is_sq[u]:
                        child = u
                        break
                    if idx[v] < low_ready[u]:
                        low_ready[u] = idx[v]
                    cnt[u] -= 1
                    if cnt[u] == 0:
                        gamma = dsf.find(vertex_at[low_ready[u]])
                        if on_stack[gamma]:
                            ready[gamma].append(u)
                elif on_stack[u]:
                    if idx[u] < low[v]:
                        low[v] = idx[u]
                    cross.append((u, v))
            frame[1] = pos
            if child < 0:
                r = ready[v]
                while r:
                    u = r.pop()
                    if all(on_stack[x] for x in out_adj[u]):
                        child = u
                        break
            if child >= 0:
                idx[child] = low[child] = next_idx
                vertex_at[next_idx] = child
                next_idx += 1
                St.append(child)
                on_stack[child] = True
                frames.append([child, 0])
                continue
            frames.pop()
            if low[v] == idx[v]:
                comp = []
                while True:
                    u = St.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                comps.append(tuple(comp))
                roots.append(v)
            if frames:
                p = frames[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                dsf.union(v, p)
                tree.append((v, p))

    for v in range(n):
        if idx[v] == 0:
            idx[v] = low[v] = next_idx
            next_idx += 1
    # environment vertices that never attached become singleton components
    assigned = [False] * n
    for c in comps:
        for v in c:
            assigned[v] = True
    for v in sorted((v for v in range(n) if not assigned[v]), key=idx.__getitem__):
        comps.append((v,))
        roots.append(v)

    comp_id = [0] * n
    for k, c in enumerate(comps):
        for v in c:
            comp_id[v] = k
    return StccDecomposition(
        names=a.names, comp_id=tuple(comp_id), components=tuple(comps), roots=tuple(roots),
        tr_lowlink=tuple(low), idx=tuple(idx),
        forest=RoutingForest(tuple(tree), tuple(cross)), find_steps=dsf.find_steps,
    )


def stcc_roots(d: StccDecomposition) -> set:
    """Vertices whose lowlink equals their visit index."""
    return {v for v in range(len(d.idx)) if d.tr_lowlink[v] == d.idx[v]}


def routing_forest(d: StccDecomposition) -> RoutingForest:
    return d.forest
