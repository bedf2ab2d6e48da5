"""Brute-force ground truth for trap-reachability questions.

Everything here is deliberately simple: attractor fixpoints, all-pairs
checks and exponential subset enumeration.  These functions are the
reference the fast algorithms are tested against.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .arena import Arena, ArenaError, SQUARE

STCC_ORACLE_LIMIT = 16


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class ReachSet:
    target: int
    universe: frozenset
    members: frozenset


def _attractor(a: Arena, inside, v: int) -> set:
    """Vertices of ``inside`` from which Controller forces a visit to ``v``.

    ``inside`` is anything supporting ``in`` (a set or a range).
    Environment vertices count down their out-neighbors; every out-neighbor
    outside the universe is a permanent escape and is never counted.
    """
    out_adj, in_adj = a.out_adj, a.in_adj
    is_sq = [o is SQUARE for o in a.owner]
    need = {}
    reached = {v}
    work = [v]
    while work:
        x = work.pop()
        for u in in_adj[x]:
            if u in reached or u not in inside:
                continue
            if is_sq[u]:
                reached.add(u)
                work.append(u)
            else:
                k = need.get(u)
                if k is None:
                    k = len(out_adj[u])
                k -= 1
                need[u] = k
                if k == 0:
                    reached.add(u)
                    work.append(u)
    return reached


def trap_attractor(a: Arena, U, v: int) -> ReachSet:
    """Least fixpoint of the controlled-predecessor operator inside ``U``."""
    U = frozenset(U)
    if v not in U:
        raise OracleError(f"target {v} is not in the universe")
    return ReachSet(v, U, frozenset(_attractor(a, U, v)))


def trap_reach(a: Arena, U, u: int, v: int) -> bool:
    U = frozenset(U)
    if u not in U or v not in U:
        raise OracleError("both endpoints must lie in the universe")
    return u in _attractor(a, U, v)


def strongly_trap_connected(a: Arena, U) -> bool:
    U = frozenset(U)
    return all(len(_attractor(a, U, v)) == len(U) for v in U)


def _stc_fast(a: Arena, U: frozenset, order) -> bool:
    # checks the targets most likely to fail first
    for v in order:
        if v in U and len(_attractor(a, U, v)) != len(U):
            return False
    return True


def stcc_oracle(a: Arena) -> list:
    """Partition ``V`` into maximal strongly trap-connected sets.

    Candidate subsets are tried by decreasing size among the vertices not yet
    assigned; the first one that passes is a component.  This relies on
    maximal strongly trap-connected sets being pairwise disjoint, which is
    asserted on the final result.
    """
    n = a.n
    if n > STCC_ORACLE_LIMIT:
        raise OracleError(f"n={n} exceeds the oracle budget of {STCC_ORACLE_LIMIT}")
    left = list(range(n))
    comps = []
    while left:
        found = None
        for size in range(len(left), 0, -1):
            for cand in combinations(left, size):
                U = frozenset(cand)
                if _stc_fast(a, U, cand):
                    found = U
                    break
            if found:
                break
        comps.append(found)
        left = [v for v in left if v not in found]
    # blocks must be maximal among all vertex subsets, not just the leftovers
    for c in comps:
        for x in range(n):
            if x not in c and strongly_trap_connected(a, c | {x}):
                raise OracleError("maximal strongly trap-connected sets overlap")
    return sorted((frozenset(c) for c in comps), key=min)


def un_baseline(a: Arena) -> bool:
    """Update-network test by one attractor per target (quadratic overall)."""
    if a.n == 0:
        return True
    every = range(a.n)
    return all(len(_attractor(a, every, v)) == a.n for v in every)


def _columns(a: Arena, square: bool):
    """Vertices of one owner sorted by falling out-degree, plus successor columns.

    Column ``k`` lists the ``k``-th successor of every vertex with more than
    ``k`` out-arcs; because of the sort those vertices form a prefix.
    """
    vs = sorted((v for v in range(a.n) if (a.owner[v] is SQUARE) == square),
                key=lambda v: -len(a.out_adj[v]))
    cols = []
    for k in range(len(a.out_adj[vs[0]]) if vs else 0):
        cols.append(np.array([a.out_adj[v][k] for v in vs if len(a.out_adj[v]) > k],
                             dtype=np.int64))
    return np.array(vs, dtype=np.int64), cols


def un_baseline_bitset(a: Arena, batch: int = 4096) -> bool:
    """Same decision as :func:`un_baseline`, with targets processed in bit batches.

    Row ``x`` of the matrix holds one bit per target of the current batch,
    set when ``x`` is known to reach that target.  Controller rows OR their
    successors' rows, Environment rows AND them, and the update is repeated
    until nothing changes.  No early exit is taken, so the cost grows like
    ``n * m`` overall.
    """
    n = a.n
    if n == 0:
        return True
    if min(len(o) for o in a.out_adj) == 0:
        raise ArenaError("every vertex needs an out-arc")
    sq_v, sq_cols = _columns(a, True)
    ci_v, ci_cols = _columns(a, False)
    verdict = True
    for lo in range(0, n, batch):
        hi = min(n, lo + batch)
        words = (hi - lo + 63) // 64
        t = np.arange(lo, hi)
        seed = np.zeros((n, words), dtype=np.uint64)
        seed[t, (t - lo) // 64] = np.uint64(1) << ((t - lo) % 64).astype(np.uint64)
        R = seed
        while True:
            new = seed.copy()
            for verts, cols, op in ((sq_v, sq_cols, np.bitwise_or), (ci_v, ci_cols, np.bitwise_and)):
                if not cols:
                    continue
                acc = R[cols[0]]
                for c in cols[1:]:
                    op(acc[:len(c)], R[c], out=acc[:len(c)])
                new[verts] |= acc
            if np.array_equal(new, R):
                break
            R = new
        full = np.full(words, ~np.uint64(0), dtype=np.uint64)
        tail = (hi - lo) % 64
        if tail:
            full[-1] = (np.uint64(1) << np.uint64(tail)) - np.uint64(1)
        if not (R == full).all():
            verdict = False
    return verdict
