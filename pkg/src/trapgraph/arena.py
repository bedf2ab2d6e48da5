"""Arenas: two-player game graphs with Controller/Environment ownership.

An arena is stored as a single ordered arc sequence.  Out- and in-adjacency
lists are derived from that sequence, so both follow arc declaration order
and an arena always serializes to a document that parses back identically.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class Owner(enum.Enum):
    CONTROLLER = "square"
    ENVIRONMENT = "circle"

    @property
    def tag(self) -> str:
        return self.value


SQUARE = Owner.CONTROLLER
CIRCLE = Owner.ENVIRONMENT


class ArenaError(ValueError):
    """Raised when an arena cannot be built or parsed."""


class ParseError(ArenaError):
    def __init__(self, lineno: int, kind: str, message: str):
        super().__init__(f"line {lineno}: {kind}: {message}")
        self.lineno = lineno
        self.kind = kind


@dataclass(frozen=True, eq=False)
class Arena:
    names: tuple
    owner: tuple
    arcs: tuple
    out_adj: tuple
    in_adj: tuple
    name_table: dict = field(repr=False)

    @classmethod
    def build(cls, names: Sequence[str], owners: Sequence[Owner],
              arcs: Iterable[tuple]) -> "Arena":
        """Build an arena, rejecting self-loops and parallel arcs."""
        names = tuple(names)
        owners = tuple(owners)
        if len(names) != len(owners):
            raise ArenaError("names and owners differ in length")
        table = {}
        for i, nm in enumerate(names):
            if nm in table:
                raise ArenaError(f"duplicate vertex name {nm!r}")
            table[nm] = i
        n = len(names)
        out_adj = [[] for _ in range(n)]
        in_adj = [[] for _ in range(n)]
        seen = set()
        arc_list = []
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ArenaError(f"arc ({u},{v}) out of range")
            if u == v:
                raise ArenaError(f"self-loop on {names[u]!r}")
            if (u, v) in seen:
                raise ArenaError(f"parallel arc {names[u]!r}->{names[v]!r}")
            seen.add((u, v))
            arc_list.append((u, v))
            out_adj[u].append(v)
            in_adj[v].append(u)
        return cls(names, owners, tuple(arc_list),
                   tuple(map(tuple, out_adj)), tuple(map(tuple, in_adj)), table)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def index(self, name: str) -> int:
        return self.name_table[name]

    def is_square(self, v: int) -> bool:
        return self.owner[v] is SQUARE

    def squares(self) -> list:
        return [v for v in range(self.n) if self.owner[v] is SQUARE]

    def circles(self) -> list:
        return [v for v in range(self.n) if self.owner[v] is CIRCLE]

    def min_outdegree(self) -> int:
        return min((len(o) for o in self.out_adj), default=0)

    def arc_names(self) -> list:
        return [(self.names[u], self.names[v]) for u, v in self.arcs]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Arena):
            return NotImplemented
        return (self.names == other.names and self.owner == other.owner
                and self.arcs == other.arcs)

    def __hash__(self):
        return hash((self.names, self.owner, self.arcs))


def arena_from_names(squares: Iterable[str], circles: Iterable[str],
                     arcs: Iterable[tuple]) -> Arena:
    """Convenience constructor: square names first, then circle names."""
    squares, circles = list(squares), list(circles)
    names = squares + circles
    owners = [SQUARE] * len(squares) + [CIRCLE] * len(circles)
    table = {nm: i for i, nm in enumerate(names)}
    return Arena.build(names, owners, [(table[u], table[v]) for u, v in arcs])


# --- text format -----------------------------------------------------------

def parse_arena(text: str) -> Arena:
    """Parse the line-oriented arena format.

    ``square <name>+`` and ``circle <name>+`` declare vertices, ``arc <src>
    <dst>`` declares one arc; ``#`` starts a comment.  Ids are assigned in
    first-mention order.
    """
    names: list = []
    owners: list = []
    table: dict = {}
    arcs: list = []
    seen: set = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head in ("square", "circle"):
            if not rest:
                raise ParseError(lineno, "syntax", f"{head} needs at least one name")
            own = Owner(head)
            for nm in rest:
                if nm in table:
                    prev = owners[table[nm]]
                    if prev is not own:
                        raise ParseError(lineno, "owner-conflict",
                                         f"vertex {nm!r} declared both {prev.tag} and {own.tag}")
                    raise ParseError(lineno, "duplicate-vertex", f"vertex {nm!r} declared twice")
                table[nm] = len(names)
                names.append(nm)
                owners.append(own)
        elif head == "arc":
            if len(rest) != 2:
                raise ParseError(lineno, "syntax", "arc needs exactly two names")
            src, dst = rest
            for nm in (src, dst):
                if nm not in table:
                    raise ParseError(lineno, "unknown-vertex", f"vertex {nm!r} used before declaration")
            u, v = table[src], table[dst]
            if u == v:
                raise ParseError(lineno, "self-loop", f"arc {src} {dst}")
            if (u, v) in seen:
                raise ParseError(lineno, "duplicate-arc", f"arc {src} {dst}")
            seen.add((u, v))
            arcs.append((u, v))
        else:
            raise ParseError(lineno, "unknown-owner", f"unknown directive {head!r}")
    return Arena.build(names, owners, arcs)


def serialize_arena(a: Arena) -> str:
    lines = []
    i = 0
    # group runs of equal owner to keep documents short; id order is preserved
    while i < a.n:
        j = i
        while j < a.n and a.owner[j] is a.owner[i]:
            j += 1
        lines.append(a.owner[i].tag + " " + " ".join(a.names[i:j]))
        i = j
    lines.extend(f"arc {a.names[u]} {a.names[v]}" for u, v in a.arcs)
    return "\n".join(lines) + "\n"


def read_arena(path) -> Arena:
    with open(path, encoding="utf-8") as fh:
        return parse_arena(fh.read())


# --- validation ------------------------------------------------------------

def validate(a: Arena) -> list:
    """Return a list of human-readable invariant violations (empty if valid)."""
    out = []
    n = a.n
    if len(a.owner) != n or len(a.out_adj) != n or len(a.in_adj) != n:
        return [f"size mismatch: {n} names, {len(a.owner)} owners, "
                f"{len(a.out_adj)} out-lists, {len(a.in_adj)} in-lists"]
    for v, own in enumerate(a.owner):
        if not isinstance(own, Owner):
            out.append(f"vertex {a.names[v]}: invalid owner {own!r}")
    if len(set(a.names)) != n:
        out.append("vertex names are not unique")
    seen = set()
    for u, v in a.arcs:
        if u == v:
            out.append(f"self-loop on {a.names[u]}")
        if (u, v) in seen:
            out.append(f"parallel arc {a.names[u]}->{a.names[v]}")
        seen.add((u, v))
    for u in range(n):
        if len(set(a.out_adj[u])) != len(a.out_adj[u]):
            out.append(f"vertex {a.names[u]}: repeated out-neighbor")
        for v in a.out_adj[u]:
            if u not in a.in_adj[v]:
                out.append(f"transpose mismatch: {a.names[u]}->{a.names[v]} "
                           f"missing from in-list of {a.names[v]}")
    for v in range(n):
        for u in a.in_adj[v]:
            if v not in a.out_adj[u]:
                out.append(f"transpose mismatch: {a.names[u]} in in-list of "
                           f"{a.names[v]} but {a.names[v]} not in its out-list")
    if sorted(seen) != sorted((u, v) for u in range(n) for v in a.out_adj[u]):
        out.append("arc sequence disagrees with out-adjacency")
    return out


# --- out-degree preprocessing ----------------------------------------------

class Verdict(enum.Enum):
    REDUCED = "reduced"
    COLLAPSED_TRIVIAL = "collapsed"
    IRREDUCIBLE = "irreducible"


@dataclass(frozen=True)
class TransformTrace:
    removed: tuple      # (name, "zero-outdegree" | "contracted")
    rewired: tuple      # ((src, old_dst), (src, new_dst)), by name
    verdict: Verdict
    blocked: tuple = ()  # names of vertices whose contraction was refused
    kept: tuple = ()     # old ids of surviving vertices, in new-id order


def preprocess(a: Arena) -> tuple:
    """Remove dead ends and contract out-degree-1 vertices until fixpoint.

    A contraction whose unique successor is also an in-neighbor would create
    a self-loop; it is refused and the vertex is reported as blocked.
    Vertices are scanned in ascending id on every pass.  Rewired arcs go to
    the end of the arc sequence and duplicates are dropped.
    """
    n = a.n
    arcs = {arc: k for k, arc in enumerate(a.arcs)}  # dict keeps insertion order
    out = [list(o) for o in a.out_adj]
    inn = [set(i) for i in a.in_adj]
    alive = [True] * n
    removed, rewired = [], []

    def drop_arc(u, v):
        del arcs[(u, v)]
        out[u].remove(v)
        inn[v].discard(u)

    changed = True
    while changed:
        changed = False
        for v in range(n):
            if not alive[v]:
                continue
            if not out[v]:
                for u in sorted(inn[v], key=lambda x: arcs[(x, v)]):
                    drop_arc(u, v)
                alive[v] = False
                removed.append((a.names[v], "zero-outdegree"))
                changed = True
            elif len(out[v]) == 1:
                w = out[v][0]
                if w in inn[v]:
                    continue
                for u in sorted(inn[v], key=lambda x: arcs[(x, v)]):
                    drop_arc(u, v)
                    rewired.append(((a.names[u], a.names[v]), (a.names[u], a.names[w])))
                    if (u, w) not in arcs:
                        arcs[(u, w)] = len(a.arcs) + len(rewired)
                        out[u].append(w)
                        inn[w].add(u)
                drop_arc(v, w)
                alive[v] = False
                removed.append((a.names[v], "contracted"))
                changed = True

    kept = [v for v in range(n) if alive[v]]
    blocked = tuple(a.names[v] for v in kept if len(out[v]) == 1)
    if len(kept) <= 1:
        verdict = Verdict.COLLAPSED_TRIVIAL
    elif blocked:
        verdict = Verdict.IRREDUCIBLE
    else:
        verdict = Verdict.REDUCED
    new_id = {old: i for i, old in enumerate(kept)}
    ordered = sorted(arcs, key=arcs.get)
    result = Arena.build([a.names[v] for v in kept], [a.owner[v] for v in kept],
                         [(new_id[u], new_id[v]) for u, v in ordered])
    trace = TransformTrace(tuple(removed), tuple(rewired), verdict, blocked, tuple(kept))
    return result, trace


def replay_trace(a: Arena, trace: TransformTrace) -> Arena:
    """Apply a trace to its input arena; yields the preprocessed arena."""
    arcs = [a.arc_names()[k] for k in range(a.m)]
    arcset = set(arcs)
    for old, new in trace.rewired:
        arcs.remove(old)
        arcset.discard(old)
        if new not in arcset:
            arcs.append(new)
            arcset.add(new)
    gone = {nm for nm, _ in trace.removed}
    arcs = [(u, v) for u, v in arcs if u not in gone and v not in gone]
    keep = [v for v in range(a.n) if a.names[v] not in gone]
    names = [a.names[v] for v in keep]
    table = {nm: i for i, nm in enumerate(names)}
    return Arena.build(names, [a.owner[v] for v in keep],
                       [(table[u], table[v]) for u, v in arcs])


def format_trace(trace: TransformTrace) -> str:
    lines = [f"remove {nm} {why}" for nm, why in trace.removed]
    lines += [f"rewire {o[0]} {o[1]} -> {w[0]} {w[1]}" for o, w in trace.rewired]
    lines.append(" ".join(["verdict", trace.verdict.value, *trace.blocked]))
    return "\n".join(lines) + "\n"


def parse_trace(text: str, original: Optional[Arena] = None) -> TransformTrace:
    removed, rewired = [], []
    verdict, blocked = None, ()
    for line in text.splitlines():
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "remove":
            removed.append((tok[1], tok[2]))
        elif tok[0] == "rewire":
            rewired.append(((tok[1], tok[2]), (tok[4], tok[5])))
        elif tok[0] == "verdict":
            verdict, blocked = Verdict(tok[1]), tuple(tok[2:])
        else:
            raise ArenaError(f"bad trace line {line!r}")
    if verdict is None:
        raise ArenaError("trace has no verdict line")
    kept = ()
    if original is not None:
        gone = {nm for nm, _ in removed}
        kept = tuple(v for v in range(original.n) if original.names[v] not in gone)
    return TransformTrace(tuple(removed), tuple(rewired), verdict, blocked, kept)


# --- DOT export ------------------------------------------------------------

_DOT_STYLE = {
    "tree": 'style="solid,bold"',
    "frond": "style=dashed",
    "petiole": "style=dotted",
    # Graphviz has no dash-dot line style; a dashed line with a dot head stands in
    "cross": "style=dashed, arrowhead=odot",
    "residual": "style=dotted, color=gray",
}


def to_dot(a: Arena, jungle=None) -> str:
    """Render an arena (optionally with a tr-DFS jungle) as Graphviz DOT."""
    if jungle is not None and len(jungle.idx) != a.n:
        raise ArenaError(f"jungle has {len(jungle.idx)} vertices, arena has {a.n}")
    lines = ["digraph arena {"]
    for v in range(a.n):
        shape = "box" if a.owner[v] is SQUARE else "ellipse"
        label = a.names[v] if jungle is None else f"{a.names[v]}:{jungle.idx[v]}"
        lines.append(f'  "{a.names[v]}" [shape={shape}, label="{label}"];')
    if jungle is None:
        for u, v in a.arcs:
            lines.append(f'  "{a.names[u]}" -> "{a.names[v]}";')
    else:
        for u, v, lab in jungle.jungle_arcs():
            key = lab.value
            lines.append(f'  "{a.names[u]}" -> "{a.names[v]}" [{_DOT_STYLE[key]}, label="{key}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- random instances ------------------------------------------------------

def random_arena(n: int, m: int, circle_fraction: float = 0.0, min_outdeg: int = 0,
                 seed: int = 0) -> Arena:
    """Deterministic random simple arena with ``n`` vertices and ``m`` arcs.

    Every vertex gets at least ``min_outdeg`` out-arcs and exactly
    ``floor(circle_fraction * n)`` vertices are Environment-owned.
    """
    if n < 0 or m < 0 or min_outdeg < 0:
        raise ArenaError("negative size")
    if not 0.0 <= circle_fraction <= 1.0:
        raise ArenaError("circle_fraction must lie in [0, 1]")
    if m > n * (n - 1):
        raise ArenaError(f"infeasible: m={m} exceeds n(n-1)={n * (n - 1)}")
    if min_outdeg * n > m or (n > 0 and min_outdeg > n - 1):
        raise ArenaError(f"infeasible: min_outdeg={min_outdeg} with n={n}, m={m}")
    rng = random.Random(seed)
    arcs = []
    seen = set()
    for u in range(n):
        if min_outdeg:
            for v in rng.sample(range(n - 1), min_outdeg):
                v = v + (v >= u)
                arcs.append((u, v))
                seen.add((u, v))
    extra = m - len(arcs)
    if extra > (n * (n - 1) - len(arcs)) // 2:
        rest = [(u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in seen]
        arcs.extend(rng.sample(rest, extra))
    else:
        while extra:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            v = v + (v >= u)
            if (u, v) not in seen:
                seen.add((u, v))
                arcs.append((u, v))
                extra -= 1
    rng.shuffle(arcs)
    k = int(circle_fraction * n)
    circ = set(rng.sample(range(n), k))
    owners = [CIRCLE if v in circ else SQUARE for v in range(n)]
    return Arena.build([f"v{i}" for i in range(n)], owners, arcs)
