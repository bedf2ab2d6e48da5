"""Update games: deciding them, winning them, and refereeing plays.

Controller wins an update game when every vertex is visited infinitely
often.  That happens exactly when the whole arena is one strongly
trap-connected component, and then cycling through each Controller vertex's
out-arcs in turn is already a winning strategy.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Optional

from .arena import Arena, ArenaError, SQUARE, Verdict, preprocess
from .oracle import un_baseline
from .stcc import RoutingForest, StccDecomposition, compute_stccs

DEFAULT_STEP_CAP = 10**7
DEFAULT_ENUM_BUDGET = 10**5


class GameError(ValueError):
    pass


class NotUpdateNetwork(GameError):
    pass


class StepCapExceeded(GameError):
    pass


class BudgetExceeded(GameError):
    pass


# --- decision --------------------------------------------------------------

@dataclass(frozen=True)
class UnDecision:
    un: bool
    method: str                 # "linear" or "fallback"
    verdict: Verdict            # what preprocessing reported
    decomposition: Optional[StccDecomposition] = None


def decide_un_detailed(a: Arena) -> UnDecision:
    """Decide the update game on ``a`` and say how the answer was obtained.

    Contracting or deleting vertices can change who wins, so the linear
    decomposition is used only when preprocessing leaves the arena as it is.
    Any other arena is decided by the quadratic baseline.
    """
    if a.n and min(len(o) for o in a.out_adj) == 0:
        raise ArenaError("every vertex needs an out-arc")
    reduced, trace = preprocess(a)
    if trace.verdict is Verdict.REDUCED and not trace.removed:
        d = compute_stccs(a)
        return UnDecision(len(d.components) == 1, "linear", trace.verdict, d)
    return UnDecision(un_baseline(a), "fallback", trace.verdict)


def decide_un(a: Arena) -> bool:
    return decide_un_detailed(a).un


# --- strategy --------------------------------------------------------------

class UpdateAgent:
    """Round-robin Controller strategy.

    Each Controller vertex keeps a cursor into its out-list; a move returns
    the arc under the cursor and advances it cyclically.  The routing forest
    of the decomposition is carried along as a certificate but is not
    consulted while playing.
    """

    def __init__(self, arena: Arena, forest: Optional[RoutingForest] = None):
        self.arena = arena
        self.forest = forest
        self.out_adj = arena.out_adj
        self.is_sq = [o is SQUARE for o in arena.owner]
        self.cursor = [0] * arena.n

    def move(self, v: int) -> int:
        if not self.is_sq[v]:
            raise GameError(f"vertex {self.arena.names[v]} belongs to the environment")
        succ = self.out_adj[v]
        c = self.cursor[v]
        self.cursor[v] = c + 1 if c + 1 < len(succ) else 0
        return succ[c]

    def state(self) -> tuple:
        return tuple(self.cursor)

    def clone(self) -> "UpdateAgent":
        other = self.__class__.__new__(self.__class__)
        other.__dict__.update(self.__dict__)
        other.cursor = list(self.cursor)
        return other


def synthesize(a: Arena) -> UpdateAgent:
    dec = decide_un_detailed(a)
    if not dec.un:
        raise NotUpdateNetwork("arena is not an update network")
    if dec.method != "linear":
        raise GameError("arena was decided by the fallback; no linear certificate to attach")
    return UpdateAgent(a, dec.decomposition.forest)


def agent_move(g: UpdateAgent, v: int) -> int:
    return g.move(v)


# --- adversaries -----------------------------------------------------------

class Adversary:
    """Environment policy; ``state()`` must capture everything ``next`` uses."""

    def next(self, v: int) -> int:
        raise NotImplementedError

    def state(self):
        return None

    def clone(self) -> "Adversary":
        raise NotImplementedError


class Positional(Adversary):
    def __init__(self, arena: Arena, choice: dict):
        self.arena = arena
        self.choice = dict(choice)
        for v in range(arena.n):
            if arena.owner[v] is SQUARE:
                continue
            if v not in self.choice:
                raise GameError(f"no choice given for environment vertex {arena.names[v]}")
            if self.choice[v] not in arena.out_adj[v]:
                raise GameError(f"choice at {arena.names[v]} is not an out-neighbor")

    @classmethod
    def first_arc(cls, arena: Arena) -> "Positional":
        return cls(arena, {v: arena.out_adj[v][0] for v in arena.circles()})

    def next(self, v: int) -> int:
        return self.choice[v]

    def clone(self):
        return self

    def format(self) -> str:
        nm = self.arena.names
        return "".join(f"{nm[v]} {nm[w]}\n" for v, w in sorted(self.choice.items()))


def parse_positional(arena: Arena, text: str) -> Positional:
    """Read ``<circle-vertex> <successor>`` lines.

    Environment vertices not mentioned take their first out-arc.
    """
    choice = {v: arena.out_adj[v][0] for v in arena.circles()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GameError(f"line {lineno}: expected '<circle-vertex> <choice>'")
        try:
            v, w = arena.index(parts[0]), arena.index(parts[1])
        except KeyError as exc:
            raise GameError(f"line {lineno}: unknown vertex {exc.args[0]!r}") from None
        if arena.owner[v] is SQUARE:
            raise GameError(f"line {lineno}: {parts[0]} is not an environment vertex")
        choice[v] = w
    return Positional(arena, choice)


_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class SeededRandom(Adversary):
    """Pseudo-random choices from a counter that wraps after ``period`` moves.

    Keeping the state finite guarantees that plays eventually repeat.
    """

    def __init__(self, arena: Arena, seed: int, period: int = 64):
        self.arena = arena
        self.seed = seed & _MASK
        self.period = period
        self.counter = 0

    def next(self, v: int) -> int:
        h = _splitmix64(self.seed ^ _splitmix64((self.counter << 32) ^ v))
        self.counter = (self.counter + 1) % self.period
        succ = self.arena.out_adj[v]
        return succ[h % len(succ)]

    def state(self):
        return self.counter

    def clone(self):
        other = SeededRandom(self.arena, self.seed, self.period)
        other.counter = self.counter
        return other


class Scripted(Adversary):
    """Play a fixed list of Environment moves, then defer to a positional policy."""

    def __init__(self, arena: Arena, moves, fallback: Positional):
        self.arena = arena
        self.moves = list(moves)
        self.fallback = fallback
        self.pos = 0

    def next(self, v: int) -> int:
        if self.pos < len(self.moves):
            w = self.moves[self.pos]
            self.pos += 1
            if w not in self.arena.out_adj[v]:
                raise GameError(f"scripted move {self.arena.names[w]} is not legal at "
                                f"{self.arena.names[v]}")
            return w
        return self.fallback.next(v)

    def state(self):
        return self.pos

    def clone(self):
        other = Scripted(self.arena, self.moves, self.fallback)
        other.pos = self.pos
        return other


def positional_policies(a: Arena, budget: int = DEFAULT_ENUM_BUDGET):
    """Yield every positional Environment policy, refusing oversized spaces."""
    circ = a.circles()
    total = 1
    for v in circ:
        total *= len(a.out_adj[v])
    if total > budget:
        raise BudgetExceeded(f"{total} positional policies exceed the budget of {budget}")
    for pick in itertools.product(*(a.out_adj[v] for v in circ)):
        yield Positional(a, dict(zip(circ, pick)))


# --- referee ---------------------------------------------------------------

@dataclass(frozen=True)
class PlayReport:
    trace: tuple
    loop_start: int
    loop_alphabet: frozenset

    def format_trace(self, arena: Arena) -> str:
        return "".join(f"{k} {arena.names[v]} {arena.owner[v].tag}\n"
                       for k, v in enumerate(self.trace))


def parse_trace(text: str) -> list:
    out = []
    for line in text.splitlines():
        if line.strip():
            step, name, tag = line.split()
            out.append((int(step), name, tag))
    return out


def _step_cap(cap: Optional[int]) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("TRAPGRAPH_STEP_CAP")
    return int(env) if env else DEFAULT_STEP_CAP


def referee_play(a: Arena, g: UpdateAgent, adv: Adversary, start: int,
                 step_cap: Optional[int] = None) -> PlayReport:
    """Play until the joint (vertex, cursors, adversary state) repeats.

    The agent and adversary passed in are cloned, so the caller's objects
    keep their state and repeated calls give identical reports.
    """
    cap = _step_cap(step_cap)
    g = g.clone()
    adv = adv.clone()
    is_sq = g.is_sq
    seen = {}
    trace = []
    v = start
    while True:
        key = (v, g.state(), adv.state())
        first = seen.get(key)
        if first is not None:
            return PlayReport(tuple(trace), first, frozenset(trace[first:]))
        if len(trace) >= cap:
            raise StepCapExceeded(f"no repetition within {cap} steps")
        seen[key] = len(trace)
        trace.append(v)
        v = g.move(v) if is_sq[v] else adv.next(v)


def verify_update_win(a: Arena, g: UpdateAgent, budget: int = DEFAULT_ENUM_BUDGET,
                      step_cap: Optional[int] = None) -> bool:
    """True iff the agent visits every vertex forever against every positional
    adversary from every start vertex."""
    every = frozenset(range(a.n))
    for adv in positional_policies(a, budget):
        for start in range(a.n):
            if referee_play(a, g, adv, start, step_cap).loop_alphabet != every:
                return False
    return True


def find_spoiler(a: Arena, g: UpdateAgent, budget: int = DEFAULT_ENUM_BUDGET):
    """First (adversary, start, report) whose loop misses a vertex, or None."""
    for adv in positional_policies(a, budget):
        for start in range(a.n):
            rep = referee_play(a, g, adv, start)
            if len(rep.loop_alphabet) != a.n:
                return adv, start, rep
    return None
