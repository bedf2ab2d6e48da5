"""
Winning the update game
=======================

Controller wins the update game when every vertex is visited infinitely
often, whatever Environment does.  That happens exactly when the whole
arena is one strongly trap-connected component, and then a round-robin
choice at every Controller vertex is enough.
"""

from trapgraph import decide_un, escape_arena, parse_arena, synthesize, verify_update_win
from trapgraph.games import (Positional, SeededRandom, UpdateAgent, decide_un_detailed,
                             find_spoiler, referee_play)

a = parse_arena("""
square a b c d
arc a b
arc a c
arc b a
arc b d
arc d a
arc d b
arc c a
arc c d
""")
dec = decide_un_detailed(a)
print("update network:", dec.un, "via", dec.method)

# The agent keeps one cursor per Controller vertex and moves it cyclically.
g = synthesize(a)
rep = referee_play(a, g, SeededRandom(a, seed=1), start=0)
print("play:", " ".join(a.names[v] for v in rep.trace))
print("loop visits:", sorted(a.names[v] for v in rep.loop_alphabet))

# Exhaustive check against every positional Environment policy and start
print("round robin always wins:", verify_update_win(a, g))


# Freezing one cursor breaks the strategy: a never sends the token to c.
class Frozen(UpdateAgent):
    def move(self, v):
        return self.out_adj[v][0] if v == 0 else super().move(v)


adv, start, bad = find_spoiler(a, Frozen(a))
print("frozen agent loop:", sorted(a.names[v] for v in bad.loop_alphabet))

# An arena where Environment can keep the play away from B
e = escape_arena()
print("\nescape arena is an update network:", decide_un(e))
spoil = find_spoiler(e, UpdateAgent(e))
if spoil:
    adv, start, bad = spoil
    print("spoiling policy:", "; ".join(adv.format().splitlines()))
    print("vertices never revisited:", sorted(e.names[v] for v in range(e.n) if v not in bad.loop_alphabet))
