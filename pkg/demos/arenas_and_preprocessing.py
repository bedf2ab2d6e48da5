"""
Arenas, text format and preprocessing
=====================================

An arena is a directed graph whose vertices are owned either by Controller
(drawn as squares) or by Environment (drawn as circles).
"""

from trapgraph import parse_arena, preprocess, serialize_arena, to_dot, validate
from trapgraph.arena import format_trace

# A small arena in the line format: owner declarations, then one arc per line.
# Arc order matters because it fixes the order in which neighbors are scanned.
text = """
square u v w
arc u v
arc v w
arc w u
arc w v
"""
a = parse_arena(text)
print("vertices:", a.names, " arcs:", a.arc_names())
print("structural problems:", validate(a) or "none")

# Serializing and parsing again gives back the same arena.
assert parse_arena(serialize_arena(a)) == a

# Preprocessing deletes dead ends and contracts vertices with a single exit.
# The trace lists every step so the caller can map results back.
reduced, trace = preprocess(a)
print()
print(format_trace(trace), end="")
print("reduced arena:")
print(serialize_arena(reduced))

# Graphviz output: boxes for Controller, ellipses for Environment.
print(to_dot(a))
