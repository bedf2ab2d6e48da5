"""Small reference arenas used throughout the tests, demos and docs.

Each is stored as a text document so the parser is exercised too.  Arc
order matters: it fixes the in-neighbor scan order of the search.
"""
from __future__ import annotations

from .arena import Arena, parse_arena

# F can only reach B by passing through D, and Environment can dodge B from
# there, so this arena is not an update network.
ESCAPE_ARENA = """\
# Controller may not force a visit to B from F
square A B D E F H
circle C G
arc C B
arc B A
arc H A
arc C H
arc D G
arc G F
arc F E
arc E D
arc D C
arc G B
arc A F
arc H E
"""

# One palm tree rooted at A with two Environment vertices attached under A.
SINGLE_TREE_ARENA = """\
square A B D E G H
circle C F
arc B A
arc H A
arc D B
arc C B
arc E D
arc G D
arc C E
arc F E
arc A G
arc F G
arc F H
arc C H
"""

# Three Environment vertices that never find a common attachment point.
SPLIT_JUNGLE_ARENA = """\
square A B E G H
circle C D F
arc B A
arc E A
arc G A
arc D B
arc F E
arc C G
arc D H
arc F H
arc C H
arc B C
arc E D
arc G F
"""

TRIANGLE = """\
square a b c
arc a b
arc a c
arc b a
arc b c
arc c a
arc c b
"""

TWO_PAIRS = """\
square a b c d
arc a b
arc b a
arc c d
arc d c
"""


def escape_arena() -> Arena:
    return parse_arena(ESCAPE_ARENA)


def single_tree_arena() -> Arena:
    return parse_arena(SINGLE_TREE_ARENA)


def split_jungle_arena() -> Arena:
    return parse_arena(SPLIT_JUNGLE_ARENA)


def triangle() -> Arena:
    return parse_arena(TRIANGLE)


def two_pairs() -> Arena:
    return parse_arena(TWO_PAIRS)
