"""Shared instance generators for the test suite."""
import itertools
import random

from hypothesis import strategies as st

from trapgraph.arena import Arena, CIRCLE, SQUARE, preprocess, random_arena


def reduced_corpus(count, max_n, fractions=(0.0, 0.25, 0.5), seed=0, min_n=3):
    """Random arenas with every out-degree at least two (preprocessing is a no-op)."""
    out = []
    for k in range(count):
        rng = random.Random(seed * 1_000_003 + k)
        n = rng.randint(min_n, max_n)
        m = rng.randint(2 * n, min(n * (n - 1), 4 * n))
        a = random_arena(n, m, fractions[k % len(fractions)], 2, rng.getrandbits(32))
        out.append(a)
    return out


def is_reduced(a):
    _, trace = preprocess(a)
    return not trace.removed and trace.verdict.value == "reduced"


def small_outdeg2_family(n, max_owner_patterns=None):
    """Every arena on ``n`` vertices where each vertex picks exactly two
    successors, under every owner assignment (optionally capped)."""
    pairs = [list(itertools.combinations([w for w in range(n) if w != v], 2)) for v in range(n)]
    owners = list(itertools.product((SQUARE, CIRCLE), repeat=n))
    if max_owner_patterns is not None:
        owners = owners[:max_owner_patterns]
    for choice in itertools.product(*pairs):
        arcs = [(v, w) for v, ws in enumerate(choice) for w in ws]
        for own in owners:
            yield Arena.build([f"x{i}" for i in range(n)], own, arcs)


@st.composite
def arenas(draw, min_n=1, max_n=9, min_outdeg=1, circle_prob=0.4):
    """Hypothesis strategy for simple arenas with a minimum out-degree."""
    n = draw(st.integers(min_value=max(min_n, min_outdeg + 1), max_value=max_n))
    owners = [CIRCLE if draw(st.floats(0, 1)) < circle_prob else SQUARE for _ in range(n)]
    arcs = []
    for v in range(n):
        others = [w for w in range(n) if w != v]
        if not others:
            continue
        succ = draw(st.lists(st.sampled_from(others), min_size=min_outdeg,
                             max_size=len(others), unique=True))
        arcs += [(v, w) for w in succ]
    order = draw(st.permutations(arcs))
    return Arena.build([f"v{i}" for i in range(n)], owners, order)
