"""
Strongly trap-connected components
==================================

A vertex set is strongly trap-connected when Controller can force a visit
from any member to any other without leaving the set.  The linear
decomposition splits an arena into maximal such sets; here it is compared
with the exponential brute-force oracle.
"""

import random

from trapgraph import compute_stccs, random_arena, single_tree_arena, stcc_oracle

a = single_tree_arena()
d = compute_stccs(a)
print(d.report(), end="")
print("roots:", [a.names[r] for r in d.roots])
print("lowlink :", dict(zip(a.names, d.tr_lowlink)))
print("idx     :", dict(zip(a.names, d.idx)))
print("matches oracle:", d.partition() == stcc_oracle(a))

# Random arenas where every vertex has at least two exits
rng = random.Random(0)
agree = 0
for trial in range(200):
    n = rng.randint(3, 11)
    b = random_arena(n, rng.randint(2 * n, min(n * (n - 1), 3 * n)), 0.4, 2, trial)
    agree += compute_stccs(b).partition() == stcc_oracle(b)
print(f"\nagreement with the oracle on random arenas: {agree}/200")

# Without Environment vertices the components are the usual strongly
# connected components.
c = random_arena(12, 20, 0.0, 1, 3)
print("controller-only components:",
      [sorted(c.names[v] for v in comp) for comp in compute_stccs(c).components])
