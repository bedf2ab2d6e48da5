"""
Linear decomposition against the quadratic baseline
===================================================

Random arenas with about three arcs per vertex.  Pass sizes on the command
line (for example ``python scaling.py 10000 20000 40000``); the defaults
keep the run short.
"""

import sys

from trapgraph.bench import find_steps_bound, ratios, run_bench, to_csv

sizes = [int(float(x)) for x in sys.argv[1:]] or [2000, 4000, 8000]
recs = run_bench(sizes, seed=1, repeats=3)
print(to_csv(recs), end="")

print("linear time ratios  :", " ".join(f"{x:.2f}" for x in ratios(recs, "linear-stcc")))
print("baseline time ratios:", " ".join(f"{x:.2f}" for x in ratios(recs, "baseline-unc")))
for r in recs:
    if r.find_steps is not None:
        print(f"n={r.n}: {r.find_steps} find steps, bound {find_steps_bound(r.n, r.m)}")
