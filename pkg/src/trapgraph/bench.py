"""Timing harness comparing the linear decomposition with the quadratic baseline."""
from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from dataclasses import dataclass
from typing import Optional

from .arena import random_arena
from .oracle import stcc_oracle, un_baseline_bitset
from .stcc import compute_stccs

CSV_HEADER = ("n", "m", "algo", "wall_ns", "find_steps", "verdict")
ORACLE_MAX_N = 12


@dataclass(frozen=True)
class BenchRecord:
    n: int
    m: int
    algo: str
    wall_ns: int
    find_steps: Optional[int]
    verdict: str

    def row(self) -> list:
        return [self.n, self.m, self.algo, self.wall_ns,
                "" if self.find_steps is None else self.find_steps, self.verdict]


def find_steps_bound(n: int, m: int) -> int:
    return 5 * (1 + n + m)


def _timed(fn, repeats: int):
    times = []
    result = None
    gc_was = gc.isenabled()
    gc.disable()
    try:
        if repeats > 1:
            fn()  # warm-up, untimed
        for _ in range(repeats):
            gc.collect()
            t0 = time.perf_counter_ns()
            result = fn()
            times.append(max(1, time.perf_counter_ns() - t0))
    finally:
        if gc_was:
            gc.enable()
    return int(statistics.median(times)), result


def bench_arena(n: int, seed: int, circle_fraction: float = 0.25):
    """Benchmark instance: about three arcs per vertex, out-degree at least two."""
    return random_arena(n, 3 * n, circle_fraction, 2, seed)


def run_bench(sizes, seed: int = 0, repeats: int = 5, baseline_repeats: int = 1,
              baseline: bool = True) -> list:
    """Time every size with the linear decomposition first, then the baseline.

    Keeping the two phases apart stops the baseline's large numpy buffers
    from disturbing the linear timings.
    """
    instances = [bench_arena(n, seed) for n in sizes]
    records = []
    for a in instances:
        wall, d = _timed(lambda: compute_stccs(a), repeats)
        ok = d.find_steps <= find_steps_bound(a.n, a.m)
        k = len(d.components)
        records.append(BenchRecord(a.n, a.m, "linear-stcc", wall, d.find_steps,
                                   f"components={k} un={'yes' if k == 1 else 'no'} "
                                   f"find_bound={'ok' if ok else 'violated'}"))
    for a in instances:
        if baseline:
            wall, un = _timed(lambda: un_baseline_bitset(a), baseline_repeats)
            records.append(BenchRecord(a.n, a.m, "baseline-unc", wall, None,
                                       f"un={'yes' if un else 'no'}"))
        if a.n <= ORACLE_MAX_N:
            wall, part = _timed(lambda: stcc_oracle(a), 1)
            records.append(BenchRecord(a.n, a.m, "oracle", wall, None, f"components={len(part)}"))
    return records


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def read_csv(text: str) -> list:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [BenchRecord(int(r["n"]), int(r["m"]), r["algo"], int(r["wall_ns"]),
                        int(r["find_steps"]) if r["find_steps"] else None, r["verdict"])
            for r in rows]


def ratios(records, algo: str) -> list:
    """Consecutive wall-time ratios for one algorithm, in size order."""
    rows = sorted((r for r in records if r.algo == algo), key=lambda r: r.n)
    return [b.wall_ns / a.wall_ns for a, b in zip(rows, rows[1:])]
