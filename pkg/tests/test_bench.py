from trapgraph.bench import (BenchRecord, CSV_HEADER, bench_arena, find_steps_bound, ratios,
                             read_csv, run_bench, to_csv)


def test_csv_roundtrip():
    recs = run_bench([12, 40], seed=2, repeats=2)
    text = to_csv(recs)
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert read_csv(text) == recs
    algos = [r.algo for r in recs]
    assert algos.count("oracle") == 1 and algos.count("linear-stcc") == 2


def test_bench_arena_shape():
    a = bench_arena(300, 5)
    assert a.m == 900 and min(len(o) for o in a.out_adj) >= 2
    assert len(a.circles()) == 75
    assert bench_arena(300, 5) == a


def test_ratios_in_size_order():
    recs = [BenchRecord(40, 0, "x", 8, None, ""), BenchRecord(10, 0, "x", 2, None, ""),
            BenchRecord(20, 0, "x", 4, None, ""), BenchRecord(10, 0, "y", 1, None, "")]
    assert ratios(recs, "x") == [2.0, 2.0]


def test_find_steps_bound_holds():
    for r in run_bench([2000, 4000], seed=1, repeats=1, baseline=False):
        assert r.find_steps <= find_steps_bound(r.n, r.m)
