"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys

from .arena import ArenaError, format_trace, preprocess, read_arena, serialize_arena, to_dot, validate
from .bench import find_steps_bound, run_bench, to_csv
from .games import (GameError, SeededRandom, UpdateAgent, decide_un_detailed, parse_positional,
                    referee_play)
from .oracle import OracleError, stcc_oracle, trap_reach, un_baseline
from .stcc import compute_stccs
from .trdfs import tr_dfs, validate_jungle


class InternalError(RuntimeError):
    pass


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load(path):
    try:
        return read_arena(path)
    except OSError as exc:
        raise ArenaError(f"{path}: {exc.strerror}") from None


def cmd_validate(args, out):
    a = _load(args.path)
    problems = validate(a)
    for p in problems:
        out.write(p + "\n")
    if problems:
        return 2
    out.write(f"ok n={a.n} m={a.m}\n")
    return 0


def cmd_preprocess(args, out):
    a = _load(args.path)
    reduced, trace = preprocess(a)
    _write(args.out, serialize_arena(reduced))
    out.write(format_trace(trace))
    return 0


def cmd_jungle(args, out):
    a = _load(args.path)
    j = tr_dfs(a)
    bad = validate_jungle(a, j)
    if bad:
        raise InternalError("; ".join(map(str, bad)))
    if args.dot:
        _write(args.dot, to_dot(a, j))
    if args.log:
        _write(args.log, j.format_log())
    nm = a.names
    for v in sorted(range(a.n), key=j.idx.__getitem__):
        p = j.tree_parent[v]
        where = "unattached" if v in j.unattached else f"parent={'-' if p is None else nm[p]}"
        out.write(f"{nm[v]} idx={j.idx[v]} {where}\n")
    return 0


def cmd_stcc(args, out):
    a = _load(args.path)
    d = compute_stccs(a)
    text = d.report()
    if args.report:
        _write(args.report, text)
    out.write(text)
    return 0


def cmd_decide_un(args, out):
    a = _load(args.path)
    dec = decide_un_detailed(a)
    out.write(("UN" if dec.un else "NOT-UN") + "\n")
    out.write(f"method={dec.method} preprocess={dec.verdict.value}\n")
    return 0


def cmd_simulate(args, out):
    a = _load(args.path)
    g = UpdateAgent(a)
    spec = args.adversary
    if spec is None:
        adv = parse_positional(a, "")
    elif spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1], 0)
        except ValueError:
            raise GameError(f"bad seed in {spec!r}") from None
        adv = SeededRandom(a, seed)
    else:
        try:
            with open(spec, encoding="utf-8") as fh:
                adv = parse_positional(a, fh.read())
        except OSError as exc:
            raise GameError(f"{spec}: {exc.strerror}") from None
    try:
        start = a.index(args.start) if args.start else 0
    except KeyError:
        raise GameError(f"unknown start vertex {args.start!r}") from None
    rep = referee_play(a, g, adv, start)
    if args.trace:
        _write(args.trace, rep.format_trace(a))
    missing = sorted(a.names[v] for v in range(a.n) if v not in rep.loop_alphabet)
    out.write(f"steps={len(rep.trace)} loop_start={rep.loop_start} "
              f"loop_length={len(rep.trace) - rep.loop_start}\n")
    out.write("loop=" + ",".join(sorted(a.names[v] for v in rep.loop_alphabet)) + "\n")
    out.write("missing=" + ",".join(missing) + "\n")
    return 0


def cmd_oracle(args, out):
    mode, *vertices = args.mode
    if mode not in ("stcc", "un", "reach"):
        raise GameError(f"unknown oracle mode {mode!r}")
    if (mode == "reach") != bool(vertices):
        raise GameError("only reach mode takes vertex names")
    a = _load(args.path)
    if mode == "stcc":
        for k, comp in enumerate(stcc_oracle(a)):
            out.write(f"block {k}: members={','.join(sorted(a.names[v] for v in comp))}\n")
    elif mode == "un":
        out.write(("UN" if un_baseline(a) else "NOT-UN") + "\n")
    else:
        if len(vertices) != 2:
            raise GameError("reach mode needs two vertex names: u v")
        try:
            u, v = (a.index(x) for x in vertices)
        except KeyError as exc:
            raise GameError(f"unknown vertex {exc.args[0]!r}") from None
        ok = trap_reach(a, range(a.n), u, v)
        out.write(f"{'yes' if ok else 'no'}\n")
    return 0


def _sizes(text):
    try:
        return [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def cmd_bench(args, out):
    recs = run_bench(args.sizes, seed=args.seed, repeats=args.repeats)
    text = to_csv(recs)
    if args.csv:
        _write(args.csv, text)
    out.write(text)
    for r in recs:
        if r.find_steps is not None and r.find_steps > find_steps_bound(r.n, r.m):
            raise InternalError(f"find_steps bound violated at n={r.n}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trapgraph", description="Trap-connectivity toolkit for game arenas.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check arena invariants")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("preprocess", help="remove dead ends and contract out-degree-1 vertices")
    s.add_argument("path")
    s.add_argument("out", help="where to write the reduced arena")
    s.set_defaults(func=cmd_preprocess)

    s = sub.add_parser("jungle", help="run the trap-reachability DFS")
    s.add_argument("path")
    s.add_argument("--dot")
    s.add_argument("--log")
    s.set_defaults(func=cmd_jungle)

    s = sub.add_parser("stcc", help="strongly trap-connected components")
    s.add_argument("path")
    s.add_argument("--report")
    s.set_defaults(func=cmd_stcc)

    s = sub.add_parser("decide-un", help="decide the update game")
    s.add_argument("path")
    s.set_defaults(func=cmd_decide_un)

    s = sub.add_parser("simulate", help="play the round-robin agent against an adversary")
    s.add_argument("path")
    s.add_argument("--adversary", help="positional policy file or random:<seed>")
    s.add_argument("--start")
    s.add_argument("--trace")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("oracle", help="brute-force answers")
    s.add_argument("path")
    s.add_argument("--mode", nargs="+", default=["stcc"], metavar="MODE",
                   help="stcc, un, or 'reach U V'")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("bench", help="time linear decomposition against the baseline")
    s.add_argument("--sizes", type=_sizes, default=[10000, 20000, 40000])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--repeats", type=int, default=5)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args, out)
    except (ArenaError, GameError, OracleError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (InternalError, AssertionError) as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return 2
