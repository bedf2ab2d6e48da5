"""Strongly trap-connected components and update games on two-player arenas."""
from .arena import (Arena, ArenaError, CIRCLE, Owner, ParseError, SQUARE, TransformTrace, Verdict,
                    arena_from_names, parse_arena, preprocess, random_arena, read_arena,
                    replay_trace, serialize_arena, to_dot, validate)
from .dsf import Dsf, DsfError
from .figures import escape_arena, single_tree_arena, split_jungle_arena, triangle, two_pairs
from .games import (PlayReport, Positional, Scripted, SeededRandom, UpdateAgent, agent_move,
                    decide_un, decide_un_detailed, referee_play, synthesize, verify_update_win)
from .oracle import (ReachSet, stcc_oracle, strongly_trap_connected, trap_attractor, trap_reach,
                     un_baseline)
from .stcc import StccDecomposition, compute_stccs, routing_forest, stcc_roots
from .trdfs import (ArcLabel, TrJungle, ancestor_reach_pairs, reconstruct_check, support, tr_dfs,
                    validate_jungle)

__version__ = "0.1.0"
