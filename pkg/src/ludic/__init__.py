"""Ludeme-based general game system.

Concise S-expression game descriptions compile into immutable Game
objects with bit-packed states; the engine runs seeded playouts,
exhaustive enumeration, flat-Monte-Carlo move choice and multi-threaded
throughput benchmarks; any finite deterministic perfect-information game
tree compiles into an equivalent game; a small session service plus web
client let humans play against the engine.
"""

from .chunkset import ChunkSet, bits_for
from .corpus import bundled_names, load_game, load_text
from .engine import (EnumerationReport, PlayoutStats, Trial, bench_playouts,
                     enumerate_game, flat_mc_choose, random_playout, replay)
from .errors import (CompileError, EnumerationCapError, IllegalMoveError,
                     LudicError, ParseError, RulesError)
from .game import Game, Players, compile_game, compile_text
from .grammar import count_tokens, format_tree, parse, parse_game, parse_text, tokenize
from .rules import Move, apply_start, eval_end, legal_moves, successor
from .state import GameState, Location

__version__ = "0.1.0"

__all__ = [
    "ChunkSet", "bits_for",
    "bundled_names", "load_game", "load_text",
    "EnumerationReport", "PlayoutStats", "Trial", "bench_playouts",
    "enumerate_game", "flat_mc_choose", "random_playout", "replay",
    "CompileError", "EnumerationCapError", "IllegalMoveError", "LudicError",
    "ParseError", "RulesError",
    "Game", "Players", "compile_game", "compile_text",
    "count_tokens", "format_tree", "parse", "parse_game", "parse_text", "tokenize",
    "Move", "apply_start", "eval_end", "legal_moves", "successor",
    "GameState", "Location",
    "__version__",
]
