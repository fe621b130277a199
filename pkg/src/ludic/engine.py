"""Trial drivers: seeded playouts, exhaustive enumeration, flat Monte
Carlo move choice, and the multi-threaded playout benchmark.

Playouts pick uniformly among the legal moves (each move equiprobable,
not each site) with a splitmix64 stream, so a (game, seed) pair yields a
bit-identical trial on every platform. The compiled fast path replays
the identical stream and move ordering; `random_playout` here is the
reference implementation.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from .errors import EnumerationCapError, RulesError
from .game import Game
from .rng import Splitmix64, split
from .rules import Move, apply_start, legal_moves, successor
from .state import GameState


@dataclass
class Trial:
    """Complete record of one played game."""
    game: Game
    initial: GameState
    moves: list[Move]
    hashes: list[int]  # state hash after each move
    choices: list[int]  # index of each move in its legal-move list (-1 if n/a)
    final: GameState

    @property
    def num_moves(self) -> int:
        return len(self.moves)

    @property
    def scores(self) -> tuple[float, ...] | None:
        return self.final.scores


def play_trial(game: Game, state: GameState, pick, record_choices: bool = True) -> Trial:
    """Drive a trial from `state` using `pick(moves) -> index`."""
    initial = state.copy()
    s = state
    moves: list[Move] = []
    hashes: list[int] = []
    choices: list[int] = []
    while not s.terminal:
        legal = legal_moves(game, s)
        idx = pick(legal)
        m = legal[idx]
        s = successor(game, s, m)
        moves.append(m)
        hashes.append(s.state_hash())
        if record_choices:
            choices.append(idx)
    return Trial(game, initial, moves, hashes, choices, s)


def random_playout(game: Game, state: GameState | None = None, seed: int = 0) -> Trial:
    """Uniform random playout, reproducible per seed."""
    s = (state.copy() if state is not None else apply_start(game))
    rng = Splitmix64(seed)
    return play_trial(game, s, lambda legal: rng.below(len(legal)))


def replay(trial: Trial) -> int:
    """Re-apply a trial's moves from its initial state; returns the final
    state hash (must equal trial.hashes[-1])."""
    s = trial.initial.copy()
    h = s.state_hash()
    for m in trial.moves:
        s = successor(game=trial.game, state=s, move=m)
        h = s.state_hash()
    return h


# --- exhaustive enumeration ---------------------------------------------------

@dataclass
class EnumerationReport:
    terminal_sequences: int = 0
    reachable_positions: int = 0
    outcome_tallies: dict[tuple[float, ...], int] = field(default_factory=dict)
    max_length: int = 0
    positions: set[bytes] | None = None


def enumerate_game(game: Game, max_depth: int | None = None,
                   max_nodes: int = 20_000_000,
                   collect_positions: bool = False) -> EnumerationReport:
    """Depth-first traversal of the whole game tree via legal_moves and
    successor. Positions are deduplicated by canonical board content."""
    report = EnumerationReport()
    seen: set[bytes] = set()
    nodes = 0

    def visit(state: GameState, depth: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise EnumerationCapError(f"enumeration exceeded {max_nodes} nodes")
        seen.add(state.board_key())
        if state.terminal:
            report.terminal_sequences += 1
            report.outcome_tallies[state.scores] = \
                report.outcome_tallies.get(state.scores, 0) + 1
            report.max_length = max(report.max_length, depth)
            return
        if max_depth is not None and depth >= max_depth:
            raise EnumerationCapError(f"non-terminal state at depth cap {max_depth}")
        for move in legal_moves(game, state):
            visit(successor(game, state, move), depth + 1)

    visit(apply_start(game), 0)
    report.reachable_positions = len(seen)
    if collect_positions:
        report.positions = seen
    return report


# --- flat Monte Carlo ---------------------------------------------------------

def _playout_utility(game: Game, state: GameState, player: int, seed: int,
                     use_fast: bool) -> float:
    if state.terminal:
        return state.scores[player - 1]
    if use_fast:
        from . import fastpath
        outcome, _ = fastpath.playout_outcome(game, state, seed)
        if outcome == 0:
            return 0.0
        return 1.0 if outcome == player else -1.0
    trial = random_playout(game, state, seed)
    return trial.final.scores[player - 1]


def flat_mc_choose(game: Game, state: GameState, budget: int, seed: int = 0,
                   use_fast: bool | None = None) -> Move:
    """Split `budget` playouts evenly over the legal moves (remainder to the
    earliest moves); return the move with the highest mean utility for the
    mover, ties to the lowest move index."""
    if state.terminal:
        raise RulesError("flat_mc_choose called on a terminal state")
    moves = legal_moves(game, state)
    n = len(moves)
    if budget < n:
        raise ValueError(f"budget {budget} is below the legal-move count {n}")
    if use_fast is None:
        from . import fastpath
        use_fast = fastpath.supports(game)

    player = state.mover
    best_idx, best_mean = 0, float("-inf")
    base = budget // n
    extra = budget % n
    for i, move in enumerate(moves):
        n_i = base + (1 if i < extra else 0)
        child = successor(game, state, move)
        stream = split(seed, i)
        total = 0.0
        for j in range(n_i):
            total += _playout_utility(game, child, player, split(stream, j), use_fast)
        mean = total / n_i
        if mean > best_mean:
            best_idx, best_mean = i, mean
    return moves[best_idx]


# --- benchmark ------------------------------------------------------------------

@dataclass
class ThreadStats:
    playouts: int = 0
    moves: int = 0
    elapsed: float = 0.0
    tallies: dict[int, int] = field(default_factory=dict)  # outcome code -> count


@dataclass
class PlayoutStats:
    game: str
    threads: int
    seconds: float
    playouts: int
    moves: int
    elapsed: float
    tallies: dict[int, int]
    per_thread: list[ThreadStats]

    @property
    def playouts_per_second(self) -> float:
        return self.playouts / self.elapsed if self.elapsed else 0.0

    @property
    def moves_per_second(self) -> float:
        return self.moves / self.elapsed if self.elapsed else 0.0

    def to_record(self) -> dict:
        return {
            "game": self.game,
            "threads": self.threads,
            "seconds": self.seconds,
            "playouts": self.playouts,
            "playoutsPerSecond": round(self.playouts_per_second, 2),
            "movesPerSecond": round(self.moves_per_second, 2),
        }


def bench_playouts(game: Game, seconds: float = 10.0, threads: int = 1,
                   seed: int = 1) -> PlayoutStats:
    """Run playouts from s0 on `threads` workers for at least `seconds` of
    wall clock. Each worker owns its own state buffers and splitmix64
    stream family (split from `seed` by worker index); the compiled game
    tables are shared immutably."""
    from . import fastpath
    if seconds < 1:
        raise ValueError("bench duration must be >= 1 second")
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    if not fastpath.supports(game):
        raise ValueError(f"{game.name}: no compiled playout path for this game")

    tables = fastpath.build_tables(game)
    fastpath.warmup(tables)  # JIT compile outside the timed region
    stats = [ThreadStats() for _ in range(threads)]

    def worker(w: int) -> None:
        st = stats[w]
        worker_seed = split(seed, w)
        scratch = fastpath.make_scratch(tables)
        batch = 16
        start = time.perf_counter()
        while True:
            played, moved, w1, w2, dr = fastpath.run_batch(
                tables, scratch, batch, worker_seed, st.playouts)
            st.playouts += played
            st.moves += moved
            st.tallies[1] = st.tallies.get(1, 0) + w1
            st.tallies[2] = st.tallies.get(2, 0) + w2
            st.tallies[0] = st.tallies.get(0, 0) + dr
            st.elapsed = time.perf_counter() - start
            if st.elapsed >= seconds:
                break
            # grow batches until a batch lasts ~50 ms, keeping the clock honest
            if batch < 1 << 16 and st.elapsed / max(st.playouts // batch, 1) < 0.05:
                batch *= 2

    t0 = time.perf_counter()
    if threads == 1:
        worker(0)
    else:
        pool = [threading.Thread(target=worker, args=(w,)) for w in range(threads)]
        for t in pool:
            t.start()
        for t in pool:
            t.join()
    elapsed = time.perf_counter() - t0

    total = PlayoutStats(
        game=game.name, threads=threads, seconds=seconds,
        playouts=sum(s.playouts for s in stats),
        moves=sum(s.moves for s in stats),
        elapsed=elapsed,
        tallies={k: sum(s.tallies.get(k, 0) for s in stats) for k in (0, 1, 2)},
        per_thread=stats,
    )
    return total
