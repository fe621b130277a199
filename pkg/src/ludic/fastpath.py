"""Compiled playout path.

The compiled Game is lowered to flat integer tables (board rays, end-rule
codes, side masks, step tables) and a numba-jitted kernel runs whole
playouts over them with the GIL released, which is what makes the
benchmark throughput and multi-thread scaling real.

The kernel replays exactly the reference semantics: the same splitmix64
stream, the same canonical move order (site index, then direction index)
and the same end-rule order, so a seeded kernel playout is bit-identical
to `engine.random_playout` (asserted in tests). Only 2-player games whose
end rules are line/connect/reach have a compiled path; everything else
uses the pure evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .game import (ConnectCond, Game, GravityDrop, LineCond, ReachCond,
                   Steps, ToEmpty, COND_EMPTY, COND_ENEMY)
from .state import GameState

KIND_TO_EMPTY = 0
KIND_GRAVITY = 1
KIND_STEP = 2

_END_LINE = 0
_END_CONNECT = 1
_END_REACH = 2

_U = np.uint64
_GAMMA = _U(0x9E3779B97F4A7C15)
_MIX1 = _U(0xBF58476D1CE4E5B9)
_MIX2 = _U(0x94D049BB133111EB)
_S30, _S27, _S31 = _U(30), _U(27), _U(31)


@dataclass
class PlayoutTables:
    kind: int
    num_sites: int
    move_limit: int
    has_connect: bool
    who0: np.ndarray  # uint8[S] initial board
    mover0: int
    passes0: int
    move_number0: int
    line_next: np.ndarray  # int32[2*axes, S], fwd/back interleaved
    end_kinds: np.ndarray  # int32[R]
    end_params: np.ndarray
    end_out: np.ndarray  # +1 mover wins, -1 mover loses, 0 draw
    side_a: np.ndarray  # uint8[3, S] connection side masks per player
    side_b: np.ndarray
    reach: np.ndarray  # uint8[3, S]
    col_sites: np.ndarray  # int32[C, rows] bottom-up (gravity), else (0, 0)
    dir_next: np.ndarray  # int32[D, S] pregen directional neighbors
    sdirs: np.ndarray  # int32[3, R] per-player step direction rows
    sconds: np.ndarray  # int32[3, R] 0 empty / 1 enemy / 2 empty-or-enemy
    scounts: np.ndarray  # int32[3]


@dataclass
class Scratch:
    who: np.ndarray
    uf_parent: np.ndarray
    uf_rank: np.ndarray
    heights: np.ndarray
    mv_from: np.ndarray
    mv_to: np.ndarray


_NO_RECORD = np.empty(0, dtype=np.int32)


def supports(game: Game) -> bool:
    if game.players.count != 2:
        return False
    if not isinstance(game.play_rules, (ToEmpty, GravityDrop, Steps)):
        return False
    for rule in game.end_rules:
        if not isinstance(rule.condition, (LineCond, ConnectCond, ReachCond)):
            return False
        if rule.role != "Mover":
            return False
        if rule.outcome not in ("Win", "Loss"):
            return False
    return True


def build_tables(game: Game) -> PlayoutTables:
    """Lower a compiled game to kernel tables (cached on the game)."""
    cached = getattr(game, "_fast_tables", None)
    if cached is not None:
        return cached
    if not supports(game):
        raise ValueError(f"{game.name}: unsupported by the compiled path")

    from .rules import apply_start
    s0 = apply_start(game)
    S = game.num_sites
    who0 = np.array([s0.who(i) for i in range(S)], dtype=np.uint8)

    container = game.container
    axes = container.line_axes
    line_next = np.full((2 * len(axes), S), -1, dtype=np.int32)
    for a, (fwd, back) in enumerate(axes):
        line_next[2 * a, :] = container.line_next[fwd]
        line_next[2 * a + 1, :] = container.line_next[back]

    end_kinds, end_params, end_out = [], [], []
    for rule in game.end_rules:
        if isinstance(rule.condition, LineCond):
            end_kinds.append(_END_LINE)
            end_params.append(rule.condition.n)
        elif isinstance(rule.condition, ConnectCond):
            end_kinds.append(_END_CONNECT)
            end_params.append(0)
        else:
            end_kinds.append(_END_REACH)
            end_params.append(0)
        end_out.append(1 if rule.outcome == "Win" else -1)

    side_a = np.zeros((3, S), dtype=np.uint8)
    side_b = np.zeros((3, S), dtype=np.uint8)
    for p, (sa, sb) in game.connect_sides.items():
        for v in sa:
            side_a[p, v] = 1
        for v in sb:
            side_b[p, v] = 1
    reach = np.zeros((3, S), dtype=np.uint8)
    for p, sites in game.reach_targets.items():
        for v in sites:
            reach[p, v] = 1

    columns = container.pregen.columns
    if isinstance(game.play_rules, GravityDrop):
        col_sites = np.array(columns, dtype=np.int32)
    else:
        col_sites = np.empty((0, 0), dtype=np.int32)

    dir_names = sorted(container.pregen.neighbors)
    dir_row = {d: i for i, d in enumerate(dir_names)}
    if dir_names:
        dir_next = np.array([container.pregen.neighbors[d] for d in dir_names],
                            dtype=np.int32)
    else:
        dir_next = np.empty((0, S), dtype=np.int32)

    max_steps = max((len(v) for v in game.step_dirs.values()), default=0)
    sdirs = np.zeros((3, max(max_steps, 1)), dtype=np.int32)
    sconds = np.zeros((3, max(max_steps, 1)), dtype=np.int32)
    scounts = np.zeros(3, dtype=np.int32)
    for p, entries in game.step_dirs.items():
        scounts[p] = len(entries)
        for i, (d, cond) in enumerate(entries):
            sdirs[p, i] = dir_row[d]
            sconds[p, i] = (0 if cond == COND_EMPTY
                            else 1 if cond == COND_ENEMY else 2)

    kind = (KIND_TO_EMPTY if isinstance(game.play_rules, ToEmpty)
            else KIND_GRAVITY if isinstance(game.play_rules, GravityDrop)
            else KIND_STEP)
    tables = PlayoutTables(
        kind=kind, num_sites=S, move_limit=game.move_limit,
        has_connect=bool(game.connect_sides),
        who0=who0, mover0=s0.mover, passes0=s0.consecutive_passes,
        move_number0=s0.move_number,
        line_next=np.ascontiguousarray(line_next),
        end_kinds=np.array(end_kinds, dtype=np.int32),
        end_params=np.array(end_params, dtype=np.int32),
        end_out=np.array(end_out, dtype=np.int32),
        side_a=side_a, side_b=side_b, reach=reach,
        col_sites=np.ascontiguousarray(col_sites),
        dir_next=np.ascontiguousarray(dir_next),
        sdirs=sdirs, sconds=sconds, scounts=scounts,
    )
    game._fast_tables = tables  # type: ignore[attr-defined]
    return tables


def make_scratch(tables: PlayoutTables) -> Scratch:
    S = tables.num_sites
    max_steps = int(tables.scounts.max()) if tables.scounts.size else 0
    cap = max(S * max(max_steps, 1), 1)
    return Scratch(
        who=np.zeros(S, dtype=np.uint8),
        uf_parent=np.zeros(S + 4, dtype=np.int32),
        uf_rank=np.zeros(S + 4, dtype=np.int32),
        heights=np.zeros(max(tables.col_sites.shape[0], 1), dtype=np.int32),
        mv_from=np.zeros(cap, dtype=np.int32),
        mv_to=np.zeros(cap, dtype=np.int32),
    )


def state_arrays(game: Game, state: GameState):
    """Initial-condition arrays for playouts starting at `state`."""
    S = game.num_sites
    who = np.array([state.who(i) for i in range(S)], dtype=np.uint8)
    return who, state.mover, state.consecutive_passes, state.move_number


# --- jitted kernel --------------------------------------------------------

@njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(inline="always")
def _split(seed, index):
    return _mix64(seed + _U(index + 1) * _GAMMA)


@njit(inline="always")
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(inline="always")
def _union(parent, rank, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra == rb:
        return
    if rank[ra] < rank[rb]:
        ra, rb = rb, ra
    parent[rb] = ra
    if rank[ra] == rank[rb]:
        rank[ra] += 1


@njit(nogil=True, cache=True)
def _playout(kind, S, move_limit, has_connect,
             who0, mover0, passes0, move_number0,
             line_next, end_kinds, end_params, end_out,
             side_a, side_b, reach, col_sites,
             dir_next, sdirs, sconds, scounts,
             who, uf_parent, uf_rank, heights, mv_from, mv_to,
             stream_seed, record):
    # per-playout reset from the initial arrays
    for i in range(S):
        who[i] = who0[i]
    empties = 0
    for i in range(S):
        if who[i] == 0:
            empties += 1
    n_cols = col_sites.shape[0]
    if kind == 1:
        col_len = col_sites.shape[1]
        for c in range(n_cols):
            h = 0
            for r in range(col_len):
                if who[col_sites[c, r]] != 0:
                    h += 1
            heights[c] = h
    if has_connect:
        for i in range(S + 4):
            uf_parent[i] = i
            uf_rank[i] = 0
        n_dirs = dir_next.shape[0]
        for s in range(S):
            m = who[s]
            if m != 0:
                for d in range(n_dirs):
                    u = dir_next[d, s]
                    if 0 <= u < s and who[u] == m:
                        _union(uf_parent, uf_rank, s, u)
                if side_a[m, s]:
                    _union(uf_parent, uf_rank, s, S + 2 * (m - 1))
                if side_b[m, s]:
                    _union(uf_parent, uf_rank, s, S + 2 * (m - 1) + 1)

    state = stream_seed
    mover = mover0
    passes = passes0
    move_number = move_number0
    moves_made = 0
    do_record = record.shape[0] > 0
    n_rules = end_kinds.shape[0]
    n_axes = line_next.shape[0] // 2

    while True:
        # count legal moves in canonical order
        if kind == 0:
            n_legal = empties
        elif kind == 1:
            n_legal = 0
            for c in range(n_cols):
                if heights[c] < col_sites.shape[1]:
                    n_legal += 1
        else:
            n_legal = 0
            ns = scounts[mover]
            for s in range(S):
                if who[s] == mover:
                    for t in range(ns):
                        u = dir_next[sdirs[mover, t], s]
                        if u >= 0:
                            occ = who[u]
                            cond = sconds[mover, t]
                            if ((cond == 0 and occ == 0)
                                    or (cond == 1 and occ != 0 and occ != mover)
                                    or (cond == 2 and occ != mover)):
                                mv_from[n_legal] = s
                                mv_to[n_legal] = u
                                n_legal += 1

        state = state + _GAMMA
        r = np.int64(_mix64(state) % _U(n_legal if n_legal > 0 else 1))

        if n_legal == 0:  # stalemate: the forced pass move
            if do_record:
                record[moves_made] = 0
            moves_made += 1
            move_number += 1
            passes += 1
            if passes >= 2:
                return 0, moves_made
            if move_number >= move_limit:
                return 0, moves_made
            mover = 3 - mover
            continue

        if do_record:
            record[moves_made] = r

        # apply the r-th canonical move
        if kind == 0:
            site = -1
            cnt = 0
            for i in range(S):
                if who[i] == 0:
                    if cnt == r:
                        site = i
                        break
                    cnt += 1
            who[site] = mover
            empties -= 1
        elif kind == 1:
            cnt = 0
            site = -1
            for c in range(n_cols):
                if heights[c] < col_sites.shape[1]:
                    if cnt == r:
                        site = col_sites[c, heights[c]]
                        heights[c] += 1
                        break
                    cnt += 1
            who[site] = mover
        else:
            src = mv_from[r]
            site = mv_to[r]
            who[site] = mover
            who[src] = 0

        moves_made += 1
        move_number += 1
        passes = 0

        if has_connect:
            n_dirs = dir_next.shape[0]
            for d in range(n_dirs):
                u = dir_next[d, site]
                if u >= 0 and who[u] == mover:
                    _union(uf_parent, uf_rank, site, u)
            if side_a[mover, site]:
                _union(uf_parent, uf_rank, site, S + 2 * (mover - 1))
            if side_b[mover, site]:
                _union(uf_parent, uf_rank, site, S + 2 * (mover - 1) + 1)

        # end rules in listed order, through the placed site
        for ri in range(n_rules):
            ek = end_kinds[ri]
            fired = False
            if ek == 0:
                n = end_params[ri]
                for a in range(n_axes):
                    count = 1
                    t = line_next[2 * a, site]
                    while t >= 0 and who[t] == mover:
                        count += 1
                        t = line_next[2 * a, t]
                    t = line_next[2 * a + 1, site]
                    while t >= 0 and who[t] == mover:
                        count += 1
                        t = line_next[2 * a + 1, t]
                    if count >= n:
                        fired = True
                        break
            elif ek == 1:
                va = S + 2 * (mover - 1)
                fired = _find(uf_parent, va) == _find(uf_parent, va + 1)
            else:
                fired = reach[mover, site] != 0
            if fired:
                out = end_out[ri]
                if out > 0:
                    return mover, moves_made
                if out < 0:
                    return 3 - mover, moves_made
                return 0, moves_made

        if move_number >= move_limit:
            return 0, moves_made
        mover = 3 - mover


@njit(nogil=True, cache=True)
def _run_batch(n_playouts, worker_seed, first_index,
               kind, S, move_limit, has_connect,
               who0, mover0, passes0, move_number0,
               line_next, end_kinds, end_params, end_out,
               side_a, side_b, reach, col_sites,
               dir_next, sdirs, sconds, scounts,
               who, uf_parent, uf_rank, heights, mv_from, mv_to,
               record):
    playouts = 0
    moves = 0
    w1 = 0
    w2 = 0
    draws = 0
    for j in range(n_playouts):
        stream = _split(worker_seed, first_index + j)
        outcome, made = _playout(
            kind, S, move_limit, has_connect,
            who0, mover0, passes0, move_number0,
            line_next, end_kinds, end_params, end_out,
            side_a, side_b, reach, col_sites,
            dir_next, sdirs, sconds, scounts,
            who, uf_parent, uf_rank, heights, mv_from, mv_to,
            stream, record)
        playouts += 1
        moves += made
        if outcome == 1:
            w1 += 1
        elif outcome == 2:
            w2 += 1
        else:
            draws += 1
    return playouts, moves, w1, w2, draws


# --- python-facing wrappers -------------------------------------------------

def _kernel_args(tables: PlayoutTables, scratch: Scratch, who0, mover0,
                 passes0, move_number0):
    return (tables.kind, tables.num_sites, tables.move_limit,
            tables.has_connect,
            who0, mover0, passes0, move_number0,
            tables.line_next, tables.end_kinds, tables.end_params,
            tables.end_out, tables.side_a, tables.side_b, tables.reach,
            tables.col_sites, tables.dir_next, tables.sdirs, tables.sconds,
            tables.scounts,
            scratch.who, scratch.uf_parent, scratch.uf_rank, scratch.heights,
            scratch.mv_from, scratch.mv_to)


def run_batch(tables: PlayoutTables, scratch: Scratch, n: int,
              worker_seed: int, first_index: int = 0):
    """n playouts from the game's initial state; playout j uses the stream
    split(worker_seed, first_index + j). Returns (playouts, moves, p1 wins,
    p2 wins, draws)."""
    args = _kernel_args(tables, scratch, tables.who0, tables.mover0,
                        tables.passes0, tables.move_number0)
    return _run_batch(n, _U(worker_seed), first_index, *args, _NO_RECORD)


def playout_outcome(game: Game, state: GameState | None, seed: int,
                    record: np.ndarray | None = None):
    """One playout with stream seed `seed`, mirroring
    engine.random_playout(game, state, seed). Returns (outcome, moves):
    outcome 0 = draw, otherwise the winning player."""
    tables = build_tables(game)
    scratch = make_scratch(tables)
    if state is None:
        init = (tables.who0, tables.mover0, tables.passes0, tables.move_number0)
    else:
        init = state_arrays(game, state)
    args = _kernel_args(tables, scratch, *init)
    rec = record if record is not None else _NO_RECORD
    return _playout(*args, _U(seed), rec)


def playout_outcomes(game: Game, n: int, seed: int,
                     state: GameState | None = None):
    """Tallied outcomes of n playouts; playout j uses stream split(seed, j).
    Returns (playouts, moves, {0: draws, 1: p1 wins, 2: p2 wins})."""
    tables = build_tables(game)
    scratch = make_scratch(tables)
    if state is None:
        init = (tables.who0, tables.mover0, tables.passes0, tables.move_number0)
    else:
        init = state_arrays(game, state)
    args = _kernel_args(tables, scratch, *init)
    played, moves, w1, w2, dr = _run_batch(n, _U(seed), 0, *args, _NO_RECORD)
    return played, moves, {0: dr, 1: w1, 2: w2}


def warmup(tables: PlayoutTables) -> None:
    """Force JIT compilation outside any timed region."""
    scratch = make_scratch(tables)
    args = _kernel_args(tables, scratch, tables.who0, tables.mover0,
                        tables.passes0, tables.move_number0)
    _run_batch(1, _U(0), 0, *args, _NO_RECORD)
