import math

import pytest

from ludic import corpus
from ludic.engine import (bench_playouts, enumerate_game, flat_mc_choose,
                          random_playout, replay)
from ludic.errors import EnumerationCapError, RulesError
from ludic.game import compile_text
from ludic.rules import apply_start, legal_moves, successor

import oracles


def test_seed_determinism(ttt):
    a = random_playout(ttt, seed=42)
    b = random_playout(ttt, seed=42)
    assert a.choices == b.choices
    assert a.hashes == b.hashes
    assert a.final.scores == b.final.scores
    c = random_playout(ttt, seed=43)
    assert (a.choices, a.final.scores) != (c.choices, c.final.scores)


def test_seed42_regression_snapshot(ttt):
    # frozen once with the reference seed; guards the documented RNG
    trial = random_playout(ttt, seed=42)
    assert trial.choices == [1, 3, 0, 0, 0, 2, 1]
    assert trial.final.scores == (1.0, -1.0)


def test_trial_structure(ttt):
    trial = random_playout(ttt, seed=5)
    assert trial.num_moves == len(trial.hashes) == len(trial.choices)
    assert trial.final.terminal
    assert not trial.initial.terminal
    # every recorded move was legal in its predecessor
    s = trial.initial.copy()
    for m in trial.moves:
        assert m in legal_moves(ttt, s)
        assert not s.terminal  # only the final state may be terminal
        s = successor(ttt, s, m)
    assert s.terminal


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_replay_reproduces_final_hash(all_games, seed):
    for game in all_games:
        trial = random_playout(game, seed=seed)
        assert replay(trial) == trial.hashes[-1]


def test_playout_from_terminal_state_is_empty(ttt):
    s = apply_start(ttt)
    for site in (0, 3, 1, 4, 2):
        m = next(m for m in legal_moves(ttt, s) if m.to_site == site)
        s = successor(ttt, s, m)
    trial = random_playout(ttt, state=s, seed=9)
    assert trial.num_moves == 0
    assert trial.final.scores == (1.0, -1.0)


def test_enumerate_single_forced_move():
    game = compile_text(
        '(game "One" (players 2) (equipment { (board (square 1) (square)) '
        '(piece "D" P1) (piece "E" P2) }) '
        '(rules (play (to Mover (empty))) (end (line 1) (result Mover Win))))')
    report = enumerate_game(game)
    assert report.terminal_sequences == 1
    assert report.outcome_tallies == {(1.0, -1.0): 1}
    assert report.reachable_positions == 2  # empty board and the won board


def test_enumerate_depth_cap_errors(ttt):
    with pytest.raises(EnumerationCapError):
        enumerate_game(ttt, max_depth=3)


def test_enumerate_node_cap_errors(ttt):
    with pytest.raises(EnumerationCapError):
        enumerate_game(ttt, max_nodes=100)


def test_flat_mc_takes_immediate_win(ttt, warm_kernel):
    s = apply_start(ttt)
    for site in (0, 3, 1, 4):  # P1: a1 b1, P2: a2 b2; P1 wins at c1
        m = next(m for m in legal_moves(ttt, s) if m.to_site == site)
        s = successor(ttt, s, m)
    move = flat_mc_choose(ttt, s, budget=900, seed=3)
    assert move.to_site == 2


def test_flat_mc_single_move_state(ttt):
    s = apply_start(ttt)
    for site in (0, 4, 8, 1, 7, 6, 2, 5):  # one empty cell left
        m = next(m for m in legal_moves(ttt, s) if m.to_site == site)
        s = successor(ttt, s, m)
    move = flat_mc_choose(ttt, s, budget=1, seed=0, use_fast=False)
    assert move.to_site == 3


def test_flat_mc_budget_too_small(ttt):
    with pytest.raises(ValueError):
        flat_mc_choose(ttt, apply_start(ttt), budget=8)


def test_flat_mc_terminal_state_errors(ttt):
    s = apply_start(ttt)
    for site in (0, 3, 1, 4, 2):
        m = next(m for m in legal_moves(ttt, s) if m.to_site == site)
        s = successor(ttt, s, m)
    with pytest.raises(RulesError):
        flat_mc_choose(ttt, s, budget=100)


def test_flat_mc_deterministic_regression(ttt, warm_kernel):
    # frozen once with the reference seed
    move = flat_mc_choose(ttt, apply_start(ttt), budget=9000, seed=1)
    assert move.to_site == 4  # the center, reassuringly
    again = flat_mc_choose(ttt, apply_start(ttt), budget=9000, seed=1)
    assert again.to_site == move.to_site


def test_flat_mc_pure_and_fast_paths_agree(ttt):
    # both paths consume identical per-candidate streams
    fast = flat_mc_choose(ttt, apply_start(ttt), budget=90, seed=12, use_fast=True)
    pure = flat_mc_choose(ttt, apply_start(ttt), budget=90, seed=12, use_fast=False)
    assert fast.to_site == pure.to_site


def test_bench_validates_arguments(ttt):
    with pytest.raises(ValueError):
        bench_playouts(ttt, seconds=0.5)
    with pytest.raises(ValueError):
        bench_playouts(ttt, seconds=1, threads=0)


def test_bench_stats_consistency(ttt, warm_kernel):
    stats = bench_playouts(ttt, seconds=1, threads=2, seed=3)
    assert stats.playouts > 0
    assert sum(stats.tallies.values()) == stats.playouts
    assert stats.playouts == sum(t.playouts for t in stats.per_thread)
    assert stats.moves == sum(t.moves for t in stats.per_thread)
    for code in (0, 1, 2):
        assert stats.tallies[code] == sum(t.tallies.get(code, 0)
                                          for t in stats.per_thread)
    assert math.isclose(stats.playouts_per_second,
                        stats.playouts / stats.elapsed)
    assert stats.elapsed >= 1.0
    record = stats.to_record()
    assert set(record) == {"game", "threads", "seconds", "playouts",
                           "playoutsPerSecond", "movesPerSecond"}


def test_bench_rejects_unsupported_games():
    from ludic import universality as uni
    game = uni.compile_tree(uni.random_tree(1))
    with pytest.raises(ValueError, match="no compiled playout path"):
        bench_playouts(game, seconds=1)
