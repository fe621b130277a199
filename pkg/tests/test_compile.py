import pytest

from ludic import corpus
from ludic.errors import CompileError
from ludic.game import (GENERAL, UNIFORM, GravityDrop, LineCond, Steps,
                        ToEmpty, compile_text)
from ludic.grammar import parse_game


def test_tictactoe_compile_matches_description(ttt):
    assert ttt.players.count == 2
    assert ttt.container.num_vertices == 9
    assert len(ttt.container.edges) == 12  # orthogonal adjacency as configured
    assert [c.name for c in ttt.components] == ["empty", "Disc", "Cross"]
    assert [c.owner for c in ttt.components] == [0, 1, 2]
    assert ttt.representation == UNIFORM
    assert isinstance(ttt.play_rules, ToEmpty)
    assert ttt.end_rules[0].condition == LineCond(3)
    assert ttt.end_rules[0].outcome == "Win"


def test_zero_players_rejected():
    with pytest.raises(CompileError, match="player count"):
        compile_text('(game "X" (players 0) (equipment { (board (square 3) '
                     '(square)) (piece "D" P1) }) (rules (play (to Mover (empty)))))')


def test_hex9_container(hex9):
    assert hex9.container.num_vertices == 81
    # interior sites have the full 6-neighbor adjacency
    pre = hex9.container.pregen
    interior = [v for v in range(81) if 0 < pre.row[v] < 8 and 0 < pre.col[v] < 8]
    assert all(hex9.container.degree(v) == 6 for v in interior)
    assert 1 in hex9.connect_sides and 2 in hex9.connect_sides
    a, b = hex9.connect_sides[1]
    assert a == pre.sides["N"] and b == pre.sides["S"]


def test_unknown_ludeme_rejected():
    with pytest.raises(CompileError, match="unknown"):
        compile_text('(game "X" (players 2) (equipment { (board (square 3) '
                     '(square)) (piece "D" P1) (piece "E" P2) }) '
                     '(rules (play (frobnicate))))')


def test_arity_mismatch_rejected():
    with pytest.raises(CompileError, match="'line' takes a length"):
        compile_text('(game "X" (players 2) (equipment { (board (square 3) '
                     '(square)) (piece "D" P1) (piece "E" P2) }) '
                     '(rules (play (to Mover (empty))) '
                     '(end (line) (result Mover Win))))')


@pytest.mark.parametrize("flow", ["Simultaneous", "Realtime"])
def test_non_alternating_flow_parses_but_rejects(flow):
    text = (f'(game "X" (players 2 {flow}) (equipment {{ (board (square 3) '
            '(square)) (piece "D" P1) (piece "E" P2) }) '
            '(rules (play (to Mover (empty)))))')
    parse_game(text)  # the surface syntax accepts it
    with pytest.raises(CompileError, match="unsupported flow"):
        compile_text(text)


def test_compile_twice_structurally_equal():
    text = corpus.load_text("Tic-Tac-Toe")
    a = compile_text(text)
    b = compile_text(text)
    assert a is not b
    assert a.structurally_equal(b)


def test_forced_general_representation(ttt):
    g = corpus.load_game("Tic-Tac-Toe", force_representation=GENERAL)
    assert g.representation == GENERAL
    assert ttt.representation == UNIFORM


def test_connect_four_compiles_gravity(connect4):
    assert isinstance(connect4.play_rules, GravityDrop)
    assert connect4.container.num_vertices == 42
    assert len(connect4.container.pregen.columns) == 7


def test_breakthrough_step_directions(breakthrough):
    assert isinstance(breakthrough.play_rules, Steps)
    # relative directions resolved per player at compile time
    assert breakthrough.step_dirs[1] == (("N", "empty"), ("NW", "empty-or-enemy"),
                                         ("NE", "empty-or-enemy"))
    assert breakthrough.step_dirs[2] == (("S", "empty"), ("SE", "empty-or-enemy"),
                                         ("SW", "empty-or-enemy"))
    assert breakthrough.reach_targets[1] == breakthrough.container.pregen.sides["N"]
    assert breakthrough.reach_targets[2] == breakthrough.container.pregen.sides["S"]


def test_step_game_without_diagonal_edges_rejected():
    text = ('(game "X" (players 2) (equipment { (board (square 8) (square)) '
            '(piece "P" P1) (piece "P" P2) }) '
            '(rules (play (step Mover (dirs ForwardLeft) (empty)))))')
    with pytest.raises(CompileError, match="not available"):
        compile_text(text)


def test_misere_option_changes_outcome():
    normal = corpus.load_game("Hex 3x3")
    misere = corpus.load_game("Hex", ["Board Size 3x3", "Misere"])
    assert normal.end_rules[0].outcome == "Win"
    assert misere.end_rules[0].outcome == "Loss"
    assert misere.options == ("Board Size 3x3", "Misere")


def test_yavalath_compiles_ordered_end_rules(yavalath):
    conds = [(r.condition, r.outcome) for r in yavalath.end_rules]
    assert conds == [(LineCond(4), "Win"), (LineCond(3), "Loss")]
    assert yavalath.container.num_vertices == 61


def test_move_limit_scales_with_board(ttt, gomoku):
    assert ttt.move_limit == 50 * 9
    assert gomoku.move_limit == 50 * 225


def test_game_is_not_mutated_by_state_ops(ttt):
    import copy
    from ludic.rules import apply_start, legal_moves, successor
    before = ttt.structurally_equal(corpus.load_game("Tic-Tac-Toe"))
    s = apply_start(ttt)
    for m in legal_moves(ttt, s):
        successor(ttt, s, m)
    assert before and ttt.structurally_equal(corpus.load_game("Tic-Tac-Toe"))
