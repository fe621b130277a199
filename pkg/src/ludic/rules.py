"""Rule evaluation: start rules, legal-move generation, end conditions,
and the successor function.

A Move is an ordered list of primitive actions (place/remove/pass/...).
The successor applies the actions, advances the mover (rotation unless
the move carries an explicit set-mover action), then evaluates the end
rules in listed order with the `Mover` role bound to the player who just
moved. Stalemated players receive exactly [pass]; a full round of passes
is adjudicated a Draw, as is any trial hitting the safety move limit.

End conditions reached through `successor` are checked incrementally
through the last-placed site; `eval_end` on an arbitrary state uses the
full-board scan. Tests assert the two paths agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllegalMoveError, RulesError
from .game import (AllPassedCond, BoardFullCond, ConnectCond, Game,
                   GravityDrop, LineCond, NoMovesCond, PlaceRegion, ReachCond,
                   StartSetMover, Steps, ToEmpty, TokenAtCond, TreeMoves,
                   COND_EMPTY, COND_ENEMY, COND_EMPTY_OR_ENEMY)
from .state import GameState, uf_side_nodes


# --- actions ----------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    site: int
    component: int


@dataclass(frozen=True)
class Remove:
    site: int


@dataclass(frozen=True)
class SetMover:
    player: int


@dataclass(frozen=True)
class Pass:
    pass


@dataclass(frozen=True)
class SetCount:
    site: int
    n: int


@dataclass(frozen=True)
class SetPieceState:
    site: int
    value: int


Action = Place | Remove | SetMover | Pass | SetCount | SetPieceState


@dataclass(frozen=True)
class Move:
    actions: tuple[Action, ...]
    mover: int
    provenance: str
    from_site: int = -1
    to_site: int = -1

    @property
    def is_pass(self) -> bool:
        return len(self.actions) == 1 and isinstance(self.actions[0], Pass)


PASS_PROVENANCE = "pass"


def site_name(game: Game, site: int) -> str:
    pregen = game.container.pregen
    r, c = pregen.row[site], pregen.col[site]
    if game.container.tiling == "square":
        if c < 26:
            return f"{chr(ord('a') + c)}{r + 1}"
        return f"c{c}r{r}"
    if game.container.tiling == "hex":
        return f"{r},{c}"
    return f"n{site}"


def describe_move(game: Game, move: Move) -> str:
    if move.is_pass:
        return f"P{move.mover}: pass"
    if move.from_site >= 0:
        return (f"P{move.mover}: {site_name(game, move.from_site)}"
                f"→{site_name(game, move.to_site)}")
    return f"P{move.mover}: {site_name(game, move.to_site)}"


# --- start rules -------------------------------------------------------------

def _region_sites(game: Game, rule: PlaceRegion) -> list[int]:
    if rule.region_kind == "rows":
        rows = game.container.pregen.row
        max_row = max(rows)
        for r in rule.region_args:
            if not 0 <= r <= max_row:
                raise RulesError(f"start rule places on nonexistent row {r}")
        wanted = set(rule.region_args)
        return [v for v in range(game.num_sites) if rows[v] in wanted]
    sites = []
    for v in rule.region_args:
        if not 0 <= v < game.num_sites:
            raise RulesError(f"start rule places on invalid site {v}")
        sites.append(v)
    return sites


def apply_start(game: Game) -> GameState:
    """Build s0: the all-empty state with the start actions applied."""
    s = GameState(game)
    for rule in game.start_rules:
        if isinstance(rule, StartSetMover):
            s.mover = rule.player
            continue
        assert isinstance(rule, PlaceRegion)
        owner = game.components[rule.piece].owner
        for site in _region_sites(game, rule):
            if s.who(site) != 0:
                raise RulesError(f"start rule places onto occupied site {site}")
            s.place(site, rule.piece, owner)
    s.last_to = -1
    s.last_mover = 0
    result = eval_end(game, s)
    if result is not None:
        s.terminal = True
        s.scores = result
    return s


# --- legal moves -------------------------------------------------------------

def _generate(game: Game, state: GameState) -> list[Move]:
    rules = game.play_rules
    mover = state.mover
    who = state.cstate.who

    if isinstance(rules, ToEmpty):
        piece = game.piece_of_player[mover]
        return [Move((Place(site, piece),), mover, "to-empty", to_site=site)
                for site in range(game.num_sites) if who.get(site) == 0]

    if isinstance(rules, GravityDrop):
        piece = game.piece_of_player[mover]
        moves = []
        for column in game.container.pregen.columns:
            for site in column:  # bottom-up
                if who.get(site) == 0:
                    moves.append(Move((Place(site, piece),), mover,
                                      "lowest-empty", to_site=site))
                    break
        return moves

    if isinstance(rules, Steps):
        neighbors = game.container.pregen.neighbors
        dirs = game.step_dirs[mover]
        moves = []
        for src in range(game.num_sites):
            if who.get(src) != mover:
                continue
            comp = state.what(src)
            for dir_name, cond in dirs:
                dst = neighbors[dir_name][src]
                if dst < 0:
                    continue
                occupant = who.get(dst)
                if cond == COND_EMPTY:
                    ok = occupant == 0
                elif cond == COND_ENEMY:
                    ok = occupant not in (0, mover)
                else:
                    assert cond == COND_EMPTY_OR_ENEMY
                    ok = occupant != mover
                if not ok:
                    continue
                actions: tuple[Action, ...]
                if occupant:
                    actions = (Remove(dst), Remove(src), Place(dst, comp))
                else:
                    actions = (Remove(src), Place(dst, comp))
                moves.append(Move(actions, mover, f"step {dir_name}",
                                  from_site=src, to_site=dst))
        return moves

    assert isinstance(rules, TreeMoves)
    token_site = _token_vertex(game, state)
    moves = []
    for child in rules.children[token_site]:
        actions: list[Action] = [Remove(token_site), Place(child, rules.token)]
        if rules.control[child]:
            actions.append(SetMover(rules.control[child]))
        moves.append(Move(tuple(actions), mover, "tree-move",
                          from_site=token_site, to_site=child))
    return moves


def _token_vertex(game: Game, state: GameState) -> int:
    rules = game.play_rules
    assert isinstance(rules, TreeMoves)
    hits = [v for v in range(game.num_sites) if state.what(v) == rules.token]
    if len(hits) != 1:
        raise RulesError(f"expected exactly one token on the board, found {len(hits)}")
    return hits[0]


def legal_moves(game: Game, state: GameState) -> list[Move]:
    """All moves for mover(s); exactly [pass] when the generator is empty."""
    if state.terminal:
        raise RulesError("legal_moves called on a terminal state")
    moves = _generate(game, state)
    if not moves:
        return [Move((Pass(),), state.mover, PASS_PROVENANCE)]
    return moves


# --- end conditions ----------------------------------------------------------

def _line_through(game: Game, state: GameState, site: int, player: int, n: int) -> bool:
    who = state.cstate.who
    line_next = game.container.line_next
    for fwd, back in game.container.line_axes:
        count = 1
        table = line_next[fwd]
        t = table[site]
        while t >= 0 and who.get(t) == player:
            count += 1
            t = table[t]
        table = line_next[back]
        t = table[site]
        while t >= 0 and who.get(t) == player:
            count += 1
            t = table[t]
        if count >= n:
            return True
    return False


def _line_anywhere(game: Game, state: GameState, player: int, n: int) -> bool:
    who = state.cstate.who
    line_next = game.container.line_next
    for fwd, back in game.container.line_axes:
        fwd_table, back_table = line_next[fwd], line_next[back]
        for v in range(game.num_sites):
            if who.get(v) != player:
                continue
            prev = back_table[v]
            if prev >= 0 and who.get(prev) == player:
                continue  # not the start of a run
            count = 1
            t = fwd_table[v]
            while t >= 0 and who.get(t) == player:
                count += 1
                t = fwd_table[t]
            if count >= n:
                return True
    return False


def _connected(game: Game, state: GameState, player: int) -> bool:
    uf = state.cstate.uf
    va, vb = uf_side_nodes(game.num_sites, player)
    return uf.find(va) == uf.find(vb)


def connected_flood_fill(game: Game, state: GameState, player: int) -> bool:
    """Edge-walk connectivity check; the reference the union-find must match."""
    side_a, side_b = game.connect_sides[player]
    who = state.cstate.who
    frontier = [v for v in side_a if who.get(v) == player]
    seen = set(frontier)
    neighbors = game.container.pregen.neighbors
    while frontier:
        v = frontier.pop()
        if v in side_b:
            return True
        for table in neighbors.values():
            u = table[v]
            if u >= 0 and u not in seen and who.get(u) == player:
                seen.add(u)
                frontier.append(u)
    return False


def _board_full(game: Game, state: GameState) -> bool:
    who = state.cstate.who
    return all(who.get(v) != 0 for v in range(game.num_sites))


def _scores_for(game: Game, player: int, outcome: str) -> tuple[float, ...]:
    k = game.players.count
    if outcome in ("Draw", "Tie", "Abort"):
        return (0.0,) * k
    if outcome == "Win":
        return tuple(1.0 if p == player else -1.0 for p in range(1, k + 1))
    assert outcome == "Loss"
    return tuple(-1.0 if p == player else 1.0 for p in range(1, k + 1))


def _resolve_role(role: str, binding: int, state: GameState) -> int:
    if role == "Mover":
        return binding
    if role == "Next":
        return state.mover
    return int(role[1:])


def eval_end(game: Game, state: GameState,
             incremental: bool = False) -> tuple[float, ...] | None:
    """First satisfied end condition's score vector, else None.

    Incremental mode trusts `state.last_to`/`last_mover` (states produced
    by `successor`); otherwise conditions are checked by full-board scan
    for every player in index order.
    """
    k = game.players.count
    last_to, last_mover = state.last_to, state.last_mover
    players = range(1, k + 1)

    token_scores = None
    if game.leaf_payoffs:
        rules = game.play_rules
        assert isinstance(rules, TreeMoves)
        vertex = last_to if incremental and last_to >= 0 else _token_vertex(game, state)
        token_scores = game.leaf_payoffs.get(vertex)
        if game.check_end_dispatch:
            scan = _token_linear_scan(game, state)
            assert scan == token_scores, "payoff table and linear scan disagree"

    for rule in game.end_rules:
        cond = rule.condition
        if isinstance(cond, LineCond):
            if incremental:
                if last_to >= 0 and _line_through(game, state, last_to, last_mover, cond.n):
                    return _scores_for(game, _resolve_role(rule.role, last_mover, state),
                                       rule.outcome)
            else:
                for p in players:
                    if _line_anywhere(game, state, p, cond.n):
                        return _scores_for(game, _resolve_role(rule.role, p, state),
                                           rule.outcome)
        elif isinstance(cond, ConnectCond):
            if incremental:
                if last_to >= 0 and _connected(game, state, last_mover):
                    return _scores_for(game, _resolve_role(rule.role, last_mover, state),
                                       rule.outcome)
            else:
                for p in players:
                    if _connected(game, state, p):
                        return _scores_for(game, _resolve_role(rule.role, p, state),
                                           rule.outcome)
        elif isinstance(cond, ReachCond):
            if incremental:
                if last_to >= 0 and last_to in game.reach_targets.get(last_mover, ()):
                    return _scores_for(game, _resolve_role(rule.role, last_mover, state),
                                       rule.outcome)
            else:
                who = state.cstate.who
                for p in players:
                    if any(who.get(v) == p for v in game.reach_targets.get(p, ())):
                        return _scores_for(game, _resolve_role(rule.role, p, state),
                                           rule.outcome)
        elif isinstance(cond, NoMovesCond):
            if not _generate(game, state):
                binding = last_mover if last_mover else state.mover
                return _scores_for(game, _resolve_role(rule.role, binding, state),
                                   rule.outcome)
        elif isinstance(cond, BoardFullCond):
            if _board_full(game, state):
                binding = last_mover if last_mover else state.mover
                return _scores_for(game, _resolve_role(rule.role, binding, state),
                                   rule.outcome)
        elif isinstance(cond, AllPassedCond):
            if state.consecutive_passes >= k:
                return _scores_for(game, 0, "Draw")
        else:
            # TokenAtCond rules are mutually exclusive (the token sits on
            # exactly one vertex), so the vertex->payoff table computed
            # above dispatches them; the listed order cannot matter.
            assert isinstance(cond, TokenAtCond)

    if token_scores is not None:
        return token_scores

    # implicit default: a full round of forced passes abandons the game
    if state.consecutive_passes >= k:
        return (0.0,) * k
    return None


def _token_linear_scan(game: Game, state: GameState) -> tuple[float, ...] | None:
    """Definition-faithful slow path: one condition per leaf, checked in order."""
    rules = game.play_rules
    assert isinstance(rules, TreeMoves)
    for rule in game.end_rules:
        if isinstance(rule.condition, TokenAtCond):
            if state.what(rule.condition.vertex) == rules.token:
                return rule.scores
    return None


# --- successor ----------------------------------------------------------------

def successor(game: Game, state: GameState, move: Move,
              validate: bool = False) -> GameState:
    """Apply a move: actions in order, bookkeeping, mover advance, end rules."""
    if state.terminal:
        raise RulesError("successor called on a terminal state")
    if validate and move not in legal_moves(game, state):
        raise IllegalMoveError(f"move {move.provenance!r} is not legal here")

    s = state.copy()
    s.last_to = -1
    s.last_mover = state.mover
    is_pass = False
    pending_mover = None
    for action in move.actions:
        if isinstance(action, Place):
            if s.who(action.site) != 0:
                raise RulesError(f"place onto occupied site {action.site}")
            owner = game.components[action.component].owner
            s.place(action.site, action.component, owner)
        elif isinstance(action, Remove):
            if s.who(action.site) == 0:
                raise RulesError(f"remove from empty site {action.site}")
            s.remove(action.site)
        elif isinstance(action, Pass):
            is_pass = True
        elif isinstance(action, SetMover):
            pending_mover = action.player
        else:
            raise RulesError(f"action {action!r} is not supported by this "
                             "game's state representation")

    s.move_number += 1
    s.consecutive_passes = s.consecutive_passes + 1 if is_pass else 0
    s.mover = pending_mover if pending_mover is not None else (state.mover % game.players.count) + 1

    result = eval_end(game, s, incremental=True)
    if result is None and s.move_number >= game.move_limit:
        result = (0.0,) * game.players.count  # safety limit: adjudicated draw
    if result is not None:
        s.terminal = True
        s.scores = result
    return s
