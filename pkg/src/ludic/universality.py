"""Compile any finite deterministic perfect-information game into an
equivalent ludemic game, and check the equivalence by bisimulation.

The construction mirrors the game tree as a board graph: a single token
starts on the root vertex, each move drags it to a child vertex (remove
plus place, with an explicit set-mover action carrying the child's
control), and one end condition per leaf pays that leaf's payoff vector
out exactly. The bisimulation walks tree and game in lockstep and checks
mover, branching, the one-token invariant and the terminal payoffs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LudicError, ParseError
from .game import (ALTERNATING, Component, EndRule, Game, PlaceRegion,
                   Players, StartSetMover, TokenAtCond, TreeMoves)
from .graphs import build_tree_container
from .rng import Splitmix64, split
from .rules import apply_start, legal_moves, successor
from .state import GameState


@dataclass
class ExtensiveTree:
    """A finite k-player game tree: parent links, control map on internal
    nodes, payoff vectors on leaves."""
    player_count: int
    parent: list[int]  # parent[v] = -1 at the root
    control: dict[int, int]  # internal node -> player 1..k
    payoff: dict[int, tuple[float, ...]]  # leaf -> length-k vector
    ids: list[str] | None = None  # original node names, for file round-trips

    def __post_init__(self):
        self.children: list[list[int]] = [[] for _ in self.parent]
        self.root = -1
        for v, p in enumerate(self.parent):
            if p < 0:
                if self.root >= 0:
                    raise LudicError("tree has more than one root")
                self.root = v
            else:
                self.children[p].append(v)
        if self.root < 0:
            raise LudicError("tree has no root")
        for v in range(len(self.parent)):
            internal = bool(self.children[v])
            if internal and v not in self.control:
                raise LudicError(f"internal node {self.name(v)} has no control")
            if not internal and v not in self.payoff:
                raise LudicError(f"leaf {self.name(v)} has no payoff")
            if internal and v in self.payoff:
                raise LudicError(f"internal node {self.name(v)} carries a payoff")
            if not internal and v in self.control:
                raise LudicError(f"leaf {self.name(v)} carries a control")
        for v, vec in self.payoff.items():
            if len(vec) != self.player_count:
                raise LudicError(f"payoff at {self.name(v)} has wrong length")
        for v, p in self.control.items():
            if not 1 <= p <= self.player_count:
                raise LudicError(f"control {p} at {self.name(v)} out of range "
                                 "(the nature player 0 is unused)")

    def name(self, v: int) -> str:
        return self.ids[v] if self.ids else str(v)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def num_nodes(self) -> int:
        return len(self.parent)


TOKEN_NAME = "Token"


def compile_tree(tree: ExtensiveTree) -> Game:
    """The board mirrors the tree; play moves the single token root-to-leaf."""
    container = build_tree_container(tree.parent)
    children = tuple(tuple(sorted(tree.children[v])) for v in range(tree.num_nodes()))
    control = tuple(tree.control.get(v, 0) for v in range(tree.num_nodes()))
    play = TreeMoves(children=children, control=control, token=1)

    end_rules = []
    for v in sorted(tree.payoff):
        end_rules.append(EndRule(TokenAtCond(v), "Nobody", "Draw",
                                 scores=tuple(tree.payoff[v])))

    start: list = [PlaceRegion(1, 1, "sites", (tree.root,))]
    root_control = tree.control.get(tree.root, 0)
    if root_control:
        start.append(StartSetMover(root_control))

    game = Game(
        name="compiled-game-tree",
        players=Players(tree.player_count, ALTERNATING),
        container=container,
        components=(Component(0, "empty", 0), Component(1, TOKEN_NAME, 1)),
        start_rules=tuple(start),
        play_rules=play,
        end_rules=tuple(end_rules),
        representation="uniform-pieces",
        source=None,
    )
    game.piece_of_player[1] = 1
    game.leaf_payoffs.update({v: tuple(tree.payoff[v]) for v in tree.payoff})
    return game


def corrupt_leaf_payoff(game: Game, vertex: int) -> Game:
    """A copy of a tree-compiled game with one leaf payoff negated, for
    fault-detection demonstrations. Both the dispatch table and the
    per-leaf end rules are altered consistently."""
    if vertex not in game.leaf_payoffs:
        raise LudicError(f"vertex {vertex} is not a leaf of this game")
    flipped = tuple(-x if x != 0 else 1.0 for x in game.leaf_payoffs[vertex])
    end_rules = tuple(
        EndRule(r.condition, r.role, r.outcome, scores=flipped)
        if isinstance(r.condition, TokenAtCond) and r.condition.vertex == vertex
        else r
        for r in game.end_rules)
    dup = Game(
        name=game.name + "-corrupted",
        players=game.players, container=game.container,
        components=game.components, start_rules=game.start_rules,
        play_rules=game.play_rules, end_rules=end_rules,
        representation=game.representation,
    )
    dup.piece_of_player.update(game.piece_of_player)
    dup.leaf_payoffs.update(game.leaf_payoffs)
    dup.leaf_payoffs[vertex] = flipped
    return dup


# --- bisimulation -------------------------------------------------------------

@dataclass
class Mismatch:
    path: tuple[str, ...]
    kind: str  # 'mover' | 'branching' | 'payoff' | 'trial-length' | 'token'
    detail: str = ""


@dataclass
class BisimulationReport:
    paths_checked: int = 0
    states_visited: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return not self.mismatches


def _token_sites(game: Game, state: GameState) -> list[int]:
    rules = game.play_rules
    assert isinstance(rules, TreeMoves)
    return [v for v in range(game.num_sites) if state.what(v) == rules.token]


def bisimulation_check(tree: ExtensiveTree, game: Game,
                       mode: str = "exhaustive", samples: int = 100,
                       seed: int = 0) -> BisimulationReport:
    """Walk the tree and the game in lockstep.

    At every paired (node, state): same mover, same branching, exactly one
    token sitting on the matching vertex; on leaves, terminal with the
    exact payoff vector and trial length equal to the path length.
    Exhaustive mode covers every root-to-leaf path; sampled mode walks
    `samples` seeded random paths.
    """
    game.check_end_dispatch = True
    report = BisimulationReport()
    try:
        s0 = apply_start(game)
        if mode == "exhaustive":
            _walk_all(tree, game, tree.root, s0, (), report)
        elif mode == "sampled":
            rng = Splitmix64(seed)
            for _ in range(samples):
                _walk_random(tree, game, s0, rng, report)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    finally:
        game.check_end_dispatch = False
    return report


def _check_pair(tree: ExtensiveTree, game: Game, node: int, state: GameState,
                path: tuple[str, ...], depth: int,
                report: BisimulationReport) -> list | None:
    """Shared per-pair checks; returns the legal moves for internal nodes."""
    report.states_visited += 1
    tokens = _token_sites(game, state)
    if len(tokens) != 1:
        report.mismatches.append(Mismatch(path, "token",
                                          f"{len(tokens)} tokens on the board"))
        return None
    if tokens[0] != node:
        report.mismatches.append(Mismatch(path, "token",
                                          f"token at {tokens[0]}, node is {tree.name(node)}"))
        return None

    if tree.is_leaf(node):
        if not state.terminal:
            report.mismatches.append(Mismatch(path, "trial-length",
                                              "game state is not terminal at a leaf"))
            return None
        if state.move_number != depth:
            report.mismatches.append(Mismatch(
                path, "trial-length",
                f"trial has {state.move_number} moves, path has {depth}"))
        if state.scores != tree.payoff[node]:
            report.mismatches.append(Mismatch(
                path, "payoff", f"{state.scores} != {tree.payoff[node]}"))
        return None

    if state.terminal:
        report.mismatches.append(Mismatch(path, "branching",
                                          "terminal state at an internal node"))
        return None
    if state.mover != tree.control[node]:
        report.mismatches.append(Mismatch(
            path, "mover", f"mover {state.mover} != control {tree.control[node]}"))
    moves = legal_moves(game, state)
    if len(moves) != len(tree.children[node]):
        report.mismatches.append(Mismatch(
            path, "branching",
            f"{len(moves)} moves != {len(tree.children[node])} children"))
        return None
    return moves


def _walk_all(tree: ExtensiveTree, game: Game, node: int, state: GameState,
              path: tuple[str, ...], report: BisimulationReport) -> None:
    moves = _check_pair(tree, game, node, state, path, len(path), report)
    if tree.is_leaf(node):
        report.paths_checked += 1
        return
    if moves is None:
        return
    for move, child in zip(moves, sorted(tree.children[node])):
        if move.to_site != child:
            report.mismatches.append(Mismatch(
                path, "branching",
                f"move goes to {move.to_site}, child is {tree.name(child)}"))
            continue
        _walk_all(tree, game, child, successor(game, state, move),
                  path + (tree.name(child),), report)


def _walk_random(tree: ExtensiveTree, game: Game, s0: GameState,
                 rng: Splitmix64, report: BisimulationReport) -> None:
    node, state, path = tree.root, s0, ()
    while True:
        moves = _check_pair(tree, game, node, state, path, len(path), report)
        if tree.is_leaf(node) or moves is None:
            report.paths_checked += 1
            return
        children = sorted(tree.children[node])
        pick = rng.below(len(children))
        node = children[pick]
        state = successor(game, state, moves[pick])
        path = path + (tree.name(node),)


# --- random trees for property tests -------------------------------------------

def random_tree(seed: int, max_depth: int = 6, max_branching: int = 4,
                max_players: int = 3) -> ExtensiveTree:
    """Seeded random game tree. Branching is 1..max_branching, leaves get
    payoffs from {-1, -0.5, 0, 0.5, 1}, deeper nodes are more likely to
    close, sizes stay small enough for exhaustive walks."""
    rng = Splitmix64(seed)
    k = 1 + rng.below(max_players)
    parent = [-1]
    control: dict[int, int] = {}
    payoff: dict[int, tuple[float, ...]] = {}
    frontier = [(0, 0)]  # (node, depth)
    values = (-1.0, -0.5, 0.0, 0.5, 1.0)
    while frontier:
        node, depth = frontier.pop()
        close = depth >= max_depth or (depth > 0 and rng.below(12) < 1 + depth) \
            or len(parent) > 300
        if close:
            payoff[node] = tuple(values[rng.below(5)] for _ in range(k))
            continue
        control[node] = 1 + rng.below(k)
        for _ in range(1 + rng.below(max_branching)):
            child = len(parent)
            parent.append(node)
            frontier.append((child, depth + 1))
    return ExtensiveTree(k, parent, control, payoff)


# --- tree file format -----------------------------------------------------------

def parse_tree_file(text: str) -> ExtensiveTree:
    """Line-oriented format: `players k`, `node <id> parent <id|-> control
    <player>`, `leaf <id> parent <id> payoff v1 .. vk`. Exactly one node
    has parent `-`."""
    player_count = None
    rows: list[tuple[str, str, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "players":
                if player_count is not None:
                    raise ValueError("duplicate 'players' line")
                player_count = int(parts[1])
            elif parts[0] == "node":
                if parts[2] != "parent" or parts[4] != "control":
                    raise ValueError("malformed 'node' line")
                rows.append(("node", parts[1], parts[3], [parts[5]]))
            elif parts[0] == "leaf":
                if parts[2] != "parent" or parts[4] != "payoff":
                    raise ValueError("malformed 'leaf' line")
                rows.append(("leaf", parts[1], parts[3], parts[5:]))
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ParseError(f"tree file: {exc}", lineno, 1) from None
    if player_count is None:
        raise ParseError("tree file: missing 'players' line")

    ids = [r[1] for r in rows]
    if len(set(ids)) != len(ids):
        raise ParseError("tree file: duplicate node ids")
    index = {node_id: i for i, node_id in enumerate(ids)}
    parent = [0] * len(rows)
    control: dict[int, int] = {}
    payoff: dict[int, tuple[float, ...]] = {}
    for i, (kind, node_id, parent_id, values) in enumerate(rows):
        if parent_id == "-":
            parent[i] = -1
        elif parent_id in index:
            parent[i] = index[parent_id]
        else:
            raise ParseError(f"tree file: unknown parent {parent_id!r}")
        if kind == "node":
            control[i] = int(values[0])
        else:
            payoff[i] = tuple(float(v) for v in values)
    try:
        return ExtensiveTree(player_count, parent, control, payoff, ids=ids)
    except LudicError as exc:
        raise ParseError(f"tree file: {exc}") from None


def format_tree_file(tree: ExtensiveTree) -> str:
    lines = [f"players {tree.player_count}"]
    for v in range(tree.num_nodes()):
        pid = "-" if tree.parent[v] < 0 else tree.name(tree.parent[v])
        if tree.is_leaf(v):
            vec = " ".join(f"{x:g}" for x in tree.payoff[v])
            lines.append(f"leaf {tree.name(v)} parent {pid} payoff {vec}")
        else:
            lines.append(f"node {tree.name(v)} parent {pid} control {tree.control[v]}")
    return "\n".join(lines) + "\n"


def game_artifact(tree: ExtensiveTree, game: Game) -> dict:
    """A serializable dump of the compiled game (vertices, per-node moves,
    end table) written by the tree-compile command."""
    rules = game.play_rules
    assert isinstance(rules, TreeMoves)
    return {
        "players": game.players.count,
        "vertices": game.num_sites,
        "root": tree.root,
        "startMover": tree.control.get(tree.root, 0),
        "moves": {tree.name(v): [tree.name(c) for c in rules.children[v]]
                  for v in range(game.num_sites) if rules.children[v]},
        "control": {tree.name(v): rules.control[v]
                    for v in range(game.num_sites) if rules.control[v]},
        "payoffs": {tree.name(v): list(game.leaf_payoffs[v])
                    for v in sorted(game.leaf_payoffs)},
    }
