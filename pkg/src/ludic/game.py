"""Compile a parsed ludeme tree into an immutable Game.

A Game is the 3-tuple players / equipment / rules. Compilation resolves
every symbolic reference (piece names, player roles, directions, sides),
selects the state representation from the rules, and precomputes the
per-player tables the evaluator consumes (step directions, connection
side pairs, reach targets).

The supported ludeme vocabulary is the closed set needed by the bundled
corpus; unknown heads and arity mismatches are compile errors, as are
the Simultaneous/Realtime flow values (parsed but rejected).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import grammar
from .errors import CompileError
from .grammar import Call, Group, Int, Node, Str, Sym
from .graphs import (Container, build_hex_hexagon, build_hex_rhombus,
                     build_rect_graph, build_square_graph)

ALTERNATING = "Alternating"
_FLOWS = (ALTERNATING, "Simultaneous", "Realtime")

OUTCOMES = ("Win", "Loss", "Draw", "Tie", "Abort")

# player-relative step directions, resolved at compile time; player 1
# faces north (rows increase), player 2 south
_RELATIVE_DIRS = {
    "Forward": {1: "N", 2: "S"},
    "ForwardLeft": {1: "NW", 2: "SE"},
    "ForwardRight": {1: "NE", 2: "SW"},
}

COND_EMPTY = "empty"
COND_ENEMY = "enemy"
COND_EMPTY_OR_ENEMY = "empty-or-enemy"
_STEP_CONDS = (COND_EMPTY, COND_ENEMY, COND_EMPTY_OR_ENEMY)


@dataclass(frozen=True)
class Players:
    count: int
    flow: str = ALTERNATING


@dataclass(frozen=True)
class Component:
    index: int
    name: str
    owner: int  # 0 = owned by nobody (the empty component)


# --- start rules ----------------------------------------------------------

@dataclass(frozen=True)
class PlaceRegion:
    """Place `piece` for `owner` on every site of a symbolic region."""
    piece: int  # component index
    owner: int
    region_kind: str  # 'rows' | 'sites'
    region_args: tuple[int, ...]


@dataclass(frozen=True)
class PlaceAt:
    piece: int
    site: int


@dataclass(frozen=True)
class StartSetMover:
    player: int


# --- play rules -----------------------------------------------------------

@dataclass(frozen=True)
class ToEmpty:
    """Mover places their piece on any empty site."""


@dataclass(frozen=True)
class GravityDrop:
    """Mover places on the lowest empty site of any non-full column."""


@dataclass(frozen=True)
class StepRule:
    dirs: tuple[str, ...]  # as written (may be player-relative)
    condition: str


@dataclass(frozen=True)
class Steps:
    rules: tuple[StepRule, ...]


@dataclass(frozen=True)
class TreeMoves:
    """Move the single token along parent->child arcs of a tree container.

    Built programmatically by the game-tree compilation path, not by the
    surface grammar.
    """
    children: tuple[tuple[int, ...], ...]  # per-vertex child vertices, ascending
    control: tuple[int, ...]  # per-vertex mover; 0 on leaves
    token: int  # component index of the moving token


PlayRules = ToEmpty | GravityDrop | Steps | TreeMoves


# --- end rules ------------------------------------------------------------

@dataclass(frozen=True)
class LineCond:
    n: int


@dataclass(frozen=True)
class ConnectCond:
    pass


@dataclass(frozen=True)
class ReachCond:
    pass


@dataclass(frozen=True)
class NoMovesCond:
    pass


@dataclass(frozen=True)
class BoardFullCond:
    pass


@dataclass(frozen=True)
class AllPassedCond:
    pass


@dataclass(frozen=True)
class TokenAtCond:
    vertex: int


EndCondition = (LineCond | ConnectCond | ReachCond | NoMovesCond
                | BoardFullCond | AllPassedCond | TokenAtCond)


@dataclass(frozen=True)
class EndRule:
    condition: EndCondition
    role: str  # 'Mover' | 'Next' | 'P<i>' | 'Nobody' (draw results)
    outcome: str  # one of OUTCOMES
    scores: tuple[float, ...] | None = None  # explicit vector overrides role/outcome


UNIFORM = "uniform-pieces"
GENERAL = "general"


@dataclass
class Game:
    """Immutable compiled game. All play state lives in GameState/Trial."""
    name: str
    players: Players
    container: Container
    components: tuple[Component, ...]
    start_rules: tuple[PlaceRegion | PlaceAt | StartSetMover, ...]
    play_rules: PlayRules
    end_rules: tuple[EndRule, ...]
    representation: str
    source: Node | None = None
    options: tuple[str, ...] = ()
    # derived tables
    piece_of_player: dict[int, int] = field(default_factory=dict)
    connect_sides: dict[int, tuple[frozenset[int], frozenset[int]]] = field(default_factory=dict)
    reach_targets: dict[int, frozenset[int]] = field(default_factory=dict)
    step_dirs: dict[int, tuple[tuple[str, str], ...]] = field(default_factory=dict)
    leaf_payoffs: dict[int, tuple[float, ...]] = field(default_factory=dict)
    check_end_dispatch: bool = False  # verify table lookup against linear scan

    def __post_init__(self):
        self.num_sites = self.container.num_vertices
        self.move_limit = 50 * self.num_sites
        self.who_values = self.players.count + 1
        self.what_values = len(self.components)

    def component_named(self, name: str) -> Component:
        for comp in self.components:
            if comp.name == name:
                return comp
        raise KeyError(name)

    def structurally_equal(self, other: "Game") -> bool:
        return (self.name == other.name
                and self.players == other.players
                and self.container == other.container
                and self.components == other.components
                and self.start_rules == other.start_rules
                and self.play_rules == other.play_rules
                and self.end_rules == other.end_rules
                and self.representation == other.representation
                and self.options == other.options)


# --- compilation ----------------------------------------------------------

def _expect_call(node: Node, head: str, where: str) -> Call:
    if not isinstance(node, Call) or node.head != head:
        found = node.head if isinstance(node, Call) else type(node).__name__
        raise CompileError(f"{where}: expected '({head} ...)', found {found!r}")
    return node


def _int_arg(node: Node, where: str) -> int:
    if not isinstance(node, Int):
        raise CompileError(f"{where}: expected an integer")
    return node.value


def _player_role(node: Node, k: int, where: str) -> int:
    """P1..Pk symbol -> player index."""
    if isinstance(node, Sym) and node.name.startswith("P") and node.name[1:].isdigit():
        p = int(node.name[1:])
        if 1 <= p <= k:
            return p
    raise CompileError(f"{where}: expected a player role P1..P{k}")


def _compile_players(call: Call) -> Players:
    if not call.args or not isinstance(call.args[0], Int):
        raise CompileError("'players' requires a count")
    k = call.args[0].value
    if k < 1:
        raise CompileError(f"player count must be >= 1, got {k}")
    flow = ALTERNATING
    if len(call.args) > 1:
        if not isinstance(call.args[1], Sym) or call.args[1].name not in _FLOWS:
            raise CompileError("'players' flow must be Alternating, Simultaneous or Realtime")
        flow = call.args[1].name
    if len(call.args) > 2:
        raise CompileError("'players' takes at most a count and a flow")
    if flow != ALTERNATING:
        raise CompileError(f"unsupported flow {flow!r}: only Alternating games compile")
    return Players(k, flow)


def _compile_board(call: Call) -> Container:
    if len(call.args) != 2:
        raise CompileError("'board' takes a shape and a tiling")
    shape, tiling = call.args
    if not isinstance(shape, Call) or not isinstance(tiling, Call):
        raise CompileError("'board' takes a shape call and a tiling call")

    diagonals = False
    if tiling.head == "square":
        for extra in tiling.args:
            if isinstance(extra, Sym) and extra.name == "diagonals":
                diagonals = True
            else:
                raise CompileError("'(square)' tiling accepts only the 'diagonals' flag")
    elif tiling.head == "hex":
        if tiling.args:
            raise CompileError("'(hex)' tiling takes no arguments")
    else:
        raise CompileError(f"unknown tiling '{tiling.head}'")

    if shape.head == "square":
        if tiling.head != "square":
            raise CompileError("a 'square' shape requires the 'square' tiling")
        if len(shape.args) != 1:
            raise CompileError("'(square n)' takes one size")
        return build_square_graph(_int_arg(shape.args[0], "square"), diagonals)
    if shape.head == "rectangle":
        if tiling.head != "square":
            raise CompileError("a 'rectangle' shape requires the 'square' tiling")
        if len(shape.args) != 2:
            raise CompileError("'(rectangle rows cols)' takes two sizes")
        rows = _int_arg(shape.args[0], "rectangle")
        cols = _int_arg(shape.args[1], "rectangle")
        return build_rect_graph(rows, cols, diagonals)
    if shape.head == "rhombus":
        if tiling.head != "hex":
            raise CompileError("a 'rhombus' shape requires the 'hex' tiling")
        if len(shape.args) != 1:
            raise CompileError("'(rhombus n)' takes one size")
        return build_hex_rhombus(_int_arg(shape.args[0], "rhombus"))
    if shape.head == "hexagon":
        if tiling.head != "hex":
            raise CompileError("a 'hexagon' shape requires the 'hex' tiling")
        if len(shape.args) != 1:
            raise CompileError("'(hexagon side)' takes one size")
        return build_hex_hexagon(_int_arg(shape.args[0], "hexagon"))
    raise CompileError(f"unknown board shape '{shape.head}'")


def _compile_equipment(call: Call, k: int) -> tuple[Container, tuple[Component, ...]]:
    if len(call.args) != 1 or not isinstance(call.args[0], Group):
        raise CompileError("'equipment' takes a single { ... } group")
    container = None
    components: list[Component] = [Component(0, "empty", 0)]
    for item in call.args[0].items:
        if not isinstance(item, Call):
            raise CompileError("equipment entries must be calls")
        if item.head == "board":
            if container is not None:
                raise CompileError("only one board container is supported")
            container = _compile_board(item)
        elif item.head == "piece":
            if len(item.args) != 2 or not isinstance(item.args[0], Str):
                raise CompileError("'piece' takes a name string and an owner role")
            owner = _player_role(item.args[1], k, "piece")
            components.append(Component(len(components), item.args[0].value, owner))
        else:
            raise CompileError(f"unknown equipment ludeme '{item.head}'")
    if container is None:
        raise CompileError("equipment declares no board")
    if len(components) == 1:
        raise CompileError("equipment declares no pieces")
    return container, tuple(components)


def _component_by_name(components: tuple[Component, ...], name: str, owner: int) -> int:
    for comp in components:
        if comp.name == name and comp.owner == owner:
            return comp.index
    raise CompileError(f"no piece named {name!r} owned by P{owner}")


def _compile_start(call: Call, components: tuple[Component, ...], k: int):
    rules = []
    items: tuple[Node, ...]
    if len(call.args) == 1 and isinstance(call.args[0], Group):
        items = call.args[0].items
    else:
        items = call.args
    for item in items:
        place = _expect_call(item, "place", "start")
        if len(place.args) != 3 or not isinstance(place.args[0], Str):
            raise CompileError("'place' takes a piece name, an owner and a region")
        owner = _player_role(place.args[1], k, "place")
        piece = _component_by_name(components, place.args[0].value, owner)
        region = place.args[2]
        if not isinstance(region, Call) or region.head not in ("rows", "sites"):
            raise CompileError("'place' region must be '(rows ...)' or '(sites ...)'")
        args = tuple(_int_arg(a, region.head) for a in region.args)
        if not args:
            raise CompileError(f"'({region.head})' requires at least one index")
        rules.append(PlaceRegion(piece, owner, region.head, args))
    return tuple(rules)


def _mover_role(node: Node, where: str) -> None:
    if not (isinstance(node, Sym) and node.name == "Mover"):
        raise CompileError(f"{where}: only the Mover role is supported here")


def _compile_step(call: Call) -> StepRule:
    if len(call.args) != 3:
        raise CompileError("'step' takes Mover, a direction list and a condition")
    _mover_role(call.args[0], "step")
    dirs_call = _expect_call(call.args[1], "dirs", "step")
    dirs = []
    for d in dirs_call.args:
        if not isinstance(d, Sym):
            raise CompileError("'dirs' entries must be direction names")
        dirs.append(d.name)
    if not dirs:
        raise CompileError("'dirs' requires at least one direction")
    cond = call.args[2]
    if not isinstance(cond, Call) or cond.head not in _STEP_CONDS or cond.args:
        raise CompileError(f"step condition must be one of {_STEP_CONDS}")
    return StepRule(tuple(dirs), cond.head)


def _compile_play(call: Call) -> PlayRules:
    if len(call.args) != 1 or not isinstance(call.args[0], Call):
        raise CompileError("'play' takes a single move generator")
    gen = call.args[0]
    if gen.head == "to":
        if len(gen.args) != 2:
            raise CompileError("'to' takes Mover and a destination")
        _mover_role(gen.args[0], "to")
        dest = gen.args[1]
        if isinstance(dest, Call) and dest.head == "empty" and not dest.args:
            return ToEmpty()
        if isinstance(dest, Call) and dest.head == "lowest-empty" and not dest.args:
            return GravityDrop()
        raise CompileError("'to' destination must be '(empty)' or '(lowest-empty)'")
    if gen.head == "step":
        return Steps((_compile_step(gen),))
    if gen.head == "or":
        rules = []
        for sub in gen.args:
            step = _expect_call(sub, "step", "or")
            rules.append(_compile_step(step))
        if not rules:
            raise CompileError("'or' requires at least one step rule")
        return Steps(tuple(rules))
    raise CompileError(f"unknown move generator '{gen.head}'")


def _compile_result(call: Call, k: int) -> tuple[str, str]:
    if len(call.args) != 2:
        raise CompileError("'result' takes a role and an outcome")
    role_node, outcome_node = call.args
    if not isinstance(role_node, Sym):
        raise CompileError("'result' role must be a symbol")
    role = role_node.name
    if role not in ("Mover", "Next") and not (
            role.startswith("P") and role[1:].isdigit() and 1 <= int(role[1:]) <= k):
        raise CompileError(f"unknown result role {role!r}")
    if not isinstance(outcome_node, Sym) or outcome_node.name not in OUTCOMES:
        raise CompileError(f"result outcome must be one of {OUTCOMES}")
    return role, outcome_node.name


def _compile_condition(call: Call) -> EndCondition:
    if call.head == "line":
        if len(call.args) != 1:
            raise CompileError("'line' takes a length")
        n = _int_arg(call.args[0], "line")
        if n < 1:
            raise CompileError("'line' length must be >= 1")
        return LineCond(n)
    if call.head == "connect":
        if len(call.args) != 1:
            raise CompileError("'connect' takes the Mover role")
        _mover_role(call.args[0], "connect")
        return ConnectCond()
    if call.head == "reach":
        if len(call.args) != 1:
            raise CompileError("'reach' takes the Mover role")
        _mover_role(call.args[0], "reach")
        return ReachCond()
    if call.head == "no-moves" and not call.args:
        return NoMovesCond()
    if call.head == "board-full" and not call.args:
        return BoardFullCond()
    if call.head == "all-passed" and not call.args:
        return AllPassedCond()
    raise CompileError(f"unknown end condition '{call.head}'")


def _compile_end(call: Call, k: int) -> tuple[EndRule, ...]:
    args = call.args
    if len(args) % 2 != 0 or not args:
        raise CompileError("'end' takes alternating condition/result pairs")
    rules = []
    for i in range(0, len(args), 2):
        cond_node, result_node = args[i], args[i + 1]
        if not isinstance(cond_node, Call):
            raise CompileError("'end' condition must be a call")
        result = _expect_call(result_node, "result", "end")
        cond = _compile_condition(cond_node)
        role, outcome = _compile_result(result, k)
        rules.append(EndRule(cond, role, outcome))
    return tuple(rules)


def _select_representation(components, play_rules, end_rules) -> str:
    """Uniform pieces per player when every player owns exactly one piece
    type; counts, per-site state or distinguishable pieces force the
    general representation (no bundled game needs those)."""
    owners = [c.owner for c in components if c.index > 0]
    if len(set(owners)) == len(owners):
        return UNIFORM
    return GENERAL


def compile_game(tree: Node, options: list[str] | None = None,
                 force_representation: str | None = None) -> Game:
    """Compile a `(game ...)` tree (options resolved here) into a Game."""
    if not isinstance(tree, Call) or tree.head != "game":
        raise CompileError("root is not a 'game' call")
    if not tree.args or not isinstance(tree.args[0], Str):
        raise CompileError("'game' requires a string name")
    resolved = grammar.resolve_options(tree, options)

    name = resolved.args[0].value  # type: ignore[union-attr]
    players = None
    equipment = None
    rules_call = None
    for arg in resolved.args[1:]:
        if not isinstance(arg, Call):
            raise CompileError("'game' arguments must be calls")
        if arg.head == "players":
            players = _compile_players(arg)
        elif arg.head == "equipment":
            equipment = arg
        elif arg.head == "rules":
            rules_call = arg
        else:
            raise CompileError(f"unknown ludeme '{arg.head}' in 'game'")
    if players is None:
        raise CompileError("'game' declares no players")
    if equipment is None:
        raise CompileError("'game' declares no equipment")
    if rules_call is None:
        raise CompileError("'game' declares no rules")

    container, components = _compile_equipment(equipment, players.count)

    start_rules: tuple = ()
    play_rules = None
    end_rules = None
    for sub in rules_call.args:
        if not isinstance(sub, Call):
            raise CompileError("'rules' arguments must be calls")
        if sub.head == "start":
            start_rules = _compile_start(sub, components, players.count)
        elif sub.head == "play":
            play_rules = _compile_play(sub)
        elif sub.head == "end":
            end_rules = _compile_end(sub, players.count)
        else:
            raise CompileError(f"unknown ludeme '{sub.head}' in 'rules'")
    if play_rules is None:
        raise CompileError("'rules' declares no play rule")
    if end_rules is None:
        end_rules = ()

    representation = force_representation or _select_representation(
        components, play_rules, end_rules)
    if representation not in (UNIFORM, GENERAL):
        raise CompileError(f"unknown representation {representation!r}")

    game = Game(
        name=name,
        players=players,
        container=container,
        components=components,
        start_rules=start_rules,
        play_rules=play_rules,
        end_rules=end_rules,
        representation=representation,
        source=tree,
        options=tuple(options or ()),
    )
    _derive_tables(game)
    _validate_game(game)
    return game


def _derive_tables(game: Game) -> None:
    k = game.players.count
    pieces_by_owner: dict[int, list[int]] = {}
    for comp in game.components:
        if comp.index > 0:
            pieces_by_owner.setdefault(comp.owner, []).append(comp.index)
    for p, idxs in pieces_by_owner.items():
        if len(idxs) == 1:
            game.piece_of_player[p] = idxs[0]

    sides = game.container.pregen.sides
    uses_connect = any(isinstance(r.condition, ConnectCond) for r in game.end_rules)
    if uses_connect:
        if k != 2:
            raise CompileError("'connect' end rules need exactly 2 players")
        for pair_player, (a, b) in zip((1, 2), (("N", "S"), ("W", "E"))):
            if a not in sides or b not in sides:
                raise CompileError("'connect' needs a board with N/S and W/E sides")
            game.connect_sides[pair_player] = (sides[a], sides[b])

    uses_reach = any(isinstance(r.condition, ReachCond) for r in game.end_rules)
    if uses_reach:
        if "N" not in sides or "S" not in sides:
            raise CompileError("'reach' needs a board with N and S sides")
        # each player's goal is the far side in their forward direction
        game.reach_targets[1] = sides["N"]
        game.reach_targets[2] = sides["S"]
        if k > 2:
            raise CompileError("'reach' end rules need exactly 2 players")

    if isinstance(game.play_rules, Steps):
        neighbors = game.container.pregen.neighbors
        for p in range(1, k + 1):
            per_player = []
            for rule in game.play_rules.rules:
                for d in rule.dirs:
                    if d in _RELATIVE_DIRS:
                        if p not in _RELATIVE_DIRS[d]:
                            raise CompileError(
                                f"direction {d!r} is undefined for P{p}")
                        resolved = _RELATIVE_DIRS[d][p]
                    else:
                        resolved = d
                    if resolved not in neighbors:
                        raise CompileError(
                            f"direction {resolved!r} is not available on this board "
                            "(missing diagonals?)")
                    per_player.append((resolved, rule.condition))
            game.step_dirs[p] = tuple(per_player)


def _validate_game(game: Game) -> None:
    if isinstance(game.play_rules, (ToEmpty, GravityDrop)):
        for p in range(1, game.players.count + 1):
            if p not in game.piece_of_player:
                raise CompileError(
                    f"P{p} needs exactly one piece type for placement games")
    if isinstance(game.play_rules, GravityDrop) and not game.container.pregen.columns:
        raise CompileError("'lowest-empty' needs a board with columns")
    if isinstance(game.play_rules, Steps) and game.representation == UNIFORM:
        for p in range(1, game.players.count + 1):
            if p not in game.piece_of_player:
                raise CompileError("step games with several piece types per "
                                   "player need the general representation")


def compile_text(text: str, options: list[str] | None = None,
                 force_representation: str | None = None) -> Game:
    return compile_game(grammar.parse_game(text), options, force_representation)
