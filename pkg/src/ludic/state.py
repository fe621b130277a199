"""Game states: the mover plus per-location data vectors, ChunkSet-backed.

Two representations exist. Uniform-pieces stores only `who` and derives
`what` through the player->piece table; the general representation
stores `what` and `who` separately. `count`, `state`, `hidden` and
`playable` are constant stubs for every bundled game (count defaults to
1 on occupied sites) and cost no storage.

Connection games additionally carry an incremental union-find over
placed stones with two virtual side nodes per player; it accelerates
the connect end condition and is checked against flood fill in tests.
"""

from __future__ import annotations

import hashlib
from typing import NamedTuple

from .chunkset import ChunkSet, bits_for
from .game import GENERAL, UNIFORM, ConnectCond, Game


class Location(NamedTuple):
    """⟨container, vertex, level⟩; every bundled game uses level 0."""
    vertex: int
    container: int = 0
    level: int = 0


def _site_of(loc) -> int:
    return loc.vertex if isinstance(loc, Location) else int(loc)


class UnionFind:
    """Array union-find with path halving; used for connection detection."""

    __slots__ = ("parent", "rank")

    def __init__(self, size: int, parent=None, rank=None):
        self.parent = list(range(size)) if parent is None else parent
        self.rank = [0] * size if rank is None else rank

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1

    def copy(self) -> "UnionFind":
        dup = UnionFind.__new__(UnionFind)
        dup.parent = self.parent.copy()
        dup.rank = self.rank.copy()
        return dup


class ContainerState:
    """The packed data vectors of one container."""

    __slots__ = ("num_sites", "who", "what", "uf")

    def __init__(self, game: Game):
        n = game.num_sites
        self.num_sites = n
        self.who = ChunkSet(bits_for(game.who_values), n)
        if game.representation == GENERAL:
            self.what = ChunkSet(bits_for(game.what_values), n)
        else:
            self.what = None  # derived from who
        self.uf = UnionFind(n + 4) if game.connect_sides else None

    def copy(self) -> "ContainerState":
        dup = ContainerState.__new__(ContainerState)
        dup.num_sites = self.num_sites
        dup.who = self.who.copy()
        dup.what = self.what.copy() if self.what is not None else None
        dup.uf = self.uf.copy() if self.uf is not None else None
        return dup


# virtual union-find nodes: sides (a, b) per player appended after the sites
def uf_side_nodes(num_sites: int, player: int) -> tuple[int, int]:
    base = num_sites + 2 * (player - 1)
    return base, base + 1


class GameState:
    """Mutable-by-owner state value; operations copy before writing."""

    __slots__ = ("game", "mover", "move_number", "consecutive_passes",
                 "terminal", "scores", "cstate", "last_to", "last_mover")

    def __init__(self, game: Game):
        self.game = game
        self.mover = 1
        self.move_number = 0
        self.consecutive_passes = 0
        self.terminal = False
        self.scores: tuple[float, ...] | None = None
        self.cstate = ContainerState(game)
        self.last_to = -1  # site of the last placement, -1 if none
        self.last_mover = 0

    def copy(self) -> "GameState":
        dup = GameState.__new__(GameState)
        dup.game = self.game
        dup.mover = self.mover
        dup.move_number = self.move_number
        dup.consecutive_passes = self.consecutive_passes
        dup.terminal = self.terminal
        dup.scores = self.scores
        dup.cstate = self.cstate.copy()
        dup.last_to = self.last_to
        dup.last_mover = self.last_mover
        return dup

    # -- data-vector accessors --------------------------------------------

    def who(self, loc) -> int:
        return self.cstate.who.get(_site_of(loc))

    def what(self, loc) -> int:
        site = _site_of(loc)
        cs = self.cstate
        if cs.what is not None:
            return cs.what.get(site)
        owner = cs.who.get(site)
        return self.game.piece_of_player[owner] if owner else 0

    def count(self, loc) -> int:
        return 1 if self.who(loc) else 0

    def piece_state(self, loc) -> int:
        self._check_site(loc)
        return 0

    def hidden(self, loc, player: int) -> bool:
        self._check_site(loc)
        return False

    def playable(self, loc) -> bool:
        self._check_site(loc)
        return True

    def _check_site(self, loc) -> None:
        site = _site_of(loc)
        if not 0 <= site < self.cstate.num_sites:
            raise IndexError(f"invalid location {site}")

    # -- mutation (used by the rules evaluator only) ------------------------

    def place(self, site: int, component: int, owner: int) -> None:
        cs = self.cstate
        cs.who.set(site, owner)
        if cs.what is not None:
            cs.what.set(site, component)
        if cs.uf is not None and owner:
            self._uf_place(site, owner)
        self.last_to = site

    def remove(self, site: int) -> None:
        cs = self.cstate
        cs.who.set(site, 0)
        if cs.what is not None:
            cs.what.set(site, 0)
        # connection games never remove stones; a removal would need a rebuild
        assert cs.uf is None, "remove is not supported in connection games"

    def _uf_place(self, site: int, owner: int) -> None:
        # connectivity follows the edge set, so the pregen tables (⊆ E)
        # are the right neighbor source, not the line-scan rays
        game = self.game
        cs = self.cstate
        uf = cs.uf
        for table in game.container.pregen.neighbors.values():
            u = table[site]
            if u >= 0 and cs.who.get(u) == owner:
                uf.union(site, u)
        side_a, side_b = game.connect_sides[owner]
        va, vb = uf_side_nodes(cs.num_sites, owner)
        if site in side_a:
            uf.union(site, va)
        if site in side_b:
            uf.union(site, vb)

    # -- hashing -------------------------------------------------------------

    def board_key(self) -> bytes:
        """Canonical key of the board content (what per site), independent
        of mover/pass bookkeeping; used to deduplicate positions."""
        return bytes(self.what(i) for i in range(self.cstate.num_sites))

    def state_hash(self) -> int:
        """Stable 64-bit snapshot hash of the full state."""
        h = hashlib.blake2b(digest_size=8)
        h.update(self.board_key())
        h.update(bytes((self.mover & 0xFF, self.consecutive_passes & 0xFF,
                        1 if self.terminal else 0)))
        h.update(self.move_number.to_bytes(4, "little"))
        return int.from_bytes(h.digest(), "little")
