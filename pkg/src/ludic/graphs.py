"""Playable-site graphs: board containers, pregenerated tables, geometry.

A container is a graph whose vertices are playable sites. Besides the
edge set used for adjacency, compile time precomputes the data the rule
evaluator needs repeatedly: per-vertex row/column indices, corner and
side sets, and neighbor tables indexed by named direction.

Directional neighbor tables always stay inside the edge set E. Line
detection needs rays that may cross non-edges (a `(square)` tiling keeps
only orthogonal edges, yet lines run in 8 directions), so containers
carry a separate coordinate-derived `line_next` step table.

Row 0 is the bottom row; geometry is emitted in mathematical orientation
(y grows upward) and display clients flip it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Square-tiling directions as (d_row, d_col); row 0 is the bottom row.
SQUARE_DIRS = {
    "N": (1, 0), "S": (-1, 0), "E": (0, 1), "W": (0, -1),
    "NE": (1, 1), "NW": (1, -1), "SE": (-1, 1), "SW": (-1, -1),
}
SQUARE_ORTHO = ("N", "S", "E", "W")
SQUARE_DIAG = ("NE", "NW", "SE", "SW")
SQUARE_LINE_AXES = (("E", "W"), ("N", "S"), ("NE", "SW"), ("NW", "SE"))

# Hex axial directions as (d_row, d_col), pointy-top rows slanting right.
HEX_DIRS = {
    "E": (0, 1), "W": (0, -1),
    "NE": (1, 0), "SW": (-1, 0),
    "NW": (1, -1), "SE": (-1, 1),
}
HEX_LINE_AXES = (("E", "W"), ("NE", "SW"), ("NW", "SE"))


@dataclass
class PregenData:
    """Tables precomputed once per container."""
    row: list[int]
    col: list[int]
    corners: frozenset[int]
    sides: dict[str, frozenset[int]]
    neighbors: dict[str, list[int]]  # direction -> per-vertex neighbor index or -1
    columns: list[list[int]] = field(default_factory=list)  # bottom-up site lists
    parent: list[int] | None = None  # tree containers: parent vertex or -1


@dataclass
class Container:
    id: int
    tiling: str  # 'square' | 'hex' | 'tree'
    num_vertices: int
    edges: frozenset[tuple[int, int]]  # (a, b) with a < b
    centroids: list[tuple[float, float]]
    polygons: list[list[tuple[float, float]]]
    pregen: PregenData
    line_axes: tuple[tuple[str, str], ...]
    line_next: dict[str, list[int]]  # ray step tables for line detection

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == v or b == v)

    def validate(self) -> None:
        """Assert the structural invariants (used by tests)."""
        for a, b in self.edges:
            assert 0 <= a < b < self.num_vertices, "edge endpoints out of range / self-loop"
        for d, table in self.pregen.neighbors.items():
            assert len(table) == self.num_vertices
            for v, u in enumerate(table):
                if u >= 0:
                    assert (min(v, u), max(v, u)) in self.edges, \
                        f"pregen neighbor {d} of {v} not in E"


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _square_polygon(r: int, c: int) -> list[tuple[float, float]]:
    return [(c, r), (c + 1, r), (c + 1, r + 1), (c, r + 1)]


def build_rect_graph(rows: int, cols: int, diagonals: bool = False,
                     container_id: int = 0) -> Container:
    """Rectangular grid with square tiling; `diagonals` adds the 4 diagonal
    directions to both E and the directional tables."""
    if rows < 1 or cols < 1:
        raise ValueError("board dimensions must be >= 1")
    nv = rows * cols
    idx = lambda r, c: r * cols + c
    dirs = SQUARE_ORTHO + (SQUARE_DIAG if diagonals else ())

    edges = set()
    neighbors = {d: [-1] * nv for d in dirs}
    line_next = {d: [-1] * nv for d in SQUARE_DIRS}
    for r in range(rows):
        for c in range(cols):
            v = idx(r, c)
            for d, (dr, dc) in SQUARE_DIRS.items():
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    u = idx(rr, cc)
                    line_next[d][v] = u
                    if d in neighbors:
                        neighbors[d][v] = u
                        edges.add(_edge(v, u))

    sides = {
        "S": frozenset(idx(0, c) for c in range(cols)),
        "N": frozenset(idx(rows - 1, c) for c in range(cols)),
        "W": frozenset(idx(r, 0) for r in range(rows)),
        "E": frozenset(idx(r, cols - 1) for r in range(rows)),
    }
    corners = frozenset({idx(0, 0), idx(0, cols - 1), idx(rows - 1, 0),
                         idx(rows - 1, cols - 1)})
    columns = [[idx(r, c) for r in range(rows)] for c in range(cols)]
    pregen = PregenData(
        row=[v // cols for v in range(nv)],
        col=[v % cols for v in range(nv)],
        corners=corners, sides=sides, neighbors=neighbors, columns=columns,
    )
    centroids = [(c + 0.5, r + 0.5) for r in range(rows) for c in range(cols)]
    polygons = [_square_polygon(r, c) for r in range(rows) for c in range(cols)]
    return Container(container_id, "square", nv, frozenset(edges), centroids,
                     polygons, pregen, SQUARE_LINE_AXES, line_next)


def build_square_graph(n: int, diagonals: bool = False, container_id: int = 0) -> Container:
    return build_rect_graph(n, n, diagonals, container_id)


_SQRT3 = math.sqrt(3.0)
_HEX_SIZE = 1.0 / _SQRT3  # unit horizontal spacing


def _hex_centroid(r: int, c: int) -> tuple[float, float]:
    return (c + r * 0.5, r * (_SQRT3 / 2.0))


def _hex_polygon(cx: float, cy: float) -> list[tuple[float, float]]:
    pts = []
    for k in range(6):
        ang = math.radians(60 * k + 30)  # pointy-top
        pts.append((cx + _HEX_SIZE * math.cos(ang), cy + _HEX_SIZE * math.sin(ang)))
    return pts


def _build_hex_container(cells: list[tuple[int, int]], sides: dict[str, frozenset[int]],
                         container_id: int) -> Container:
    index = {cell: i for i, cell in enumerate(cells)}
    nv = len(cells)
    edges = set()
    neighbors = {d: [-1] * nv for d in HEX_DIRS}
    for (r, c), v in index.items():
        for d, (dr, dc) in HEX_DIRS.items():
            u = index.get((r + dr, c + dc))
            if u is not None:
                neighbors[d][v] = u
                edges.add(_edge(v, u))
    corners = frozenset(
        v for v in range(nv)
        if sum(1 for s in sides.values() if v in s) >= 2
    )
    pregen = PregenData(
        row=[r for r, _ in cells], col=[c for _, c in cells],
        corners=corners, sides=sides, neighbors=neighbors,
    )
    centroids = [_hex_centroid(r, c) for r, c in cells]
    polygons = [_hex_polygon(*xy) for xy in centroids]
    # hex tiling: edges and line rays coincide
    line_next = {d: table.copy() for d, table in neighbors.items()}
    return Container(container_id, "hex", nv, frozenset(edges), centroids,
                     polygons, pregen, HEX_LINE_AXES, line_next)


def build_hex_rhombus(n: int, container_id: int = 0) -> Container:
    """n x n rhombus of hexagons (the Hex board). Opposite sides pair up:
    N/S rows for one connection goal, E/W columns for the other."""
    if n < 1:
        raise ValueError("board dimensions must be >= 1")
    cells = [(r, c) for r in range(n) for c in range(n)]
    idx = lambda r, c: r * n + c
    sides = {
        "S": frozenset(idx(0, c) for c in range(n)),
        "N": frozenset(idx(n - 1, c) for c in range(n)),
        "W": frozenset(idx(r, 0) for r in range(n)),
        "E": frozenset(idx(r, n - 1) for r in range(n)),
    }
    return _build_hex_container(cells, sides, container_id)


def hexagon_cell_count(side: int) -> int:
    return 3 * side * side - 3 * side + 1


def build_hex_hexagon(side: int, container_id: int = 0) -> Container:
    """Hexagonal board of hexagons with `side` cells on each edge."""
    if side < 1:
        raise ValueError("board dimensions must be >= 1")
    radius = side - 1
    cells = [(r, q) for r in range(-radius, radius + 1)
             for q in range(-radius, radius + 1)
             if abs(r + q) <= radius]
    cells.sort()
    index = {cell: i for i, cell in enumerate(cells)}
    sides = {
        "E": frozenset(index[c] for c in cells if c[1] == radius),
        "W": frozenset(index[c] for c in cells if c[1] == -radius),
        "NE": frozenset(index[c] for c in cells if c[0] == radius),
        "SW": frozenset(index[c] for c in cells if c[0] == -radius),
        "SE": frozenset(index[c] for c in cells if c[0] + c[1] == -radius),
        "NW": frozenset(index[c] for c in cells if c[0] + c[1] == radius),
    }
    cont = _build_hex_container(cells, sides, container_id)
    assert cont.num_vertices == hexagon_cell_count(side)
    return cont


def build_tree_container(parent: list[int], container_id: int = 0) -> Container:
    """A container mirroring a rooted tree; vertex i's parent is parent[i]
    (-1 at the root). Used by the game-tree compilation path."""
    nv = len(parent)
    children: list[list[int]] = [[] for _ in range(nv)]
    root = -1
    for v, p in enumerate(parent):
        if p < 0:
            root = v
        else:
            children[p].append(v)
    if root < 0:
        raise ValueError("tree has no root")

    depth = [0] * nv
    order: list[int] = [root]
    for v in order:
        for ch in children[v]:
            depth[ch] = depth[v] + 1
            order.append(ch)
    # simple layered layout: x by in-level position, y downward by depth
    by_level: dict[int, list[int]] = {}
    for v in order:
        by_level.setdefault(depth[v], []).append(v)
    centroids: list[tuple[float, float]] = [(0.0, 0.0)] * nv
    for level, vs in by_level.items():
        for i, v in enumerate(vs):
            centroids[v] = (i - (len(vs) - 1) / 2.0, -float(level))
    polygons = []
    for cx, cy in centroids:
        s = 0.35
        polygons.append([(cx - s, cy - s), (cx + s, cy - s), (cx + s, cy + s), (cx - s, cy + s)])

    edges = frozenset(_edge(v, p) for v, p in enumerate(parent) if p >= 0)
    pregen = PregenData(
        row=depth, col=[int(centroids[v][0] * 2) for v in range(nv)],
        corners=frozenset(), sides={},
        neighbors={}, parent=list(parent),
    )
    return Container(container_id, "tree", nv, edges, centroids, polygons,
                     pregen, (), {})
