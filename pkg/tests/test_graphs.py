import pytest

from ludic.graphs import (build_hex_hexagon, build_hex_rhombus,
                          build_rect_graph, build_square_graph,
                          hexagon_cell_count)

import oracles


def test_square3_orthogonal():
    c = build_square_graph(3)
    assert c.num_vertices == 9
    assert len(c.edges) == 12
    assert c.pregen.corners == {0, 2, 6, 8}


def test_square1_degenerate():
    c = build_square_graph(1)
    assert c.num_vertices == 1
    assert len(c.edges) == 0
    assert c.pregen.corners == {0}


def test_square8_with_diagonals_edge_counts():
    c = build_square_graph(8, diagonals=True)
    assert c.num_vertices == 64
    both, orth, diag = oracles.square_edges(8, 8, diagonals=True)
    assert len(orth) == 112 and len(diag) == 98
    assert c.edges == both
    assert len(c.edges) == 210


@pytest.mark.parametrize("rows,cols,diagonals", [
    (3, 3, False), (6, 7, False), (8, 8, True), (1, 5, False), (4, 2, True),
])
def test_rect_edges_match_bruteforce(rows, cols, diagonals):
    c = build_rect_graph(rows, cols, diagonals)
    edges, _, _ = oracles.square_edges(rows, cols, diagonals)
    assert c.edges == edges
    c.validate()


def test_interior_square_degree_is_four_orthogonal():
    c = build_square_graph(5)
    interior = [v for v in range(25)
                if 0 < c.pregen.row[v] < 4 and 0 < c.pregen.col[v] < 4]
    assert all(c.degree(v) == 4 for v in interior)


def test_hexagon_cell_counts():
    assert hexagon_cell_count(2) == 7
    assert build_hex_hexagon(2).num_vertices == 7
    assert hexagon_cell_count(5) == 61
    assert build_hex_hexagon(5).num_vertices == 61
    # closed form against direct enumeration
    for side in range(1, 7):
        assert hexagon_cell_count(side) == len(oracles.hexagon_cells(side))


def test_rhombus2_edges():
    c = build_hex_rhombus(2)
    assert c.num_vertices == 4
    assert c.edges == oracles.hex_rhombus_edges(2)
    assert len(c.edges) == 5  # two orthogonal pairs plus the acute diagonal


@pytest.mark.parametrize("n", [3, 5, 9, 11])
def test_rhombus_edges_match_axial_oracle(n):
    c = build_hex_rhombus(n)
    assert c.num_vertices == n * n
    assert c.edges == oracles.hex_rhombus_edges(n)
    c.validate()


def test_interior_hex_degree_is_six():
    c = build_hex_rhombus(5)
    interior = [v for v in range(25)
                if 0 < c.pregen.row[v] < 4 and 0 < c.pregen.col[v] < 4]
    assert all(c.degree(v) == 6 for v in interior)
    h = build_hex_hexagon(3)
    center = [v for v in range(h.num_vertices)
              if h.pregen.row[v] == 0 and h.pregen.col[v] == 0]
    assert h.degree(center[0]) == 6


def test_pregen_neighbors_subset_of_edges():
    for c in (build_square_graph(3), build_square_graph(8, diagonals=True),
              build_rect_graph(6, 7), build_hex_rhombus(9), build_hex_hexagon(5)):
        c.validate()


def test_orthogonal_tiling_has_no_diagonal_neighbor_tables():
    c = build_square_graph(3)
    assert set(c.pregen.neighbors) == {"N", "S", "E", "W"}
    d = build_square_graph(3, diagonals=True)
    assert set(d.pregen.neighbors) == {"N", "S", "E", "W", "NE", "NW", "SE", "SW"}


def test_line_rays_cover_eight_directions_even_without_diagonal_edges():
    c = build_square_graph(3)
    assert len(c.line_axes) == 4
    # center cell sees a neighbor along every ray
    assert all(c.line_next[d][4] >= 0 for d in
               ("N", "S", "E", "W", "NE", "NW", "SE", "SW"))


def test_sides_disjoint_except_corners():
    for c in (build_square_graph(5), build_hex_rhombus(7), build_hex_hexagon(4)):
        names = list(c.pregen.sides)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                overlap = c.pregen.sides[a] & c.pregen.sides[b]
                assert overlap <= c.pregen.corners


def test_columns_listed_bottom_up():
    c = build_rect_graph(6, 7)
    for col, sites in enumerate(c.pregen.columns):
        assert [c.pregen.col[s] for s in sites] == [col] * 6
        assert [c.pregen.row[s] for s in sites] == list(range(6))


def test_geometry_shapes():
    sq = build_square_graph(3)
    assert all(len(p) == 4 for p in sq.polygons)
    hx = build_hex_rhombus(3)
    assert all(len(p) == 6 for p in hx.polygons)
    assert len(sq.centroids) == 9 and len(hx.centroids) == 9


def test_bad_sizes_rejected():
    with pytest.raises(ValueError):
        build_square_graph(0)
    with pytest.raises(ValueError):
        build_hex_rhombus(0)
    with pytest.raises(ValueError):
        build_hex_hexagon(0)
