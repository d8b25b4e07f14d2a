"""Lattice construction and balanced-cut tests.

Expected values come from independent oracles implemented here: adjacency
enumeration for edge counts and a plain itertools scan for minimum balanced
cuts, both kept separate from the library's own code paths.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from entscale.lattice import (
    LatticeKind,
    all_min_balanced_cuts,
    build_custom,
    build_deformed_grid,
    build_grid,
    crossing_count,
    make_cut,
    min_balanced_cut,
    random_balanced_cuts,
    read_graph_file,
    write_graph_file,
)


def oracle_grid_edges(rows, cols):
    """Brute-force adjacency enumeration over all vertex pairs."""
    coords = [(r, c) for r in range(rows) for c in range(cols)]
    count = 0
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            dr = abs(coords[i][0] - coords[j][0])
            dc = abs(coords[i][1] - coords[j][1])
            count += dr + dc == 1
    return count


def oracle_min_balanced_cut(graph):
    """Plain scan over all balanced side_a subsets, no bit tricks."""
    half = (graph.n + 1) // 2
    best = None
    for combo in itertools.combinations(range(graph.n), half):
        side = set(combo)
        if graph.n % 2 == 0 and 0 not in side:
            continue  # complement already visited
        f = sum((u in side) != (v in side) for u, v in graph.edges)
        if best is None or f < best:
            best = f
    return best


def test_grid_examples():
    g = build_grid(7, 7)
    assert (g.n, g.edge_count) == (49, 84)
    assert oracle_grid_edges(7, 7) == 84
    assert 2 * 7 * (7 - 1) == 84

    g = build_grid(1, 1)
    assert (g.n, g.edge_count) == (1, 0)

    g = build_grid(2, 8)
    assert (g.n, g.edge_count) == (16, 22)
    assert oracle_grid_edges(2, 8) == 22


def test_grid_structure():
    g = build_grid(3, 4)
    assert g.kind is LatticeKind.GRID
    assert g.rows == 3 and g.cols == 4
    assert g.coordinate(7) == (1, 3)
    assert g.vertex_at(2, 1) == 9
    assert g.edge_count == 3 * 3 + 4 * 2
    assert all(u < v for u, v in g.edges)
    with pytest.raises(ValueError):
        build_grid(0, 3)
    with pytest.raises(ValueError):
        g.vertex_at(3, 0)


@pytest.mark.parametrize("side", range(2, 21))
def test_square_grid_edge_formula(side):
    assert build_grid(side, side).edge_count == 2 * side * (side - 1)


def test_deformed_grid_examples():
    g = build_deformed_grid(16, 2)
    assert (g.rows, g.cols, g.edge_count) == (2, 8, 22)
    assert g.kind is LatticeKind.DEFORMED_GRID
    assert g.deformation == 2

    g0 = build_deformed_grid(16, 0)
    square = build_grid(4, 4)
    assert (g0.n, g0.rows, g0.cols) == (square.n, square.rows, square.cols)
    assert g0.edges == square.edges
    assert g0.edge_count == 24

    path = build_deformed_grid(16, 3)
    assert (path.rows, path.cols, path.edge_count) == (1, 16, 15)


def test_deformed_grid_rejects_bad_inputs():
    with pytest.raises(ValueError, match="perfect square"):
        build_deformed_grid(15, 1)
    with pytest.raises(ValueError, match="0 <= k"):
        build_deformed_grid(16, 4)
    with pytest.raises(ValueError, match="0 <= k"):
        build_deformed_grid(16, -1)
    with pytest.raises(ValueError, match="divide"):
        build_deformed_grid(25, 2)


def test_deformed_edge_count_matches_rational_formula():
    # 2*sqrt(n)*(sqrt(n)-1) - (k^2/sqrt(n)) * (1 - k/sqrt(n))^-1, exactly
    for side in range(2, 21):
        n = side * side
        for k in range(side):
            if n % (side - k):
                continue
            expected = 2 * side * (side - 1) - Fraction(k * k, side) / (1 - Fraction(k, side))
            assert expected.denominator == 1
            assert build_deformed_grid(n, k).edge_count == expected


def test_custom_graph():
    g = build_custom(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edge_count == 3
    assert g.kind is LatticeKind.CUSTOM
    with pytest.raises(ValueError, match="self-loop"):
        build_custom(2, [(0, 0)])
    with pytest.raises(ValueError, match="duplicate"):
        build_custom(3, [(0, 1), (0, 1)])
    with pytest.raises(ValueError, match="duplicate"):
        build_custom(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="outside"):
        build_custom(3, [(0, 3)])


def test_min_cut_examples():
    assert min_balanced_cut(build_grid(4, 4)).crossings == 4
    two_by_eight = build_grid(2, 8)
    cut = min_balanced_cut(two_by_eight)
    assert cut.crossings == 2
    assert oracle_min_balanced_cut(two_by_eight) == 2
    path = build_custom(4, [(0, 1), (1, 2), (2, 3)])
    assert min_balanced_cut(path).crossings == 1


def test_min_cut_matches_oracle_on_assorted_graphs():
    graphs = [
        build_grid(3, 3),
        build_grid(2, 5),
        build_grid(4, 5),
        build_grid(1, 7),
        build_custom(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]),
    ]
    rng = np.random.default_rng(42)
    for n in (5, 8, 11):
        pairs = list(itertools.combinations(range(n), 2))
        chosen = rng.choice(len(pairs), size=min(2 * n, len(pairs)), replace=False)
        graphs.append(build_custom(n, [pairs[i] for i in chosen]))
    for graph in graphs:
        cut = min_balanced_cut(graph)
        assert cut.crossings == oracle_min_balanced_cut(graph)
        assert crossing_count(graph, cut.side_a) == cut.crossings
        assert len(cut.side_a) == (graph.n + 1) // 2


def test_min_cut_straight_cut_family():
    # wherever whole rows or columns make a balanced side, the minimum equals
    # the matching side length
    for rows, cols in [(2, 2), (2, 4), (2, 6), (2, 8), (3, 4), (3, 6), (4, 4), (3, 8), (4, 6)]:
        half = (rows * cols + 1) // 2
        candidates = []
        if half % rows == 0:
            candidates.append(rows)
        if half % cols == 0:
            candidates.append(cols)
        assert min_balanced_cut(build_grid(rows, cols)).crossings == min(candidates)


def test_min_cut_exact_budget():
    with pytest.raises(ValueError, match="heuristic"):
        min_balanced_cut(build_grid(5, 5), mode="exact")
    with pytest.raises(ValueError, match="exact"):
        min_balanced_cut(build_grid(2, 2), mode="fancy")


def test_all_min_balanced_cuts():
    cuts = all_min_balanced_cuts(build_grid(2, 2))
    assert len(cuts) == 2
    assert {c.crossings for c in cuts} == {2}
    cuts = all_min_balanced_cuts(build_grid(4, 4))
    assert len(cuts) == 2  # middle column and middle row
    sides = {c.side_a for c in cuts}
    assert (0, 1, 2, 3, 4, 5, 6, 7) in sides
    assert (0, 1, 4, 5, 8, 9, 12, 13) in sides


def test_crossing_count_examples():
    g = build_grid(4, 4)
    left_two_cols = [g.vertex_at(r, c) for r in range(4) for c in range(2)]
    assert crossing_count(g, left_two_cols) == 4
    assert crossing_count(g, []) == 0
    g = build_grid(2, 8)
    left_four = [g.vertex_at(r, c) for r in range(2) for c in range(4)]
    assert crossing_count(g, left_four) == 2
    with pytest.raises(ValueError, match="out of range"):
        crossing_count(g, [99])


def test_crossing_count_complement_symmetry():
    rng = np.random.default_rng(7)
    g = build_grid(3, 5)
    for _ in range(50):
        size = int(rng.integers(0, g.n + 1))
        side = [int(v) for v in rng.permutation(g.n)[:size]]
        complement = [v for v in range(g.n) if v not in set(side)]
        assert crossing_count(g, side) == crossing_count(g, complement)


@pytest.mark.parametrize(
    "rows,cols",
    [(r, c) for r in range(1, 5) for c in range(r, 17) if r * c <= 16]
    + [(2, 9), (2, 12), (3, 7), (3, 8), (4, 5), (4, 6)],
)
def test_heuristic_matches_exact_on_grids(rows, cols):
    graph = build_grid(rows, cols)
    exact = min_balanced_cut(graph, mode="exact")
    heur = min_balanced_cut(graph, mode="heuristic")
    assert heur.crossings == exact.crossings
    assert len(heur.side_a) == (graph.n + 1) // 2


def test_heuristic_upper_bounds_exact_on_random_graphs():
    rng = np.random.default_rng(3)
    for n in (6, 9, 12, 14):
        pairs = list(itertools.combinations(range(n), 2))
        for _ in range(3):
            chosen = rng.choice(len(pairs), size=min(3 * n, len(pairs)), replace=False)
            graph = build_custom(n, [pairs[i] for i in chosen])
            exact = min_balanced_cut(graph, mode="exact").crossings
            heur = min_balanced_cut(graph, mode="heuristic").crossings
            assert heur >= exact
            assert crossing_count(graph, min_balanced_cut(graph, "heuristic").side_a) == heur


def test_heuristic_is_deterministic():
    graph = build_grid(4, 6)
    first = min_balanced_cut(graph, mode="heuristic")
    second = min_balanced_cut(graph, mode="heuristic")
    assert first == second


def test_make_cut_and_balance():
    g = build_grid(3, 3)
    cut = make_cut(g, [0, 1, 2, 3, 4])
    assert cut.side_b == (5, 6, 7, 8)
    # passing the smaller side flips it into side_b
    flipped = make_cut(g, [5, 6, 7, 8])
    assert flipped == cut
    with pytest.raises(ValueError, match="not balanced"):
        make_cut(g, [0, 1])
    with pytest.raises(ValueError, match="repeated"):
        make_cut(build_grid(2, 2), [0, 0])


def test_single_vertex_graph_cut():
    g = build_grid(1, 1)
    cut = min_balanced_cut(g)
    assert cut.side_a == (0,)
    assert cut.side_b == ()
    assert cut.crossings == 0


def test_random_balanced_cuts_are_balanced_and_seeded():
    g = build_grid(3, 4)
    cuts = random_balanced_cuts(g, 10, seed=5)
    assert cuts == random_balanced_cuts(g, 10, seed=5)
    for cut in cuts:
        assert len(cut.side_a) == 6
        assert crossing_count(g, cut.side_a) == cut.crossings


def test_graph_file_round_trip(tmp_path):
    graph = build_custom(5, [(3, 1), (0, 1), (2, 4)])
    path = tmp_path / "graph.txt"
    write_graph_file(graph, path)
    text = path.read_text()
    assert text.splitlines()[0] == "n=5"
    assert text.splitlines()[1:] == ["0,1", "1,3", "2,4"]
    loaded = read_graph_file(path)
    assert loaded.n == graph.n
    assert loaded.edges == graph.edges

    grid = build_grid(3, 3)
    write_graph_file(grid, path)
    assert read_graph_file(path).edges == grid.edges


def test_graph_file_comments_and_errors(tmp_path):
    path = tmp_path / "graph.txt"
    path.write_text("# a comment\n\nn=3\n0,1  # trailing comment\n1,2\n")
    assert read_graph_file(path).edge_count == 2

    path.write_text("0,1\n")
    with pytest.raises(ValueError, match="n="):
        read_graph_file(path)
    path.write_text("n=3\n0;1\n")
    with pytest.raises(ValueError, match="expected 'u,v'"):
        read_graph_file(path)
    path.write_text("n=3\n0,x\n")
    with pytest.raises(ValueError, match="non-integer"):
        read_graph_file(path)
    path.write_text("n=2\n0,0\n")
    with pytest.raises(ValueError, match="self-loop"):
        read_graph_file(path)
