"""Coupling graphs for qubit lattices and balanced cut analysis.

A lattice graph records which qubit pairs can interact directly. This module
builds rectangular grids, the constant-qubit-count deformations of a square
grid, and arbitrary custom graphs, and finds balanced bipartitions with few
crossing edges: exactly by enumeration on small graphs, approximately by
pair-swap local search on larger ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

EXACT_CUT_LIMIT = 24
HEURISTIC_RESTARTS = 32


class LatticeKind(Enum):
    GRID = "grid"
    DEFORMED_GRID = "deformed-grid"
    CUSTOM = "custom"


@dataclass(frozen=True)
class LatticeGraph:
    """Immutable undirected graph on vertices 0..n-1.

    Grid vertices are numbered row-major: id = row * cols + col.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    kind: LatticeKind = LatticeKind.CUSTOM
    rows: int | None = None
    cols: int | None = None
    deformation: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add(key)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_grid(self) -> bool:
        return self.kind is not LatticeKind.CUSTOM

    def coordinate(self, vertex: int) -> tuple[int, int]:
        """(row, col) of a grid vertex."""
        if not self.is_grid or self.cols is None:
            raise ValueError("coordinates are only defined for grid lattices")
        if not 0 <= vertex < self.n:
            raise ValueError(f"vertex {vertex} out of range")
        return divmod(vertex, self.cols)

    def vertex_at(self, row: int, col: int) -> int:
        if not self.is_grid or self.rows is None or self.cols is None:
            raise ValueError("coordinates are only defined for grid lattices")
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise ValueError(f"coordinate ({row},{col}) outside {self.rows}x{self.cols} grid")
        return row * self.cols + col

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


@dataclass(frozen=True)
class Cut:
    """Balanced bipartition of a graph's vertices.

    side_a holds ceil(n/2) vertices, side_b the rest; crossings is the number
    of edges with exactly one endpoint in side_a.
    """

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    crossings: int


def build_grid(rows: int, cols: int) -> LatticeGraph:
    """Rectangular rows x cols lattice with nearest-neighbor edges."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return LatticeGraph(rows * cols, tuple(sorted(edges)), LatticeKind.GRID, rows, cols)


def deformed_shape(n: int, k: int) -> tuple[int, int]:
    """Validated (rows, cols) of the deformed grid on n qubits.

    Shrinking one side of the sqrt(n) x sqrt(n) layout by k at constant qubit
    count gives rows = sqrt(n) - k and cols = n / rows; n must be a perfect
    square, k must satisfy 0 <= k < sqrt(n), and rows must divide n so every
    row has an integer number of qubits.
    """
    if n < 1:
        raise ValueError("qubit count must be positive")
    s = math.isqrt(n)
    if s * s != n:
        raise ValueError(f"qubit count {n} is not a perfect square")
    if k < 0 or k >= s:
        raise ValueError(f"deformation k={k} must satisfy 0 <= k < sqrt(n) = {s}")
    rows = s - k
    if n % rows != 0:
        raise ValueError(
            f"sqrt(n) - k = {rows} does not divide n = {n}, rows would not have integer length"
        )
    return rows, n // rows


def build_deformed_grid(n: int, k: int) -> LatticeGraph:
    """(sqrt(n)-k) x (n/(sqrt(n)-k)) grid; k = 0 gives the square grid."""
    rows, cols = deformed_shape(n, k)
    base = build_grid(rows, cols)
    return LatticeGraph(base.n, base.edges, LatticeKind.DEFORMED_GRID, rows, cols, k)


def build_custom(n: int, edges) -> LatticeGraph:
    """Arbitrary graph from explicit vertex-id pairs."""
    normalized = tuple(sorted((u, v) if u <= v else (v, u) for u, v in edges))
    return LatticeGraph(n, normalized, LatticeKind.CUSTOM)


def crossing_count(graph: LatticeGraph, side_a) -> int:
    """Number of edges with exactly one endpoint in side_a."""
    side = set(side_a)
    for v in side:
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex {v} out of range 0..{graph.n - 1}")
    return sum((u in side) != (v in side) for u, v in graph.edges)


def make_cut(graph: LatticeGraph, side_a) -> Cut:
    """Cut from one side of a balanced bipartition (either side may be given)."""
    side = frozenset(side_a)
    if len(side) != len(tuple(side_a)):
        raise ValueError("cut side contains repeated vertices")
    for v in side:
        if not 0 <= v < graph.n:
            raise ValueError(f"vertex {v} out of range 0..{graph.n - 1}")
    other = frozenset(range(graph.n)) - side
    big, small = (graph.n + 1) // 2, graph.n // 2
    if {len(side), len(other)} != {big, small} and not (len(side) == len(other) == big):
        raise ValueError(
            f"cut is not balanced: sides of {len(side)} and {len(other)} vertices, "
            f"need {big} and {small}"
        )
    if len(side) < len(other):
        side, other = other, side
    return Cut(tuple(sorted(side)), tuple(sorted(other)), crossing_count(graph, side))


def _combination_masks(bits: int, size: int) -> np.ndarray:
    """Bitmasks of all size-element subsets of {0..bits-1}, in ascending
    numeric order (Gosper's hack)."""
    if size == 0:
        return np.zeros(1, dtype=np.uint64)
    out = np.empty(math.comb(bits, size), dtype=np.uint64)
    m = (1 << size) - 1
    limit = 1 << bits
    i = 0
    while m < limit:
        out[i] = m
        i += 1
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r
    return out


def _balanced_side_masks(n: int) -> np.ndarray:
    """One side_a bitmask per unordered balanced bipartition.

    For even n vertex 0 is pinned to side_a, which quotients out the A/B
    symmetry; for odd n the sides have different sizes so every ceil(n/2)
    subset is a distinct bipartition.
    """
    half = (n + 1) // 2
    if n % 2 == 0 and n > 1:
        return (_combination_masks(n - 1, half - 1) << np.uint64(1)) | np.uint64(1)
    return _combination_masks(n, half)


def _crossing_counts(masks: np.ndarray, edges) -> np.ndarray:
    total = np.zeros(masks.shape, dtype=np.int64)
    for u, v in edges:
        total += (((masks >> np.uint64(u)) ^ (masks >> np.uint64(v))) & np.uint64(1)).astype(
            np.int64
        )
    return total


def _cut_from_mask(graph: LatticeGraph, mask: int, crossings: int) -> Cut:
    side_a = tuple(v for v in range(graph.n) if (mask >> v) & 1)
    side_b = tuple(v for v in range(graph.n) if not (mask >> v) & 1)
    return Cut(side_a, side_b, crossings)


def _require_exact_budget(graph: LatticeGraph) -> None:
    if graph.n > EXACT_CUT_LIMIT:
        raise ValueError(
            f"exact balanced min-cut enumerates all bipartitions and supports "
            f"n <= {EXACT_CUT_LIMIT}; got n = {graph.n}. Use mode='heuristic'."
        )


def min_balanced_cut(
    graph: LatticeGraph,
    mode: str = "exact",
    seed: int = 0,
    restarts: int = HEURISTIC_RESTARTS,
) -> Cut:
    """Balanced bipartition minimizing the crossing-edge count.

    mode='exact' enumerates every balanced bipartition (n <= 24) and returns a
    true minimizer. mode='heuristic' runs pair-swap descent from seeded random
    starts; its crossing count upper-bounds the true minimum. Both modes are
    deterministic: ties go to the lowest side_a (numeric mask order for exact,
    lexicographic vertex order for heuristic).
    """
    if mode == "exact":
        _require_exact_budget(graph)
        masks = _balanced_side_masks(graph.n)
        cross = _crossing_counts(masks, graph.edges)
        best = int(np.argmin(cross))
        return _cut_from_mask(graph, int(masks[best]), int(cross[best]))
    if mode == "heuristic":
        return _heuristic_min_cut(graph, seed, restarts)
    raise ValueError(f"unknown cut mode {mode!r}, expected 'exact' or 'heuristic'")


def all_min_balanced_cuts(graph: LatticeGraph) -> list[Cut]:
    """Every balanced bipartition achieving the minimum crossing count (n <= 24)."""
    _require_exact_budget(graph)
    masks = _balanced_side_masks(graph.n)
    cross = _crossing_counts(masks, graph.edges)
    best = int(cross.min())
    return [_cut_from_mask(graph, int(m), best) for m in masks[cross == best]]


def random_balanced_cuts(graph: LatticeGraph, count: int, seed: int = 0) -> list[Cut]:
    """Uniformly random balanced cuts from a seeded generator."""
    rng = np.random.default_rng(seed)
    cuts = []
    for _ in range(count):
        perm = rng.permutation(graph.n)
        cuts.append(make_cut(graph, [int(v) for v in perm[: (graph.n + 1) // 2]]))
    return cuts


def _pair_swap_descent(graph: LatticeGraph, adj: list[set[int]], side_a: set[int]):
    """Greedy best-swap descent; returns (side_a, crossings) at a local minimum."""
    in_a = [False] * graph.n
    for v in side_a:
        in_a[v] = True
    crossings = crossing_count(graph, side_a)
    a_list = sorted(side_a)
    b_list = sorted(v for v in range(graph.n) if not in_a[v])

    def imbalance(v: int) -> int:
        # external minus internal degree of v under the current partition
        ext = sum(1 for w in adj[v] if in_a[w] != in_a[v])
        return 2 * ext - len(adj[v])

    while True:
        d = [imbalance(v) for v in range(graph.n)]
        best_gain, best_pair = 0, None
        for a in a_list:
            for b in b_list:
                gain = d[a] + d[b] - 2 * (b in adj[a])
                if gain > best_gain:
                    best_gain, best_pair = gain, (a, b)
        if best_pair is None:
            return set(a_list), crossings
        a, b = best_pair
        in_a[a], in_a[b] = False, True
        a_list.remove(a)
        b_list.remove(b)
        a_list = sorted(a_list + [b])
        b_list = sorted(b_list + [a])
        crossings -= best_gain


def _heuristic_min_cut(graph: LatticeGraph, seed: int, restarts: int) -> Cut:
    adj = graph.adjacency()
    rng = np.random.default_rng(seed)
    best: tuple[int, tuple[int, ...]] | None = None
    for _ in range(max(1, restarts)):
        perm = rng.permutation(graph.n)
        start = {int(v) for v in perm[: (graph.n + 1) // 2]}
        side, crossings = _pair_swap_descent(graph, adj, start)
        key = (crossings, tuple(sorted(side)))
        if best is None or key < best:
            best = key
    side_a = best[1]
    side_b = tuple(sorted(set(range(graph.n)) - set(side_a)))
    return Cut(side_a, side_b, best[0])


def write_graph_file(graph: LatticeGraph, path) -> None:
    """Write the text format: 'n=<int>' header, then one 'u,v' edge per line."""
    lines = [f"n={graph.n}"]
    lines += [f"{u},{v}" for u, v in sorted(graph.edges)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_graph_file(path) -> LatticeGraph:
    """Parse the graph text format; '#' starts a comment, blank lines ignored."""
    n = None
    edges: list[tuple[int, int]] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.startswith("n="):
                raise ValueError(f"{path}:{lineno}: expected 'n=<int>' header, got {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed vertex count {line!r}") from None
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'u,v' edge, got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-integer vertex id in {line!r}") from None
    if n is None:
        raise ValueError(f"{path}: missing 'n=' header")
    try:
        return build_custom(n, edges)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None
