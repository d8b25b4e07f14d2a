"""Dense statevector simulation of grid random circuits with Schmidt analysis.

Circuits follow the random-circuit benchmarking prescription: an opening
layer of Hadamards, then per layer a non-overlapping pattern of CZ gates
cycled over the grid plus a random pick from {T, sqrt(X), sqrt(Y)} on every
qubit the CZs leave idle. The per-layer analysis reshapes the state across a
balanced cut, takes singular values, and checks the entanglement accounting:
entropy never exceeds min(ceil(n/2), entangling layers so far), the Schmidt
rank never exceeds 2^(CZ gates that crossed the cut), each layer adds at
most one ebit per crossing CZ, and single-qubit gates leave the spectrum
unchanged.
"""

from __future__ import annotations

import csv
import functools
import io
import math
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from . import bounds, lattice

DEFAULT_MAX_QUBITS = 20
MAX_QUBITS_ENV = "ENTSCALE_MAX_QUBITS"
NORM_TOL = 1e-10
RANK_TOL = 1e-10
ENTROPY_WEIGHT_CUTOFF = 1e-24
CAP_TOL = 1e-9

EBIT_CSV_HEADER = ("seed", "layer", "cut_id", "entropy_ebits", "rank", "crossing_cz", "cap")


class GateKind(Enum):
    H = "H"
    T = "T"
    SQRT_X = "sqrtX"
    SQRT_Y = "sqrtY"
    CZ = "CZ"


_SQRT_HALF = 1.0 / math.sqrt(2.0)
_T_PHASE = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))

GATE_MATRICES: dict[GateKind, np.ndarray] = {
    GateKind.H: np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, _T_PHASE]], dtype=complex),
    GateKind.SQRT_X: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex),
    GateKind.SQRT_Y: 0.5 * np.array([[1 + 1j, -1 - 1j], [1 + 1j, 1 + 1j]], dtype=complex),
}

_RANDOM_SINGLE_KINDS = (GateKind.T, GateKind.SQRT_X, GateKind.SQRT_Y)


@dataclass(frozen=True)
class Gate:
    """One gate: CZ on a lattice edge, or a single-qubit gate on one vertex."""

    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind is GateKind.CZ:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"CZ needs two distinct qubits, got {self.qubits}")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind.value} acts on exactly one qubit, got {self.qubits}")


@dataclass(frozen=True)
class Circuit:
    """Layered circuit on a lattice graph; no qubit is touched twice per layer."""

    graph: lattice.LatticeGraph
    layers: tuple[tuple[Gate, ...], ...]

    def __post_init__(self) -> None:
        edge_set = {(min(u, v), max(u, v)) for u, v in self.graph.edges}
        for index, layer in enumerate(self.layers):
            busy: set[int] = set()
            for gate in layer:
                for q in gate.qubits:
                    if not 0 <= q < self.graph.n:
                        raise ValueError(f"layer {index}: qubit {q} out of range")
                    if q in busy:
                        raise ValueError(f"layer {index}: qubit {q} acted on twice")
                    busy.add(q)
                if gate.kind is GateKind.CZ:
                    u, v = gate.qubits
                    if (min(u, v), max(u, v)) not in edge_set:
                        raise ValueError(f"layer {index}: CZ({u},{v}) is not a lattice edge")

    @property
    def entangling_depth(self) -> int:
        """Number of layers containing at least one CZ."""
        return sum(1 for layer in self.layers if any(g.kind is GateKind.CZ for g in layer))


@dataclass
class StateVector:
    """Dense amplitudes; qubit q is bit q of the index (row-major lattice order)."""

    n: int
    amplitudes: np.ndarray


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending singular values of the state reshaped across a cut."""

    cut: lattice.Cut
    values: np.ndarray


@dataclass(frozen=True)
class EbitRecord:
    seed: int
    layer: int
    cut_id: int
    entropy_ebits: float
    rank: int
    crossing_cz: int
    cap: int


@dataclass(frozen=True)
class CapViolation:
    """Structured counterexample: which check failed, where, by how much."""

    seed: int
    layer: int
    cut_id: int
    check: str
    observed: float
    bound: float


@dataclass
class CapCheckReport:
    """Per-layer entanglement records for every (seed, cut), plus a verdict."""

    qubits: int
    records: list[EbitRecord]
    violations: list[CapViolation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def max_entropy_by_layer_cut(self) -> dict[tuple[int, int], float]:
        """Max observed entropy over seeds, keyed by (layer, cut_id)."""
        out: dict[tuple[int, int], float] = {}
        for rec in self.records:
            key = (rec.layer, rec.cut_id)
            if rec.entropy_ebits > out.get(key, -1.0):
                out[key] = rec.entropy_ebits
        return out

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(EBIT_CSV_HEADER)
        for rec in self.records:
            writer.writerow(
                [rec.seed, rec.layer, rec.cut_id, repr(rec.entropy_ebits), rec.rank,
                 rec.crossing_cz, rec.cap]
            )
        return buf.getvalue()

    def write_csv(self, path) -> None:
        Path(path).write_text(self.to_csv_text(), encoding="utf-8")

    def to_json_dict(self) -> dict:
        return {
            "verdict": "pass" if self.ok else "fail",
            "qubits": self.qubits,
            "max_entropy": [
                {"layer": layer, "cut_id": cut_id, "entropy_ebits": value}
                for (layer, cut_id), value in sorted(self.max_entropy_by_layer_cut().items())
            ],
            "violations": [dict(vars(v)) for v in self.violations],
            "records": [dict(vars(r)) for r in self.records],
        }


def read_ebit_csv(path) -> list[EbitRecord]:
    """Inverse of CapCheckReport.write_csv."""
    records = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != EBIT_CSV_HEADER:
            raise ValueError(f"{path}: expected header {','.join(EBIT_CSV_HEADER)!r}")
        for row in reader:
            if not row:
                continue
            records.append(
                EbitRecord(int(row[0]), int(row[1]), int(row[2]), float(row[3]),
                           int(row[4]), int(row[5]), int(row[6]))
            )
    return records


# The 8 CZ layer patterns: (orientation, start offset along the edge
# direction, parity of the transverse coordinate), cycled in this order.
_PATTERN_ORDER: tuple[tuple[str, int, int], ...] = (
    ("h", 0, 0), ("v", 0, 0), ("h", 1, 0), ("v", 1, 0),
    ("h", 0, 1), ("v", 0, 1), ("h", 1, 1), ("v", 1, 1),
)


def cz_patterns(graph: lattice.LatticeGraph) -> list[list[tuple[int, int]]]:
    """Non-overlapping CZ edge sets for each of the 8 cycled patterns."""
    if not graph.is_grid or graph.rows is None or graph.cols is None:
        raise ValueError(
            "unsupported topology: the random-circuit prescription is defined on grid lattices"
        )
    rows, cols = graph.rows, graph.cols
    patterns: list[list[tuple[int, int]]] = []
    for orientation, offset, parity in _PATTERN_ORDER:
        edges: list[tuple[int, int]] = []
        if orientation == "h":
            for r in range(parity, rows, 2):
                for c in range(offset, cols - 1, 2):
                    v = r * cols + c
                    edges.append((v, v + 1))
        else:
            for c in range(parity, cols, 2):
                for r in range(offset, rows - 1, 2):
                    v = r * cols + c
                    edges.append((v, v + cols))
        patterns.append(edges)
    return patterns


def build_random_circuit(graph: lattice.LatticeGraph, depth: int, seed: int) -> Circuit:
    """Seeded random circuit: H layer, then `depth` CZ-plus-random-local layers.

    Each entangling layer takes the next nonempty CZ pattern in the fixed
    cycle and fills idle qubits with draws from {T, sqrt(X), sqrt(Y)}. Layer
    i draws from its own counter-based substream (Philox keyed by the seed,
    counter = i), so circuits are reproducible across platforms and any
    depth-d circuit is a prefix of the depth-(d+1) circuit for the same seed.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must fit in 64 bits")
    patterns = cz_patterns(graph)
    have_edges = any(patterns)
    layers: list[tuple[Gate, ...]] = [
        tuple(Gate(GateKind.H, (q,)) for q in range(graph.n))
    ]
    cursor = 0
    for layer_index in range(1, depth + 1):
        chosen: list[tuple[int, int]] = []
        if have_edges:
            for _ in range(len(patterns)):
                candidate = patterns[cursor % len(patterns)]
                cursor += 1
                if candidate:
                    chosen = candidate
                    break
        busy = {q for edge in chosen for q in edge}
        idle = [q for q in range(graph.n) if q not in busy]
        rng = np.random.Generator(np.random.Philox(key=seed, counter=layer_index))
        picks = rng.integers(0, len(_RANDOM_SINGLE_KINDS), size=len(idle))
        gates = [Gate(GateKind.CZ, edge) for edge in chosen]
        gates += [Gate(_RANDOM_SINGLE_KINDS[int(p)], (q,)) for q, p in zip(idle, picks)]
        layers.append(tuple(gates))
    return Circuit(graph, tuple(layers))


def _qubit_limit(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(MAX_QUBITS_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{MAX_QUBITS_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_QUBITS


@functools.lru_cache(maxsize=8)
def _bit_tables(n: int) -> list[np.ndarray]:
    index = np.arange(1 << n, dtype=np.uint32 if n <= 32 else np.uint64)
    tables = [((index >> q) & 1).astype(bool) for q in range(n)]
    for table in tables:
        table.setflags(write=False)
    return tables


def _apply_gate(amps: np.ndarray, n: int, gate: Gate, bits: list[np.ndarray]) -> np.ndarray:
    if gate.kind is GateKind.CZ:
        u, v = gate.qubits
        amps[bits[u] & bits[v]] *= -1.0
        return amps
    if gate.kind is GateKind.T:
        amps[bits[gate.qubits[0]]] *= _T_PHASE
        return amps
    q = gate.qubits[0]
    matrix = GATE_MATRICES[gate.kind]
    shaped = amps.reshape(1 << (n - 1 - q), 2, 1 << q)
    return np.einsum("ab,ibj->iaj", matrix, shaped).reshape(-1)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate to a copy of the state."""
    amps = state.amplitudes.copy()
    amps = _apply_gate(amps, state.n, gate, _bit_tables(state.n))
    return StateVector(state.n, amps)


def run(circuit: Circuit, layer_hook=None, max_qubits: int | None = None) -> StateVector:
    """Evolve |0...0> layer by layer; the hook sees the state after each layer.

    The hook is called as layer_hook(layer_index, state) with a live view, so
    it must not mutate the amplitudes. The qubit limit comes from max_qubits,
    then the ENTSCALE_MAX_QUBITS environment variable, then the default of 20.
    """
    n = circuit.graph.n
    limit = _qubit_limit(max_qubits)
    if n > limit:
        need = bounds.memory_bytes(n)
        raise ValueError(
            f"{n} qubits exceeds the configured limit of {limit}: a dense "
            f"statevector would need {need} bytes"
        )
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    bits = _bit_tables(n)
    for index, layer in enumerate(circuit.layers):
        for gate in layer:
            amps = _apply_gate(amps, n, gate, bits)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ArithmeticError(f"norm drifted to {norm!r} after layer {index}")
        if layer_hook is not None:
            layer_hook(index, StateVector(n, amps))
    return StateVector(n, amps)


def schmidt_spectrum(state: StateVector, cut: lattice.Cut) -> SchmidtSpectrum:
    """Singular values of the amplitude matrix reshaped by the cut, descending."""
    if sorted(cut.side_a + cut.side_b) != list(range(state.n)):
        raise ValueError("cut does not partition exactly this state's qubits")
    axes = [state.n - 1 - q for q in cut.side_a] + [state.n - 1 - q for q in cut.side_b]
    matrix = (
        state.amplitudes.reshape([2] * state.n)
        .transpose(axes)
        .reshape(1 << len(cut.side_a), -1)
    )
    values = np.linalg.svd(matrix, compute_uv=False)
    return SchmidtSpectrum(cut, values)


def entropy_ebits(spectrum: SchmidtSpectrum) -> float:
    """Entanglement entropy -sum(p * log2 p) over p = sigma^2, in ebits."""
    weights = np.asarray(spectrum.values, dtype=float) ** 2
    weights = weights[weights > ENTROPY_WEIGHT_CUTOFF]
    if weights.size == 0:
        return 0.0
    return float(-(weights * np.log2(weights)).sum())


def schmidt_rank(spectrum: SchmidtSpectrum, tol: float = RANK_TOL) -> int:
    """Count of singular values above tol times the largest."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    values = np.asarray(spectrum.values, dtype=float)
    if values.size == 0 or values[0] <= 0.0:
        return 0
    return int((values > tol * values[0]).sum())


def local_gate_invariance_check(
    state: StateVector, cut: lattice.Cut, kind: GateKind, qubit: int
) -> float:
    """Max change of the sorted Schmidt values after one single-qubit gate."""
    if kind is GateKind.CZ:
        raise ValueError("invariance check needs a single-qubit gate kind")
    before = schmidt_spectrum(state, cut).values
    after = schmidt_spectrum(apply_gate(state, Gate(kind, (qubit,))), cut).values
    return float(np.max(np.abs(before - after)))


def verify_caps(
    graph: lattice.LatticeGraph,
    depth: int,
    seeds,
    cuts,
    tol: float = CAP_TOL,
    max_qubits: int | None = None,
) -> CapCheckReport:
    """Run seeded circuits and check the entanglement accounting on every cut.

    After every layer and for every cut this records entropy, Schmidt rank,
    cumulative crossing-CZ count and the current ebit cap, and verifies:
    entropy <= min(ceil(n/2), entangling layers so far) + tol, entropy <=
    log2(rank) + tol, rank <= 2^min(crossing CZs so far, smaller side), and
    the per-layer entropy gain <= CZs crossing the cut in that layer + tol.
    Violations are returned as structured counterexamples, not raised.
    """
    cuts = list(cuts)
    n = graph.n
    half = (n + 1) // 2
    memberships = []
    for cut in cuts:
        in_a = np.zeros(n, dtype=bool)
        in_a[list(cut.side_a)] = True
        memberships.append(in_a)
    min_sides = [min(len(c.side_a), len(c.side_b)) for c in cuts]
    records: list[EbitRecord] = []
    violations: list[CapViolation] = []

    for seed in seeds:
        circuit = build_random_circuit(graph, depth, seed)
        layer_crossings = [
            [
                sum(
                    1
                    for g in layer
                    if g.kind is GateKind.CZ and in_a[g.qubits[0]] != in_a[g.qubits[1]]
                )
                for layer in circuit.layers
            ]
            for in_a in memberships
        ]
        entangling_prefix = []
        count = 0
        for layer in circuit.layers:
            count += any(g.kind is GateKind.CZ for g in layer)
            entangling_prefix.append(count)
        cumulative = [0] * len(cuts)
        previous_entropy = [0.0] * len(cuts)

        def analyze(layer_index: int, state: StateVector) -> None:
            cap = min(half, entangling_prefix[layer_index])
            for cut_id, cut in enumerate(cuts):
                spectrum = schmidt_spectrum(state, cut)
                weight = float((spectrum.values ** 2).sum())
                if abs(weight - 1.0) > NORM_TOL:
                    violations.append(
                        CapViolation(seed, layer_index, cut_id, "spectrum-norm", weight, 1.0)
                    )
                entropy = entropy_ebits(spectrum)
                rank = schmidt_rank(spectrum)
                crossed = layer_crossings[cut_id][layer_index]
                cumulative[cut_id] += crossed
                rank_bound = 2 ** min(cumulative[cut_id], min_sides[cut_id])
                if entropy > cap + tol:
                    violations.append(
                        CapViolation(seed, layer_index, cut_id, "entropy-cap", entropy, cap)
                    )
                if rank > rank_bound:
                    violations.append(
                        CapViolation(
                            seed, layer_index, cut_id, "rank-crossing", rank, rank_bound
                        )
                    )
                if entropy - previous_entropy[cut_id] > crossed + tol:
                    violations.append(
                        CapViolation(
                            seed, layer_index, cut_id, "entropy-gain",
                            entropy - previous_entropy[cut_id], crossed,
                        )
                    )
                if rank > 0 and entropy > math.log2(rank) + tol:
                    violations.append(
                        CapViolation(
                            seed, layer_index, cut_id, "entropy-rank", entropy, math.log2(rank)
                        )
                    )
                previous_entropy[cut_id] = entropy
                records.append(
                    EbitRecord(seed, layer_index, cut_id, entropy, rank,
                               cumulative[cut_id], cap)
                )

        run(circuit, analyze, max_qubits)
    return CapCheckReport(n, records, violations)


@dataclass(frozen=True)
class GridCapResult:
    rows: int
    cols: int
    cut_count: int
    report: CapCheckReport
    invariance_deviation: float


@dataclass(frozen=True)
class CapSuiteResult:
    grids: tuple[GridCapResult, ...]
    tol: float

    @property
    def ok(self) -> bool:
        return all(g.report.ok and g.invariance_deviation <= self.tol for g in self.grids)

    def first_violation(self) -> str | None:
        for g in self.grids:
            if g.report.violations:
                v = g.report.violations[0]
                return (
                    f"{g.rows}x{g.cols} grid, seed {v.seed}, layer {v.layer}, "
                    f"cut {v.cut_id}: {v.check} observed {v.observed:.9g} "
                    f"vs bound {v.bound:.9g}"
                )
            if g.invariance_deviation > self.tol:
                return (
                    f"{g.rows}x{g.cols} grid: local-gate spectrum deviation "
                    f"{g.invariance_deviation:.3g} exceeds {self.tol:.3g}"
                )
        return None


def suite_grids(max_qubits: int, min_qubits: int = 4) -> list[tuple[int, int]]:
    """All grid shapes rows <= cols with min_qubits <= rows*cols <= max_qubits."""
    shapes = []
    for rows in range(1, max_qubits + 1):
        for cols in range(rows, max_qubits + 1):
            if min_qubits <= rows * cols <= max_qubits:
                shapes.append((rows, cols))
    return shapes


def run_cap_suite(
    max_qubits: int = 16,
    num_seeds: int = 100,
    depth: int = 12,
    random_cuts: int = 10,
    tol: float = CAP_TOL,
    invariance_seeds: int = 3,
) -> CapSuiteResult:
    """Cap verification across every grid shape up to max_qubits.

    Each grid is checked against every minimum balanced cut plus random_cuts
    seeded random balanced cuts, over num_seeds circuits of the given depth;
    a prefix of layers realizes every smaller depth. A few final states also
    get the local-gate spectrum-invariance probe on each single-qubit kind.
    """
    results = []
    for rows, cols in suite_grids(max_qubits):
        graph = lattice.build_grid(rows, cols)
        cuts = lattice.all_min_balanced_cuts(graph)
        cuts += lattice.random_balanced_cuts(graph, random_cuts, seed=rows * 1009 + cols)
        report = verify_caps(graph, depth, range(num_seeds), cuts, tol=tol)
        deviation = 0.0
        probe_cut = cuts[0]
        probe_qubits = (probe_cut.side_a[0], probe_cut.side_b[0]) if probe_cut.side_b else ()
        for seed in range(invariance_seeds):
            final = run(build_random_circuit(graph, depth, seed))
            for kind in (GateKind.H, GateKind.T, GateKind.SQRT_X, GateKind.SQRT_Y):
                for qubit in probe_qubits:
                    deviation = max(
                        deviation, local_gate_invariance_check(final, probe_cut, kind, qubit)
                    )
        results.append(GridCapResult(rows, cols, len(cuts), report, deviation))
    return CapSuiteResult(tuple(results), tol)
