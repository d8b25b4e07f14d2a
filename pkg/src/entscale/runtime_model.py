"""Classical-simulation runtime model for grid random circuits.

The model estimates the time to strongly simulate one output amplitude of a
depth-g circuit on n grid qubits as

    t(n, g) = (1/flops) * M(n, g)^a1 * 2^(a2 * g * sqrt(n)),

where M(n, g) = 2*(sqrt(n)-1)*sqrt(n)*g is the coupler count times the depth.
The model is linear in (a1, a2) after taking logs, so fitting against
benchmark points is an ordinary least-squares problem, and the log-runtime is
strictly increasing in g, so depth frontiers for a given time budget come
from bisection. All internal arithmetic stays in log space; t itself is
exponentiated only when it fits in a float.
"""

from __future__ import annotations

import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds

SECONDS_PER_YEAR = 365.2425 * 24 * 60 * 60
SECONDS_PER_MONTH = SECONDS_PER_YEAR / 12

STANDARD_HORIZONS: tuple[tuple[str, float], ...] = (
    ("1 month", SECONDS_PER_MONTH),
    ("1 year", SECONDS_PER_YEAR),
    ("10 years", 10 * SECONDS_PER_YEAR),
    ("100 years", 100 * SECONDS_PER_YEAR),
)

# largest log10(t) whose t still fits in a double
_LOG10_FLOAT_MAX = math.log10(sys.float_info.max)

_BISECT_LO, _BISECT_HI = 1.0, float(2 ** 20)
_BISECT_STEPS = 200
# ceiling snap guard against inversion round-off
_CEIL_SNAP = 1e-9

BENCHMARK_HEADER = ("source", "qubits", "depth", "seconds", "amplitudes")


@dataclass(frozen=True)
class RuntimeParams:
    """Model parameters: polynomial exponent a1, exponential rate a2, flops."""

    a1: float
    a2: float
    flops: float = 1e17

    def __post_init__(self) -> None:
        if not (self.a1 >= 0 and math.isfinite(self.a1)):
            raise ValueError(f"a1 must be finite and nonnegative, got {self.a1}")
        if not (self.a2 >= 0 and math.isfinite(self.a2)):
            raise ValueError(f"a2 must be finite and nonnegative, got {self.a2}")
        if not (self.flops > 0 and math.isfinite(self.flops)):
            raise ValueError(f"flops must be finite and positive, got {self.flops}")


#: Default parameters, fitted against published single-amplitude simulation
#: benchmarks on a machine doing 1e17 flops.
DEFAULT_PARAMS = RuntimeParams(a1=4.36063901, a2=0.04315488, flops=1e17)


@dataclass(frozen=True)
class BenchmarkPoint:
    """One external simulation benchmark: runtime of a (qubits, depth) circuit."""

    source: str
    qubits: int
    depth: int
    seconds: float
    amplitudes: str = "single"

    def __post_init__(self) -> None:
        if self.qubits < 1:
            raise ValueError(f"qubits must be >= 1, got {self.qubits}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if not (self.seconds > 0):
            raise ValueError(f"seconds must be positive, got {self.seconds}")


@dataclass(frozen=True)
class RuntimeEstimate:
    """Model runtime; seconds is None when 10^log10_seconds overflows a float."""

    log10_seconds: float
    seconds: float | None

    @property
    def overflowed(self) -> bool:
        return self.seconds is None


@dataclass(frozen=True)
class DepthTable:
    """Achievable depths per time horizon and qubit count."""

    qubit_counts: tuple[int, ...]
    rows: tuple[tuple[str, float, tuple[int, ...]], ...]
    halved: bool

    def to_dict(self) -> dict:
        return {
            "qubit_counts": list(self.qubit_counts),
            "halved": self.halved,
            "rows": [
                {"label": label, "seconds": seconds, "depths": list(depths)}
                for label, seconds, depths in self.rows
            ],
        }

    def to_text(self) -> str:
        header = ["runtime", "seconds"] + [f"{n} qubits" for n in self.qubit_counts]
        body = [
            [label, f"{seconds:.6g}"] + [str(d) for d in depths]
            for label, seconds, depths in self.rows
        ]
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                 for row in [header] + body]
        return "\n".join(lines)


@dataclass(frozen=True)
class HeatmapData:
    """Row-major log10-runtime grid plus depth-window and iso-runtime curves."""

    cells: tuple[tuple[int, int, float], ...]
    interval: tuple[tuple[int, float, float], ...]
    contours: tuple[tuple[str, int, float], ...]


def gate_total(n: int, g) -> float:
    """Total gate estimate M(n, g) = 2*(sqrt(n)-1)*sqrt(n)*g, real-valued sqrt."""
    if n < 2:
        raise ValueError("gate totals need n >= 2")
    if g <= 0:
        raise ValueError("depth must be positive")
    root = math.sqrt(n)
    return 2.0 * (root - 1.0) * root * g


def log10_runtime(params: RuntimeParams, n: int, g) -> float:
    """log10 of the model runtime; safe for any (n, g) a float can express."""
    m = gate_total(n, g)
    return (
        -math.log10(params.flops)
        + params.a1 * math.log10(m)
        + params.a2 * g * math.sqrt(n) * math.log10(2.0)
    )


def eval_runtime(params: RuntimeParams, n: int, g) -> RuntimeEstimate:
    """Model runtime in seconds, or its log10 alone when t overflows a float."""
    lg = log10_runtime(params, n, g)
    if lg > _LOG10_FLOAT_MAX:
        return RuntimeEstimate(lg, None)
    return RuntimeEstimate(lg, 10.0 ** lg)


def invert_depth(params: RuntimeParams, n: int, t_seconds: float) -> float:
    """The unique real depth g >= 1 with model runtime t_seconds.

    Bisection on the strictly increasing log-runtime over g in [1, 2^20];
    needs a1 > 0 or a2 > 0 so the model actually grows with depth.
    """
    if not (t_seconds > 0):
        raise ValueError("target runtime must be positive")
    if params.a1 == 0 and params.a2 == 0:
        raise ValueError("runtime model is constant in depth, inversion is undefined")
    target = math.log10(t_seconds)
    lo, hi = _BISECT_LO, _BISECT_HI
    floor_log = log10_runtime(params, n, lo)
    if target < floor_log - 1e-12:
        raise ValueError(
            f"target runtime {t_seconds:.6g} s is below the depth-1 runtime "
            f"10^{floor_log:.6g} s for n = {n}"
        )
    if target <= floor_log:
        return lo
    if log10_runtime(params, n, hi) < target:
        raise ValueError(f"target runtime exceeds the model range (depth > {int(hi)})")
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if log10_runtime(params, n, mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def achievable_depth(params: RuntimeParams, n: int, t_seconds: float) -> int:
    """Ceiling of the continuous depth frontier for a given time budget."""
    g = invert_depth(params, n, t_seconds)
    return max(1, math.ceil(g - _CEIL_SNAP))


def fit_params(points, flops: float = 1e17) -> tuple[RuntimeParams, float]:
    """Least-squares fit of (a1, a2) in log space.

    Solves ln t + ln flops = a1 * ln M(n, g) + a2 * (g * sqrt(n)) * ln 2 over
    the benchmark points; returns the fitted parameters and the residual norm
    in ln-seconds.
    """
    points = list(points)
    if len(points) < 2:
        raise ValueError(f"fitting needs at least 2 benchmark points, got {len(points)}")
    design = np.array(
        [
            [
                math.log(gate_total(p.qubits, p.depth)),
                p.depth * math.sqrt(p.qubits) * math.log(2.0),
            ]
            for p in points
        ]
    )
    target = np.array([math.log(p.seconds) + math.log(flops) for p in points])
    solution, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 2:
        raise ValueError(
            "degenerate benchmark data: the feature rows "
            "(ln gates, depth*sqrt(qubits)) are collinear, so a1 and a2 "
            "cannot be separated"
        )
    residual = float(np.linalg.norm(design @ solution - target))
    return RuntimeParams(float(solution[0]), float(solution[1]), float(flops)), residual


def depth_table(
    params: RuntimeParams,
    qubit_counts,
    horizons=STANDARD_HORIZONS,
    halve: bool = False,
) -> DepthTable:
    """Achievable-depth table over qubit counts and time horizons.

    halve=True halves the continuous depth before the ceiling, modeling the
    tougher benchmark variant that roughly doubles simulation cost per layer.
    """
    qubit_counts = tuple(int(n) for n in qubit_counts)
    rows = []
    for label, seconds in horizons:
        depths = []
        for n in qubit_counts:
            g = invert_depth(params, n, seconds)
            if halve:
                g = g / 2.0
            depths.append(max(1, math.ceil(g - _CEIL_SNAP)))
        rows.append((str(label), float(seconds), tuple(depths)))
    return DepthTable(qubit_counts, tuple(rows), halve)


def heatmap(
    params: RuntimeParams,
    qubit_range: tuple[int, int],
    depth_range: tuple[int, int],
    step: int = 1,
    horizons=STANDARD_HORIZONS,
) -> HeatmapData:
    """Dense log10-runtime samples with companion curves for plotting.

    Emits (qubits, depth, log10 seconds) row-major over qubits then depth,
    the depth window [sqrt(4n), 8*sqrt(n)] per qubit count, and per horizon
    the continuous iso-runtime contour depth where the model hits it.
    """
    n_lo, n_hi = qubit_range
    g_lo, g_hi = depth_range
    if step < 1:
        raise ValueError("step must be >= 1")
    if n_lo > n_hi or g_lo > g_hi:
        raise ValueError("ranges must be nonempty (min <= max)")
    if n_lo < 2 or g_lo < 1:
        raise ValueError("heatmap needs qubits >= 2 and depth >= 1")
    qubit_values = range(n_lo, n_hi + 1, step)
    depth_values = range(g_lo, g_hi + 1, step)
    cells = tuple(
        (n, g, log10_runtime(params, n, g)) for n in qubit_values for g in depth_values
    )
    interval = tuple((n, *bounds.depth_interval(n)) for n in qubit_values)
    contours = []
    for label, seconds in horizons:
        for n in qubit_values:
            if math.log10(seconds) < log10_runtime(params, n, 1.0):
                continue  # horizon already exceeded at depth 1
            contours.append((str(label), n, invert_depth(params, n, seconds)))
    return HeatmapData(cells, interval, tuple(contours))


def write_heatmap_csv(data: HeatmapData, out_dir) -> dict[str, Path]:
    """Write heatmap.csv, interval.csv and contours.csv; full float precision."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "heatmap": out / "heatmap.csv",
        "interval": out / "interval.csv",
        "contours": out / "contours.csv",
    }
    with paths["heatmap"].open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["qubits", "depth", "log10_seconds"])
        for n, g, lg in data.cells:
            writer.writerow([n, g, repr(lg)])
    with paths["interval"].open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["qubits", "lower", "upper"])
        for n, lo, hi in data.interval:
            writer.writerow([n, repr(lo), repr(hi)])
    with paths["contours"].open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "qubits", "depth"])
        for label, n, g in data.contours:
            writer.writerow([label, n, repr(g)])
    return paths


def read_heatmap_csv(out_dir) -> HeatmapData:
    """Inverse of write_heatmap_csv."""
    out = Path(out_dir)
    cells, interval, contours = [], [], []
    with (out / "heatmap.csv").open(newline="", encoding="utf-8") as fh:
        for row in _checked_rows(fh, ("qubits", "depth", "log10_seconds")):
            cells.append((int(row[0]), int(row[1]), float(row[2])))
    with (out / "interval.csv").open(newline="", encoding="utf-8") as fh:
        for row in _checked_rows(fh, ("qubits", "lower", "upper")):
            interval.append((int(row[0]), float(row[1]), float(row[2])))
    with (out / "contours.csv").open(newline="", encoding="utf-8") as fh:
        for row in _checked_rows(fh, ("label", "qubits", "depth")):
            contours.append((row[0], int(row[1]), float(row[2])))
    return HeatmapData(tuple(cells), tuple(interval), tuple(contours))


def _checked_rows(fh, expected_header):
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != tuple(expected_header):
        raise ValueError(f"expected header {','.join(expected_header)!r}, got {header!r}")
    for row in reader:
        if row:
            yield row


def ingest_benchmarks(path) -> list[BenchmarkPoint]:
    """Parse a benchmark CSV (source,qubits,depth,seconds,amplitudes).

    Malformed rows raise ValueError naming the offending line; a header-only
    file yields an empty list.
    """
    points = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != BENCHMARK_HEADER:
            raise ValueError(
                f"{path}: expected header {','.join(BENCHMARK_HEADER)!r}, got {header!r}"
            )
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            if len(row) != len(BENCHMARK_HEADER):
                raise ValueError(
                    f"{path}: line {line}: expected {len(BENCHMARK_HEADER)} fields, "
                    f"got {len(row)}"
                )
            source, qubits, depth, seconds, amplitudes = (field.strip() for field in row)
            try:
                point = BenchmarkPoint(
                    source=source,
                    qubits=int(qubits),
                    depth=int(depth),
                    seconds=float(seconds),
                    amplitudes=amplitudes,
                )
            except ValueError as exc:
                raise ValueError(f"{path}: line {line}: {exc}") from None
            points.append(point)
    return points


def write_benchmarks(points, path) -> None:
    """Inverse of ingest_benchmarks."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCHMARK_HEADER)
        for p in points:
            writer.writerow([p.source, p.qubits, p.depth, repr(p.seconds), p.amplitudes])
