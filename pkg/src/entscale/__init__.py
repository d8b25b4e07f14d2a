"""Entanglement-scaling lower bounds for nearest-neighbor random circuits.

The package builds qubit coupling graphs and balanced cuts (`lattice`),
evaluates the closed-form bond-dimension, gate-count, depth-window and memory
bounds those cuts imply (`bounds`), models and fits classical strong-
simulation runtimes to locate depth frontiers (`runtime_model`), and verifies
the entanglement accounting empirically with a dense statevector simulator of
grid random circuits (`simulator`). The `entscale` command line ties the
pieces into reproducible runs with file outputs.
"""

from .bounds import (
    BoundReport,
    SeriesBound,
    cut_bounds,
    deformed_bounds,
    deformed_bounds_series,
    depth_interval,
    ebit_cap,
    grid_bounds,
    memory_bytes,
)
from .lattice import (
    Cut,
    LatticeGraph,
    LatticeKind,
    build_custom,
    build_deformed_grid,
    build_grid,
    crossing_count,
    make_cut,
    min_balanced_cut,
    read_graph_file,
    write_graph_file,
)
from .runtime_model import (
    DEFAULT_PARAMS,
    SECONDS_PER_MONTH,
    SECONDS_PER_YEAR,
    STANDARD_HORIZONS,
    BenchmarkPoint,
    DepthTable,
    HeatmapData,
    RuntimeEstimate,
    RuntimeParams,
    achievable_depth,
    depth_table,
    eval_runtime,
    fit_params,
    gate_total,
    heatmap,
    ingest_benchmarks,
    invert_depth,
    log10_runtime,
)
from .simulator import (
    CapCheckReport,
    Circuit,
    Gate,
    GateKind,
    SchmidtSpectrum,
    StateVector,
    build_random_circuit,
    entropy_ebits,
    local_gate_invariance_check,
    run,
    run_cap_suite,
    schmidt_rank,
    schmidt_spectrum,
    verify_caps,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
