"""Closed-form entanglement-scaling bounds for nearest-neighbor circuits.

Everything here follows from one counting argument. If a state on n qubits is
to carry the maximal ceil(n/2) ebits across a balanced cut crossed by f
lattice edges, each crossing edge must support bond dimension chi with
chi^f >= 2^(n/2), so chi >= 2^(n/2f); and since every edge needs log2(chi)
entangling gates, at least n*e/(2f) gates are required over the e edges.
Specializations to the square grid and its fixed-qubit-count deformations,
the Taylor expansions of the deformed bounds, the entangling-depth window,
the per-circuit ebit cap, and the dense-statevector memory threshold are all
evaluated exactly in rational arithmetic and converted to floats only on
output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import lattice


@dataclass(frozen=True)
class BoundReport:
    """Lower bounds implied by one (n, e, f) topology."""

    n: int
    e: int
    f: int
    log2_chi_lb: float
    chi_lb: float
    gate_lb: float
    depth_interval: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "f": self.f,
            "log2_chi_lb": self.log2_chi_lb,
            "chi_lb": self.chi_lb,
            "gate_lb": self.gate_lb,
            "depth_interval": list(self.depth_interval),
        }


@dataclass(frozen=True)
class SeriesBound:
    """Partial sums of the deformed-grid bound expansions, exact rationals.

    log2_chi_terms[i] and gate_terms[i] are the sums through order i.
    """

    order: int
    log2_chi_terms: tuple[Fraction, ...]
    gate_terms: tuple[Fraction, ...]


def depth_interval(n: int) -> tuple[float, float]:
    """Entangling-depth window [sqrt(4n), 8*sqrt(n)] for reaching ceil(n/2) ebits.

    The lower end stacks the sqrt(n)/2 two-qubit gates each crossing edge
    needs; the upper end allows a local gate before and after every two-qubit
    gate, a further factor of four.
    """
    if n < 1:
        raise ValueError("qubit count must be positive")
    return (math.sqrt(4 * n), 8.0 * math.sqrt(n))


def ebit_cap(n: int, g: int) -> int:
    """min(ceil(n/2), g): one ebit per entangling layer, at most ceil(n/2) total."""
    if n < 1:
        raise ValueError("qubit count must be positive")
    if g < 0:
        raise ValueError("depth must be nonnegative")
    return min((n + 1) // 2, g)


def memory_bytes(n: int) -> int:
    """Bytes to store a dense n-qubit statevector: 2^(n+1) * 16, exact."""
    if n < 1:
        raise ValueError("qubit count must be positive")
    return 1 << (n + 5)


def cut_log2_chi(n: int, f: int) -> Fraction:
    """Exact bond-dimension exponent n / (2f)."""
    return Fraction(n, 2 * f)


def cut_gate_count(n: int, e: int, f: int) -> Fraction:
    """Exact entangling-gate count n * e / (2f)."""
    return Fraction(n * e, 2 * f)


def _report(n: int, e: int, f: int, log2_chi: Fraction, gates: Fraction) -> BoundReport:
    lg = float(log2_chi)
    return BoundReport(n, e, f, lg, 2.0 ** lg, float(gates), depth_interval(n))


def cut_bounds(n: int, e: int, f: int) -> BoundReport:
    """Bounds for a general n-vertex, e-edge graph cut by f edges."""
    if n < 1:
        raise ValueError("qubit count must be positive")
    if f == 0:
        raise ValueError(
            "degenerate cut: no crossing edges, the bipartition supports no entanglement"
        )
    if f < 0:
        raise ValueError("crossing count must be nonnegative")
    if e < f:
        raise ValueError(f"edge count e = {e} cannot be below crossing count f = {f}")
    return _report(n, e, f, cut_log2_chi(n, f), cut_gate_count(n, e, f))


def square_side(n: int) -> int:
    s = math.isqrt(n)
    if s * s != n:
        raise ValueError(f"qubit count {n} is not a perfect square")
    return s


def grid_bounds(n: int) -> BoundReport:
    """Square-grid specialization: e = 2*sqrt(n)*(sqrt(n)-1), f = sqrt(n).

    Gives chi >= 2^(sqrt(n)/2) and at least n*(sqrt(n)-1) entangling gates.
    """
    s = square_side(n)
    if n < 4:
        raise ValueError("grid bounds need n >= 4")
    return cut_bounds(n, 2 * s * (s - 1), s)


def deformed_edge_count(n: int, k: int) -> int:
    """Edges of the (sqrt(n)-k) x (n/(sqrt(n)-k)) grid.

    Equals 2*sqrt(n)*(sqrt(n)-1) - (k^2/sqrt(n)) * (1 - k/sqrt(n))^-1, which
    is an exact integer for every valid (n, k).
    """
    rows, _ = lattice.deformed_shape(n, k)
    s = rows + k
    e = 2 * s * (s - 1) - Fraction(k * k, s) / (1 - Fraction(k, s))
    if e.denominator != 1:
        raise AssertionError(f"deformed edge count for ({n},{k}) is not integral: {e}")
    return int(e)


def deformed_log2_chi(n: int, k: int) -> Fraction:
    """Exact exponent (sqrt(n)/2) * (1 - k/sqrt(n))^-1 of the deformed grid."""
    rows, _ = lattice.deformed_shape(n, k)
    s = rows + k
    return Fraction(s, 2) / (1 - Fraction(k, s))


def deformed_gate_count(n: int, k: int) -> Fraction:
    """Exact gate bound n(sqrt(n)-1)(1-k/sqrt(n))^-1 - (k^2/2)(1-k/sqrt(n))^-2."""
    rows, _ = lattice.deformed_shape(n, k)
    s = rows + k
    inv = 1 / (1 - Fraction(k, s))
    return n * (s - 1) * inv - Fraction(k * k, 2) * inv * inv


def deformed_bounds(n: int, k: int) -> BoundReport:
    """Deformed-grid bounds; identical to cut_bounds at e counted, f = sqrt(n)-k."""
    rows, _ = lattice.deformed_shape(n, k)
    s = rows + k
    e = deformed_edge_count(n, k)
    return _report(n, e, s - k, deformed_log2_chi(n, k), deformed_gate_count(n, k))


def deformed_bounds_series(n: int, k: int, order: int) -> SeriesBound:
    """Partial sums of the bound expansions in powers of k/sqrt(n).

    log2_chi: (sqrt(n)/2) * sum_s (k/sqrt(n))^s.
    gates:    sum_s [n(sqrt(n)-1) - (k^2/2)(s+1)] * (k/sqrt(n))^s.
    """
    rows, _ = lattice.deformed_shape(n, k)
    if order < 0:
        raise ValueError("series order must be nonnegative")
    s = rows + k
    ratio = Fraction(k, s)
    lead_chi = Fraction(s, 2)
    lead_gate = Fraction(n * (s - 1))
    half_k2 = Fraction(k * k, 2)
    chi_sums, gate_sums = [], []
    chi_total = Fraction(0)
    gate_total = Fraction(0)
    power = Fraction(1)
    for i in range(order + 1):
        chi_total += lead_chi * power
        gate_total += (lead_gate - half_k2 * (i + 1)) * power
        chi_sums.append(chi_total)
        gate_sums.append(gate_total)
        power *= ratio
    return SeriesBound(order, tuple(chi_sums), tuple(gate_sums))
