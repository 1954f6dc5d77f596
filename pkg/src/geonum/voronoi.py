"""Voronoi-relevant vectors, cell membership, packing and covering radii."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg, _tree
from .core import LatticeBasis, determinant_squared, to_fraction
from .errors import DimensionTooLarge, NotFullRank
from .minima import DEFAULT_BUDGET, BoundCheck, MinimaReport, successive_minima
from .packing import ball_volume

MAX_VORONOI_DIM = 6
MAX_ESTIMATE_DIM = 3
GUARD_BAND = 1e-9


def _require_full_rank(lattice: LatticeBasis, limit: int) -> None:
    if not lattice.is_complete:
        raise NotFullRank("needs a full-rank lattice")
    if lattice.rank > limit:
        raise DimensionTooLarge(f"limited to dimension {limit}")


@dataclass(frozen=True)
class RelevantVectorSet:
    """One representative per sign pair; ``coset_index[k]`` is its class in L/2L."""

    vectors: tuple[tuple[Fraction, ...], ...]
    coefficients: tuple[tuple[int, ...], ...]
    coset_index: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def count_with_signs(self) -> int:
        return 2 * len(self.vectors)


def coset_minimizers(lattice: LatticeBasis, coset: Sequence[int], *, budget: int = DEFAULT_BUDGET):
    """Shortest vectors of ``A c + 2L`` as ``(norm_sq, [coefficient vectors])``."""
    c = tuple(coset)
    # |A(c + 2y)|^2 = 4 |A(y + c/2)|^2; y = 0 is feasible, so start there
    best: list = [lattice.norm_sq(c), []]

    def visit(y, _approx):
        u = tuple(2 * yi + ci for yi, ci in zip(y, c))
        value = lattice.norm_sq(u)
        if value < best[0]:
            best[0], best[1] = value, [u]
        elif value == best[0]:
            best[1].append(u)
        return float(best[0]) / 4

    _tree.search(lattice, float(best[0]) / 4, visit, shift=[ci / 2 for ci in c], budget=budget)
    return best[0], sorted(best[1])


def relevant_vectors(lattice: LatticeBasis, *, budget: int = DEFAULT_BUDGET) -> RelevantVectorSet:
    """Relevant vectors: ``v`` is kept iff ``+-v`` are the only shortest vectors of ``v + 2L``."""
    _require_full_rank(lattice, MAX_VORONOI_DIM)
    vectors, coeffs, cosets = [], [], []
    for c in itertools.product((0, 1), repeat=lattice.rank):
        if not any(c):
            continue
        _, minimizers = coset_minimizers(lattice, c, budget=budget)
        if len(minimizers) == 2:
            u = _tree.canonical_sign(minimizers[0])
            coeffs.append(u)
            vectors.append(lattice.vector(u))
            cosets.append(c)
    return RelevantVectorSet(tuple(vectors), tuple(coeffs), tuple(cosets))


def in_voronoi_cell(x: Sequence, lattice: LatticeBasis, relevant: RelevantVectorSet | None = None) -> bool:
    """Closed-cell membership: ``|<x, v>| <= <v, v> / 2`` for every relevant ``v``."""
    if relevant is None:
        relevant = relevant_vectors(lattice)
    x = [to_fraction(t) for t in x]
    return all(2 * abs(_linalg.dot(x, v)) <= _linalg.dot(v, v) for v in relevant.vectors)


def nearest_distance_sq(lattice: LatticeBasis, coords: Sequence[float], *, budget: int = DEFAULT_BUDGET) -> float:
    """Squared distance from ``sum coords_i a_i`` to the lattice (floating point)."""
    g = [[float(v) for v in row] for row in lattice.gram]
    z = [round(t) - t for t in coords]
    start = sum(z[i] * g[i][j] * z[j] for i in range(len(z)) for j in range(len(z)))
    best = [start]

    def visit(_x, approx):
        best[0] = min(best[0], approx)
        return best[0]

    _tree.search(lattice, start, visit, shift=[-t for t in coords], budget=budget)
    return best[0]


def covering_radius_estimate(lattice: LatticeBasis, grid_per_axis: int, *, budget: int = DEFAULT_BUDGET) -> float:
    """Largest distance to the lattice over a ``grid^n`` grid in the fundamental mesh.

    A lower estimate of the covering radius; it falls short by at most
    :func:`grid_slack`.
    """
    _require_full_rank(lattice, MAX_ESTIMATE_DIM)
    if grid_per_axis < 1:
        raise ValueError("grid_per_axis must be positive")
    worst = 0.0
    for idx in itertools.product(range(grid_per_axis), repeat=lattice.rank):
        coords = [i / grid_per_axis for i in idx]
        worst = max(worst, nearest_distance_sq(lattice, coords, budget=budget))
    return math.sqrt(worst)


def grid_slack(lattice: LatticeBasis, grid_per_axis: int) -> float:
    """Every point of space lies within this distance of some grid point."""
    return sum(math.sqrt(lattice.norm_sq(tuple(int(i == j) for j in range(lattice.rank))))
               for i in range(lattice.rank)) / (2 * grid_per_axis)


@dataclass(frozen=True)
class RadiusReport:
    packing_radius_sq: Fraction
    covering_lower_sq: Fraction  # lambda_n^2 / 4
    volume_lower_sq: float  # (det / V_n)^(2/n), numeric
    covering_upper_sq: Fraction  # n lambda_n^2 / 4
    covering_estimate: float | None
    minima: MinimaReport
    checks: tuple[BoundCheck, ...]

    @property
    def best_covering_lower_sq(self) -> float:
        return max(float(self.covering_lower_sq), self.volume_lower_sq)


def radius_report(lattice: LatticeBasis, grid: int | None = None, *, budget: int = DEFAULT_BUDGET) -> RadiusReport:
    """Packing radius and the covering-radius sandwich, optionally with a grid estimate."""
    _require_full_rank(lattice, MAX_VORONOI_DIM)
    n = lattice.rank
    minima = successive_minima(lattice, budget=budget)
    ln_sq = minima.lambda_sq[-1]
    packing = minima.lambda_sq[0] / 4
    lower = ln_sq / 4
    upper = n * ln_sq / 4
    volume_lower = (math.sqrt(determinant_squared(lattice)) / ball_volume(n)) ** (2 / n)
    checks = [
        BoundCheck("covering_lower_le_upper", math.sqrt(lower), math.sqrt(upper), lower <= upper),
        BoundCheck("packing_le_covering_upper", math.sqrt(packing), math.sqrt(upper), packing <= upper),
        BoundCheck("volume_lower_le_upper", math.sqrt(volume_lower), math.sqrt(upper),
                   volume_lower <= float(upper) * (1 + GUARD_BAND), "numeric"),
    ]
    estimate = None
    if grid is not None and n <= MAX_ESTIMATE_DIM:
        estimate = covering_radius_estimate(lattice, grid, budget=budget)
        slack = grid_slack(lattice, grid)
        checks.append(BoundCheck("estimate_ge_lower", math.sqrt(lower) - slack, estimate,
                                 estimate >= math.sqrt(lower) - slack - GUARD_BAND, "numeric"))
        checks.append(BoundCheck("estimate_le_upper", estimate, math.sqrt(upper),
                                 estimate <= math.sqrt(upper) + GUARD_BAND, "numeric"))
    return RadiusReport(packing, lower, volume_lower, upper, estimate, minima, tuple(checks))
