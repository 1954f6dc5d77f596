"""Shortest vectors, successive minima and the Minkowski-family bound checks.

Lengths are carried as exact squared rationals. Inequalities between
irrational quantities are decided by raising both sides to an even integer
power, so every verdict is a comparison of rationals (or, where the unit-ball
volume brings in pi, of rationals bracketed by a tight pi enclosure).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from . import _tree
from .core import LatticeBasis, determinant_squared
from .errors import DimensionTooLarge, NotFullRank
from .gso import gso_min_norm_sq
from .packing import PI_LOWER, PI_UPPER, ball_volume, unit_ball_volume_sq

Norm = Literal["l2", "linf"]

DEFAULT_BUDGET = 10**8
MAX_MINIMA_RANK = 8
MAX_BOUNDS_DIM = 8


def _linf_sq(lattice: LatticeBasis, x: Sequence[int]) -> Fraction:
    return max(v * v for v in lattice.vector(x))


def _measure(lattice: LatticeBasis, norm: Norm):
    if norm == "l2":
        return lattice.norm_sq
    if norm == "linf":
        return lambda x: _linf_sq(lattice, x)
    raise ValueError(f"unknown norm {norm!r}; expected 'l2' or 'linf'")


def _tree_radius(lattice: LatticeBasis, r_sq: Fraction, norm: Norm) -> float:
    # |v|_2^2 <= n |v|_inf^2, so the l2 tree with radius n*r covers the linf ball
    return float(r_sq) * (lattice.ambient_dim if norm == "linf" else 1)


def enumerate_below(
    lattice: LatticeBasis,
    r_sq,
    norm: Norm = "l2",
    *,
    budget: int = DEFAULT_BUDGET,
    sort: bool = True,
) -> list[tuple[int, ...]]:
    """All nonzero coefficient vectors ``x`` with ``|A x|^2 <= r_sq``, one per sign pair.

    Each vector is returned with its first nonzero coefficient positive. With
    ``sort`` the list is ordered by (norm, coefficients).
    """
    r_sq = Fraction(r_sq)
    if r_sq <= 0:
        raise ValueError("r_sq must be positive")
    measure = _measure(lattice, norm)
    found: list[tuple[Fraction, tuple[int, ...]]] = []

    def visit(x, _approx):
        value = measure(x)
        if value <= r_sq:
            found.append((value, _tree.canonical_sign(x)))

    _tree.search(lattice, _tree_radius(lattice, r_sq, norm), visit, symmetric=True, budget=budget)
    if sort:
        found.sort()
    return [x for _, x in found]


@dataclass(frozen=True)
class ShortestVector:
    coefficients: tuple[int, ...]
    vector: tuple[Fraction, ...]
    lambda1_sq: Fraction
    norm: str = "l2"


def _initial_radius(lattice: LatticeBasis, norm: Norm) -> Fraction:
    m = lattice.rank
    measure = _measure(lattice, norm)
    best = min(measure(tuple(int(i == j) for j in range(m))) for i in range(m))
    # Minkowski: lambda_1^2 <= m det^(2/m) (l2), lambda_inf^2 <= det^(2/m) (linf, full rank)
    if norm == "l2" or lattice.is_complete:
        det_root = float(determinant_squared(lattice)) ** (1 / m)
        bound = (m if norm == "l2" else 1) * det_root
        if bound < best:
            return Fraction(bound * (1 + 1e-9))
    return best


def shortest_vector(lattice: LatticeBasis, norm: Norm = "l2", *, budget: int = DEFAULT_BUDGET) -> ShortestVector:
    """A nonzero lattice vector of minimal norm; ties go to the lexicographically
    smallest canonical coefficient vector."""
    measure = _measure(lattice, norm)
    scale = lattice.ambient_dim if norm == "linf" else 1
    best: list = [None, None]  # value, coefficients

    def visit(x, _approx):
        value = measure(x)
        key = _tree.canonical_sign(x)
        if best[0] is None or value < best[0] or (value == best[0] and key < best[1]):
            best[0], best[1] = value, key
        return float(best[0]) * scale

    r0 = _initial_radius(lattice, norm)
    _tree.search(lattice, float(r0) * scale, visit, symmetric=True, budget=budget)
    value, coeffs = best
    return ShortestVector(coeffs, lattice.vector(coeffs), value, norm)


class _Echelon:
    """Incremental linear-independence test over the rationals."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)

    def add(self, v: Sequence) -> bool:
        v = [Fraction(t) for t in v]
        for col, row in self.rows:
            if v[col]:
                f = v[col] / row[col]
                v = [a - f * b for a, b in zip(v, row)]
        pivot = next((i for i, t in enumerate(v) if t), None)
        if pivot is None:
            return False
        self.rows.append((pivot, v))
        return True


@dataclass(frozen=True)
class MinimaReport:
    lambda_sq: tuple[Fraction, ...]
    witnesses: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(math.sqrt(v) for v in self.lambda_sq)


def successive_minima(lattice: LatticeBasis, *, budget: int = DEFAULT_BUDGET) -> MinimaReport:
    """Successive minima by greedy selection over vectors of growing norm.

    The search radius starts at ``lambda_1^2`` and doubles, capped at the
    longest basis vector (the basis itself supplies ``m`` independent vectors).
    """
    m = lattice.rank
    if m > MAX_MINIMA_RANK:
        raise DimensionTooLarge(f"successive minima limited to rank {MAX_MINIMA_RANK}")
    first = shortest_vector(lattice, budget=budget)
    cap = max(lattice.norm_sq(tuple(int(i == j) for j in range(m))) for i in range(m))
    r = first.lambda1_sq
    while True:
        echelon = _Echelon()
        picked: list[tuple[Fraction, tuple[int, ...]]] = []
        for x in enumerate_below(lattice, r, budget=budget):
            if echelon.add(x):
                picked.append((lattice.norm_sq(x), x))
                if len(picked) == m:
                    break
        if len(picked) == m:
            break
        r = min(2 * r, cap)
    return MinimaReport(
        tuple(v for v, _ in picked),
        tuple(x for _, x in picked),
        tuple(lattice.vector(x) for _, x in picked),
    )


@dataclass(frozen=True)
class BoundCheck:
    """One inequality ``lhs <= rhs``; ``holds`` is decided without floats."""

    name: str
    lhs: float
    rhs: float
    holds: bool
    precision: str = "exact"  # "exact" or "interval" (pi bracketed)


@dataclass(frozen=True)
class BoundReport:
    dimension: int
    det_sq: Fraction
    gso_min_sq: Fraction
    minima: MinimaReport
    linf_lambda1_sq: Fraction
    checks: tuple[BoundCheck, ...]

    def __getitem__(self, name: str) -> BoundCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)


def _ball_bound_holds(l1_sq: Fraction, n: int, det_sq: Fraction) -> tuple[bool, str]:
    # lambda_1 <= 2 (det / v_n)^(1/n)  <=>  lambda_1^(2n) v_n^2 <= 4^n det^2
    coef, a = unit_ball_volume_sq(n)
    rhs = 4**n * det_sq
    if l1_sq**n * coef * PI_UPPER**a <= rhs:
        return True, "interval"
    if l1_sq**n * coef * PI_LOWER**a > rhs:
        return False, "interval"
    return False, "undecided"


def bounds_report(lattice: LatticeBasis, *, budget: int = DEFAULT_BUDGET) -> BoundReport:
    """Evaluate the lower/upper bounds on the minima of a full-rank lattice.

    Checks, each read as ``lhs <= rhs``:

    * ``theorem1_gso_lower``: ``min |t_i| <= lambda_1``
    * ``corollary2_first_minkowski``: ``lambda_1 <= sqrt(n) det^(1/n)``
    * ``corollary3_linf``: ``lambda_1^inf <= det^(1/n)``
    * ``corollary4_ball_volume``: ``lambda_1 <= 2 (det / v_n)^(1/n)``
    * ``theorem4_lower``: ``sqrt(n) det^(1/n) / n^(1/n) <= (prod lambda_i)^(1/n)``
    * ``theorem4_upper``: ``(prod lambda_i)^(1/n) <= sqrt(n) det^(1/n)``
    * ``theorem4_lower_factorial``: the lower side with ``(n!)^(1/n)`` in
      place of ``n^(1/n)``
    """
    if not lattice.is_complete:
        raise NotFullRank("bounds need a full-rank lattice")
    n = lattice.rank
    if n > MAX_BOUNDS_DIM:
        raise DimensionTooLarge(f"bounds limited to dimension {MAX_BOUNDS_DIM}")
    det_sq = determinant_squared(lattice)
    det = math.sqrt(det_sq)
    gmin = gso_min_norm_sq(lattice)
    minima = successive_minima(lattice, budget=budget)
    l1_sq = minima.lambda_sq[0]
    linf_sq = shortest_vector(lattice, "linf", budget=budget).lambda1_sq
    prod_sq = math.prod(minima.lambda_sq)
    geo_mean = math.exp(math.fsum(math.log(v) for v in minima.lambda_sq) / (2 * n))
    root_n_det = math.sqrt(n) * det ** (1 / n)
    ball_ok, ball_precision = _ball_bound_holds(l1_sq, n, det_sq)

    checks = (
        BoundCheck("theorem1_gso_lower", math.sqrt(gmin), math.sqrt(l1_sq), gmin <= l1_sq),
        BoundCheck("corollary2_first_minkowski", math.sqrt(l1_sq), root_n_det,
                   l1_sq**n <= n**n * det_sq),
        BoundCheck("corollary3_linf", math.sqrt(linf_sq), det ** (1 / n), linf_sq**n <= det_sq),
        BoundCheck("corollary4_ball_volume", math.sqrt(l1_sq), 2 * (det / ball_volume(n)) ** (1 / n),
                   ball_ok, ball_precision),
        BoundCheck("theorem4_lower", root_n_det / n ** (1 / n), geo_mean,
                   n**n * det_sq <= n * n * prod_sq),
        BoundCheck("theorem4_upper", geo_mean, root_n_det, prod_sq <= n**n * det_sq),
        BoundCheck("theorem4_lower_factorial", root_n_det / math.factorial(n) ** (1 / n), geo_mean,
                   n**n * det_sq <= math.factorial(n) ** 2 * prod_sq),
    )
    return BoundReport(n, det_sq, gmin, minima, linf_sq, checks)
