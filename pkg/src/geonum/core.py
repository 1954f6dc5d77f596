"""Lattice bases with exact rational entries.

A lattice is stored by its basis rows ``a_1 .. a_m`` in ``Q^n``. Everything in
this module is exact; the only floats produced are display shadows.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import NamedTuple, Sequence

from . import _linalg
from .errors import (
    DependentRows,
    DimensionTooLarge,
    NotFullRank,
    RaggedInput,
    ShapeMismatch,
)

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def to_fraction(value) -> Fraction:
    """Exact conversion; strings must look like ``7``, ``-3`` or ``p/q``."""
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.fullmatch(text):
            raise ValueError(f"not an integer or p/q rational: {value!r}")
        return Fraction(text)
    if isinstance(value, bool):
        raise TypeError("booleans are not lattice entries")
    return Fraction(value)


def _vec(values) -> tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


@dataclass(frozen=True)
class LatticeBasis:
    """``m`` linearly independent rows in ``Q^n`` generating a lattice."""

    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def ambient_dim(self) -> int:
        return len(self.vectors[0])

    @property
    def is_complete(self) -> bool:
        return self.rank == self.ambient_dim

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        return _linalg.gram(self.vectors)

    @cached_property
    def _int_gram(self) -> tuple[list[list[int]], int]:
        # integer Gram matrix and its scale: <u, v> = u^T G v / scale
        scale = _linalg.common_denominator(x for row in self.gram for x in row)
        g = [[int(x * scale) for x in row] for row in self.gram]
        return g, scale

    @cached_property
    def _inverse(self) -> list[list[Fraction]]:
        if not self.is_complete:
            raise NotFullRank("operation needs a full-rank lattice")
        return _linalg.inverse(self.vectors)

    def vector(self, coefficients: Sequence) -> tuple[Fraction, ...]:
        """The lattice (or real-span) point ``sum c_i a_i``."""
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coefficients, self.vectors):
            if c:
                out = [o + c * x for o, x in zip(out, row)]
        return tuple(out)

    def norm_sq(self, coefficients: Sequence[int]) -> Fraction:
        """Exact squared length of ``sum c_i a_i`` for integer ``c``."""
        g, scale = self._int_gram
        total = 0
        for i, ci in enumerate(coefficients):
            if ci:
                row = g[i]
                total += ci * sum(row[j] * cj for j, cj in enumerate(coefficients) if cj)
        return Fraction(total, scale)

    def coordinates(self, x: Sequence) -> tuple[Fraction, ...]:
        """Basis coordinates ``c`` with ``x = sum c_i a_i`` (full rank only)."""
        x = _vec(x)
        if len(x) != self.ambient_dim:
            raise ShapeMismatch(f"point has length {len(x)}, expected {self.ambient_dim}")
        inv = self._inverse
        return tuple(sum(xi * inv[i][j] for i, xi in enumerate(x)) for j in range(self.rank))

    def transform(self, u: Sequence[Sequence[int]]) -> LatticeBasis:
        """Basis whose rows are ``U @ A``."""
        return make_lattice(_linalg.matmul([list(r) for r in u], self.vectors))

    def scaled(self, factor) -> LatticeBasis:
        f = to_fraction(factor)
        return make_lattice([[f * x for x in row] for row in self.vectors])

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.vectors]


def make_lattice(rows: Sequence[Sequence]) -> LatticeBasis:
    """Validate ``rows`` and return a :class:`LatticeBasis`.

    >>> make_lattice([[1, 0], [0, 1]]).is_complete
    True
    """
    rows = [_vec(r) for r in rows]
    if not rows:
        raise RaggedInput("a basis needs at least one row")
    n = len(rows[0])
    if n == 0 or any(len(r) != n for r in rows):
        raise RaggedInput("basis rows must share one nonzero length")
    if len(rows) > n:
        raise DependentRows(f"{len(rows)} rows cannot be independent in dimension {n}")
    basis = LatticeBasis(tuple(rows))
    if _linalg.det(basis.gram) == 0:
        raise DependentRows("basis rows are linearly dependent")
    return basis


def determinant_squared(lattice: LatticeBasis) -> Fraction:
    """``det(A A^T)`` for row basis ``A``; the lattice volume is its root."""
    return _linalg.det(lattice.gram)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Rational square root of ``q`` when it exists."""
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class Determinant(NamedTuple):
    squared: Fraction
    exact: Fraction | None
    approx: float


def lattice_determinant(lattice: LatticeBasis) -> Determinant:
    sq = determinant_squared(lattice)
    return Determinant(sq, exact_sqrt(sq), math.sqrt(sq))


@dataclass(frozen=True)
class UnimodularWitness:
    """Integer ``U`` with ``det U = +-1``; row ``i`` of ``U`` writes ``b_i`` in terms of ``A``."""

    matrix: tuple[tuple[int, ...], ...]

    @property
    def det(self) -> int:
        return int(_linalg.det(self.matrix))


class Equivalence(NamedTuple):
    same: bool
    witness: UnimodularWitness | None


def same_lattice(a: LatticeBasis, b: LatticeBasis) -> Equivalence:
    """Decide whether ``a`` and ``b`` generate the same lattice.

    When they do, the witness satisfies ``B = U @ A`` (rows as basis vectors).
    """
    if a.rank != b.rank or a.ambient_dim != b.ambient_dim:
        raise ShapeMismatch("bases differ in rank or ambient dimension")
    # coefficients of b's rows in the span of a: C = B A^T (A A^T)^{-1}
    ginv = _linalg.inverse(a.gram)
    bat = [[_linalg.dot(bv, av) for av in a.vectors] for bv in b.vectors]
    coeffs = _linalg.matmul(bat, ginv)
    if [list(r) for r in b.vectors] != _linalg.matmul(coeffs, a.vectors):
        return Equivalence(False, None)  # spans differ
    if not _linalg.is_integral(coeffs):
        return Equivalence(False, None)
    u = tuple(tuple(int(x) for x in row) for row in coeffs)
    if abs(_linalg.det(u)) != 1:
        return Equivalence(False, None)
    return Equivalence(True, UnimodularWitness(u))


@dataclass(frozen=True)
class MeshPoint:
    """A point split as ``sum (offset_i + reduced_i) a_i`` with ``reduced`` in ``[0, 1)``."""

    reduced: tuple[Fraction, ...]
    offset: tuple[int, ...]


def reduce_mod_mesh(x: Sequence, lattice: LatticeBasis) -> MeshPoint:
    if not lattice.is_complete:
        raise NotFullRank("fundamental mesh reduction needs a full-rank lattice")
    coords = lattice.coordinates(x)
    offset = tuple(math.floor(c) for c in coords)
    return MeshPoint(tuple(c - o for c, o in zip(coords, offset)), offset)


def blichfeldt_collision(points: Sequence[Sequence], lattice: LatticeBasis) -> tuple[int, int] | None:
    """First index pair ``(i, j)``, ``i < j``, whose difference is a lattice vector."""
    if not lattice.is_complete:
        raise NotFullRank("collision search needs a full-rank lattice")
    first_two: dict[tuple, list[int]] = {}
    for idx, p in enumerate(points):
        key = reduce_mod_mesh(p, lattice).reduced
        seen = first_two.setdefault(key, [])
        if len(seen) < 2:
            seen.append(idx)
    pairs = [tuple(v) for v in first_two.values() if len(v) == 2]
    return min(pairs) if pairs else None


@dataclass(frozen=True)
class PointCount:
    count: int
    ball_volume: float
    ratio: float


MAX_COUNT_DIM = 4


def point_count_ratio(lattice: LatticeBasis, radius, *, budget: int | None = None) -> PointCount:
    """Count lattice points in the closed ball of ``radius``; ``ratio`` tends to det."""
    from .minima import DEFAULT_BUDGET, enumerate_below
    from .packing import ball_volume

    if not lattice.is_complete:
        raise NotFullRank("point counting needs a full-rank lattice")
    if lattice.ambient_dim > MAX_COUNT_DIM:
        raise DimensionTooLarge(f"point counting limited to dimension {MAX_COUNT_DIM}")
    r = to_fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    pairs = enumerate_below(lattice, r * r, budget=budget or DEFAULT_BUDGET, sort=False)
    count = 2 * len(pairs) + 1
    vol = ball_volume(lattice.ambient_dim, float(r))
    return PointCount(count, vol, vol / count)


def parse_matrix(text: str) -> list[list[Fraction]]:
    """Parse the whitespace matrix format; ``#`` lines and blank lines are skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([to_fraction(tok) for tok in stripped.split()])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return rows


def read_matrix(path: str | Path) -> list[list[Fraction]]:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def format_matrix(rows) -> str:
    return "\n".join(" ".join(str(Fraction(x)) for x in row) for row in rows) + "\n"
