"""Shared corpus generators and brute-force oracles for the test suite.

The oracles deliberately avoid the library's tree search: they scan explicit
coefficient boxes whose size is certified by dual-basis norms.
"""
import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

from geonum import make_lattice
from geonum.errors import DependentRows

CORPUS_SEED = 20240611
CORPUS_SIZE = 500


def random_basis(rng, n, lo=-9, hi=9, m=None):
    m = n if m is None else m
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
        try:
            return make_lattice(rows)
        except DependentRows:
            continue


@lru_cache(maxsize=None)
def corpus(size=CORPUS_SIZE, seed=CORPUS_SEED, dims=(2, 6), lo=-9, hi=9):
    """Deterministic list of random full-rank integer lattices, dims cycled evenly."""
    rng = random.Random(seed)
    ds = list(range(dims[0], dims[1] + 1))
    return tuple(random_basis(rng, ds[i % len(ds)], lo, hi) for i in range(size))


def leibniz_det(matrix):
    """Determinant by the permutation expansion, independent of elimination."""
    n = len(matrix)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, p in enumerate(perm):
            term *= matrix[i][p]
        total += term
    return total


def int_gram(lattice):
    rows = np.array([[int(x) for x in r] for r in lattice.vectors], dtype=object)
    return rows.dot(rows.T)


def dual_coefficient_bounds(lattice, r_sq):
    """|x_k| <= sqrt(r_sq * (G^{-1})_kk) for any x with |Ax|^2 <= r_sq (Cauchy-Schwarz)."""
    from sympy import Matrix, Rational

    g = Matrix([[Rational(v.numerator, v.denominator) for v in row] for row in lattice.gram])
    ginv = g.inv()
    out = []
    for k in range(lattice.rank):
        q = Fraction(int(ginv[k, k].p), int(ginv[k, k].q)) * Fraction(r_sq)
        out.append(math.isqrt(math.floor(q)))
    return out


def sign_canonical(x):
    for v in x:
        if v:
            return tuple(x) if v > 0 else tuple(-t for t in x)
    return tuple(x)


MAX_BOX = 4 * 10**7


def brute_below(lattice, r_sq, norm="l2"):
    """Nonzero canonical coefficient vectors within r_sq, by a full box scan."""
    m = lattice.rank
    r = Fraction(r_sq)
    bounds = dual_coefficient_bounds(lattice, r * (lattice.ambient_dim if norm == "linf" else 1))
    if math.prod(2 * b + 1 for b in bounds) > MAX_BOX:
        raise ValueError(f"brute-force box {bounds} too large")
    den = lattice_denominator(lattice)
    a = np.array([[int(x * den) for x in row] for row in lattice.vectors], dtype=object)
    rest = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds[1:]]
    tail = (np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1).reshape(-1, m - 1)
            if m > 1 else np.zeros((1, 0), dtype=np.int64))
    limit = r * den * den
    out = set()
    for x0 in range(-bounds[0], bounds[0] + 1):
        grid = np.hstack([np.full((len(tail), 1), x0, dtype=np.int64), tail])
        if abs(int(a.max(initial=0))) < 10**6 and abs(int(a.min(initial=0))) < 10**6:
            pts = grid @ a.astype(np.int64)
        else:
            pts = grid.astype(object) @ a
        vals = (pts * pts).sum(axis=1) if norm == "l2" else (pts * pts).max(axis=1)
        mask = vals * limit.denominator <= limit.numerator
        for x in grid[mask]:
            if x.any():
                out.add(sign_canonical(tuple(int(t) for t in x)))
    return out


def lattice_denominator(lattice):
    den = 1
    for row in lattice.vectors:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return den


def brute_minimum(lattice, norm="l2"):
    """Exact squared minimum: scan growing radii until a nonzero vector appears."""
    m = lattice.rank
    unit = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    measure = (lattice.norm_sq if norm == "l2"
               else lambda x: max(v * v for v in lattice.vector(x)))
    cap = min(measure(u) for u in unit)
    r = min(Fraction(1), cap)
    while True:
        found = brute_below(lattice, r, norm)
        if found:
            return min(measure(x) for x in found)
        r = min(2 * r, cap)


def oracle_radius(lattice, norm="l2", max_box=2 * 10**6, factor=1):
    """``factor`` times the shortest basis norm, halved until the scan box is small."""
    m = lattice.rank
    unit = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    if norm == "l2":
        r = min(lattice.norm_sq(u) for u in unit)
    else:
        r = min(max(v * v for v in lattice.vector(u)) for u in unit)
    r *= factor
    scale = lattice.ambient_dim if norm == "linf" else 1
    while math.prod(2 * b + 1 for b in dual_coefficient_bounds(lattice, r * scale)) > max_box:
        r = r / 2
    return r
