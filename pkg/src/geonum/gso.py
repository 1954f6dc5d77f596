"""Exact Gram-Schmidt orthogonalization of an ordered basis."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .core import LatticeBasis


@dataclass(frozen=True)
class GramSchmidtData:
    """Orthogonal vectors ``tilde_vectors`` and the unit lower-triangular ``mu``.

    ``a_i = tilde_i + sum_{j<i} mu[i][j] * tilde_j`` holds exactly.
    """

    tilde_vectors: tuple[tuple[Fraction, ...], ...]
    mu: tuple[tuple[Fraction, ...], ...]
    tilde_norms_sq: tuple[Fraction, ...]


@lru_cache(maxsize=1024)
def gram_schmidt(lattice: LatticeBasis) -> GramSchmidtData:
    # Works from the Gram matrix so no square roots appear:
    # mu_ij = <a_i, t_j> / <t_j, t_j>, and <a_i, t_j> = G_ij - sum_{k<j} mu_jk <a_i, t_k>.
    g = lattice.gram
    m = lattice.rank
    mu = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    inner = [[Fraction(0)] * m for _ in range(m)]  # inner[i][j] = <a_i, t_j>
    norms = [Fraction(0)] * m
    for i in range(m):
        for j in range(i + 1):
            inner[i][j] = g[i][j] - sum(mu[j][k] * inner[i][k] for k in range(j))
            if j < i:
                mu[i][j] = inner[i][j] / norms[j]
        norms[i] = inner[i][i]
    tilde = []
    for i, a in enumerate(lattice.vectors):
        t = list(a)
        for j in range(i):
            if mu[i][j]:
                t = [x - mu[i][j] * y for x, y in zip(t, tilde[j])]
        tilde.append(tuple(t))
    return GramSchmidtData(tuple(tilde), tuple(tuple(r) for r in mu), tuple(norms))


@dataclass(frozen=True)
class SignedRoot:
    """The real number ``sign * sqrt(square)``, kept exact through its square."""

    sign: int
    square: Fraction

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.square)


def gso_triangular(lattice: LatticeBasis) -> list[list[SignedRoot]]:
    """``n x m`` matrix whose column ``i`` is ``a_i`` in the orthonormal GSO frame.

    Entry ``(j, i)`` is ``mu[i][j] * |t_j|`` for ``j < i``, ``|t_i|`` on the
    diagonal and zero below it (including rows ``m .. n-1``).
    """
    data = gram_schmidt(lattice)
    m, n = lattice.rank, lattice.ambient_dim
    zero = SignedRoot(0, Fraction(0))
    out = [[zero] * m for _ in range(n)]
    for i in range(m):
        out[i][i] = SignedRoot(1, data.tilde_norms_sq[i])
        for j in range(i):
            c = data.mu[i][j]
            if c:
                out[j][i] = SignedRoot(1 if c > 0 else -1, c * c * data.tilde_norms_sq[j])
    return out


def gso_min_norm_sq(lattice: LatticeBasis) -> Fraction:
    """``min |t_i|^2``, a certified lower bound on the squared shortest length."""
    return min(gram_schmidt(lattice).tilde_norms_sq)


def is_orthogonal(data: GramSchmidtData) -> bool:
    t = data.tilde_vectors
    return all(_linalg.dot(t[i], t[j]) == 0 for i in range(len(t)) for j in range(i))
