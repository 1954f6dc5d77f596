"""Depth-first coefficient-tree search (Fincke-Pohst style) over a GSO profile.

Pruning runs in floating point with a generous relative slack so the visited
set is a superset of the exact answer; every caller re-checks candidates with
exact rational norms. The search walks from the last basis vector to the
first, visiting each level's integers in order of distance from the center.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

from .core import LatticeBasis
from .errors import BudgetExceeded
from .gso import gram_schmidt

_REL_SLACK = 1e-7
_ABS_SLACK = 1e-12


class StopSearch(Exception):
    """Raised by a visitor to end the search early."""


def search(
    lattice: LatticeBasis,
    r_sq: float,
    visit: Callable[[tuple[int, ...], float], float | None],
    *,
    shift: Sequence[float] | None = None,
    symmetric: bool = False,
    budget: int = 10**8,
) -> int:
    """Call ``visit(x, approx_norm_sq)`` for integer ``x`` with ``|A(x + shift)|^2 <~ r_sq``.

    ``visit`` may return a smaller radius to shrink the search. With
    ``symmetric`` (zero shift only) the zero vector is skipped and only one of
    ``+-x`` is produced. Returns the number of tree nodes visited.
    """
    data = gram_schmidt(lattice)
    m = lattice.rank
    b = [float(v) for v in data.tilde_norms_sq]
    mu = [[float(v) for v in row] for row in data.mu]
    s = [0.0] * m if shift is None else [float(v) for v in shift]
    x = [0] * m
    state = {"r": float(r_sq), "nodes": 0}

    def bound() -> float:
        r = state["r"]
        return r + r * _REL_SLACK + _ABS_SLACK

    def level(k: int, partial: float, zero_above: bool) -> None:
        c = -s[k]
        for i in range(k + 1, m):
            c -= mu[i][k] * (x[i] + s[i])
        rem = bound() - partial
        if rem < 0:
            return
        w = math.sqrt(rem / b[k])
        lo, hi = math.ceil(c - w), math.floor(c + w)
        if zero_above:
            lo = max(lo, 1 if k == 0 else 0)
        if lo > hi:
            return
        for t in sorted(range(lo, hi + 1), key=lambda t: abs(t - c)):
            d = t - c
            p = partial + b[k] * d * d
            if p > bound():
                break
            state["nodes"] += 1
            if state["nodes"] > budget:
                raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
            x[k] = t
            if k == 0:
                new_r = visit(tuple(x), p)
                if new_r is not None and new_r < state["r"]:
                    state["r"] = new_r
            else:
                level(k - 1, p, zero_above and t == 0)
        x[k] = 0

    try:
        level(m - 1, 0.0, symmetric)
    except StopSearch:
        pass
    return state["nodes"]


def canonical_sign(x: Sequence[int]) -> tuple[int, ...]:
    """Flip ``x`` so its first nonzero entry is positive."""
    for v in x:
        if v:
            return tuple(x) if v > 0 else tuple(-t for t in x)
    return tuple(x)
