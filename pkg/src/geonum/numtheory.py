"""Sums of squares and Diophantine approximation via lattice arguments.

The two- and four-square decompositions build the lattices from the classical
Minkowski proofs and read the answer off a short lattice vector.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _tree
from .core import determinant_squared, make_lattice, to_fraction
from .errors import NotApplicable, NotPrime
from .minima import DEFAULT_BUDGET, shortest_vector

MAX_FACTOR_INPUT = 10**8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def sqrt_minus_one_mod_p(p: int) -> int:
    """Smallest ``q`` in ``(0, p)`` with ``q^2 = -1 (mod p)``, for primes ``p = 1 (mod 4)``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p % 4 != 1:
        raise NotApplicable(f"-1 is not a square modulo {p}")
    for g in range(2, p):
        if pow(g, (p - 1) // 2, p) == p - 1:  # g is a non-residue
            q = pow(g, (p - 1) // 4, p)
            return min(q, p - q)
    raise AssertionError("unreachable: every odd prime has a non-residue")


@dataclass(frozen=True)
class TwoSquares:
    p: int
    a: int
    b: int
    lattice_det_sq: Fraction | None = None
    lattice_lambda1_sq: Fraction | None = None


def two_squares(p: int, *, budget: int = DEFAULT_BUDGET) -> TwoSquares:
    """``p = a^2 + b^2`` (``0 <= a <= b``) for ``p = 2`` or a prime ``p = 1 (mod 4)``.

    The shortest vector of the lattice spanned by ``(1, q)`` and ``(0, p)``,
    with ``q^2 = -1 (mod p)``, has squared length exactly ``p``.
    """
    if p == 2:
        return TwoSquares(2, 1, 1)
    q = sqrt_minus_one_mod_p(p)
    lattice = make_lattice([[1, q], [0, p]])
    det_sq = determinant_squared(lattice)
    sv = shortest_vector(lattice, budget=budget)
    if det_sq != p * p or sv.lambda1_sq != p:
        raise ArithmeticError(f"two-squares lattice for p={p} broke its invariants")
    a, b = sorted(abs(int(v)) for v in sv.vector)
    return TwoSquares(p, a, b, det_sq, sv.lambda1_sq)


@dataclass(frozen=True)
class Approximant:
    alpha: Fraction
    Q: int
    p: int
    q: int

    @property
    def error(self) -> Fraction:
        return abs(self.alpha - Fraction(self.p, self.q))


def _nearest_int(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def dirichlet_approx(alpha, Q: int) -> Approximant:
    """``p/q`` with ``0 < q <= Q`` minimizing ``|q alpha - p|``; ties go to the smaller ``q``."""
    if Q < 1:
        raise ValueError("Q must be a positive integer")
    alpha = to_fraction(alpha)
    best = None
    for q in range(1, Q + 1):
        p = _nearest_int(q * alpha)
        err = abs(q * alpha - p)
        if best is None or err < best[0]:
            best = (err, p, q)
    _, p, q = best
    return Approximant(alpha, Q, p, q)


def euler_four_square_product(a, b) -> tuple[int, int, int, int]:
    """Four integers whose squares sum to ``(sum a_i^2)(sum b_i^2)``."""
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return (
        a1 * b1 + a2 * b2 + a3 * b3 + a4 * b4,
        a1 * b2 - a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 - a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 - a4 * b1,
    )


def residue_sets(p: int) -> tuple[dict[int, int], dict[int, int]]:
    """``{y^2 mod p: y}`` and ``{-z^2 - 1 mod p: z}`` for ``0 <= y, z <= (p-1)/2``."""
    half = (p - 1) // 2
    s1 = {y * y % p: y for y in range(half + 1)}
    s2 = {(-z * z - 1) % p: z for z in range(half + 1)}
    return s1, s2


def _sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, e = p - 1, 0
    while q % 2 == 0:
        q, e = q // 2, e + 1
    g = next(g for g in range(2, p) if pow(g, (p - 1) // 2, p) == p - 1)
    c, r, t = pow(g, q, p), pow(a, (q + 1) // 2, p), pow(a, q, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2, i = t2 * t2 % p, i + 1
        b = pow(c, 1 << (e - i - 1), p)
        r, c, t, e = r * b % p, b * b % p, t * b * b % p, i
    return r


def yz_witness(p: int) -> tuple[int, int]:
    """``(y, z)`` with ``y^2 + z^2 + 1 = 0 (mod p)`` and ``0 <= y, z <= (p-1)/2``.

    This is the first element of ``S1 & S2`` (see :func:`residue_sets`) taken
    in order of the smallest positive ``y``, with ``y = 0`` as the fallback.
    Each residue in ``S2`` has one root ``z`` in range, so scanning ``y`` and
    taking a modular square root finds the same pair without building the sets.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1, 0
    half = (p - 1) // 2
    for y in itertools.chain(range(1, half + 1), [0]):
        z = _sqrt_mod(-1 - y * y, p)
        if z is not None:
            return y, min(z, p - z)
    raise AssertionError("unreachable: both residue sets have (p+1)/2 elements")


@dataclass(frozen=True)
class FourSquares:
    x: int
    parts: tuple[int, int, int, int]
    lattice_vector: tuple[int, ...] | None = None  # set on the prime path


def four_square_lattice_rows(p: int, y: int, z: int) -> list[list[int]]:
    """Rows are the columns of ``[[p,0,y,z],[0,p,z,-y],[0,0,1,0],[0,0,0,1]]``."""
    return [[p, 0, 0, 0], [0, p, 0, 0], [y, z, 1, 0], [z, -y, 0, 1]]


@lru_cache(maxsize=None)
def _prime_four_squares(p: int, budget: int) -> FourSquares:
    y, z = yz_witness(p)
    lattice = make_lattice(four_square_lattice_rows(p, y, z))
    limit = 2 * p
    found: list = []

    def visit(x, _approx):
        v = lattice.norm_sq(x)
        if 0 < v < limit and v % p == 0:
            found.append(x)
            raise _tree.StopSearch

    _tree.search(lattice, limit, visit, symmetric=True, budget=budget)
    if not found:
        raise ArithmeticError(f"no lattice vector below 2p for p={p}")
    vec = tuple(int(t) for t in lattice.vector(found[0]))
    parts = tuple(sorted((abs(t) for t in vec), reverse=True))
    return FourSquares(p, parts, vec)


def four_squares(x: int, *, budget: int = DEFAULT_BUDGET) -> FourSquares:
    """Lagrange decomposition of ``x >= 1``; parts in nonincreasing order.

    Primes go through the lattice construction; composites are split into
    prime factors and recombined with the four-square product identity.
    """
    if x < 1:
        raise ValueError("x must be a positive integer")
    if x > MAX_FACTOR_INPUT:
        raise NotApplicable(f"inputs above {MAX_FACTOR_INPUT} are outside the supported range")
    if x == 1:
        return FourSquares(1, (1, 0, 0, 0))
    if x == 2:
        return FourSquares(2, (1, 1, 0, 0))
    if is_prime(x):
        return _prime_four_squares(x, budget)
    square_part = 1
    acc = (1, 0, 0, 0)
    for p, e in factorize(x).items():
        square_part *= p ** (e // 2)
        if e % 2:
            acc = euler_four_square_product(acc, four_squares(p, budget=budget).parts)
    parts = tuple(sorted((abs(t) * square_part for t in acc), reverse=True))
    return FourSquares(x, parts)
