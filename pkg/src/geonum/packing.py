"""Ball volumes, Hermite constants, packing density and the Minkowski-Hlawka value."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import LatticeBasis, determinant_squared
from .errors import NotDefined, NotFullRank, OutOfTable

# 60-digit enclosure of pi, used where a verdict must not depend on rounding.
_PI_DIGITS = "3141592653589793238462643383279502884197169399375105820974944"
PI_LOWER = Fraction(int(_PI_DIGITS), 10 ** (len(_PI_DIGITS) - 1))
PI_UPPER = PI_LOWER + Fraction(1, 10 ** (len(_PI_DIGITS) - 1))

HERMITE_POW_TABLE = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}


def gamma_half(twice: int) -> tuple[Fraction, int]:
    """``Gamma(twice / 2)`` as ``(r, k)`` meaning ``r * sqrt(pi)**k``, ``k`` in {0, 1}."""
    if twice < 1:
        raise ValueError("argument must be a positive half-integer")
    if twice % 2 == 0:
        return Fraction(math.factorial(twice // 2 - 1)), 0
    r = Fraction(1)
    x = Fraction(1, 2)
    while 2 * x < twice:
        r *= x
        x += 1
    return r, 1


def _gamma_half_float(twice: int) -> float:
    r, k = gamma_half(twice)
    return float(r) * math.sqrt(math.pi) ** k


def ball_volume(d: int, radius: float = 1.0) -> float:
    """Volume of the Euclidean ``d``-ball of the given radius."""
    if d < 1:
        raise ValueError("dimension must be positive")
    if radius <= 0:
        raise ValueError("radius must be positive")
    return math.pi ** (d / 2) / _gamma_half_float(d + 2) * radius**d


def unit_ball_volume_sq(d: int) -> tuple[Fraction, int]:
    """``v_d**2`` as ``(c, a)`` meaning ``c * pi**a``, exactly."""
    r, k = gamma_half(d + 2)
    # v_d^2 = pi^d / (r^2 pi^k)
    return 1 / (r * r), d - k


def hermite_exact(n: int) -> Fraction:
    """Known value of ``gamma_n ** n`` for ``1 <= n <= 8``."""
    try:
        return HERMITE_POW_TABLE[n]
    except KeyError:
        raise OutOfTable(f"gamma_n^n is tabulated only for n = 1..8, got {n}") from None


@dataclass(frozen=True)
class HermiteBoundSet:
    n: int
    exact_gamma_n_pow_n: Fraction | None
    blichfeldt_upper: float
    kitaoka_upper: float
    asymptotic_lower: float  # informational: o(1) dropped
    asymptotic_upper: float  # informational: o(1) dropped
    approx: float

    @property
    def exact_gamma(self) -> float | None:
        if self.exact_gamma_n_pow_n is None:
            return None
        return float(self.exact_gamma_n_pow_n) ** (1 / self.n)


def hermite_bounds(n: int) -> HermiteBoundSet:
    if n < 1:
        raise ValueError("dimension must be positive")
    two_pi_e = 2 * math.pi * math.e
    return HermiteBoundSet(
        n=n,
        exact_gamma_n_pow_n=HERMITE_POW_TABLE.get(n),
        blichfeldt_upper=(2 / math.pi) * _gamma_half_float(n + 4) ** (2 / n),
        kitaoka_upper=(4 / 3) ** ((n - 1) / 2),
        asymptotic_lower=n / two_pi_e + math.log(math.pi * n) / two_pi_e,
        asymptotic_upper=1.744 * n / two_pi_e,
        approx=n / two_pi_e,
    )


def _lambda1_sq(lattice: LatticeBasis) -> Fraction:
    from .minima import shortest_vector

    return shortest_vector(lattice).lambda1_sq


def hermite_invariant_pow(lattice: LatticeBasis) -> Fraction:
    """``lambda_1^(2n) / det(A A^T)``: the Hermite invariant to the ``n``-th power, exact."""
    if not lattice.is_complete:
        raise NotFullRank("Hermite invariant needs a full-rank lattice")
    return _lambda1_sq(lattice) ** lattice.rank / determinant_squared(lattice)


def hermite_invariant(lattice: LatticeBasis) -> float:
    return float(hermite_invariant_pow(lattice)) ** (1 / lattice.rank)


def packing_density(lattice: LatticeBasis) -> float:
    """Volume of the ball of diameter ``lambda_1`` over the lattice volume."""
    n = lattice.rank
    # v_n (lambda_1/2)^n / det = v_n / 2^n * (lambda_1^(2n) / det^2)^(1/2)
    return ball_volume(n) / 2**n * math.sqrt(hermite_invariant_pow(lattice))


_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6)]


def zeta(s: int, tol: float = 1e-13) -> float:
    """Riemann zeta at an integer ``s >= 2``: partial sum plus Euler-Maclaurin tail.

    ``N`` grows until the first omitted correction term, which bounds the
    remainder, is below ``tol``.
    """
    if s < 2:
        raise NotDefined(f"zeta({s}) diverges")
    terms = len(_BERNOULLI) - 1
    n = 8
    while True:
        # first omitted term: |B_{2p+2}| / (2p+2)! * s(s+1)...(s+2p) * N^(-s-2p-1)
        p = terms
        rising = math.prod(range(s, s + 2 * p + 1))
        err = abs(float(_BERNOULLI[p])) / math.factorial(2 * p + 2) * rising * n ** (-s - 2 * p - 1)
        if err < tol:
            break
        n *= 2
    head = math.fsum(k ** (-s) for k in range(1, n))
    tail = [n ** (1 - s) / (s - 1), 0.5 * n ** (-s)]
    for j in range(1, terms + 1):
        rising = math.prod(range(s, s + 2 * j - 1))
        tail.append(float(_BERNOULLI[j - 1]) / math.factorial(2 * j) * rising * n ** (-s - 2 * j + 1))
    return math.fsum([head, *tail])


def minkowski_hlawka_bound(n: int) -> float:
    """Density ``zeta(n) / 2^(n-1)`` that some ``n``-dimensional lattice packing reaches."""
    if n < 2:
        raise NotDefined("the bound needs n >= 2 (zeta(1) diverges)")
    return zeta(n) / 2 ** (n - 1)
