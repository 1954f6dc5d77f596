import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import brute_below, brute_minimum, corpus, oracle_radius, random_basis
from geonum.core import make_lattice
from geonum.errors import BudgetExceeded, DimensionTooLarge, NotFullRank
from geonum.minima import bounds_report, enumerate_below, shortest_vector, successive_minima

ID2 = make_lattice([[1, 0], [0, 1]])
SKEW = make_lattice([[2, 0], [1, 2]])


def identity(n):
    return make_lattice([[int(i == j) for j in range(n)] for i in range(n)])


class TestEnumerate:
    def test_skew_example(self):
        assert set(enumerate_below(SKEW, 5)) == {(1, 0), (0, 1), (1, -1)}

    def test_sorted_by_norm_then_coefficients(self):
        out = enumerate_below(SKEW, 5)
        keys = [(SKEW.norm_sq(x), x) for x in out]
        assert keys == sorted(keys)

    def test_linf_identity(self):
        assert set(enumerate_below(ID2, 1, "linf")) == {(1, 0), (0, 1), (1, 1), (1, -1)}

    def test_boundary_included(self):
        assert (1, 0) in enumerate_below(ID2, 1)
        assert enumerate_below(ID2, F(99, 100)) == []

    def test_sign_canonical(self):
        for x in enumerate_below(identity(3), 3):
            first = next(v for v in x if v)
            assert first > 0

    def test_rational_and_partial_rank(self):
        lat = make_lattice([["1/2", 0, 0], [0, 1, 1]])
        assert set(enumerate_below(lat, F(1, 4))) == {(1, 0)}
        assert set(enumerate_below(lat, 2)) == {(1, 0), (2, 0), (0, 1)}
        assert set(enumerate_below(lat, F(9, 4))) == {(1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (1, -1)}

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_below(identity(4), 40, budget=50)

    def test_matches_brute_force(self):
        rng = random.Random(21)
        for _ in range(60):
            lat = random_basis(rng, rng.randint(2, 4), -5, 5)
            for norm in ("l2", "linf"):
                r = oracle_radius(lat, norm)
                assert set(enumerate_below(lat, r, norm)) == brute_below(lat, r, norm)

    @settings(max_examples=40, deadline=None)
    @given(rows=st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3),
           r=st.integers(1, 60))
    def test_matches_brute_force_hypothesis(self, rows, r):
        try:
            lat = make_lattice(rows)
        except ValueError:
            return
        assert set(enumerate_below(lat, r)) == brute_below(lat, r)


class TestShortest:
    def test_identity(self):
        sv = shortest_vector(ID2)
        assert sv.lambda1_sq == 1 and sv.coefficients == (0, 1)

    def test_two_squares_lattice(self):
        sv = shortest_vector(make_lattice([[1, 5], [0, 13]]))
        assert sv.lambda1_sq == 13
        assert sorted(abs(int(v)) for v in sv.vector) == [2, 3]

    def test_linf(self):
        sv = shortest_vector(make_lattice([[3, 1], [1, 3]]), "linf")
        assert sv.lambda1_sq == 4 and sv.norm == "linf"

    def test_against_brute_force(self):
        for lat in corpus()[:150]:
            if lat.rank > 4:
                continue
            assert shortest_vector(lat).lambda1_sq == brute_minimum(lat)
            assert shortest_vector(lat, "linf").lambda1_sq == brute_minimum(lat, "linf")

    def test_norm_relation(self):
        for lat in corpus()[:100]:
            l2 = shortest_vector(lat).lambda1_sq
            linf = shortest_vector(lat, "linf").lambda1_sq
            assert linf <= l2 <= lat.rank * linf


class TestSuccessiveMinima:
    def test_skew(self):
        rep = successive_minima(SKEW)
        assert rep.lambda_sq == (4, 5)

    def test_identity(self):
        assert successive_minima(identity(4)).lambda_sq == (1, 1, 1, 1)

    def test_dense_short_vectors_not_a_basis(self):
        # the minima are realized by vectors that do not form a basis
        rows = [[2, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 0, 2, 0], [1, 1, 1, 1, 1]]
        rep = successive_minima(make_lattice(rows))
        assert rep.lambda_sq == (4, 4, 4, 4, 4)

    def test_witnesses_are_independent_and_realize_minima(self):
        from sympy import Matrix

        for lat in corpus()[:80]:
            rep = successive_minima(lat)
            assert Matrix(rep.witnesses).rank() == lat.rank
            assert all(lat.norm_sq(w) == v for w, v in zip(rep.witnesses, rep.lambda_sq))
            assert list(rep.lambda_sq) == sorted(rep.lambda_sq)

    def test_against_brute_force(self):
        # lambda_k is the least r such that vectors of norm <= r span k dimensions
        from sympy import Matrix

        rng = random.Random(8)
        checked = 0
        while checked < 60:
            lat = random_basis(rng, rng.randint(2, 4), -4, 4)
            rep = successive_minima(lat)
            try:
                vecs = sorted(brute_below(lat, rep.lambda_sq[-1]), key=lat.norm_sq)
            except ValueError:
                continue  # box too large for the naive scan
            checked += 1
            for k, lam in enumerate(rep.lambda_sq, 1):
                below = [v for v in vecs if lat.norm_sq(v) < lam]
                at = [v for v in vecs if lat.norm_sq(v) <= lam]
                assert (Matrix(below).rank() if below else 0) < k
                assert Matrix(at).rank() >= k


class TestBounds:
    def test_identity(self):
        rep = bounds_report(ID2)
        assert rep.all_hold
        assert rep["corollary3_linf"].lhs == pytest.approx(rep["corollary3_linf"].rhs)

    def test_skew(self):
        rep = bounds_report(SKEW)
        assert rep.all_hold and rep.det_sq == 16 and rep.gso_min_sq == 4
        assert rep["corollary4_ball_volume"].precision == "interval"

    def test_identity_linf_equality(self):
        for n in range(2, 6):
            rep = bounds_report(identity(n))
            assert rep.linf_lambda1_sq == 1 and rep["corollary3_linf"].holds

    def test_floats_agree_with_verdicts(self):
        for lat in corpus()[:100]:
            for c in bounds_report(lat).checks:
                if abs(c.lhs - c.rhs) > 1e-9 * max(1.0, abs(c.rhs)):
                    assert c.holds == (c.lhs <= c.rhs), c.name

    def test_printed_second_theorem_lower_side(self):
        # the printed lower side n^(1/2 - 1/n) det^(1/n) exceeds what any lattice
        # can reach for n >= 3 (prod lambda_i <= gamma_n^(n/2) det)
        for lat in corpus()[:100]:
            rep = bounds_report(lat)
            assert rep["theorem4_lower"].holds == (lat.rank == 2)
            assert rep["theorem4_lower_factorial"].holds
            assert rep["theorem4_upper"].holds

    def test_guards(self):
        with pytest.raises(NotFullRank):
            bounds_report(make_lattice([[1, 0, 0], [0, 1, 0]]))
        with pytest.raises(DimensionTooLarge):
            bounds_report(identity(9))


def test_first_minimum_lies_in_hermite_bound():
    from geonum.packing import HERMITE_POW_TABLE
    from geonum.core import determinant_squared

    for lat in corpus()[:100]:
        n = lat.rank
        l1 = shortest_vector(lat).lambda1_sq
        assert l1**n <= HERMITE_POW_TABLE[n] * determinant_squared(lat)
        assert math.isfinite(float(l1))
