"""Exact scalar ring, polynomials, and Gaussian-weighted polynomials."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from thomform.scalars import (
    NotRepresentable,
    Poly,
    PolyGauss,
    Scalar,
    gauss_moment,
    howe_shift,
    parse_polygauss,
    sqrt_in_ring,
)

fractions = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=8
)

scalars = st.dictionaries(
    st.tuples(st.integers(0, 1), st.integers(-4, 4)),
    fractions,
    max_size=4,
).map(Scalar)


class TestScalarRing:
    def test_sqrt2_squares_to_two(self):
        assert Scalar.sqrt2() * Scalar.sqrt2() == Scalar.rational(2)

    def test_sqrt_pi_squares_to_pi(self):
        assert Scalar.sqrt_pi() * Scalar.sqrt_pi() == Scalar.pi()
        assert Scalar.pi() != Scalar.rational(3)  # pi is never folded

    def test_float_value(self):
        s = Scalar.term(Fraction(3, 2), e2=1, epi=-2)
        assert math.isclose(float(s), 1.5 * math.sqrt(2) / math.pi)

    @given(scalars, scalars, scalars)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + Scalar.zero() == a
        assert a * Scalar.one() == a
        assert a - a == Scalar.zero()

    @given(scalars, scalars)
    def test_float_is_a_homomorphism(self, a, b):
        assert math.isclose(
            float(a * b), float(a) * float(b), rel_tol=1e-9, abs_tol=1e-9
        )

    @given(scalars)
    def test_str_parse_round_trip(self, a):
        assert Scalar.parse(str(a)) == a

    def test_power(self):
        s = Scalar.term(Fraction(1, 2), e2=1)
        assert s ** 4 == Scalar.rational(Fraction(4, 16))


polys = st.builds(
    lambda terms: Poly(2, terms),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)), scalars, max_size=3
    ),
)


class TestPoly:
    @given(polys, polys)
    def test_derivative_is_linear(self, a, b):
        assert (a + b).derive(1) == a.derive(1) + b.derive(1)

    @given(polys, polys)
    def test_leibniz(self, a, b):
        assert (a * b).derive(1) == a.derive(1) * b + a * b.derive(1)

    @given(polys)
    def test_partials_commute(self, a):
        assert a.derive(1).derive(2) == a.derive(2).derive(1)

    def test_eval(self):
        p = Poly.var(2, 1) * Poly.var(2, 2) + Poly.one(2)
        assert math.isclose(p.eval([2.0, 3.0]), 7.0)


class TestPolyGauss:
    def test_gaussian_derivative(self):
        g = PolyGauss.gaussian([Fraction(1), Fraction(1)])
        d = g.derive(1)
        expected = g * PolyGauss.from_poly(
            Poly.var(2, 1) * Scalar.term(Fraction(-2), epi=2)
        )
        assert d == expected

    def test_leibniz_with_gaussian(self):
        g = PolyGauss.gaussian([Fraction(2)])
        x = PolyGauss.from_poly(Poly.var(1, 1))
        assert (g * x).derive(1) == g.derive(1) * x + g * x.derive(1)

    def test_str_parse_round_trip(self):
        g = PolyGauss.gaussian(
            [Fraction(1), Fraction(2)],
            Poly.var(2, 1) * Scalar.sqrt2() + Poly.one(2),
        )
        assert parse_polygauss(str(g), 2) == g

    def test_map_vars(self):
        g = PolyGauss.gaussian([Fraction(1)], Poly.var(1, 1))
        h = g.map_vars({1: 3}, 3)
        assert math.isclose(h.eval([9.0, 9.0, 0.5]), g.eval([0.5]))


class TestGaussMoment:
    @pytest.mark.parametrize("c", [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(8)])
    @pytest.mark.parametrize("n", range(0, 9))
    def test_matches_quadrature(self, n, c):
        exact = float(gauss_moment(n, c))
        num, _ = quad(
            lambda x: x ** n * math.exp(-float(c) * math.pi * x * x),
            -math.inf,
            math.inf,
        )
        assert abs(exact - num) <= 1e-12 * max(1.0, abs(num))

    def test_odd_moments_vanish(self):
        assert gauss_moment(3, Fraction(2)) == Scalar.zero()

    def test_normalization_examples(self):
        assert gauss_moment(0, Fraction(1)) == Scalar.one()
        assert gauss_moment(0, Fraction(2)) == Scalar.term(
            Fraction(1, 2), e2=1
        )  # 2^{-1/2}

    def test_unrepresentable_exponent(self):
        with pytest.raises(NotRepresentable):
            gauss_moment(0, Fraction(3))
        with pytest.raises(NotRepresentable):
            gauss_moment(2, Fraction(-1))

    def test_sqrt_in_ring(self):
        assert sqrt_in_ring(Fraction(9, 4)) == Scalar.rational(Fraction(3, 2))
        assert sqrt_in_ring(Fraction(2)) == Scalar.sqrt2()
        with pytest.raises(NotRepresentable):
            sqrt_in_ring(Fraction(5))


class TestHoweShift:
    def test_single_application(self):
        g = PolyGauss.gaussian([Fraction(1)])
        out = howe_shift(g, 1)
        expected = g * PolyGauss.from_poly(Poly.var(1, 1) * Scalar.rational(2))
        assert out == expected

    @settings(max_examples=20)
    @given(st.integers(1, 10))
    def test_matches_scaled_hermite(self, n):
        from thomform.km import hermite_scaled

        g = PolyGauss.gaussian([Fraction(1)])
        lhs = g
        for _ in range(n):
            lhs = howe_shift(lhs, 1)
        rhs = (
            PolyGauss.from_poly(hermite_scaled(n, 1, 1))
            * g
            * Scalar.term(Fraction(1), e2=-n, epi=-n)
        )
        assert lhs == rhs
