"""The basepoint q-form from Howe operators: values, closed form,
closedness, invariance."""

from fractions import Fraction

import pytest

from thomform.km import (
    exterior_derivative,
    hermite,
    km_closed_form,
    km_form_at_e,
    lie_derivative,
)
from thomform.liealg import LieElement, SignatureCtx
from thomform.scalars import Poly, PolyGauss, Scalar
from thomform.superforms import SuperForm

SIGS = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3), (3, 2), (2, 3), (4, 2)]


class TestHermite:
    def test_first_three(self):
        x = Poly.var(1, 1)
        assert hermite(0) == Poly.one(1)
        assert hermite(1) == x * Scalar.rational(2)
        assert hermite(2) == x * x * Scalar.rational(4) - Poly.const(
            1, Scalar.rational(2)
        )

    @pytest.mark.parametrize("n", range(2, 11))
    def test_three_term_recurrence(self, n):
        # H_{n+1} = 2x H_n - 2n H_{n-1}
        x2 = Poly.var(1, 1) * Scalar.rational(2)
        assert hermite(n + 1) == x2 * hermite(n) - hermite(n - 1) * Scalar.rational(
            2 * n
        )


class TestValueExamples:
    def test_signature_1_1(self):
        ctx = SignatureCtx(1, 1)
        expected = SuperForm(
            ctx,
            {
                (((1, 2),), ()): PolyGauss.gaussian(
                    [Fraction(1), Fraction(1)], Poly.var(2, 1)
                )
            },
        )
        assert km_form_at_e(ctx) == expected

    def test_signature_1_2_value_at_zero(self):
        ctx = SignatureCtx(1, 2)
        form = km_form_at_e(ctx)
        coeff = form.terms[(((1, 2), (1, 3)), ())]
        # at v = 0 only the constant survives: -1/(4 pi)
        const = Scalar.zero()
        for g, poly in coeff.parts.items():
            zero_mono = tuple([0] * 3)
            if zero_mono in poly.terms:
                const = const + poly.terms[zero_mono]
        assert const == Scalar.term(Fraction(-1, 4), epi=-2)

    def test_bidegree(self):
        for p, q in SIGS[:5]:
            ctx = SignatureCtx(p, q)
            assert km_form_at_e(ctx).bidegrees() == {(q, 0)}


class TestClosedForm:
    @pytest.mark.parametrize("p,q", SIGS)
    def test_howe_equals_hermite_expansion(self, p, q):
        ctx = SignatureCtx(p, q)
        assert km_form_at_e(ctx) == km_closed_form(ctx)


class TestClosedness:
    @pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
    def test_d_vanishes(self, p, q):
        ctx = SignatureCtx(p, q)
        assert exterior_derivative(ctx, km_form_at_e(ctx)).is_zero()

    def test_d_not_identically_zero(self):
        # sanity: d detects a non-closed form
        ctx = SignatureCtx(1, 1)
        a = SuperForm(
            ctx, {((), ()): PolyGauss.gaussian([Fraction(1), Fraction(1)])}
        )
        assert not exterior_derivative(ctx, a).is_zero()


class TestInvariance:
    @pytest.mark.parametrize("p,q", [(2, 1), (1, 2), (2, 2), (3, 2)])
    def test_k_basis_annihilates(self, p, q):
        ctx = SignatureCtx(p, q)
        phi = km_form_at_e(ctx)
        for pair in ctx.k_pairs():
            assert lie_derivative(LieElement.basis(ctx, *pair), phi).is_zero()

    def test_nonzero_on_noninvariant_form(self):
        ctx = SignatureCtx(2, 1)
        a = SuperForm(
            ctx,
            {((), ()): PolyGauss.gaussian([Fraction(1)] * 3, Poly.var(3, 1))},
        )
        assert not lie_derivative(LieElement.basis(ctx, 1, 2), a).is_zero()
