"""Bigraded exterior algebra: wedge, Berezin integral, contraction,
and the even exponential."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thomform.liealg import SignatureCtx, eta
from thomform.scalars import Poly, PolyGauss, Scalar
from thomform.superforms import (
    FiberCtx,
    SuperForm,
    berezin,
    exp_even,
    merge_sorted,
    wedge,
)

CTX = FiberCtx(3)


def random_forms(ctx, max_terms=3):
    gens = st.lists(
        st.sampled_from(list(ctx.z0)), unique=True, max_size=ctx.q
    ).map(lambda xs: tuple(sorted(xs)))
    coeff = st.fractions(
        min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4
    ).map(lambda f: PolyGauss.const(ctx.nvars, Scalar.rational(f)))
    return st.dictionaries(st.tuples(gens, gens), coeff, max_size=max_terms).map(
        lambda terms: SuperForm(ctx, terms)
    )


class TestMergeSorted:
    def test_repeat_kills(self):
        assert merge_sorted((1,), (1,))[1] == 0

    def test_transposition_sign(self):
        merged, sign = merge_sorted((2,), (1,))
        assert merged == (1, 2) and sign == -1


class TestWedge:
    @settings(max_examples=50)
    @given(random_forms(CTX), random_forms(CTX), random_forms(CTX))
    def test_associative(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    @settings(max_examples=50)
    @given(random_forms(CTX), random_forms(CTX), random_forms(CTX))
    def test_bilinear(self, a, b, c):
        assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)

    def test_graded_commutativity(self):
        # total degrees 1 and 1 -> anticommute
        a = SuperForm.generator(CTX, 1)
        b = SuperForm.section(CTX, 2)
        assert wedge(a, b) == wedge(b, a).scale(Scalar.rational(-1))

    def test_koszul_sign_example(self):
        # (dx1 (x) e1) ^ (dx2 (x) e2) carries the (-1)^{|J_a||I_b|} sign
        one = PolyGauss.one(CTX.nvars)
        a = SuperForm(CTX, {((1,), (1,)): one})
        b = SuperForm(CTX, {((2,), (2,)): one})
        assert wedge(a, b) == SuperForm(CTX, {((1, 2), (1, 2)): -one})

    def test_odd_squares_vanish(self):
        a = SuperForm.generator(CTX, 1) + SuperForm.section(CTX, 2)
        assert wedge(a, a).is_zero()


class TestBerezin:
    def test_projects_top_component(self):
        one = PolyGauss.one(CTX.nvars)
        a = SuperForm(
            CTX,
            {((1,), (1, 2, 3)): one, ((2,), (1, 2)): one, ((), ()): one},
        )
        assert berezin(a) == SuperForm(CTX, {((1,), ()): one})

    def test_eta_squared_example(self):
        ctx = SignatureCtx(1, 2)
        e1 = eta(ctx, 1)
        sq = wedge(e1, e1)
        out = berezin(sq)
        expected = SuperForm(
            ctx,
            {((((1, 2)), ((1, 3))), ()): PolyGauss.const(3, Scalar.rational(-2))},
        )
        assert out == expected


class TestContract:
    def test_is_an_odd_derivation(self):
        ctx = FiberCtx(2)
        s = SuperForm(
            ctx,
            {
                ((), (i,)): PolyGauss.from_poly(Poly.var(2, i))
                for i in ctx.z0
            },
        )
        a = SuperForm.generator(ctx, 1)
        b = SuperForm.generator(ctx, 2)
        ab = wedge(a, b)
        lhs = ab.contract(s)
        rhs = wedge(a.contract(s), b) - wedge(a, b.contract(s))
        assert lhs == rhs

    def test_kills_sections(self):
        ctx = FiberCtx(2)
        s = SuperForm(
            ctx, {((), (1,)): PolyGauss.one(2)}
        )
        a = SuperForm.section(ctx, 2)
        assert a.contract(s).is_zero()


class TestExpEven:
    def test_gaussian_part(self):
        ctx = FiberCtx(1)
        quad = Poly.var(1, 1) * Poly.var(1, 1) * Scalar.term(Fraction(-2), epi=2)
        a = SuperForm(ctx, {((), ()): PolyGauss.from_poly(quad)})
        out = exp_even(a)
        assert out == SuperForm(
            ctx, {((), ()): PolyGauss.gaussian([Fraction(2)])}
        )

    def test_addition_rule_on_diagonal(self):
        # exp(a + b) = exp(a) exp(b) for commuting diagonal nilpotents
        ctx = SignatureCtx(2, 2)
        a = eta(ctx, 1)
        b = eta(ctx, 2)
        assert exp_even(a + b) == wedge(exp_even(a), exp_even(b))

    def test_nilpotent_series_truncates(self):
        ctx = SignatureCtx(1, 2)
        e1 = eta(ctx, 1)
        sq = wedge(e1, e1)
        out = exp_even(sq)
        assert out == SuperForm.one(ctx) + sq  # sq^2 = 0 in z0-degree > q

    def test_rejects_off_diagonal(self):
        ctx = FiberCtx(2)
        with pytest.raises(ValueError):
            exp_even(SuperForm.generator(ctx, 1))


class TestHermiteLemma:
    @pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 3), (1, 6), (2, 4)])
    def test_exponential_generates_hermite(self, p, q):
        from thomform.checks import check_hermite_lemma

        assert check_hermite_lemma(p, q).passed


class TestRendering:
    def test_str(self):
        ctx = SignatureCtx(1, 2)
        one = PolyGauss.one(3)
        a = SuperForm(ctx, {(((1, 2), (1, 3)), (2,)): one})
        assert str(a) == "1 w[1,2]^w[1,3] e[2]"

    def test_json_round_trippable_keys(self):
        ctx = FiberCtx(2)
        a = SuperForm(ctx, {((1, 2), ()): PolyGauss.one(2)})
        data = a.to_json()
        assert isinstance(data, dict) and data
