"""so(p,q) structure: brackets, Cartan splitting, curvature, actions."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thomform.liealg import (
    LieElement,
    SignatureCtx,
    bracket,
    coadjoint_action,
    curvature_at_e,
    eta,
    project_k,
    project_p,
    schwartz_action,
)
from thomform.scalars import Poly, PolyGauss, Scalar
from thomform.superforms import SuperForm, wedge

CTXS = [SignatureCtx(p, q) for p, q in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]]


def elements(ctx):
    coeff = st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=3)
    return st.dictionaries(
        st.sampled_from(ctx.all_pairs()), coeff, max_size=4
    ).map(lambda c: LieElement(ctx, c))


class TestBrackets:
    def test_known_values_2_1(self):
        c = SignatureCtx(2, 1)
        x12 = LieElement.basis(c, 1, 2)
        x13 = LieElement.basis(c, 1, 3)
        x23 = LieElement.basis(c, 2, 3)
        assert bracket(x12, x13) == -x23
        assert bracket(x12, x23) == x13

    def test_known_values_2_2(self):
        c = SignatureCtx(2, 2)
        assert bracket(
            LieElement.basis(c, 1, 3), LieElement.basis(c, 2, 3)
        ) == LieElement.basis(c, 1, 2)
        assert bracket(
            LieElement.basis(c, 1, 3), LieElement.basis(c, 2, 4)
        ).is_zero()

    def test_p_bracket_identity(self):
        # [X_{a mu}, X_{b nu}] = delta_{mu nu} X_{ab} - delta_{ab} X_{mu nu}
        # in this realization (signs fixed by the matrix commutator)
        c = SignatureCtx(3, 3)
        for (a, mu), (b, nu) in itertools.combinations(c.p_pairs(), 2):
            lhs = bracket(LieElement.basis(c, a, mu), LieElement.basis(c, b, nu))
            rhs = LieElement(c, {})
            if mu == nu and a != b:
                rhs = rhs + LieElement.basis(c, min(a, b), max(a, b)) * (
                    1 if a < b else -1
                )
            if a == b and mu != nu:
                rhs = rhs + LieElement.basis(c, min(mu, nu), max(mu, nu)) * (
                    -1 if mu < nu else 1
                )
            assert lhs == rhs

    @pytest.mark.parametrize("ctx", CTXS, ids=str)
    @settings(max_examples=15, deadline=None)
    @given(data=st.data())
    def test_antisymmetry_and_jacobi(self, ctx, data):
        x = data.draw(elements(ctx))
        y = data.draw(elements(ctx))
        z = data.draw(elements(ctx))
        assert bracket(x, y) == -bracket(y, x)
        jac = (
            bracket(x, bracket(y, z))
            + bracket(y, bracket(z, x))
            + bracket(z, bracket(x, y))
        )
        assert jac.is_zero()

    @pytest.mark.parametrize("ctx", CTXS, ids=str)
    def test_cartan_relations(self, ctx):
        # [k,k] in k, [k,p] in p, [p,p] in k, on basis elements
        for a in ctx.k_pairs():
            for b in ctx.k_pairs():
                assert bracket(
                    LieElement.basis(ctx, *a), LieElement.basis(ctx, *b)
                ).in_k()
            for b in ctx.p_pairs():
                br = bracket(LieElement.basis(ctx, *a), LieElement.basis(ctx, *b))
                assert project_k(br).is_zero()
        for a in ctx.p_pairs():
            for b in ctx.p_pairs():
                assert bracket(
                    LieElement.basis(ctx, *a), LieElement.basis(ctx, *b)
                ).in_k()

    def test_matrix_round_trip(self):
        ctx = SignatureCtx(2, 2)
        x = LieElement(
            ctx, {(1, 2): Fraction(3), (1, 3): Fraction(-1, 2), (3, 4): Fraction(5)}
        )
        assert LieElement.from_matrix(ctx, x.matrix()) == x


class TestCurvature:
    @pytest.mark.parametrize(
        "p,q", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 4), (5, 2), (3, 4)]
    )
    def test_equals_eta_squares(self, p, q):
        ctx = SignatureCtx(p, q)
        rhs = SuperForm.zero(ctx)
        for alpha in range(1, p + 1):
            e = eta(ctx, alpha)
            rhs = rhs + wedge(e, e)
        assert curvature_at_e(ctx) == rhs.scale(Scalar.rational(Fraction(-1, 2)))

    def test_explicit_1_2(self):
        ctx = SignatureCtx(1, 2)
        expected = SuperForm(
            ctx,
            {(((1, 2), (1, 3)), (2, 3)): PolyGauss.one(3)},
        )
        assert curvature_at_e(ctx) == expected


class TestSchwartzAction:
    def test_on_gaussian(self):
        ctx = SignatureCtx(2, 1)
        g = PolyGauss.gaussian([Fraction(1)] * 3)
        x12 = LieElement.basis(ctx, 1, 2)
        out = schwartz_action(x12, g)
        assert out.is_zero()  # rotation in a positive 2-plane fixes |x|^2

    def test_on_boost(self):
        ctx = SignatureCtx(1, 1)
        g = PolyGauss.gaussian([Fraction(1), Fraction(1)])
        x12 = LieElement.basis(ctx, 1, 2)
        out = schwartz_action(x12, g)
        # boost moves the Gaussian: -(Xv).grad = 4 pi x1 x2 g
        expected = g * PolyGauss.from_poly(
            Poly.var(2, 1) * Poly.var(2, 2) * Scalar.term(Fraction(4), epi=2)
        )
        assert out == expected

    def test_bracket_compatibility(self):
        ctx = SignatureCtx(2, 1)
        f = PolyGauss.gaussian(
            [Fraction(1)] * 3, Poly.var(3, 1) * Poly.var(3, 3)
        )
        for a, b in itertools.combinations(ctx.all_pairs(), 2):
            x = LieElement.basis(ctx, *a)
            y = LieElement.basis(ctx, *b)
            lhs = schwartz_action(x, schwartz_action(y, f)) - schwartz_action(
                y, schwartz_action(x, f)
            )
            assert lhs == schwartz_action(bracket(x, y), f)


class TestCoadjointAction:
    def test_z0_rotation_example(self):
        ctx = SignatureCtx(1, 2)
        x23 = LieElement.basis(ctx, 2, 3)
        a = SuperForm(ctx, {((), (2,)): PolyGauss.one(3)})
        out = coadjoint_action(x23, a)
        assert out == SuperForm(ctx, {((), (3,)): PolyGauss.one(3)})

    def test_dual_action_example(self):
        ctx = SignatureCtx(2, 1)
        x12 = LieElement.basis(ctx, 1, 2)
        w13 = SuperForm(ctx, {(((1, 3),), ()): PolyGauss.one(3)})
        out = coadjoint_action(x12, w13)
        expected = SuperForm(
            ctx, {(((2, 3),), ()): PolyGauss.const(3, Scalar.rational(-1))}
        )
        assert out == expected

    def test_requires_k(self):
        ctx = SignatureCtx(1, 1)
        with pytest.raises(ValueError):
            coadjoint_action(
                LieElement.basis(ctx, 1, 2), SuperForm.one(ctx)
            )

    def test_is_a_derivation(self):
        ctx = SignatureCtx(2, 2)
        x = LieElement.basis(ctx, 1, 2) + LieElement.basis(ctx, 3, 4)
        a = eta(ctx, 1)
        b = eta(ctx, 2) + SuperForm.generator(ctx, (1, 3))
        lhs = coadjoint_action(x, wedge(a, b))
        rhs = wedge(coadjoint_action(x, a), b) + wedge(a, coadjoint_action(x, b))
        assert lhs == rhs


class TestProjections:
    def test_splitting_is_direct(self):
        ctx = SignatureCtx(2, 2)
        x = LieElement(
            ctx, {(1, 2): Fraction(1), (1, 3): Fraction(2), (3, 4): Fraction(-1)}
        )
        assert project_k(x) + project_p(x) == x
        assert project_k(x).in_k()
        assert project_p(project_p(x)) == project_p(x)
