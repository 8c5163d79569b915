"""Berezin-exponential construction of the Thom form.

`mq_phi0_at_e` and `mq_phi_at_e` build the form at the basepoint over the
full signature context; the `fiber_*` functions work on a single fiber R^q
(coframe dx_1..dx_q), optionally carrying the scaling parameter t as an
extra polynomial variable whose square also scales the Gaussian exponents.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import SignatureCtx, curvature_at_e
from .scalars import (
    NotRepresentable,
    Poly,
    PolyGauss,
    Scalar,
    gauss_exp,
    gauss_moment,
)
from .superforms import FiberCtx, SuperForm, berezin, exp_even


def mq_prefactor(q: int) -> Scalar:
    """(-1)^{q(q+1)/2} (2 pi)^{-q/2}."""
    sign = -1 if (q * (q + 1) // 2) % 2 else 1
    return Scalar.term(Fraction(sign), e2=-q, epi=-q)


def mq_phi0_at_e(ctx: SignatureCtx) -> SuperForm:
    """(-1)^{q(q+1)/2} (2 pi)^{-q/2} e^{2 pi Q|z0(v,v)}
    int^B exp(2 sqrt(pi) sum_alpha x_alpha eta_alpha + rho(R_e)).
    """
    n = ctx.nvars
    two_sqrt_pi = Scalar.term(Fraction(2), epi=1)
    terms: dict = {}
    for alpha in range(1, ctx.p + 1):
        coeff = PolyGauss.from_poly(Poly.var(n, alpha) * two_sqrt_pi)
        for mu in ctx.z0:
            terms[(((alpha, mu),), (mu,))] = coeff
    arg = SuperForm(ctx, terms) + curvature_at_e(ctx)
    body = berezin(exp_even(arg))
    # e^{2 pi Q|z0(v,v)} = exp(-2 pi sum_mu x_mu^2)
    coeffs = [Fraction(0)] * ctx.p + [Fraction(2)] * ctx.q
    gauss = PolyGauss.gaussian(coeffs)
    pref = mq_prefactor(ctx.q)
    return body.map_coeffs(lambda pg: pg * gauss * pref)


def mq_phi_at_e(ctx: SignatureCtx) -> SuperForm:
    """e^{-pi Q(v,v)} phi^0(v); all Gaussian exponents become the majorant."""
    coeffs = [Fraction(1)] * ctx.p + [Fraction(-1)] * ctx.q
    gauss = PolyGauss.gaussian(coeffs)
    return mq_phi0_at_e(ctx).map_coeffs(lambda pg: pg * gauss)


# -- fiber-level forms -------------------------------------------------


def fiber_section(ctx: FiberCtx) -> SuperForm:
    """The tautological section s = sum_i x_i (x) e_i, bidegree (0,1)."""
    terms = {
        ((), (i,)): PolyGauss.from_poly(Poly.var(ctx.nvars, i))
        for i in ctx.z0
    }
    return SuperForm(ctx, terms)


def fiber_ds(ctx: FiberCtx) -> SuperForm:
    """ds = sum_i dx_i (x) e_i, bidegree (1,1)."""
    one = PolyGauss.one(ctx.nvars)
    return SuperForm(ctx, {((i,), (i,)): one for i in ctx.z0})


def fiber_omega(ctx: FiberCtx) -> SuperForm:
    """2 pi |s|^2 + 2 sqrt(pi) ds, the exponent kernel on a fiber (curvature
    vanishes there)."""
    n = ctx.nvars
    quad = Poly(n)
    for i in ctx.z0:
        xi = Poly.var(n, i)
        quad = quad + xi * xi * Scalar.term(Fraction(2), epi=2)
    out = SuperForm(ctx, {((), ()): PolyGauss.from_poly(quad)})
    return out + fiber_ds(ctx).scale(Scalar.term(Fraction(2), epi=1))


def fiber_umq(q: int) -> SuperForm:
    """Thom-form restriction to a fiber: Berezin of exp(-2 pi |s|^2
    - 2 sqrt(pi) ds) with the standard prefactor. Equals
    2^{q/2} e^{-2 pi |x|^2} dx_1 ^ ... ^ dx_q.
    """
    ctx = FiberCtx(q)
    arg = fiber_omega(ctx).scale(Scalar.rational(-1))
    return berezin(exp_even(arg)).scale(mq_prefactor(q))


def fiber_euler_contract(a: SuperForm) -> SuperForm:
    """Interior product with the Euler field sum_i x_i d/dx_i: remove each
    dx_i in turn, multiplying by x_i, with the alternating slot sign.
    """
    ctx = a.ctx
    out = SuperForm.zero(ctx)
    for (i_set, j_set), pg in a.terms.items():
        for pos, i in enumerate(i_set):
            new_i = i_set[:pos] + i_set[pos + 1 :]
            pg2 = pg * PolyGauss.from_poly(Poly.var(ctx.nvars, i))
            if pos % 2:
                pg2 = -pg2
            out = out + SuperForm(ctx, {(new_i, j_set): pg2})
    return out


def fiber_transgression(q: int) -> SuperForm:
    """psi = i_X U with X the Euler (fiber-scaling) vector field."""
    return fiber_euler_contract(fiber_umq(q))


def _derive_x(ctx: FiberCtx, pg: PolyGauss, i: int) -> PolyGauss:
    """d/dx_i, aware that with t the Gaussian entry c means c t^2 x_i^2."""
    if not ctx.with_t:
        return pg.derive(i)
    n = ctx.nvars
    t = ctx.nvars  # the t variable index
    out = PolyGauss.zero(n)
    for g, poly in pg.parts.items():
        dp = poly.derive(i)
        if not dp.is_zero():
            out = out + PolyGauss(n, {g: dp})
        c = g[i - 1]
        if c:
            extra = (
                Poly.var(n, i)
                * Poly.var(n, t)
                * Poly.var(n, t)
                * Scalar.term(-2 * c, epi=2)
            )
            out = out + PolyGauss(n, {g: poly * extra})
    return out


def fiber_d(a: SuperForm) -> SuperForm:
    """Exterior derivative d = sum_i dx_i ^ d/dx_i on a fiber."""
    ctx = a.ctx
    out = SuperForm.zero(ctx)
    for i in ctx.z0:
        gen = SuperForm.generator(ctx, i)
        da = a.map_coeffs(lambda pg: _derive_x(ctx, pg, i))
        out = out + gen.wedge(da)
    return out


def fiber_ddt(a: SuperForm) -> SuperForm:
    """d/dt on a form over a with_t context (Gaussian entry c means
    c t^2 x_i^2, so each contributes -2 pi c t x_i^2)."""
    ctx = a.ctx
    if not ctx.with_t:
        raise ValueError("ddt requires a t-carrying context")
    n = ctx.nvars
    t = n

    def deriv(pg: PolyGauss) -> PolyGauss:
        out = PolyGauss.zero(n)
        for g, poly in pg.parts.items():
            dp = poly.derive(t)
            if not dp.is_zero():
                out = out + PolyGauss(n, {g: dp})
            chain = Poly(n)
            for i in ctx.z0:
                c = g[i - 1]
                if c:
                    xi = Poly.var(n, i)
                    chain = chain + xi * xi * Scalar.term(-2 * c, epi=2)
            if not chain.is_zero():
                chain = chain * Poly.var(n, t)
                out = out + PolyGauss(n, {g: poly * chain})
        return out

    return a.map_coeffs(deriv)


def fiber_scale_pullback(a: SuperForm, t: Fraction) -> SuperForm:
    """Pull back along x -> t x for an exact positive rational t."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("scaling parameter must be positive")
    ctx = a.ctx
    if ctx.with_t:
        raise ValueError("rational pullback applies to t-free forms")
    n = ctx.nvars
    t2 = t * t
    out: dict = {}
    for (i_set, j_set), pg in a.terms.items():
        parts: dict = {}
        for g, poly in pg.parts.items():
            g2 = gauss_exp([c * t2 for c in g])
            poly2 = Poly(n)
            for mono, coeff in poly.terms.items():
                poly2 = poly2 + Poly(n, {mono: coeff * Scalar.rational(t ** sum(mono))})
            prev = parts.get(g2)
            parts[g2] = poly2 if prev is None else prev + poly2
        pg2 = PolyGauss(n, parts) * Scalar.rational(t ** len(i_set))
        out[(i_set, j_set)] = pg2
    return SuperForm(ctx, out)


def fiber_scale_pullback_symbolic(a: SuperForm) -> SuperForm:
    """Pull back along x -> t x with t carried as an extra variable.

    Input lives over FiberCtx(q); output over FiberCtx(q, with_t=True),
    where a Gaussian entry c is read as c t^2 x_i^2, each monomial gains
    t^(total degree), and each dx-slot contributes one more factor of t.
    """
    ctx = a.ctx
    if ctx.with_t:
        raise ValueError("form already carries t")
    ctx_t = FiberCtx(ctx.q, with_t=True)
    n = ctx_t.nvars
    out: dict = {}
    for (i_set, j_set), pg in a.terms.items():
        parts: dict = {}
        for g, poly in pg.parts.items():
            g2 = gauss_exp(list(g) + [0])
            poly2 = Poly(n)
            for mono, coeff in poly.terms.items():
                t_pow = sum(mono) + len(i_set)
                poly2 = poly2 + Poly(n, {mono + (t_pow,): coeff})
            prev = parts.get(g2)
            parts[g2] = poly2 if prev is None else prev + poly2
        out[(i_set, j_set)] = PolyGauss(n, parts)
    return SuperForm(ctx_t, out)


def fiber_divide_t(a: SuperForm) -> SuperForm:
    """Divide every polynomial coefficient by t; every monomial must carry
    a positive power of t."""
    ctx = a.ctx
    if not ctx.with_t:
        raise ValueError("divide_t requires a t-carrying context")
    n = ctx.nvars
    t_idx = n - 1

    def div(pg: PolyGauss) -> PolyGauss:
        parts: dict = {}
        for g, poly in pg.parts.items():
            terms: dict = {}
            for mono, coeff in poly.terms.items():
                if mono[t_idx] < 1:
                    raise ValueError("coefficient not divisible by t")
                m2 = mono[:t_idx] + (mono[t_idx] - 1,) + mono[t_idx + 1 :]
                terms[m2] = coeff
            parts[g] = Poly(n, terms)
        return PolyGauss(n, parts)

    return a.map_coeffs(div)


def fiber_integrate(a: SuperForm) -> Scalar:
    """Integrate the top-fiber-degree component over R^q, exactly, via
    iterated one-dimensional Gaussian moments."""
    ctx = a.ctx
    if ctx.with_t:
        raise ValueError("integration applies to t-free forms")
    q = ctx.q
    top = tuple(ctx.z0)
    total = Scalar.zero()
    for (i_set, j_set), pg in a.terms.items():
        if i_set != top or j_set:
            continue
        for g, poly in pg.parts.items():
            for mono, coeff in poly.terms.items():
                val = coeff
                for i in range(q):
                    val = val * gauss_moment(mono[i], g[i])
                total = total + val
    return total
