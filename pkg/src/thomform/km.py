"""The positive-degree Schwartz form on p* (x) Lambda z0, two ways.

`km_form_at_e` applies the product of annihilation-style raising operators
to the standard Gaussian; `km_closed_form` evaluates the Hermite-polynomial
expansion directly. The two must agree coefficient-by-coefficient, exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import SignatureCtx, schwartz_action, coadjoint_action, LieElement
from .scalars import Poly, PolyGauss, Scalar, howe_shift
from .superforms import SuperForm, sort_with_sign


def hermite(n: int, nvars: int = 1, var: int = 1) -> Poly:
    """Physicists' Hermite polynomial H_n in the given variable.

    Built from the raising recurrence H_{n+1} = 2 x H_n - H_n'.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    h = Poly.one(nvars)
    x2 = Poly.var(nvars, var) * Scalar.rational(2)
    for _ in range(n):
        h = x2 * h - h.derive(var)
    return h


def hermite_scaled(n: int, nvars: int, var: int) -> Poly:
    """H_n(sqrt(2 pi) x_var) as a polynomial with coefficients in the ring.

    The monomial x^k in H_n picks up the factor (2 pi)^(k/2) = 2^(k/2) pi^(k/2).
    """
    h = hermite(n, nvars, var)
    out = Poly(nvars)
    for exps, c in h.terms.items():
        k = exps[var - 1]
        out = out + Poly(nvars, {exps: c * Scalar.term(Fraction(1), e2=k, epi=k)})
    return out


def gaussian_plus(ctx: SignatureCtx) -> PolyGauss:
    """exp(-pi (x_1^2 + ... + x_n^2)), the majorant Gaussian."""
    return PolyGauss.gaussian([Fraction(1)] * ctx.nvars)


def km_form_at_e(ctx: SignatureCtx) -> SuperForm:
    """Apply the operator product: 2^{-q} prod_mu (sum_alpha A_{alpha mu})
    to exp(-pi |x|^2), where A_{alpha mu} = omega_{alpha mu} (x)
    (x_alpha - (1/2pi) d/dx_alpha) acting on coefficients.

    The factors for distinct mu anticommute; we fold over mu in increasing
    order and wedge the new generator on the right, so the resulting index
    tuples read omega_{alpha_1, p+1} ^ ... ^ omega_{alpha_q, p+q}.
    """
    acc: dict[tuple, PolyGauss] = {(): gaussian_plus(ctx)}
    for mu in ctx.z0:
        nxt: dict[tuple, PolyGauss] = {}
        for i_set, pg in acc.items():
            for alpha in range(1, ctx.p + 1):
                gen = (alpha, mu)
                new_i, sign = sort_with_sign(i_set + (gen,))
                if sign == 0:
                    continue
                pg2 = howe_shift(pg, alpha)
                if sign < 0:
                    pg2 = -pg2
                prev = nxt.get(new_i)
                nxt[new_i] = pg2 if prev is None else prev + pg2
        acc = nxt
    scale = Scalar.term(Fraction(1), e2=-2 * ctx.q)  # 2^{-q}
    terms = {(i_set, ()): pg * scale for i_set, pg in acc.items()}
    return SuperForm(ctx, terms)


def km_closed_form(ctx: SignatureCtx) -> SuperForm:
    """2^{-q} (2 pi)^{-q/2} sum over tuples (alpha_1..alpha_q) in [1,p]^q of

        omega_{alpha_1, p+1} ^ ... ^ omega_{alpha_q, p+q}
          (x) prod_alpha H_{n_alpha}(sqrt(2 pi) x_alpha) exp(-pi |x|^2)

    where n_alpha counts occurrences of alpha in the tuple.
    """
    p, q = ctx.p, ctx.q
    pref = Scalar.term(Fraction(1), e2=-3 * q, epi=-q)  # 2^{-q} (2pi)^{-q/2}
    gauss = gaussian_plus(ctx)
    terms: dict = {}

    def rec(mu_idx: int, gens: tuple, counts: list[int]):
        if mu_idx == q:
            sorted_i, sign = sort_with_sign(gens)
            if sign == 0:
                return
            poly = Poly.one(ctx.nvars)
            for alpha in range(1, p + 1):
                if counts[alpha - 1]:
                    poly = poly * hermite_scaled(counts[alpha - 1], ctx.nvars, alpha)
            pg = PolyGauss.from_poly(poly) * gauss * (pref * Scalar.rational(sign))
            key = (sorted_i, ())
            prev = terms.get(key)
            terms[key] = pg if prev is None else prev + pg
            return
        mu = p + 1 + mu_idx
        for alpha in range(1, p + 1):
            counts[alpha - 1] += 1
            rec(mu_idx + 1, gens + ((alpha, mu),), counts)
            counts[alpha - 1] -= 1

    rec(0, (), [0] * p)
    return SuperForm(ctx, terms)


def exterior_derivative(ctx: SignatureCtx, a: SuperForm) -> SuperForm:
    """Invariant exterior derivative at the base point:
    d = sum over p-pairs of (omega_{alpha mu} ^ .) composed with the
    infinitesimal action of X_{alpha mu} on coefficients.
    """
    out = SuperForm.zero(ctx)
    for (alpha, mu) in ctx.p_pairs():
        x = LieElement.basis(ctx, alpha, mu)
        for (i_set, j_set), pg in a.terms.items():
            new_i, sign = sort_with_sign(((alpha, mu),) + i_set)
            if sign == 0:
                continue
            pg2 = schwartz_action(x, pg)
            if pg2.is_zero():
                continue
            if sign < 0:
                pg2 = -pg2
            out = out + SuperForm(ctx, {(new_i, j_set): pg2})
    return out


def lie_derivative(x: LieElement, a: SuperForm) -> SuperForm:
    """Action of X in k on a form with Schwartz coefficients: the coadjoint
    action on the exterior slots plus the infinitesimal action on the
    coefficient functions. Invariance means this vanishes.
    """
    out = coadjoint_action(x, a)
    ctx = x.ctx
    for key, pg in a.terms.items():
        pg2 = schwartz_action(x, pg)
        if not pg2.is_zero():
            out = out + SuperForm(ctx, {key: pg2})
    return out
