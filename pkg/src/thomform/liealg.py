"""so(p,q) in the basis X_ij = T(e_i ^ e_j), with the k/p splitting.

Matrix conventions: E_ij is the matrix unit with a 1 in row i, column j.

    X_{alpha mu} = E_{alpha mu} + E_{mu alpha}   (p-part, alpha <= p < mu)
    X_{alpha beta} = E_{alpha beta} - E_{beta alpha}
    X_{nu mu} = -E_{nu mu} + E_{mu nu}           (both > p, nu < mu)

With this realization [X_{alpha mu}, X_{beta nu}] equals
delta_{mu nu} X_{alpha beta} + delta_{alpha beta} X_{mu nu}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .scalars import Poly, PolyGauss, Scalar
from .superforms import SuperForm, sort_with_sign

Pair = tuple[int, int]


@dataclass(frozen=True)
class SignatureCtx:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("signature requires p >= 1 and q >= 1")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def nvars(self) -> int:
        return self.n

    @property
    def z0(self) -> tuple[int, ...]:
        return tuple(range(self.p + 1, self.n + 1))

    def p_pairs(self) -> list[Pair]:
        return [(a, m) for a in range(1, self.p + 1) for m in self.z0]

    def k_pairs(self) -> list[Pair]:
        pos = [(a, b) for a in range(1, self.p + 1) for b in range(a + 1, self.p + 1)]
        neg = [(n, m) for n in self.z0 for m in self.z0 if n < m]
        return pos + neg

    def all_pairs(self) -> list[Pair]:
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]

    def gen_str(self, g) -> str:
        return f"w[{g[0]},{g[1]}]"


class LieElement:
    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: SignatureCtx, coords: Mapping[Pair, Fraction] | None = None):
        self.ctx = ctx
        clean: dict[Pair, Fraction] = {}
        if coords:
            for (i, j), c in coords.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if not (1 <= i < j <= ctx.n):
                    raise ValueError(f"bad basis pair ({i},{j})")
                clean[(i, j)] = clean.get((i, j), Fraction(0)) + c
                if clean[(i, j)] == 0:
                    del clean[(i, j)]
        self.coords = clean

    @staticmethod
    def basis(ctx: SignatureCtx, i: int, j: int) -> "LieElement":
        return LieElement(ctx, {(i, j): Fraction(1)})

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.coords)
        for k, c in other.coords.items():
            acc = out.get(k, Fraction(0)) + c
            if acc == 0:
                out.pop(k, None)
            else:
                out[k] = acc
        return LieElement(self.ctx, out)

    def __neg__(self):
        return LieElement(self.ctx, {k: -c for k, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, r) -> "LieElement":
        r = Fraction(r)
        return LieElement(self.ctx, {k: c * r for k, c in self.coords.items()})

    __rmul__ = __mul__

    def _check(self, other: "LieElement"):
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.ctx == other.ctx
            and self.coords == other.coords
        )

    def is_zero(self) -> bool:
        return not self.coords

    def in_k(self) -> bool:
        p = self.ctx.p
        return all(not (i <= p < j) for i, j in self.coords)

    def matrix(self) -> list[list[Fraction]]:
        n = self.ctx.n
        p = self.ctx.p
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in self.coords.items():
            if i <= p < j:  # X_ij = E_ij + E_ji
                m[i - 1][j - 1] += c
                m[j - 1][i - 1] += c
            elif j <= p:  # X_ij = E_ij - E_ji
                m[i - 1][j - 1] += c
                m[j - 1][i - 1] -= c
            else:  # X_ij = -E_ij + E_ji
                m[i - 1][j - 1] -= c
                m[j - 1][i - 1] += c
        return m

    @staticmethod
    def from_matrix(ctx: SignatureCtx, m: list[list[Fraction]]) -> "LieElement":
        n, p = ctx.n, ctx.p
        coords: dict[Pair, Fraction] = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if i <= p < j:
                    c = m[i - 1][j - 1]
                    if m[j - 1][i - 1] != c:
                        raise ValueError("matrix is not in so(p,q)")
                elif j <= p:
                    c = m[i - 1][j - 1]
                    if m[j - 1][i - 1] != -c:
                        raise ValueError("matrix is not in so(p,q)")
                else:
                    c = m[j - 1][i - 1]
                    if m[i - 1][j - 1] != -c:
                        raise ValueError("matrix is not in so(p,q)")
                if c:
                    coords[(i, j)] = c
        return LieElement(ctx, coords)

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for (i, j) in sorted(self.coords):
            c = self.coords[(i, j)]
            parts.append(f"X[{i},{j}]" if c == 1 else f"{c}*X[{i},{j}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"LieElement({self})"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    x._check(y)
    n = x.ctx.n
    a, b = x.matrix(), y.matrix()
    comm = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = Fraction(0)
            for k in range(n):
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j]
            comm[i][j] = s
    return LieElement.from_matrix(x.ctx, comm)


def project_k(x: LieElement) -> LieElement:
    p = x.ctx.p
    return LieElement(x.ctx, {k: c for k, c in x.coords.items() if not (k[0] <= p < k[1])})


def project_p(x: LieElement) -> LieElement:
    p = x.ctx.p
    return LieElement(x.ctx, {k: c for k, c in x.coords.items() if k[0] <= p < k[1]})


def eta(ctx: SignatureCtx, alpha: int) -> SuperForm:
    """eta_alpha = sum_mu omega_{alpha mu} (x) e_mu, bidegree (1,1)."""
    if not 1 <= alpha <= ctx.p:
        raise ValueError(f"alpha={alpha} out of range for p={ctx.p}")
    one = PolyGauss.one(ctx.nvars)
    terms = {(((alpha, mu),), (mu,)): one for mu in ctx.z0}
    return SuperForm(ctx, terms)


def so_z0_to_wedge(ctx: SignatureCtx, x: LieElement) -> dict[tuple[int, int], Fraction]:
    """Identify the so(z0) block with Lambda^2 z0 via A -> sum <A e_i, e_j> e_i ^ e_j.

    The inner product on z0 is -Q|z0, so <e_mu, e_nu> = delta. Returns
    coefficients keyed by (nu, mu) with nu < mu in z0.
    """
    m = x.matrix()
    out: dict[tuple[int, int], Fraction] = {}
    for nu in ctx.z0:
        for mu in ctx.z0:
            if nu >= mu:
                continue
            # column nu holds the image of e_nu; row mu picks <X e_nu, e_mu>
            c = m[mu - 1][nu - 1]
            if c:
                out[(nu, mu)] = c
    return out


def curvature_at_e(ctx: SignatureCtx) -> SuperForm:
    """rho(R_e) in Lambda^2 p* (x) Lambda^2 z0, from brackets and projection."""
    pairs = ctx.p_pairs()
    terms: dict = {}
    one = PolyGauss.one(ctx.nvars)
    for ia, pa in enumerate(pairs):
        for pb in pairs[ia + 1 :]:
            k_part = project_k(
                bracket(LieElement.basis(ctx, *pa), LieElement.basis(ctx, *pb))
            )
            coeffs = so_z0_to_wedge(ctx, -k_part)
            for (nu, mu), c in coeffs.items():
                key = ((min(pa, pb), max(pa, pb)), (nu, mu))
                pg = PolyGauss.from_poly(Poly.const(ctx.nvars, Scalar.rational(c)))
                prev = terms.get(key)
                terms[key] = pg if prev is None else prev + pg
    return SuperForm(ctx, terms)


def schwartz_action(x: LieElement, f: PolyGauss) -> PolyGauss:
    """Infinitesimal left action (X f)(v) = d/dt f(exp(-tX) v)|_0 = -(Xv). grad f."""
    ctx = x.ctx
    if f.n != ctx.n:
        raise ValueError("dimension mismatch")
    m = x.matrix()
    out = PolyGauss.zero(ctx.n)
    for k in range(1, ctx.n + 1):
        # (Xv)_k = sum_l m[k-1][l-1] x_l
        lin = Poly(ctx.n)
        for l in range(1, ctx.n + 1):
            if m[k - 1][l - 1]:
                lin = lin + Poly.var(ctx.n, l) * Scalar.rational(m[k - 1][l - 1])
        if lin.is_zero():
            continue
        out = out - f.derive(k) * PolyGauss.from_poly(lin)
    return out


def coadjoint_action(x: LieElement, a: SuperForm) -> SuperForm:
    """Derivation action of X in k on Lambda(p*) (x) Lambda(z0).

    On p*: (X . omega)(Y) = -omega([X, Y]); on z0: e_j -> rho(X) e_j.
    Coefficients are untouched.
    """
    if not x.in_k():
        raise ValueError("coadjoint action requires an element of k")
    ctx = x.ctx
    pairs = ctx.p_pairs()
    # X . omega_P = sum_{P'} (-(coeff of X_P in [X, X_{P'}])) omega_{P'}
    dual: dict[Pair, dict[Pair, Fraction]] = {}
    for pprime in pairs:
        br = bracket(x, LieElement.basis(ctx, *pprime))
        for p_key, c in br.coords.items():
            dual.setdefault(p_key, {})[pprime] = -c
    m = x.matrix()
    out = SuperForm.zero(ctx)
    for (i_set, j_set), pg in a.terms.items():
        # act on each p* slot
        for pos, gen in enumerate(i_set):
            for gen2, c in dual.get(gen, {}).items():
                new_i = list(i_set)
                new_i[pos] = gen2
                sorted_i, sign = sort_with_sign(tuple(new_i))
                if sign == 0:
                    continue
                pg2 = pg * Fraction(sign * c)
                out = out + SuperForm(ctx, {(sorted_i, j_set): pg2})
        # act on each z0 slot
        for pos, j in enumerate(j_set):
            for j2 in ctx.z0:
                c = m[j2 - 1][j - 1]
                if not c:
                    continue
                new_j = list(j_set)
                new_j[pos] = j2
                sorted_j, sign = sort_with_sign(tuple(new_j))
                if sign == 0:
                    continue
                pg2 = pg * Fraction(sign * c)
                out = out + SuperForm(ctx, {(i_set, sorted_j): pg2})
    return out
