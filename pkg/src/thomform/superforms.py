"""Bigraded exterior algebra Lambda(p*) (x) Lambda(z0) with PolyGauss coefficients.

Keys are pairs (I, J): I a sorted tuple of one-form generators, J a sorted
tuple of z0 indices. The product follows the bigraded Koszul rule
(w (x) s) ^ (e (x) t) = (-1)^(jk) (w ^ e) (x) (s ^ t).

The same class serves both the symmetric-space algebra (generators are
(alpha, mu) pairs for omega_{alpha mu}) and fiber forms (generators are
integers for dx_i); only the context differs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .scalars import Poly, PolyGauss, Scalar, gauss_exp

Key = tuple[tuple, tuple]


def merge_sorted(a: tuple, b: tuple) -> tuple[tuple, int]:
    """Concatenate-and-sort two strictly increasing tuples.

    Returns (sorted tuple, parity sign); sign 0 when a generator repeats.
    """
    out = list(a)
    sign = 1
    for x in b:
        pos = len(out)
        while pos > 0 and out[pos - 1] > x:
            pos -= 1
        if pos > 0 and out[pos - 1] == x:
            return (), 0
        if (len(out) - pos) % 2:
            sign = -sign
        out.insert(pos, x)
    return tuple(out), sign


def sort_with_sign(seq: tuple) -> tuple[tuple, int]:
    return merge_sorted((), seq)


@dataclass(frozen=True)
class FiberCtx:
    """Context for forms on a single fiber R^q with coframe dx_1..dx_q.

    With ``with_t`` the coefficient ring gains one extra polynomial variable
    (index q+1, the fiber-scaling parameter) and every Gaussian exponent
    entry c is read as c * t^2 * x_i^2.
    """

    q: int
    with_t: bool = False

    @property
    def nvars(self) -> int:
        return self.q + (1 if self.with_t else 0)

    @property
    def z0(self) -> tuple[int, ...]:
        return tuple(range(1, self.q + 1))

    def gen_str(self, g) -> str:
        return f"dx[{g}]"


class SuperForm:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms: Mapping[Key, PolyGauss] | None = None):
        self.ctx = ctx
        clean: dict[Key, PolyGauss] = {}
        if terms:
            for (i_set, j_set), pg in terms.items():
                if pg.is_zero():
                    continue
                if pg.n != ctx.nvars:
                    raise ValueError("coefficient dimension mismatch")
                key = (tuple(i_set), tuple(j_set))
                prev = clean.get(key)
                pg2 = pg if prev is None else prev + pg
                if pg2.is_zero():
                    clean.pop(key, None)
                else:
                    clean[key] = pg2
        self.terms = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(ctx) -> "SuperForm":
        return SuperForm(ctx)

    @staticmethod
    def const(ctx, pg: PolyGauss) -> "SuperForm":
        return SuperForm(ctx, {((), ()): pg})

    @staticmethod
    def one(ctx) -> "SuperForm":
        return SuperForm.const(ctx, PolyGauss.one(ctx.nvars))

    @staticmethod
    def generator(ctx, gen, coeff: PolyGauss | None = None) -> "SuperForm":
        """A single one-form generator (bidegree (1,0))."""
        pg = coeff if coeff is not None else PolyGauss.one(ctx.nvars)
        return SuperForm(ctx, {((gen,), ()): pg})

    @staticmethod
    def section(ctx, j: int, coeff: PolyGauss | None = None) -> "SuperForm":
        """A single z0 basis element (bidegree (0,1))."""
        pg = coeff if coeff is not None else PolyGauss.one(ctx.nvars)
        return SuperForm(ctx, {((), (j,)): pg})

    # -- linear structure -----------------------------------------------
    def _check(self, other: "SuperForm"):
        if self.ctx != other.ctx:
            raise ValueError("context mismatch")

    def __add__(self, other: "SuperForm") -> "SuperForm":
        self._check(other)
        out = dict(self.terms)
        for k, pg in other.terms.items():
            prev = out.get(k)
            pg2 = pg if prev is None else prev + pg
            if pg2.is_zero():
                out.pop(k, None)
            else:
                out[k] = pg2
        f = SuperForm.__new__(SuperForm)
        f.ctx, f.terms = self.ctx, out
        return f

    def __neg__(self):
        f = SuperForm.__new__(SuperForm)
        f.ctx = self.ctx
        f.terms = {k: -pg for k, pg in self.terms.items()}
        return f

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SuperForm":
        if isinstance(c, (int, Fraction)):
            c = Scalar.rational(c)
        out = {k: pg * c for k, pg in self.terms.items()}
        return SuperForm(self.ctx, out)

    def map_coeffs(self, fn) -> "SuperForm":
        return SuperForm(self.ctx, {k: fn(pg) for k, pg in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, SuperForm)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(i), len(j)) for i, j in self.terms}

    def component(self, i: int, j: int) -> "SuperForm":
        return SuperForm(
            self.ctx, {k: pg for k, pg in self.terms.items() if (len(k[0]), len(k[1])) == (i, j)}
        )

    # -- products --------------------------------------------------------
    def wedge(self, other: "SuperForm") -> "SuperForm":
        self._check(other)
        out: dict[Key, PolyGauss] = {}
        for (ia, ja), pga in self.terms.items():
            for (ib, jb), pgb in other.terms.items():
                i_set, si = merge_sorted(ia, ib)
                if si == 0:
                    continue
                j_set, sj = merge_sorted(ja, jb)
                if sj == 0:
                    continue
                sign = si * sj * (-1 if (len(ja) * len(ib)) % 2 else 1)
                pg = pga * pgb
                if sign < 0:
                    pg = -pg
                key = (i_set, j_set)
                prev = out.get(key)
                pg = pg if prev is None else prev + pg
                if pg.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = pg
        f = SuperForm.__new__(SuperForm)
        f.ctx, f.terms = self.ctx, out
        return f

    def berezin(self) -> "SuperForm":
        """Project onto the top z0 component e_{min}^...^e_{max}, stripping it."""
        top = tuple(self.ctx.z0)
        out = {(i, ()): pg for (i, j), pg in self.terms.items() if j == top}
        return SuperForm(self.ctx, out)

    def contract(self, s: "SuperForm") -> "SuperForm":
        """Contraction i(s) for s of bidegree (0,1); zero on z0-degree 0."""
        self._check(s)
        coeffs: dict[int, PolyGauss] = {}
        for (i_set, j_set), pg in s.terms.items():
            if i_set or len(j_set) != 1:
                raise ValueError("contraction argument must have bidegree (0,1)")
            coeffs[j_set[0]] = pg
        out = SuperForm.zero(self.ctx)
        acc: dict[Key, PolyGauss] = {}
        for (i_set, j_set), pg in self.terms.items():
            deg_i = len(i_set)
            for pos, j in enumerate(j_set, start=1):
                c = coeffs.get(j)
                if c is None:
                    continue
                sign = 1 if (deg_i + pos - 1) % 2 == 0 else -1  # (-1)^(i+k-1)
                pg2 = pg * c
                if sign < 0:
                    pg2 = -pg2
                key = (i_set, j_set[: pos - 1] + j_set[pos:])
                prev = acc.get(key)
                pg2 = pg2 if prev is None else prev + pg2
                if pg2.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = pg2
        out = SuperForm.__new__(SuperForm)
        out.ctx, out.terms = self.ctx, acc
        return out

    def exp_even(self) -> "SuperForm":
        """Exponential of an even element.

        The (0,0) part must be a pure quadratic -pi * sum c_i x_i^2 (it
        exponentiates into a Gaussian); all other terms must be diagonal
        (bidegree (k,k) with k >= 1) and are nilpotent, so the series is the
        finite sum up to z0-degree q.
        """
        n = self.ctx.nvars
        gauss_coeffs = [Fraction(0)] * n
        rest: dict[Key, PolyGauss] = {}
        for (i_set, j_set), pg in self.terms.items():
            di, dj = len(i_set), len(j_set)
            if di == 0 and dj == 0:
                for g, poly in pg.parts.items():
                    if any(g):
                        raise ValueError("(0,0) part must carry no Gaussian factor")
                    for mono, c in poly.terms.items():
                        idx = [k for k, e in enumerate(mono) if e]
                        if len(idx) != 1 or mono[idx[0]] != 2:
                            raise ValueError(
                                "(0,0) part of exp argument must be a pure quadratic"
                            )
                        if len(c.terms) != 1 or (0, 2) not in c.terms:
                            raise ValueError(
                                "(0,0) quadratic coefficients must be rational multiples of pi"
                            )
                        gauss_coeffs[idx[0]] -= c.terms[(0, 2)]
            elif di == dj:
                rest[(i_set, j_set)] = pg
            else:
                raise ValueError("exp argument must lie in the diagonal subalgebra")
        nil = SuperForm(self.ctx, rest)
        total = SuperForm.one(self.ctx)
        power = SuperForm.one(self.ctx)
        fact = 1
        for k in range(1, len(self.ctx.z0) + 1):
            power = power.wedge(nil)
            if power.is_zero():
                break
            fact *= k
            total = total + power.scale(Fraction(1, fact))
        if any(gauss_coeffs):
            gfactor = SuperForm.const(self.ctx, PolyGauss.gaussian(gauss_coeffs))
            total = gfactor.wedge(total)
        return total

    # -- text / json -------------------------------------------------------
    def _key_str(self, i_set: tuple, j_set: tuple) -> str:
        chunks = []
        if i_set:
            chunks.append("^".join(self.ctx.gen_str(g) for g in i_set))
        if j_set:
            chunks.append("^".join(f"e[{j}]" for j in j_set))
        return " ".join(chunks)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k[0]), len(k[1]), k)):
            pg = self.terms[key]
            ks = self._key_str(*key)
            cs = str(pg)
            if ks:
                if len(pg.parts) > 1 or (pg.parts and len(next(iter(pg.parts.values())).terms) > 1):
                    cs = f"({cs})"
                parts.append(f"{cs} {ks}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"SuperForm({self})"

    def to_json(self) -> dict:
        items = []
        for (i_set, j_set) in sorted(self.terms, key=lambda k: (len(k[0]), len(k[1]), k)):
            pg = self.terms[(i_set, j_set)]
            items.append(
                {
                    "gens": [list(g) if isinstance(g, tuple) else g for g in i_set],
                    "z0": list(j_set),
                    "coeff": str(pg),
                }
            )
        return {"terms": items}


def wedge(a: SuperForm, b: SuperForm) -> SuperForm:
    return a.wedge(b)


def berezin(a: SuperForm) -> SuperForm:
    return a.berezin()


def contract(s: SuperForm, a: SuperForm) -> SuperForm:
    return a.contract(s)


def exp_even(a: SuperForm) -> SuperForm:
    return a.exp_even()
