"""Theta partial sums of the basepoint form over an integral lattice.

A Gram matrix of signature (p,q) is congruence-diagonalized over the
rationals, scaled to the standard orthonormal frame, and lattice vectors
are enumerated under the positive-definite majorant. Each vector
contributes P(sqrt(y) v_hat) * e^{i pi tau Q(v,v)} per exterior basis key,
where P is a coefficient of the basepoint form (Gaussian included, so the
Gaussian factor e^{-pi y Q+(v,v)} is part of the evaluation).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .km import km_form_at_e
from .liealg import SignatureCtx
from .scalars import polygauss_eval


@dataclass(frozen=True)
class LatticeSpec:
    label: str
    p: int
    q: int
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.p + self.q
        g = self.gram
        if len(g) != n or any(len(row) != n for row in g):
            raise ValueError("gram matrix must be (p+q) x (p+q)")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")

    @staticmethod
    def from_json(data: dict) -> "LatticeSpec":
        gram = tuple(
            tuple(Fraction(entry) for entry in row) for row in data["gram"]
        )
        return LatticeSpec(
            label=str(data.get("label", "")), p=int(data["p"]), q=int(data["q"]),
            gram=gram,
        )

    @staticmethod
    def load(path: str) -> "LatticeSpec":
        with open(path) as fh:
            return LatticeSpec.from_json(json.load(fh))


@dataclass(frozen=True)
class DiagonalizedLattice:
    spec: LatticeSpec
    transform: np.ndarray  # lattice coords -> orthonormal coords
    diag: tuple[int, ...]  # +1 (p times) then -1 (q times)


def _congruence_diagonalize(g: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Rational S with S^T G S diagonal; returns (S, diagonal entries).

    Deterministic pivoting: at each step pick the remaining index with the
    largest |G_ii| (ties by index); if all remaining diagonal entries
    vanish, symmetrize a nonzero off-diagonal entry into the diagonal first.
    """
    n = len(g)
    a = [row[:] for row in g]
    s = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    done: list[int] = []

    def add_col(dst: int, src: int, c: Fraction):
        # column operation followed by the matching row operation keeps
        # a = S^T G S in sync with S
        for i in range(n):
            a[i][dst] += c * a[i][src]
        for j in range(n):
            a[dst][j] += c * a[src][j]
        for i in range(n):
            s[i][dst] += c * s[i][src]

    for _ in range(n):
        rest = [i for i in range(n) if i not in done]
        pivot = max(rest, key=lambda i: (abs(a[i][i]), -i))
        if a[pivot][pivot] == 0:
            found = None
            for i in rest:
                for j in rest:
                    if i < j and a[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if found is None:
                raise ValueError("gram matrix is degenerate")
            i, j = found
            add_col(i, j, Fraction(1))
            pivot = max(rest, key=lambda k: (abs(a[k][k]), -k))
        d = a[pivot][pivot]
        for j in range(n):
            if j != pivot and j not in done and a[pivot][j] != 0:
                add_col(j, pivot, -a[pivot][j] / d)
        done.append(pivot)
    return s, [a[i][i] for i in range(n)]


def diagonalize_gram(spec: LatticeSpec) -> DiagonalizedLattice:
    """Transform T with T^T diag(+1^p, -1^q) T = gram (to 1e-10)."""
    n = spec.p + spec.q
    g = [list(row) for row in spec.gram]
    s, d = _congruence_diagonalize(g)
    pos = [i for i in range(n) if d[i] > 0]
    neg = [i for i in range(n) if d[i] < 0]
    if len(pos) != spec.p or len(neg) != spec.q:
        raise ValueError(
            f"gram signature is ({len(pos)},{len(neg)}), expected ({spec.p},{spec.q})"
        )
    order = pos + neg
    s_np = np.array([[float(s[i][j]) for j in order] for i in range(n)])
    scale = np.diag([math.sqrt(abs(float(d[j]))) for j in order])
    transform = scale @ np.linalg.inv(s_np)
    for i in range(n):  # deterministic row signs: first nonzero entry positive
        row = transform[i]
        lead = row[np.nonzero(np.abs(row) > 1e-12)[0][0]]
        if lead < 0:
            transform[i] = -row
    return DiagonalizedLattice(
        spec=spec, transform=transform, diag=tuple([1] * spec.p + [-1] * spec.q)
    )


def majorant_matrix(dl: DiagonalizedLattice) -> np.ndarray:
    """Q+ in lattice coordinates: A = T^T T."""
    return dl.transform.T @ dl.transform


def enumerate_vectors(dl: DiagonalizedLattice, bound: float) -> list[tuple[int, ...]]:
    """All integer vectors with Q+(v,v) <= bound, sorted."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    a = majorant_matrix(dl)
    n = a.shape[0]
    ainv = np.linalg.inv(a)
    out = []
    ranges = [
        range(-int(math.isqrt(int(bound * ainv[i, i] + 1e-9))),
              int(math.isqrt(int(bound * ainv[i, i] + 1e-9))) + 1)
        for i in range(n)
    ]
    for u in itertools.product(*ranges):
        v = np.array(u, dtype=float)
        if v @ a @ v <= bound + 1e-9:
            out.append(tuple(u))
    out.sort()
    return out


def gram_value(spec: LatticeSpec, u: tuple[int, ...]) -> Fraction:
    """Q(v,v) = u^T G u, exactly."""
    total = Fraction(0)
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, uj in enumerate(u):
            if uj:
                total += spec.gram[i][j] * ui * uj
    return total


def tail_estimate(dl: DiagonalizedLattice, y: float, bound: float) -> float:
    """Upper bound for the omitted terms with Q+(v,v) > bound.

    Vectors in the shell k < Q+ <= k+1 number at most (2 sqrt((k+1)/lmin)+3)^n
    (lmin = least eigenvalue of the majorant); each contributes at most
    Cp (1 + sqrt(y (k+1)))^deg e^{-pi y k} where Cp sums the absolute
    polynomial coefficients of the basepoint form and deg is its degree.
    """
    ctx = SignatureCtx(dl.spec.p, dl.spec.q)
    km = km_form_at_e(ctx)
    cp = 0.0
    deg = 0
    for pg in km.terms.values():
        for poly in pg.parts.values():
            for mono, c in poly.terms.items():
                cp += abs(float(c))
                deg = max(deg, sum(mono))
    a = majorant_matrix(dl)
    lmin = min(np.linalg.eigvalsh(a))
    n = a.shape[0]
    total = 0.0
    k = math.floor(bound)
    while True:
        shell = (2.0 * math.sqrt((k + 1) / lmin) + 3.0) ** n
        term = shell * cp * (1.0 + math.sqrt(y * (k + 1))) ** deg * math.exp(
            -math.pi * y * k
        )
        total += term
        k += 1
        if term < 1e-30 * max(total, 1.0) or k > bound + 10_000:
            break
    return total


def theta_partial_sum(
    dl: DiagonalizedLattice, tau: complex, bound: float
) -> tuple[dict[tuple, complex], float]:
    """Partial theta sum per exterior basis key, plus the tail estimate.

    Each lattice vector v contributes, for every basis key of the
    basepoint form, coefficient(sqrt(y) v_hat) * e^{i pi x Q(v,v)} where
    tau = x + i y and v_hat = transform v.
    """
    y = tau.imag
    if y <= 0:
        raise ValueError("tau must have positive imaginary part")
    x = tau.real
    ctx = SignatureCtx(dl.spec.p, dl.spec.q)
    km = km_form_at_e(ctx)
    sqrt_y = math.sqrt(y)
    sums: dict[tuple, complex] = {key[0]: 0j for key in km.terms}
    for u in enumerate_vectors(dl, bound):
        vhat = dl.transform @ np.array(u, dtype=float)
        point = list(sqrt_y * vhat)
        phase = complex(
            math.cos(math.pi * x * float(gram_value(dl.spec, u))),
            math.sin(math.pi * x * float(gram_value(dl.spec, u))),
        )
        for (i_set, _j), pg in km.terms.items():
            sums[i_set] += polygauss_eval(pg, point) * phase
    return sums, tail_estimate(dl, y, bound)


def key_str(i_set: tuple) -> str:
    return "^".join(f"w[{a},{m}]" for a, m in i_set)
