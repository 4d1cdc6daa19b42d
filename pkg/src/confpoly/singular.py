"""Rank strata of evaluated forms, multiplicities and tangent cones.

At a point ``a`` the configuration form ``B(a)|_W`` has a corank; the
hypersurface ``Psi_W = 0`` has a multiplicity (least order of a nonvanishing
derivative). The certifiers here compute both independently and compare.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .config import Configuration, form_matrix, psi_det, restrict, symbolic_form
from .errors import CheckFailure, DimensionError, SamplingExhaustedError, SizeError
from .exactalg import (
    Polynomial,
    RatMatrix,
    mat_kernel,
    mat_rank,
    poly_proportional,
    rat,
    rat_text,
    subspace_contains,
    symbolic_det,
)

GENERIC_DET_MAX_DIM = 5


def _point(W: Configuration, a: Sequence) -> tuple[Fraction, ...]:
    if len(a) != W.n:
        raise DimensionError(f"point has length {len(a)}, expected {W.n}")
    return tuple(rat(x) for x in a)


@dataclass(frozen=True)
class FormAt:
    matrix: RatMatrix
    rank: int
    corank: int
    radical: RatMatrix  # kernel rows, in coordinates of the stored basis of W

    def radical_vectors(self, W: Configuration) -> RatMatrix:
        """The radical as vectors of K^E."""
        if self.radical.rows == 0:
            return RatMatrix(0, W.n, [])
        return self.radical @ W.basis


def form_at(W: Configuration, a: Sequence) -> FormAt:
    M = form_matrix(W, _point(W, a))
    K = mat_kernel(M)
    rank = M.rows - K.rows
    return FormAt(M, rank, K.rows, K)


def partials_at(psi: Polynomial, a: Sequence, max_order: int) -> dict[tuple[int, ...], Fraction]:
    """Nonzero values ``d_F psi(a)`` for square-free F with |F| <= max_order.

    Only valid for multilinear ``psi``. A monomial M contributes to ``d_F`` at
    ``a`` only if F contains every variable of M that vanishes at ``a``.
    """
    if not psi.is_multilinear():
        raise ValueError("square-free partials only determine multilinear polynomials")
    a = [rat(x) for x in a]
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, c in psi.terms:
        support = [v for v, _ in mono]
        forced = tuple(v for v in support if a[v] == 0)
        if len(forced) > max_order:
            continue
        free = [v for v in support if a[v] != 0]
        for size in range(0, min(len(free), max_order - len(forced)) + 1):
            for S in combinations(free, size):
                rest = c
                for v in free:
                    if v not in S:
                        rest *= a[v]
                F = tuple(sorted(forced + S))
                out[F] = out.get(F, 0) + rest
    return {F: v for F, v in out.items() if v}


def multiplicity_at(W: Configuration, a: Sequence, psi: Polynomial | None = None) -> int:
    """Least |F| with ``d_F Psi_W(a) != 0``; 0 off the hypersurface."""
    a = _point(W, a)
    if not any(a):
        raise ValueError("the zero vector is not a projective point")
    psi = psi_det(W) if psi is None else psi
    values = partials_at(psi, a, W.dim)
    if not values:
        raise CheckFailure("every partial of order <= dim W vanishes; Psi_W is degenerate")
    return min(len(F) for F in values)


@dataclass
class AnalysisReport:
    point: tuple
    rank: int
    corank: int
    multiplicity: int
    theorem_ok: bool
    psi_value: Fraction
    dim: int
    chart: int | None = None
    tangent_cone: Polynomial | None = None
    affine_tangent_cone: Polynomial | None = None
    cones_agree: bool | None = None

    def to_dict(self) -> dict:
        return {
            "point": [rat_text(x) for x in self.point],
            "dim": self.dim,
            "rank": self.rank,
            "corank": self.corank,
            "multiplicity": self.multiplicity,
            "theorem_ok": self.theorem_ok,
            "psi_value": rat_text(self.psi_value),
            "chart": None if self.chart is None else self.chart + 1,
            "tangent_cone": None if self.tangent_cone is None else self.tangent_cone.to_text(),
            "affine_tangent_cone": None if self.affine_tangent_cone is None else self.affine_tangent_cone.to_text(),
            "cones_agree": self.cones_agree,
        }


def verify_theorem(W: Configuration, a: Sequence, with_cone: bool = False,
                   psi: Polynomial | None = None) -> AnalysisReport:
    a = _point(W, a)
    psi = psi_det(W) if psi is None else psi
    fa = form_at(W, a)
    mult = multiplicity_at(W, a, psi)
    report = AnalysisReport(a, fa.rank, fa.corank, mult, mult == fa.corank, psi(a), W.dim)
    if with_cone and mult > 0:
        cone = tangent_cone(W, a, psi)
        report.chart = cone.chart
        report.tangent_cone = cone.projective
        report.affine_tangent_cone = cone.affine
        report.cones_agree = cone.agree
    return report


def _integral(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    d = math.lcm(*(x.denominator for x in v))
    ints = [x.numerator * (d // x.denominator) for x in v]
    g = math.gcd(*ints) or 1
    first = next((x for x in ints if x), 1)
    g = g if first > 0 else -g
    return tuple(Fraction(x // g) for x in ints)


def sample_corank_points(W: Configuration, k: int, count: int, seed: int,
                         max_attempts: int | None = None) -> list[tuple[Fraction, ...]]:
    """Rational points whose form has corank >= k, projectively distinct.

    Each attempt picks a random k-dimensional R inside a random restriction
    W ∩ K^S and solves the linear conditions on ``a`` that put R in the
    radical. Deterministic for a fixed seed.
    """
    if not 1 <= k <= W.dim - 1:
        raise ValueError(f"k must lie in 1..{W.dim - 1}, got {k}")
    rng = random.Random(seed)
    max_attempts = max_attempts or 60 * count + 200
    rows = W.rows()
    found: list[tuple[Fraction, ...]] = []
    seen = set()
    for _ in range(max_attempts):
        if len(found) >= count:
            break
        if rng.random() < 0.3:
            S = range(W.n)
        else:
            S = rng.sample(range(W.n), rng.randint(1, W.n))
        R0 = restrict(W, S)
        if R0 is None or R0.dim < k:
            continue
        coeffs = RatMatrix.from_rows([[rng.randint(-3, 3) for _ in range(R0.dim)] for _ in range(k)], R0.dim)
        R = coeffs @ R0.basis
        if mat_rank(R) < k:
            continue
        eqs = [[R[i, e] * w[e] for e in range(W.n)] for i in range(k) for w in rows]
        K = mat_kernel(RatMatrix.from_rows(eqs, W.n))
        if K.rows == 0:
            continue
        v = [Fraction(0)] * W.n
        for j in range(K.rows):
            c = rng.randint(-6, 6)
            v = [x + c * y for x, y in zip(v, K.row(j))]
        if not any(v):
            continue
        a = _integral(v)
        if a in seen:
            continue
        if form_at(W, a).corank < k:
            raise CheckFailure(f"sampled point {a} has corank below {k}")
        seen.add(a)
        found.append(a)
    if not found:
        raise SamplingExhaustedError(f"no corank-{k} point found in {max_attempts} attempts")
    return found


def has_coordinate_zeros(W: Configuration) -> bool:
    """Whether some nonzero vector of W has a zero coordinate.

    Exactly then Psi_W vanishes on some coordinate subspace; it fails only
    for a line spanned by a vector with full support.
    """
    return any(restrict(W, [f for f in range(W.n) if f != e]) is not None for e in range(W.n))


def sample_zero_points(W: Configuration, count: int, seed: int,
                       max_attempts: int | None = None) -> list[tuple[Fraction, ...]]:
    """Projectively distinct points of the hypersurface supported on a coordinate subset S.

    Psi_W vanishes identically on K^S exactly when W meets K^{E-S}.
    """
    if not has_coordinate_zeros(W):
        raise SamplingExhaustedError("Psi_W vanishes on no coordinate subspace")
    rng = random.Random(seed)
    max_attempts = max_attempts or 60 * count + 200
    found: list[tuple[Fraction, ...]] = []
    seen = set()
    for _ in range(max_attempts):
        if len(found) >= count:
            break
        S = sorted(rng.sample(range(W.n), rng.randint(1, W.n)))
        rest = [e for e in range(W.n) if e not in S]
        if not rest or restrict(W, rest) is None:
            continue
        a = [Fraction(0)] * W.n
        for e in S:
            a[e] = Fraction(rng.choice([-5, -3, -2, -1, 1, 1, 2, 3, 4, 0]))
        if not any(a):
            continue
        a = _integral(a)
        if a not in seen:
            seen.add(a)
            found.append(a)
    if not found:
        raise SamplingExhaustedError(f"no coordinate-section point found in {max_attempts} attempts")
    return found


@dataclass(frozen=True)
class IdealPair:
    F: tuple
    restriction: Polynomial | None
    partial: Polynomial
    kind: str  # "proportional", "trivial" or "inconsistent"
    constant: Fraction | None = None
    witness: tuple | None = None  # for "trivial": a proper subset with the same restriction


@dataclass(frozen=True)
class SingularIdealGens:
    order: int
    pairs: tuple

    @property
    def consistent(self) -> bool:
        return all(p.kind != "inconsistent" for p in self.pairs)

    def constants(self) -> list[Fraction]:
        return [p.constant for p in self.pairs if p.kind == "proportional"]


def singular_ideal_gens(W: Configuration, k: int, psi: Polynomial | None = None) -> SingularIdealGens:
    """Pair each ``d_F Psi_W`` (|F| <= k) with the polynomial of W ∩ K^{E-F}."""
    if not 1 <= k <= W.dim - 1:
        raise ValueError(f"k must lie in 1..{W.dim - 1}, got {k}")
    psi = psi_det(W) if psi is None else psi
    restrictions: dict[tuple, Configuration | None] = {}
    polys: dict[tuple, Polynomial | None] = {}
    pairs = []
    for size in range(k + 1):
        for F in combinations(range(W.n), size):
            R = restrict(W, [e for e in range(W.n) if e not in F])
            restrictions[F] = R
            rp = psi_det(R) if R is not None else None
            polys[F] = rp
            d = psi.partial(F)
            if not d.is_zero():
                C = poly_proportional(d, rp) if rp is not None else None
                if C is not None:
                    pairs.append(IdealPair(F, rp, d, "proportional", C))
                else:
                    pairs.append(IdealPair(F, rp, d, "inconsistent"))
                continue
            witness = None
            for sub in range(size):
                for Fp in combinations(F, sub):
                    Rp = restrictions[Fp]
                    if R is not None and Rp is not None and R.same_subspace(Rp) \
                            and poly_proportional(rp, polys[Fp]) is not None:
                        witness = Fp
                        break
                if witness is not None:
                    break
            kind = "trivial" if witness is not None else "inconsistent"
            pairs.append(IdealPair(F, rp, d, kind, None, witness))
    return SingularIdealGens(k, tuple(pairs))


@dataclass(frozen=True)
class TangentCone:
    chart: int
    order: int
    affine: Polynomial
    projective: Polynomial
    affine_by_restriction: Polynomial
    projective_by_restriction: Polynomial

    @property
    def agree(self) -> bool:
        return self.affine == self.affine_by_restriction and self.projective == self.projective_by_restriction


def _taylor_cone(psi: Polynomial, a: tuple, i: int):
    n = psi.nvars
    var = [Polynomial.variable(n, e) for e in range(n)]
    one = Polynomial.constant(n, 1)
    g = psi.substitute([one if e == i else var[e] for e in range(n)])
    b = [Fraction(0) if e == i else a[e] / a[i] for e in range(n)]
    h = g.shift(b)
    k = h.min_degree()
    lead = h.homogeneous_part(k)
    affine = lead.substitute([var[e] if e == i else var[e] - b[e] for e in range(n)])
    projective = lead.substitute([var[e].scale(a[i]) - var[i].scale(a[e]) for e in range(n)])
    return k, affine, projective


def _restriction_cone(W: Configuration, psi: Polynomial, a: tuple, i: int, k: int):
    n = W.n
    var = [Polynomial.variable(n, e) for e in range(n)]
    b = [x / a[i] for x in a]
    affine = Polynomial.zero(n)
    projective = Polynomial.zero(n)
    for J in combinations(range(n), k):
        if i in J:
            continue  # the factor a_i A_i - a_i A_i vanishes
        R = restrict(W, [e for e in range(n) if e not in J])
        rdim = 0 if R is None else R.dim
        if rdim != W.dim - k:
            continue
        d = psi.partial(J)
        if R is None:
            # top order: d_J Psi is the constant squared Plücker coordinate
            value = d.evaluate(b)
        else:
            rp = psi_det(R)
            C = poly_proportional(d, rp)
            if C is None:
                raise CheckFailure(f"partial over {J} is not proportional to its restriction")
            value = C * rp(b)
        if not value:
            continue
        aff, proj = Polynomial.constant(n, value), Polynomial.constant(n, value)
        for e in J:
            aff = aff * (var[e] - b[e])
            proj = proj * (var[e].scale(a[i]) - var[i].scale(a[e]))
        affine = affine + aff
        projective = projective + proj
    return affine, projective


def tangent_cone(W: Configuration, a: Sequence, psi: Polynomial | None = None) -> TangentCone:
    """Tangent cone at a point of the hypersurface, by Taylor expansion and by restrictions.

    The chart is the first nonzero coordinate of ``a``; the affine cone uses
    ``A_e`` (e != chart) as the chart coordinates ``A_e / A_chart``.
    """
    a = _point(W, a)
    psi = psi_det(W) if psi is None else psi
    if not any(a):
        raise ValueError("the zero vector is not a projective point")
    if psi(a) != 0:
        raise ValueError("point is not on the configuration hypersurface")
    i = next(e for e, x in enumerate(a) if x)
    k, affine, projective = _taylor_cone(psi, a, i)
    aff_r, proj_r = _restriction_cone(W, psi, a, i, k)
    return TangentCone(i, k, affine, projective, aff_r, proj_r)


@dataclass(frozen=True)
class GenericPullback:
    dim: int
    names: tuple
    generic: Polynomial
    pullback: Polynomial
    ok: bool

    def generic_text(self) -> str:
        return self.generic.to_text(self.names)


def generic_names(dim: int) -> tuple[tuple[str, ...], list[tuple[int, int]]]:
    """Variable names for a generic symmetric matrix: diagonal first, then i<j."""
    slots = [(i, i) for i in range(dim)] + list(combinations(range(dim), 2))
    names = tuple(f"B{i + 1}" if i == j else f"B{i + 1}{j + 1}" for i, j in slots)
    return names, slots


def generic_symmetric_det(dim: int) -> tuple[Polynomial, tuple[str, ...], list[tuple[int, int]]]:
    if dim > GENERIC_DET_MAX_DIM:
        raise SizeError(f"generic determinant limited to dim <= {GENERIC_DET_MAX_DIM}")
    names, slots = generic_names(dim)
    nv = len(slots)
    index = {s: t for t, s in enumerate(slots)}
    M = [[Polynomial.variable(nv, index[(min(i, j), max(i, j))]) for j in range(dim)] for i in range(dim)]
    return symbolic_det(M, nv), names, slots


def generic_det_pullback(W: Configuration, psi: Polynomial | None = None) -> GenericPullback:
    f, names, slots = generic_symmetric_det(W.dim)
    form = symbolic_form(W)
    pulled = f.substitute([form[i][j] for i, j in slots])
    psi = psi_det(W) if psi is None else psi
    return GenericPullback(W.dim, names, f, pulled, pulled == psi)


# radical containment and rank bounds, used by the certifier suites

def radical_vectors(W: Configuration | None, a: Sequence) -> RatMatrix | None:
    if W is None:
        return None
    return form_at(W, a).radical_vectors(W)


def hyperplane_radical_containment(W: Configuration, a: Sequence) -> list[tuple[int, bool, bool]]:
    """For each hyperplane W ∩ K^{E-e}: (e, rad W ⊆ rad H, rad H ⊆ rad W)."""
    out = []
    radW = radical_vectors(W, a)
    for e in range(W.n):
        H = restrict(W, [f for f in range(W.n) if f != e])
        if H is None or H.dim != W.dim - 1:
            continue
        radH = radical_vectors(H, a)
        out.append((e, subspace_contains(radH, radW), subspace_contains(radW, radH)))
    return out


def rank_bound_check(W: Configuration, a: Sequence, k: int) -> bool | None:
    """If B(a) is degenerate on every W ∩ K^{E-F} with |F| <= k, is rank < dim - k?

    Returns None when the hypothesis fails (nothing to check).
    """
    if not 1 <= k < W.dim:
        raise ValueError("k must lie in 1..dim-1")
    for size in range(k + 1):
        for F in combinations(range(W.n), size):
            R = restrict(W, [e for e in range(W.n) if e not in F])
            if R is None or form_at(R, a).corank == 0:
                return None
    return form_at(W, a).rank < W.dim - k
