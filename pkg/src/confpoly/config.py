"""Configurations W in K^E and their polynomials.

A configuration is stored by a basis matrix whose rows span W. Its
configuration polynomial is the determinant of the symbolic form
``sum_e A_e X_e(w_i) X_e(w_j)`` in that stored basis; nothing is normalised.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DimensionError, MomentumError, ZeroConfigurationError
from .exactalg import (
    Polynomial,
    RatMatrix,
    left_kernel,
    mat_det,
    mat_rank,
    rat,
    row_space_basis,
    same_row_space,
    symbolic_det,
)
from .graphhom import Multigraph, betti_one, check_conserved, circuit_basis, momentum_lift

# Plücker vectors are stored densely up to this ground-set size
DENSE_PLUCKER_LIMIT = 16


@dataclass(frozen=True, eq=False)
class Configuration:
    basis: RatMatrix

    def __post_init__(self):
        if self.basis.rows == 0 or mat_rank(self.basis) == 0:
            raise ZeroConfigurationError("the zero subspace is not a configuration")
        if mat_rank(self.basis) != self.basis.rows:
            raise ValueError("configuration basis rows are linearly dependent")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], n: int | None = None) -> "Configuration":
        if not rows:
            raise ZeroConfigurationError("the zero subspace is not a configuration")
        return cls(RatMatrix.from_rows(rows, n))

    @classmethod
    def spanned_by(cls, rows: Sequence[Sequence], n: int) -> "Configuration":
        """Configuration spanned by possibly dependent rows (echelon basis)."""
        B = row_space_basis(RatMatrix.from_rows(rows, n))
        if B.rows == 0:
            raise ZeroConfigurationError("the rows span the zero subspace")
        return cls(B)

    @classmethod
    def trivial(cls, n: int) -> "Configuration":
        return cls(RatMatrix.identity(n))

    @property
    def n(self) -> int:
        return self.basis.cols

    @property
    def dim(self) -> int:
        return self.basis.rows

    def rows(self) -> list[tuple[Fraction, ...]]:
        return [self.basis.row(i) for i in range(self.dim)]

    def same_subspace(self, other: "Configuration") -> bool:
        return self.n == other.n and same_row_space(self.basis, other.basis)

    def change_basis(self, T: RatMatrix) -> "Configuration":
        """Configuration with basis ``T @ basis``; T must be invertible."""
        return Configuration(T @ self.basis)

    def __repr__(self) -> str:
        return f"Configuration(n={self.n}, dim={self.dim}, basis={self.basis!r})"


def h1_configuration(G: Multigraph) -> Configuration:
    """H_1(G) in K^E, in the integral circuit basis of the first spanning forest."""
    if betti_one(G) == 0:
        raise ZeroConfigurationError("graph is a forest: H_1 is zero")
    return Configuration(circuit_basis(G))


def h1p_configuration(G: Multigraph, p: Sequence, q: Sequence | None = None) -> Configuration:
    """H_1(G, p): a lift q of p stacked on the circuit basis of H_1(G)."""
    p = check_conserved(G, p)
    if not any(p):
        raise MomentumError("relative homology needs a nonzero momentum")
    if q is None:
        q = momentum_lift(G, p)
    rows = [list(q)]
    if betti_one(G):
        rows.extend(circuit_basis(G).tolist())
    return Configuration.from_rows(rows, G.n_edges)


def plucker(W: Configuration) -> dict[tuple[int, ...], Fraction]:
    """Maximal minors of the stored basis, keyed by sorted column tuples.

    Dense over every dim-subset when n is small, otherwise nonzero entries only.
    """
    dense = W.n <= DENSE_PLUCKER_LIMIT
    out = {}
    for cols in combinations(range(W.n), W.dim):
        v = mat_det(W.basis.select_columns(cols))
        if v or dense:
            out[cols] = v
    return out


def symbolic_form(W: Configuration) -> list[list[Polynomial]]:
    n, rows = W.n, W.rows()
    form = [[None] * W.dim for _ in range(W.dim)]
    for i in range(W.dim):
        for j in range(i, W.dim):
            terms = {((e, 1),): rows[i][e] * rows[j][e] for e in range(n)}
            form[i][j] = form[j][i] = Polynomial(n, terms)
    return form


def psi_det(W: Configuration) -> Polynomial:
    return symbolic_det(symbolic_form(W), W.n)


def psi_plucker(W: Configuration) -> Polynomial:
    terms = {tuple((e, 1) for e in F): v * v for F, v in plucker(W).items()}
    return Polynomial(W.n, terms)


def restrict(W: Configuration, H: Sequence[int]) -> Configuration | None:
    """W ∩ K^H in echelon basis, or None when the intersection is zero."""
    H = set(H)
    outside = [e for e in range(W.n) if e not in H]
    if not outside:
        coeffs = RatMatrix.identity(W.dim)
    else:
        coeffs = left_kernel(W.basis.select_columns(outside))
    if coeffs.rows == 0:
        return None
    return Configuration(row_space_basis(coeffs @ W.basis))


def phi_config(G: Multigraph, p: Sequence, q: Sequence | None = None) -> Polynomial:
    return psi_det(h1p_configuration(G, p, q))


def form_matrix(W: Configuration, a: Sequence) -> RatMatrix:
    """Evaluated form ``sum_e a_e X_e(w_i) X_e(w_j)`` in the stored basis."""
    if len(a) != W.n:
        raise DimensionError(f"point has length {len(a)}, expected {W.n}")
    a = [rat(x) for x in a]
    rows = W.rows()
    m = [[sum((a[e] * rows[i][e] * rows[j][e] for e in range(W.n)), Fraction(0)) for j in range(W.dim)]
         for i in range(W.dim)]
    return RatMatrix.from_rows(m, W.dim)
