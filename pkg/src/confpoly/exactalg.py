"""Exact rational arithmetic: sparse polynomials and dense matrices over Q.

Rationals are :class:`fractions.Fraction`. Polynomials are sparse maps from
monomials to nonzero coefficients; a monomial is a tuple of
``(variable, exponent)`` pairs sorted by variable index, ``()`` being the
unit monomial. Everything here is immutable once built.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionError

Monomial = tuple
Scalar = Union[int, Fraction, str]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Polynomial:
    """Sparse multivariate polynomial over Q in variables ``A1..A<nvars>``.

    Variable ``i`` (0-based) prints as ``A<i+1>``.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Scalar] | None = None):
        if nvars < 0:
            raise DimensionError("nvars must be non-negative")
        self.nvars = nvars
        clean = {}
        for mono, c in (terms or {}).items():
            c = rat(c)
            if c == 0:
                continue
            mono = tuple(sorted((int(v), int(e)) for v, e in mono if e != 0))
            for v, e in mono:
                if not 0 <= v < nvars or e < 0:
                    raise DimensionError(f"bad monomial {mono} for {nvars} variables")
            clean[mono] = clean.get(mono, 0) + c
            if clean[mono] == 0:
                del clean[mono]
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "Polynomial":
        c = rat(c)
        return cls._raw(nvars, {(): c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        return cls._raw(nvars, {((i, 1),): Fraction(1)})

    @classmethod
    def product_of(cls, nvars: int, indices: Iterable[int], coeff: Scalar = 1) -> "Polynomial":
        """``coeff * prod(A_i for i in indices)``; repeated indices raise powers."""
        exps: dict[int, int] = {}
        for i in indices:
            if not 0 <= i < nvars:
                raise DimensionError(f"variable index {i} out of range")
            exps[i] = exps.get(i, 0) + 1
        return cls(nvars, {tuple(sorted(exps.items())): coeff})

    # inspection
    @property
    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical (graded lexicographic, descending) order."""
        return sorted(self._terms.items(), key=lambda t: self._order_key(t[0]))

    def _order_key(self, mono: Monomial):
        dense = [0] * self.nvars
        for v, e in mono:
            dense[v] = e
        return (-_mono_degree(mono), [-e for e in dense])

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_mono_degree(m) for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((_mono_degree(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(m) for m in self._terms}) <= 1

    def is_multilinear(self) -> bool:
        return all(e == 1 for m in self._terms for _, e in m)

    def variables(self) -> set[int]:
        return {v for m in self._terms for v, _ in m}

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: c for m, c in self._terms.items() if _mono_degree(m) == d})

    def leading(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    # arithmetic
    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = rat(c)
        if c == 0:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and evaluation
    def __call__(self, a: Sequence[Scalar]) -> Fraction:
        return self.evaluate(a)

    def evaluate(self, a: Sequence[Scalar]) -> Fraction:
        if len(a) != self.nvars:
            raise DimensionError(f"point has length {len(a)}, expected {self.nvars}")
        a = [rat(x) for x in a]
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                t *= a[v] ** e
                if not t:
                    break
            total += t
        return total

    def partial(self, indices: Iterable[int] | int) -> "Polynomial":
        """Iterated partial derivative over a multiset of variable indices."""
        if isinstance(indices, int):
            indices = (indices,)
        p = self
        for i in indices:
            if not 0 <= i < self.nvars:
                raise DimensionError(f"variable index {i} out of range")
            out = {}
            for m, c in p._terms.items():
                exps = dict(m)
                e = exps.get(i, 0)
                if e == 0:
                    continue
                if e == 1:
                    del exps[i]
                else:
                    exps[i] = e - 1
                out[tuple(sorted(exps.items()))] = c * e
            p = Polynomial._raw(self.nvars, out)
        return p

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace variable ``i`` by ``images[i]`` (all in one target ring)."""
        if len(images) != self.nvars:
            raise DimensionError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            raise DimensionError("cannot substitute into a ring with no variables")
        target = images[0].nvars
        for q in images:
            if q.nvars != target:
                raise DimensionError("substitution images live in different rings")
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        total = Polynomial.zero(target)
        for m, c in self._terms.items():
            t = Polynomial.constant(target, c)
            for v, e in m:
                t = t * power(v, e)
            total = total + t
        return total

    def shift(self, a: Sequence[Scalar]) -> "Polynomial":
        """``p(A + a)``: Taylor expansion about the point ``a``."""
        if len(a) != self.nvars:
            raise DimensionError(f"point has length {len(a)}, expected {self.nvars}")
        images = [Polynomial.variable(self.nvars, i) + rat(x) for i, x in enumerate(a)]
        return self.substitute(images)

    def multiplicity(self, a: Sequence[Scalar]) -> int:
        """Order of vanishing at ``a`` (0 off the zero set). Zero polynomial raises."""
        if not self._terms:
            raise ValueError("the zero polynomial has no multiplicity")
        return self.shift(a).min_degree()

    # text
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"A{i + 1}" for i in range(self.nvars)]
        pieces = []
        for m, c in self.terms:
            mono = "*".join(names[v] if e == 1 else f"{names[v]}^{e}" for v, e in m)
            mag = abs(c)
            if not mono:
                body = rat_text(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rat_text(mag)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def monomial_text(self, mono: Monomial, names: Sequence[str] | None = None) -> str:
        names = names or [f"A{i + 1}" for i in range(self.nvars)]
        if not mono:
            return "1"
        return "*".join(names[v] if e == 1 else f"{names[v]}^{e}" for v, e in mono)

    def coefficient_map(self, names: Sequence[str] | None = None) -> dict[str, str]:
        return {self.monomial_text(m, names): rat_text(c) for m, c in self.terms}

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_text()!r})"


def poly_arith(op: str, p: Polynomial, q) -> Polynomial:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scale":
        if isinstance(q, Polynomial):
            raise TypeError("scale takes a rational factor")
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: Polynomial, a: Sequence[Scalar]) -> Fraction:
    return p.evaluate(a)


def poly_partial(p: Polynomial, indices: Iterable[int]) -> Polynomial:
    return p.partial(indices)


def poly_proportional(p: Polynomial, q: Polynomial) -> Fraction | None:
    """The nonzero ``C`` with ``p == C*q``, or None. Two zeros give 1."""
    p._check(q)
    if p.is_zero() and q.is_zero():
        return Fraction(1)
    if p.is_zero() or q.is_zero() or len(p) != len(q):
        return None
    mp, cp = p.leading()
    mq, cq = q.leading()
    if mp != mq:
        return None
    # p*lc(q) == q*lc(p) without dividing either polynomial
    if p.scale(cq) != q.scale(cp):
        return None
    return cp / cq


class RatMatrix:
    """Dense rows x cols matrix of Fractions, stored row-major and immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        entries = tuple(rat(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.rows else ()

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def select_columns(self, cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix(self.rows, len(cols), [self[i, j] for i in range(self.rows) for j in cols])

    def select_rows(self, rows: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows([self.row(i) for i in rows], self.cols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        ocols = [other.column(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols)
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[Scalar]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        v = [rat(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_text(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def mat_det(M: RatMatrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination on an integer scaling of M."""
    if M.rows != M.cols:
        raise DimensionError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    a = []
    scale = 1
    for i in range(n):
        r = M.row(i)
        d = math.lcm(*(x.denominator for x in r))
        scale *= d
        a.append([x.numerator * (d // x.denominator) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for s in range(k + 1, n):
                if a[s][k] != 0:
                    a[k], a[s] = a[s], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def det_cofactor(M: RatMatrix) -> Fraction:
    """Leibniz/cofactor expansion. Exponential; an oracle for small matrices only."""
    if M.rows != M.cols:
        raise DimensionError("non-square matrix")
    n = M.rows
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        t = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            t *= M[i, j]
            if not t:
                break
        total += t
    return total


def rref(M: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form; pivots are the first nonzero column of each row."""
    a = M.tolist()
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        pr = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(M.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return RatMatrix.from_rows(a, M.cols), tuple(pivots)


def mat_rank(M: RatMatrix) -> int:
    return len(rref(M)[1])


def mat_kernel(M: RatMatrix) -> RatMatrix:
    """Rows form a basis of the right kernel ``{x : M x = 0}``."""
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return RatMatrix.from_rows(basis, M.cols)


def row_space_basis(M: RatMatrix) -> RatMatrix:
    """Nonzero rows of the RREF of M."""
    R, pivots = rref(M)
    return R.select_rows(range(len(pivots)))


def left_kernel(M: RatMatrix) -> RatMatrix:
    """Rows ``c`` with ``c M = 0``."""
    return mat_kernel(M.transpose())


def stack(*mats: RatMatrix) -> RatMatrix:
    cols = {m.cols for m in mats}
    if len(cols) != 1:
        raise DimensionError("stacked matrices need equal column counts")
    return RatMatrix(sum(m.rows for m in mats), cols.pop(), [x for m in mats for x in m.entries])


def subspace_contains(big: RatMatrix, small: RatMatrix) -> bool:
    """Whether the row space of ``small`` lies in the row space of ``big``."""
    if small.rows == 0:
        return True
    if big.rows == 0:
        return small.is_zero()
    return mat_rank(stack(big, small)) == mat_rank(big)


def same_row_space(a: RatMatrix, b: RatMatrix) -> bool:
    return subspace_contains(a, b) and subspace_contains(b, a)


def symbolic_det(entries: Sequence[Sequence[Polynomial]], nvars: int) -> Polynomial:
    """Determinant of a square matrix of polynomials.

    Laplace expansion along rows, memoised on the set of columns already used,
    so the cost is ``O(2^n * n)`` polynomial products instead of ``n!``.
    """
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise DimensionError("symbolic determinant of a non-square matrix")
    if n == 0:
        return Polynomial.constant(nvars, 1)
    # minors[mask]: det of the rows 0..|mask|-1 restricted to the columns in mask
    minors = {0: Polynomial.constant(nvars, 1)}
    for r in range(n):
        nxt = {}
        for mask, m in minors.items():
            if m.is_zero():
                continue
            for c in range(n):
                if mask >> c & 1:
                    continue
                entry = entries[r][c]
                if entry.is_zero():
                    continue
                # sign: number of used columns to the right of c
                above = bin(mask >> (c + 1)).count("1")
                term = entry * m
                if above % 2:
                    term = -term
                key = mask | (1 << c)
                nxt[key] = nxt[key] + term if key in nxt else term
        minors = nxt
    return minors.get((1 << n) - 1, Polynomial.zero(nvars))
