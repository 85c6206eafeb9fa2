"""
Exact linear algebra over the rationals.

Scalars are ``gmpy2.mpq`` values: always reduced, denominator positive, and
roughly an order of magnitude faster than :class:`fractions.Fraction` inside
numpy object arrays.  Matrices are small and dense; kernels and affine
solutions come out of a single reduced row echelon pass so that every basis
is canonical and reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class Inconsistent(ValueError):
    """Raised by :func:`solve_affine` when the system has no solution."""


def as_rational(x) -> Rational:
    """Coerce an int, mpq, Fraction or ``"p/q"`` string to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass an int or 'p/q' string")
    return mpq(x)


def parse_rational(s: str) -> Rational:
    m = _RATIONAL_RE.match(s)
    if m is None:
        raise ValueError(f"malformed rational {s!r}; expected 'p' or 'p/q'")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return mpq(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` when the denominator is 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"matrix of shape {self.rows}x{self.cols} needs "
                f"{self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(as_rational(x) for x in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} against {self.cols} columns")
        out = []
        for i in range(self.rows):
            s = ZERO
            for a, b in zip(self.row(i), v):
                if a and b:
                    s += a * b
            out.append(s)
        return tuple(out)

    def __matmul__(self, v):
        return self.apply(v)

    def rank(self) -> int:
        return len(_rref(self.to_rows(), self.cols)[1])


def _rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot columns)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        inv = ONE / piv[c]
        if inv != ONE:
            for j in range(c, ncols):
                if piv[j]:
                    piv[j] *= inv
        nz = [j for j in range(c, ncols) if piv[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * piv[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim with its basis in reduced row echelon form.

    Two subspaces are equal exactly when their canonical bases agree, so ``==``
    is subspace equality.  Build instances with :meth:`span`.
    """

    ambient_dim: int
    basis: tuple  # tuple of tuples, RREF rows

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([as_rational(x) for x in v])
        reduced, _ = _rref(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(Matrix.identity(n).to_rows(), n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(list(self.basis) + [v], self.ambient_dim).dim == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(list(other.basis) + list(self.basis), self.ambient_dim).dim == other.dim

    def __le__(self, other: "Subspace") -> bool:
        return self.is_subspace_of(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)


def kernel_basis(m: Matrix) -> Subspace:
    """Exact right kernel ``{v : m v = 0}`` as a canonical subspace."""
    reduced, pivots = _rref(m.to_rows(), m.cols)
    pivset = set(pivots)
    vecs = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, m.cols)


@dataclass(frozen=True)
class AffineSolution:
    particular: tuple
    kernel: Subspace


def solve_affine(m: Matrix, rhs: Sequence) -> AffineSolution:
    """Solve ``m x = rhs`` exactly.

    The particular solution sets every free variable to zero.  Raises
    :class:`Inconsistent` when no solution exists.
    """
    if len(rhs) != m.rows:
        raise ValueError(f"rhs of length {len(rhs)} against {m.rows} rows")
    aug = [list(r) + [as_rational(b)] for r, b in zip(m.to_rows(), rhs)]
    reduced, pivots = _rref(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        raise Inconsistent("system has no solution")
    x = [ZERO] * m.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[m.cols]
    return AffineSolution(tuple(x), kernel_basis(m))


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.to_rows())]
    reduced, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise Inconsistent("matrix is singular")
    return Matrix.from_rows([r[n:] for r in reduced], n)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection via the kernel of ``[A^T | -B^T]``."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    cols = [list(v) for v in a.basis] + [[-x for x in v] for v in b.basis]
    m = Matrix.from_rows([[c[i] for c in cols] for i in range(n)], len(cols))
    ker = kernel_basis(m)
    vecs = []
    for coeffs in ker.basis:
        v = [ZERO] * n
        for c, basis_vec in zip(coeffs[:a.dim], a.basis):
            if c:
                for i, x in enumerate(basis_vec):
                    if x:
                        v[i] += c * x
        vecs.append(v)
    return Subspace.span(vecs, n)


def left_kernel(m: Matrix) -> Subspace:
    """``{w : w m = 0}``; its vectors detect membership in the column space."""
    t = Matrix.from_rows([[m.entries[i * m.cols + j] for i in range(m.rows)] for j in range(m.cols)], m.rows) \
        if m.cols else Matrix.zeros(0, m.rows)
    return kernel_basis(t)
