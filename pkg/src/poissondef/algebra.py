"""
Poisson algebras as structure constants.

A Poisson algebra is handled in two equivalent presentations:

* :class:`PoissonPair` -- a commutative associative product ``x . y`` (the
  *bullet*) and a Lie bracket ``{x, y}``;
* :class:`Algebra` -- one nonassociative product ``xy = {x, y} + x . y``
  satisfying ``3A(x,y,z) = (xz)y + (yz)x - (yx)z - (zx)y`` where
  ``A(x,y,z) = (xy)z - x(yz)``.

The bracket and bullet are recovered as the skew and symmetric parts of the
product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import ONE, ZERO, Matrix, Subspace, kernel_basis
from .multilinear import MultilinearMap, sym_skew_parts


class NotPoisson(ValueError):
    """The structure constants do not define a Poisson algebra."""


class NotIdempotent(ValueError):
    pass


def _basis(n):
    return [np.array([ONE if i == j else ZERO for j in range(n)], dtype=object) for i in range(n)]


@dataclass(frozen=True, eq=False)
class Algebra:
    """Structure constants of the nonassociative product mu_0 on Q^n."""

    mu: MultilinearMap

    def __post_init__(self):
        if self.mu.arity != 2:
            raise ValueError("an algebra product must be bilinear")

    @classmethod
    def from_gamma(cls, gamma) -> "Algebra":
        return cls(MultilinearMap(gamma))

    @classmethod
    def zero(cls, n: int) -> "Algebra":
        return cls(MultilinearMap.zero(2, n))

    @property
    def dim(self) -> int:
        return self.mu.dim

    @property
    def gamma(self) -> np.ndarray:
        return self.mu.tensor

    def product(self, x, y):
        return self.mu(x, y)

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.mu == other.mu

    def __hash__(self):
        return hash(self.mu)


@dataclass(frozen=True, eq=False)
class PoissonPair:
    bullet: MultilinearMap
    bracket: MultilinearMap

    def __post_init__(self):
        for name, m in (("bullet", self.bullet), ("bracket", self.bracket)):
            if m.arity != 2:
                raise ValueError(f"{name} must be bilinear")
        if self.bullet.dim != self.bracket.dim:
            raise ValueError(f"bullet has dim {self.bullet.dim}, bracket has dim {self.bracket.dim}")
        if self.bullet.swapped() != self.bullet:
            raise ValueError("bullet structure constants are not symmetric in (i, j)")
        if self.bracket.swapped() != -self.bracket:
            raise ValueError("bracket structure constants are not skew in (i, j)")

    @property
    def dim(self) -> int:
        return self.bullet.dim

    @classmethod
    def zero(cls, n: int) -> "PoissonPair":
        z = MultilinearMap.zero(2, n)
        return cls(z, z)

    def __eq__(self, other):
        return isinstance(other, PoissonPair) and self.bullet == other.bullet \
            and self.bracket == other.bracket

    def __hash__(self):
        return hash((self.bullet, self.bracket))


def combine(p: PoissonPair) -> Algebra:
    return Algebra(p.bullet + p.bracket)


def split(a: Algebra) -> PoissonPair:
    bullet, bracket = sym_skew_parts(a.mu)
    return PoissonPair(bullet, bracket)


def as_algebra(x) -> Algebra:
    return combine(x) if isinstance(x, PoissonPair) else x


def as_pair(x) -> PoissonPair:
    return split(x) if isinstance(x, Algebra) else x


# --------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class Witness:
    axiom: str
    triple: tuple  # 1-based basis indices
    residual: tuple


@dataclass(frozen=True)
class AxiomReport:
    commutative: bool
    associative: bool
    jacobi: bool
    leibniz: bool
    markl_remm: bool
    witnesses: tuple = field(default=())

    @property
    def poisson(self) -> bool:
        return self.commutative and self.associative and self.jacobi and self.leibniz

    @property
    def all_true(self) -> bool:
        return self.poisson and self.markl_remm


def associator(a: Algebra, x, y, z):
    """A(x, y, z) = (xy)z - x(yz)."""
    for v in (x, y, z):
        if len(v) != a.dim:
            raise ValueError(f"vector of length {len(v)} in an algebra of dimension {a.dim}")
    m = a.product
    return m(m(x, y), z) - m(x, m(y, z))


def markl_remm_form(inner: np.ndarray, outer: np.ndarray) -> np.ndarray:
    """Bilinear form of the identity: the inner product fills the nested slot.

    Indexed [i, j, k, s]:  sum over l of
    3 in_ij^l out_lk^s - 3 out_il^s in_jk^l - in_ik^l out_lj^s - in_jk^l out_li^s
    + in_ji^l out_lk^s + in_ki^l out_lj^s.
    """
    e = np.einsum
    u, w = inner, outer
    return (3 * e("ijl,lks->ijks", u, w) - 3 * e("ils,jkl->ijks", w, u)
            - e("ikl,ljs->ijks", u, w) - e("jkl,lis->ijks", u, w)
            + e("jil,lks->ijks", u, w) + e("kil,ljs->ijks", u, w))


def markl_remm_tensor(a: Algebra) -> np.ndarray:
    """The structure-constant sum, indexed [i, j, k, s]; zero iff the identity holds."""
    return markl_remm_form(a.gamma, a.gamma)


def _first_failure(name, tensor, witnesses):
    for idx in np.ndindex(*tensor.shape[:-1]):
        r = tensor[idx]
        if any(r):
            witnesses.append(Witness(name, tuple(i + 1 for i in idx), tuple(r)))
            return False
    return True


def _pair_residuals(p: PoissonPair) -> dict[str, np.ndarray]:
    d, b = p.bullet.tensor, p.bracket.tensor
    e = np.einsum
    return {
        "commutative": d - np.transpose(d, (1, 0, 2)),
        # (x.y).z - x.(y.z)
        "associative": e("ijl,lks->ijks", d, d) - e("jkl,ils->ijks", d, d),
        # {x,{y,z}} + {y,{z,x}} + {z,{x,y}}
        "jacobi": e("jkl,ils->ijks", b, b) + e("kil,jls->ijks", b, b) + e("ijl,kls->ijks", b, b),
        # {x.y, z} - x.{y,z} - {x,z}.y
        "leibniz": e("ijl,lks->ijks", d, b) - e("jkl,ils->ijks", b, d) - e("ikl,ljs->ijks", b, d),
    }


def verify(x) -> AxiomReport:
    """Check every axiom exactly on all basis triples.

    Accepts an :class:`Algebra` (split into its parts first) or a
    :class:`PoissonPair` (combined to evaluate the single identity).
    Failures are reported through the first failing triple of each axiom.
    """
    p, a = as_pair(x), as_algebra(x)
    witnesses: list[Witness] = []
    flags = {name: _first_failure(name, t, witnesses) for name, t in _pair_residuals(p).items()}
    # residual reported as (xz)y + (yz)x - (yx)z - (zx)y - 3A(x,y,z)
    flags["markl_remm"] = _first_failure("markl_remm", -markl_remm_tensor(a), witnesses)
    return AxiomReport(witnesses=tuple(witnesses), **flags)


def is_poisson(x) -> bool:
    return verify(x).all_true


def require_poisson(x):
    report = verify(x)
    if not report.all_true:
        w = report.witnesses[0]
        raise NotPoisson(f"{w.axiom} fails at basis triple {w.triple}")
    return report


# --------------------------------------------------------------------------
# annihilator and idempotents


def annihilator(a: Algebra, two_sided: bool = True) -> Subspace:
    """``{X : X e_j = 0 (and e_j X = 0) for all j}``.

    With ``two_sided=False`` only the left condition ``X . Y = 0`` is imposed.
    """
    n, g = a.dim, a.gamma
    rows = []
    for j in range(n):
        for s in range(n):
            rows.append([g[i, j, s] for i in range(n)])  # (X e_j)_s
            if two_sided:
                rows.append([g[j, i, s] for i in range(n)])  # (e_j X)_s
    return kernel_basis(Matrix.from_rows(rows, n))


def idempotent_central_check(p: PoissonPair, e) -> bool:
    """For an idempotent ``e`` of the bullet product, test that ``{e, e_j} = 0`` for all j."""
    e = np.asarray(e, dtype=object)
    if e.shape != (p.dim,):
        raise ValueError(f"vector of length {len(e)} in dimension {p.dim}")
    if any(p.bullet(e, e) - e):
        raise NotIdempotent("e . e != e")
    return not any(any(p.bracket(e, v)) for v in _basis(p.dim))
