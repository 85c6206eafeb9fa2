"""
Formal deformations mu = mu_0 + t mu_1 + t^2 mu_2 + ... truncated at order N.

The product stays Poisson to order k exactly when condition (D_k) holds:

    sum_{i+j=k} (mu_i o1 mu_j) o v_P  =  3 sum_{i+j=k} mu_i o2 mu_j.

The terms with i = 0 or j = 0 are delta2_P(mu_k), so (D_{N+1}) is a linear
system in mu_{N+1} whose right side is built from mu_1, ..., mu_N.

Deformation kinds follow the algebra, not the usual names: a *Lie*
deformation keeps the bullet product fixed and so has every mu_n skew; an
*Associative* deformation keeps the bracket fixed and has every mu_n
symmetric.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, NotPoisson, PoissonPair, as_algebra, as_pair, require_poisson, verify
from .cohomology import L1, cochains, delta2_C, delta2_H, delta2_P, hochschild_delta, joint_kernel
from .linalg import Inconsistent, Matrix, Subspace, left_kernel, solve_affine
from .multilinear import (
    MultilinearMap, act, alternating_sum, comp, constants, is_V_symmetric, slice_basis,
)

MAX_ORDER = 6

_V_P = constants().v_P


class DeformationKind(enum.Enum):
    General = "General"
    Lie = "Lie"
    Associative = "Associative"

    @property
    def symmetry(self) -> str:
        return {"General": "none", "Lie": "skew", "Associative": "symmetric"}[self.value]


@dataclass(frozen=True, eq=False)
class Jet:
    base: Algebra
    terms: tuple  # mu_1, ..., mu_N

    def __post_init__(self):
        object.__setattr__(self, "base", as_algebra(self.base))
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) > MAX_ORDER:
            raise ValueError(f"jet order {len(self.terms)} exceeds the cap {MAX_ORDER}")
        for n, m in enumerate(self.terms, 1):
            if m.arity != 2:
                raise ValueError(f"term mu_{n} is not bilinear")
            if m.dim != self.base.dim:
                raise ValueError(f"term mu_{n} has dim {m.dim}, base has dim {self.base.dim}")
        if not verify(self.base).markl_remm:
            raise NotPoisson("the base product fails the Markl-Remm identity")

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> MultilinearMap:
        if i == 0:
            return self.base.mu
        if i <= self.order:
            return self.terms[i - 1]
        return MultilinearMap.zero(2, self.base.dim)

    def extended(self, mu: MultilinearMap) -> "Jet":
        return Jet(self.base, self.terms + (mu,))

    @classmethod
    def zero(cls, base, order: int = 0) -> "Jet":
        a = as_algebra(base)
        return cls(a, tuple(MultilinearMap.zero(2, a.dim) for _ in range(order)))

    def __eq__(self, other):
        return isinstance(other, Jet) and self.base == other.base and self.terms == other.terms


def _dk_pair(x: MultilinearMap, y: MultilinearMap) -> MultilinearMap:
    return act(_V_P, comp(1, x, y)) - 3 * comp(2, x, y)


def dk_residual(j: Jet, k: int) -> MultilinearMap:
    """Left side minus right side of (D_k); zero exactly when the condition holds."""
    if k < 1:
        raise ValueError("conditions are indexed from k = 1")
    out = MultilinearMap.zero(3, j.base.dim)
    for i in range(k + 1):
        out = out + _dk_pair(j.term(i), j.term(k - i))
    return out


def _cross_terms(j: Jet, k: int) -> MultilinearMap:
    out = MultilinearMap.zero(3, j.base.dim)
    for i in range(1, k):
        out = out + _dk_pair(j.term(i), j.term(k - i))
    return out


@dataclass(frozen=True)
class JetVerdict:
    ok: bool
    stage: str | None = None  # "symmetry" or "D"
    k: int | None = None
    residual: MultilinearMap | None = None


def verify_jet(j: Jet, kind: DeformationKind = DeformationKind.General) -> JetVerdict:
    for n, m in enumerate(j.terms, 1):
        if kind is DeformationKind.Lie and m.swapped() != -m:
            return JetVerdict(False, "symmetry", n, m + m.swapped())
        if kind is DeformationKind.Associative and m.swapped() != m:
            return JetVerdict(False, "symmetry", n, m - m.swapped())
    for k in range(1, j.order + 1):
        r = dk_residual(j, k)
        if not r.is_zero():
            return JetVerdict(False, "D", k, r)
    return JetVerdict(True)


@dataclass(frozen=True)
class Extension:
    """All admissible next terms: ``particular + kernel``."""

    particular: MultilinearMap
    kernel: Subspace

    def members(self) -> list[MultilinearMap]:
        n = self.particular.dim
        return [self.particular + m for m in cochains(self.kernel, 2, n)]


@dataclass(frozen=True)
class Obstructed:
    """No next term exists; ``certificate`` pairs to zero with every delta2_P-image
    but not with ``residual``."""

    residual: MultilinearMap
    certificate: tuple


def _delta_matrix(a: Algebra, basis) -> Matrix:
    cols = [delta2_P(a, b).to_vector() for b in basis]
    return Matrix.from_rows([[c[r] for c in cols] for r in range(len(cols[0]))], len(cols))


def _to_ambient(coeffs, basis, n) -> MultilinearMap:
    acc = MultilinearMap.zero(2, n)
    for c, b in zip(coeffs, basis):
        if c:
            acc = acc + c * b
    return acc


def extend_jet(j: Jet, kind: DeformationKind = DeformationKind.General):
    """Solve (D_{N+1}) for mu_{N+1} within the kind's symmetry slice."""
    v = verify_jet(j, kind)
    if not v.ok:
        raise ValueError(f"jet fails its {v.stage} check at index {v.k}")
    if j.order >= MAX_ORDER:
        raise ValueError(f"jet order capped at {MAX_ORDER}")
    n = j.base.dim
    basis = slice_basis(2, n, kind.symmetry)
    m = _delta_matrix(j.base, basis)
    cross = _cross_terms(j, j.order + 1)
    rhs = [-x for x in cross.to_vector()]
    try:
        sol = solve_affine(m, rhs)
    except Inconsistent:
        return Obstructed(cross, _certificate(m, cross))
    kernel = Subspace.span([_to_ambient(c, basis, n).to_vector() for c in sol.kernel.basis], n ** 3)
    return Extension(_to_ambient(sol.particular, basis, n), kernel)


def _pair(w, t: MultilinearMap):
    return sum((a * b for a, b in zip(w, t.to_vector()) if a and b), 0)


def _certificate(m: Matrix, cross: MultilinearMap) -> tuple:
    for w in left_kernel(m).basis:
        if _pair(w, cross):
            return tuple(w)
    raise AssertionError("inconsistent system without a separating functional")


@dataclass(frozen=True)
class SweepResult:
    """Outcome of the order-2 obstruction search over all first-order terms.

    ``witness`` is an obstructed mu_1 when one exists.  When it is ``None``
    the quadratic obstruction map vanishes modulo the image of delta2_P on a
    basis of the cocycle space and on all pairwise sums, which by
    polarization proves no mu_1 is obstructed.
    """

    cocycle_dim: int
    witness: MultilinearMap | None


def obstruction_sweep(a, kind: DeformationKind = DeformationKind.General) -> SweepResult:
    a = as_algebra(a)
    n = a.dim
    basis = slice_basis(2, n, kind.symmetry)
    m = _delta_matrix(a, basis)
    cocycles = cochains(joint_kernel(a, [delta2_P], 2, kind.symmetry), 2, n)
    functionals = left_kernel(m).basis

    def obstructed(x):
        q = _dk_pair(x, x)
        return any(_pair(w, q) for w in functionals)

    for z in cocycles:
        if obstructed(z):
            return SweepResult(len(cocycles), z)
    for z1, z2 in itertools.combinations(cocycles, 2):
        if obstructed(z1 + z2):
            return SweepResult(len(cocycles), z1 + z2)
    return SweepResult(len(cocycles), None)


# --------------------------------------------------------------------------
# derivation conditions


_L = "abcde"


def _k_derivation_residual(p: PoissonPair, psi: MultilinearMap) -> np.ndarray:
    # {psi(x_1..x_k), x_{k+1}} - sum_i psi(.., {x_i, x_{k+1}}, ..)
    k = psi.arity
    b, t = p.bracket.tensor, psi.tensor
    L = _L[:k + 1]
    out = np.einsum(f"{L[:k]}y,y{L[k]}z->{L}z", t, b)
    for i in range(k):
        inner = L[:i] + "y" + L[i + 1:k]
        out = out - np.einsum(f"{L[i]}{L[k]}y,{inner}z->{L}z", b, t)
    return out


def is_lie_k_derivation(p, psi: MultilinearMap) -> bool:
    """{psi(x_1..x_k), x_{k+1}} = sum_i psi(x_1, .., {x_i, x_{k+1}}, .., x_k) on all basis tuples."""
    p = as_pair(p)
    if not 1 <= psi.arity <= 3:
        raise ValueError("arity must be 1, 2 or 3")
    if psi.dim != p.dim:
        raise ValueError(f"cochain dim {psi.dim} against algebra dim {p.dim}")
    return not any(_k_derivation_residual(p, psi).flat)


def biderivation_defect(p, phi: MultilinearMap) -> MultilinearMap:
    """{phi(x1,x2),x3} - phi({x1,x3},x2) - phi({x2,x3},x1).

    On symmetric maps this is the k = 2 derivation condition; on general
    maps it is the stricter identity used for biderivations.
    """
    p = as_pair(p)
    b, t = p.bracket.tensor, phi.tensor
    e = np.einsum
    out = e("ijl,lks->ijks", t, b) - e("ikl,ljs->ijks", b, t) - e("jkl,lis->ijks", b, t)
    return MultilinearMap(out, _trusted=True)


def is_lie_biderivation(p, phi: MultilinearMap) -> bool:
    return biderivation_defect(p, phi).is_zero()


def lie_biderivation_space(p, symmetry_filter: str = "none") -> Subspace:
    return joint_kernel(as_pair(p), [biderivation_defect], 2, symmetry_filter)


def lie_first_order_space(a) -> Subspace:
    """{phi skew : delta2_C phi = 0 and L1 phi = 0}."""
    require_poisson(a)
    return joint_kernel(as_pair(a), [delta2_C, L1], 2, "skew")


def assoc_first_order_space(a) -> Subspace:
    """{phi symmetric : delta2_H phi = 0 and phi a Lie biderivation}."""
    require_poisson(a)
    return joint_kernel(as_pair(a), [delta2_H, biderivation_defect], 2, "symmetric")


# --------------------------------------------------------------------------
# the Poisson-Hochschild complex


def _k_derivation_op(p, psi):
    return MultilinearMap(_k_derivation_residual(as_pair(p), psi), _trusted=True)


def lie_k_derivation_space(p, k: int, symmetry_filter: str = "none") -> Subspace:
    if not 1 <= k <= 3:
        raise ValueError("k must be 1, 2 or 3")
    return joint_kernel(as_pair(p), [_k_derivation_op], k, symmetry_filter)


def ph_cochain_space(p, k: int, fully_symmetric: bool = False) -> Subspace:
    """k-linear Lie k-derivations that are symmetric.

    Symmetric means ``psi o V_k = 0`` by default; ``fully_symmetric=True``
    asks for invariance under every argument permutation instead.  The two
    agree for k = 2 and differ for k = 3.  For k = 1 the signed-sum notion
    forces psi = 0.
    """
    if not 1 <= k <= 3:
        raise ValueError("k must be 1, 2 or 3")
    p = as_pair(p)
    if fully_symmetric:
        return joint_kernel(p, [_k_derivation_op], k, "symmetric")
    v = alternating_sum(k)
    return joint_kernel(p, [_k_derivation_op, lambda _a, psi: act(v, psi)], k)


@dataclass(frozen=True)
class PHCheck:
    image: MultilinearMap
    is_lie_deriv: bool
    is_V_symmetric: bool


def ph_delta_check(p, psi: MultilinearMap) -> PHCheck:
    p = as_pair(p)
    image = hochschild_delta(p, psi)
    is_deriv = not any(_k_derivation_residual(p, image).flat)
    return PHCheck(image, is_deriv, is_V_symmetric(image))


# --------------------------------------------------------------------------
# rigidity


@dataclass(frozen=True)
class RigidityReport:
    assoc_rigid_order1: bool
    lie_order1_dim: int
    sym_order1_dim: int
    biderivation_dim: int


def rigidity_probe(p) -> RigidityReport:
    """First-order certificates only: a zero space rules out infinitesimal deformations of that kind."""
    require_poisson(p)
    sym = assoc_first_order_space(p).dim
    return RigidityReport(
        assoc_rigid_order1=sym == 0,
        lie_order1_dim=lie_first_order_space(p).dim,
        sym_order1_dim=sym,
        biderivation_dim=lie_biderivation_space(p).dim,
    )
