"""
Coboundary operators of a Poisson algebra and their cocycle spaces.

Sign and scale conventions
--------------------------
Write ``X.Y`` for the nonassociative product mu_0, ``X*Y`` for its
symmetric part (the bullet) and ``[X,Y]`` for its skew part (the bracket).

``delta2_P`` is the linearization of the Markl-Remm identity (12 terms).
``delta2_C`` is the group-algebra operator ``1/2 (phi o1 b + b o1 phi) o v_L``
built from the bracket ``b``; on skew maps it is minus the textbook
Chevalley-Eilenberg coboundary.  ``delta2_H`` is minus the textbook
Hochschild coboundary of the bullet.  ``delta2_C_tilde`` is the companion
that governs the bracket/symmetric-part block.  With these,

    delta2_P phi = 2 (delta2_C phi_a + delta2_C_tilde phi_s + delta2_H phi_a
                      + 2 delta2_H phi_s + L1 phi_a + L2 phi_s)

holds for every bilinear ``phi`` on every Poisson algebra, and

    12 delta2_C phi_a = phi_{V_3} applied to delta2_P phi,
    12 delta2_H phi_s = phi_{Id - t13 + t23 - c^2} applied to delta2_P phi.

Group-algebra forms with the uncorrected coefficients are kept in
:data:`uncorrected_forms` for comparison; apart from L1 they do not satisfy
these identities (see README).
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .algebra import as_algebra, as_pair, markl_remm_form
from .linalg import Matrix, Subspace, kernel_basis
from .multilinear import (
    CYCLE, CYCLE2, ID3, TAU12, TAU13, TAU23, GroupAlgebraElement, MultilinearMap,
    act, alternating_sum, comp, constants, slice_basis, sym_skew_parts,
)


class NotSkew(ValueError):
    pass


_G = GroupAlgebraElement.of
_CONST = constants()


@dataclass(frozen=True)
class _Parts:
    mu: MultilinearMap
    bullet: MultilinearMap
    bracket: MultilinearMap


def _parts(a) -> _Parts:
    alg, pair = as_algebra(a), as_pair(a)
    return _Parts(alg.mu, pair.bullet, pair.bracket)


def _check(a, phi: MultilinearMap, arity: int = 2):
    if phi.arity != arity:
        raise ValueError(f"expected a {arity}-linear cochain, got arity {phi.arity}")
    if phi.dim != a.dim:
        raise ValueError(f"cochain dimension {phi.dim} does not match algebra dimension {a.dim}")


def _t(*terms) -> MultilinearMap:
    """Sum of ``(coeff, spec, x, y)`` einsum terms producing an [i,j,k,s] tensor."""
    out = None
    for coeff, spec, x, y in terms:
        v = coeff * np.einsum(spec + "->ijks", x, y)
        out = v if out is None else out + v
    return MultilinearMap(out, _trusted=True)


# --------------------------------------------------------------------------
# the Poisson complex in low degree


def delta1_P(a, f: MultilinearMap) -> MultilinearMap:
    """f(X).Y + X.f(Y) - f(X.Y)."""
    a = as_algebra(a)
    _check(a, f, 1)
    g, t = a.gamma, f.tensor
    e = np.einsum
    out = e("il,ljs->ijs", t, g) + e("jl,ils->ijs", t, g) - e("ijl,ls->ijs", g, t)
    return MultilinearMap(out, _trusted=True)


def delta2_P(a, phi: MultilinearMap) -> MultilinearMap:
    """The 12-term linearization of the Markl-Remm identity at mu_0."""
    a = as_algebra(a)
    _check(a, phi)
    g, p = a.gamma, phi.tensor
    return MultilinearMap(markl_remm_form(g, p) + markl_remm_form(p, g), _trusted=True)


def delta2_P_group(a, phi: MultilinearMap) -> MultilinearMap:
    """(mu_0 o1 phi + phi o1 mu_0) o v_P - 3 (mu_0 o2 phi + phi o2 mu_0)."""
    a = as_algebra(a)
    _check(a, phi)
    mu = a.mu
    return act(_CONST.v_P, comp(1, mu, phi) + comp(1, phi, mu)) \
        - 3 * (comp(2, mu, phi) + comp(2, phi, mu))


# --------------------------------------------------------------------------
# Chevalley / Hochschild parts and the cross operators


def delta2_C(a, phi: MultilinearMap) -> MultilinearMap:
    _check(a, phi)
    b = _parts(a).bracket
    return act(_CONST.v_L, comp(1, phi, b) + comp(1, b, phi)) / 2


def delta2_C_tilde(a, phi: MultilinearMap) -> MultilinearMap:
    """phi([X,Y],Z) - phi([X,Z],Y) + phi([Y,Z],X) + [phi(X,Y),Z] + [phi(Y,Z),X] + [phi(X,Z),Y]."""
    _check(a, phi)
    b, p = _parts(a).bracket.tensor, phi.tensor
    return _t((1, "ijl,lks", b, p), (-1, "ikl,ljs", b, p), (1, "jkl,lis", b, p),
              (1, "ijl,lks", p, b), (1, "jkl,lis", p, b), (1, "ikl,ljs", p, b))


def delta2_H(a, phi: MultilinearMap) -> MultilinearMap:
    """phi(X*Y,Z) - phi(X,Y*Z) + phi(X,Y)*Z - X*phi(Y,Z)."""
    _check(a, phi)
    d, p = _parts(a).bullet.tensor, phi.tensor
    return _t((1, "ijl,lks", d, p), (-1, "jkl,ils", d, p),
              (1, "ijl,lks", p, d), (-1, "jkl,ils", p, d))


def delta2_H_group(a, phi: MultilinearMap) -> MultilinearMap:
    """Group-algebra form of delta2_H written with mu_0 only.

    2 delta2_H = phi o1 mu_0 o (Id + t12) - phi o2 mu_0 o (Id + t23)
                 + mu_0 o1 phi o (Id - c) - mu_0 o2 phi o (Id - c^2)
    """
    a = as_algebra(a)
    _check(a, phi)
    mu = a.mu
    return (act(_G((1, ID3), (1, TAU12)), comp(1, phi, mu))
            - act(_G((1, ID3), (1, TAU23)), comp(2, phi, mu))
            + act(_G((1, ID3), (-1, CYCLE)), comp(1, mu, phi))
            - act(_G((1, ID3), (-1, CYCLE2)), comp(2, mu, phi))) / 2


def L1(a, phi: MultilinearMap) -> MultilinearMap:
    """phi(X*Y,Z) - phi(X,Z)*Y - X*phi(Y,Z)."""
    _check(a, phi)
    d, p = _parts(a).bullet.tensor, phi.tensor
    return _t((1, "ijl,lks", d, p), (-1, "ikl,ljs", p, d), (-1, "jkl,ils", p, d))


def L2(a, phi: MultilinearMap) -> MultilinearMap:
    """-3 phi(X,[Y,Z]) + [phi(X,Y),Z] - [phi(X,Z),Y]."""
    _check(a, phi)
    b, p = _parts(a).bracket.tensor, phi.tensor
    return _t((-3, "jkl,ils", b, p), (1, "ijl,lks", p, b), (-1, "ikl,ljs", p, b))


def lichnerowicz_delta2(p, phi: MultilinearMap) -> MultilinearMap:
    """Lichnerowicz-Poisson coboundary of a skew bilinear map for the bracket of ``p``.

    2phi([X,Y],Z) + 2phi([Y,Z],X) - 2phi([X,Z],Y) + 2[phi(X,Y),Z] + 2[phi(Y,Z),X] - 2[phi(X,Z),Y]
    """
    _check(as_pair(p), phi)
    if phi.swapped() != -phi:
        raise NotSkew("the Lichnerowicz-Poisson coboundary takes a skew-symmetric cochain")
    return _lichnerowicz(p, phi)


def _lichnerowicz(p, phi):
    b, q = as_pair(p).bracket.tensor, phi.tensor
    return _t((2, "ijl,lks", b, q), (2, "jkl,lis", b, q), (-2, "ikl,ljs", b, q),
              (2, "ijl,lks", q, b), (2, "jkl,lis", q, b), (-2, "ikl,ljs", q, b))


# --------------------------------------------------------------------------
# textbook coboundaries of the Lie and associative parts, any arity


_LETTERS = "abcdefgh"


def chevalley_delta(p, psi: MultilinearMap) -> MultilinearMap:
    """Chevalley-Eilenberg coboundary of ``psi`` with values in the adjoint module.

    d psi(x_0..x_k) = sum_i (-1)^i [x_i, psi(..^x_i..)]
                      + sum_{i<j} (-1)^(i+j) psi([x_i,x_j], ..^x_i..^x_j..)

    ``d o d = 0`` on alternating cochains.
    """
    pair = as_pair(p)
    k = psi.arity
    if not 1 <= k <= 3:
        raise ValueError("cochain arity must be 1, 2 or 3")
    _check(pair, psi, k)
    b, t = pair.bracket.tensor, psi.tensor
    L = _LETTERS[:k + 1]
    out = None
    for i in range(k + 1):
        rest = L[:i] + L[i + 1:]
        v = (-1) ** i * np.einsum(f"{rest}y,{L[i]}yz->{L}z", t, b)
        out = v if out is None else out + v
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            rest = "".join(c for n_, c in enumerate(L) if n_ not in (i, j))
            out = out + (-1) ** (i + j) * np.einsum(f"{L[i]}{L[j]}y,y{rest}z->{L}z", b, t)
    return MultilinearMap(out, _trusted=True)


def hochschild_delta(p, psi: MultilinearMap) -> MultilinearMap:
    """Hochschild coboundary of ``psi`` for the bullet product, values in the algebra itself.

    d psi(x_1..x_{k+1}) = x_1*psi(x_2..) + sum_i (-1)^i psi(.., x_i*x_{i+1}, ..)
                          + (-1)^(k+1) psi(x_1..x_k)*x_{k+1}
    """
    pair = as_pair(p)
    k = psi.arity
    if not 1 <= k <= 3:
        raise ValueError("cochain arity must be 1, 2 or 3")
    _check(pair, psi, k)
    d, t = pair.bullet.tensor, psi.tensor
    L = _LETTERS[:k + 1]
    out = np.einsum(f"{L[1:]}y,{L[0]}yz->{L}z", t, d)
    for i in range(1, k + 1):
        inner = L[:i - 1] + "y" + L[i + 1:]
        out = out + (-1) ** i * np.einsum(f"{L[i - 1]}{L[i]}y,{inner}z->{L}z", d, t)
    out = out + (-1) ** (k + 1) * np.einsum(f"{L[:k]}y,y{L[k]}z->{L}z", t, d)
    return MultilinearMap(out, _trusted=True)


# --------------------------------------------------------------------------
# identities relating the operators


@dataclass(frozen=True)
class Decomposition:
    lhs: MultilinearMap
    rhs: MultilinearMap
    equal: bool


def decompose_delta2(a, phi: MultilinearMap) -> Decomposition:
    """delta2_P phi against its Chevalley/Hochschild/cross-term decomposition."""
    lhs = delta2_P(a, phi)
    ps, pa = sym_skew_parts(phi)
    rhs = 2 * (delta2_C(a, pa) + delta2_C_tilde(a, ps) + delta2_H(a, pa)
               + 2 * delta2_H(a, ps) + L1(a, pa) + L2(a, ps))
    return Decomposition(lhs, rhs, lhs == rhs)


def swap_form_rhs(a, phi: MultilinearMap) -> MultilinearMap:
    """The decomposition written in phi and its swap phi~ instead of in parts."""
    sw = phi.swapped()
    return (delta2_C(a, phi) - delta2_C(a, sw) + delta2_C_tilde(a, phi) + delta2_C_tilde(a, sw)
            + 3 * delta2_H(a, phi) + delta2_H(a, sw)
            + L1(a, phi) + L2(a, phi) - L1(a, sw) + L2(a, sw))


_SKEW_PROJ = alternating_sum(3)
_SYM_PROJ = _G((1, ID3), (-1, TAU13), (1, TAU23), (-1, CYCLE2))


def prop3_check(a, phi: MultilinearMap) -> bool:
    """12 delta2_C phi_a and 12 delta2_H phi_s as permutation sums of delta2_P phi."""
    d = delta2_P(a, phi)
    ps, pa = sym_skew_parts(phi)
    return (12 * delta2_C(a, pa) == act(_SKEW_PROJ, d)
            and 12 * delta2_H(a, ps) == act(_SYM_PROJ, d))


def cocycle_split_sides(a, phi: MultilinearMap) -> tuple[bool, bool]:
    """(delta2_P phi = 0, the split conditions on phi_a and phi_s), computed separately."""
    left = delta2_P(a, phi).is_zero()
    ps, pa = sym_skew_parts(phi)
    right = (delta2_C(a, pa).is_zero() and delta2_H(a, ps).is_zero()
             and (delta2_C_tilde(a, ps) + delta2_H(a, pa) + L1(a, pa) + L2(a, ps)).is_zero())
    return left, right


def theorem5_check(a, phi: MultilinearMap) -> bool:
    left, right = cocycle_split_sides(a, phi)
    return left == right


# --------------------------------------------------------------------------
# cocycle spaces


@dataclass(frozen=True)
class OperatorKind:
    tag: str
    k: int | None = None

    @property
    def arity(self) -> int:
        if self.tag in ("Chevalley", "Hochschild"):
            return self.k
        return 1 if self.tag == "P1" else 2

    @classmethod
    def parse(cls, text: str) -> "OperatorKind":
        """``"P2"``, ``"C2"``, ``"Chevalley(3)"``, ..."""
        text = text.strip()
        for tag in ("Chevalley", "Hochschild"):
            if text.startswith(tag + "(") and text.endswith(")"):
                k = int(text[len(tag) + 1:-1])
                if not 1 <= k <= 3:
                    raise ValueError(f"{tag} arity must be 1, 2 or 3")
                return cls(tag, k)
        if text not in _SIMPLE_OPS:
            raise ValueError(f"unknown operator kind {text!r}")
        return cls(text)

    def __str__(self):
        return f"{self.tag}({self.k})" if self.k is not None else self.tag


_SIMPLE_OPS = {
    "P1": delta1_P,
    "P2": delta2_P,
    "C2": delta2_C,
    "C2~": delta2_C_tilde,
    "H2": delta2_H,
    "L1": L1,
    "L2": L2,
    "LP2": _lichnerowicz,
}


def apply_operator(a, kind: OperatorKind, cochain: MultilinearMap) -> MultilinearMap:
    if kind.tag == "Chevalley":
        return chevalley_delta(a, cochain)
    if kind.tag == "Hochschild":
        return hochschild_delta(a, cochain)
    return _SIMPLE_OPS[kind.tag](a, cochain)


def _stack(a, ops, basis) -> Matrix:
    cols = []
    for b in basis:
        col = []
        for op in ops:
            col.extend(op(a, b).to_vector())
        cols.append(col)
    nrows = len(cols[0]) if cols else 0
    return Matrix.from_rows([[c[r] for c in cols] for r in range(nrows)], len(cols))


def joint_kernel(a, ops, arity: int, symmetry_filter: str = "none") -> Subspace:
    """Common kernel of several linear operators on (a slice of) the k-linear maps."""
    n = a.dim
    basis = slice_basis(arity, n, symmetry_filter)
    if symmetry_filter == "none":
        ambient = n ** (arity + 1)
        if not basis:
            return Subspace.zero(ambient)
        return kernel_basis(_stack(a, ops, basis))
    ker = kernel_basis(_stack(a, ops, basis))
    vecs = []
    for coeffs in ker.basis:
        acc = MultilinearMap.zero(arity, n)
        for c, b in zip(coeffs, basis):
            if c:
                acc = acc + c * b
        vecs.append(acc.to_vector())
    return Subspace.span(vecs, n ** (arity + 1))


def cocycle_space(a, kind, symmetry_filter: str = "none") -> Subspace:
    """Kernel of one operator, in the coordinates of :meth:`MultilinearMap.to_vector`."""
    if isinstance(kind, str):
        kind = OperatorKind.parse(kind)
    op = (lambda alg, c: apply_operator(alg, kind, c))
    return joint_kernel(a, [op], kind.arity, symmetry_filter)


def coboundary_space(a) -> Subspace:
    """Image of delta1_P inside the bilinear maps."""
    n = a.dim
    vecs = [delta1_P(a, f).to_vector() for f in slice_basis(1, n)]
    return Subspace.span(vecs, n ** 3)


def cochains(space: Subspace, arity: int, n: int) -> list[MultilinearMap]:
    return [MultilinearMap.from_vector(arity, n, v) for v in space.basis]


# --------------------------------------------------------------------------
# uncorrected coefficients, kept for comparison


def _uncorrected_delta2_P(a, phi):
    mu = as_algebra(a).mu
    return act(_CONST.v_P, comp(1, mu, phi) + comp(1, phi, mu)) - 3 * comp(2, mu, phi) + comp(2, phi, mu)


def _uncorrected_delta2_C(a, phi):
    mu = as_algebra(a).mu
    return act(_CONST.v_L, comp(1, phi, mu) + comp(1, mu, phi)) / 2


def _uncorrected_delta2_H(a, phi):
    mu = as_algebra(a).mu
    return (act(_G((1, ID3), (1, TAU12)), comp(1, phi, mu))
            - act(_G((1, ID3), (1, TAU23)), comp(2, phi, mu))
            + act(_G((1, ID3), (1, CYCLE2)), comp(1, mu, phi))
            - act(_G((1, ID3), (1, CYCLE)), comp(2, mu, phi))) / 2


def _uncorrected_L1(a, phi):
    mu = as_algebra(a).mu
    return (act(_G((1, ID3), (1, TAU12)), comp(1, phi, mu))
            - act(_G((1, TAU23), (1, CYCLE)), comp(1, mu, phi))
            - act(_G((1, ID3), (1, TAU12)), comp(2, mu, phi))) / 2


def _uncorrected_L2(a, phi):
    mu = as_algebra(a).mu
    return (act(_G((-3, ID3), (3, TAU23)), comp(1, phi, mu))
            + act(_G((1, TAU12), (-1, CYCLE2)), comp(1, mu, phi))
            + act(_G((1, ID3), (1, TAU13)), comp(2, mu, phi))) / 2


def _uncorrected_swap_form_rhs(a, phi):
    sw = phi.swapped()
    C, H, l1, l2 = _uncorrected_delta2_C, _uncorrected_delta2_H, _uncorrected_L1, _uncorrected_L2
    return (4 * C(a, phi) + 6 * H(a, phi) + 2 * H(a, sw)
            + 2 * (l1(a, phi) + l2(a, phi)) - 2 * (l1(a, sw) - l2(a, sw)))


def _uncorrected_corollary_rhs(a, phi):
    ps, pa = sym_skew_parts(phi)
    C, H, l1, l2 = _uncorrected_delta2_C, _uncorrected_delta2_H, _uncorrected_L1, _uncorrected_L2
    return 4 * (C(a, pa) + C(a, ps) + H(a, pa) + 2 * H(a, ps) + l1(a, pa) + l2(a, ps))


uncorrected_forms = SimpleNamespace(
    delta2_P=_uncorrected_delta2_P,
    delta2_C=_uncorrected_delta2_C,
    delta2_H=_uncorrected_delta2_H,
    L1=_uncorrected_L1,
    L2=_uncorrected_L2,
    swap_form_rhs=_uncorrected_swap_form_rhs,
    corollary_rhs=_uncorrected_corollary_rhs,
)
