"""
Multilinear maps on Q^n and the symmetric-group actions on their arguments.

A k-linear map T is stored as a numpy object array of shape ``(n,)*k + (n,)``
holding mpq entries, so ``T.tensor[i1, ..., ik, s]`` is the coefficient of
``e_s`` in ``T(e_i1, ..., e_ik)``.  Indices are 0-based internally and
1-based in JSON.

Action convention: ``act(sigma, T)(x1, ..., xk) = T(x_sigma(1), ..., x_sigma(k))``.
With permutation product ``(p * q)(i) = p(q(i))`` this gives
``act(p, act(q, T)) = act(p * q, T)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .linalg import ONE, ZERO, Rational, as_rational, format_rational

MAX_ARITY = 4


# --------------------------------------------------------------------------
# permutations and the group algebra


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple  # (sigma(1), ..., sigma(k)), 1-based

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @property
    def arity(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, k: int) -> "Permutation":
        im = list(range(1, k + 1))
        im[i - 1], im[j - 1] = j, i
        return cls(tuple(im))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.arity + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.arity
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    @cached_property
    def sign(self) -> int:
        seen, sgn = set(), 1
        for start in range(1, self.arity + 1):
            if start in seen:
                continue
            length, j = 0, start
            while j not in seen:
                seen.add(j)
                j = self(j)
                length += 1
            if length % 2 == 0:
                sgn = -sgn
        return sgn

    def __repr__(self):
        return f"Permutation{self.images}"


def all_permutations(k: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, k + 1))]


class GroupAlgebraElement:
    """A formal rational combination of permutations of a fixed arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, terms: Mapping[Permutation, object], arity: int | None = None):
        clean = {}
        for p, c in terms.items():
            c = as_rational(c)
            if c:
                clean[p] = clean.get(p, ZERO) + c
        clean = {p: c for p, c in clean.items() if c}
        arities = {p.arity for p in terms}
        if arity is None:
            if len(arities) != 1:
                raise ValueError("cannot infer arity of an empty or mixed combination")
            arity = arities.pop()
        elif arities - {arity}:
            raise ValueError("all permutations must share the declared arity")
        self.arity = arity
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def of(cls, *pairs) -> "GroupAlgebraElement":
        """``of((2, tau), (-1, c))`` style constructor."""
        terms: dict = {}
        for coeff, perm in pairs:
            terms[perm] = terms.get(perm, ZERO) + as_rational(coeff)
        return cls(terms, pairs[0][1].arity)

    @classmethod
    def identity(cls, k: int) -> "GroupAlgebraElement":
        return cls({Permutation.identity(k): ONE}, k)

    def coefficient(self, p: Permutation):
        return self.terms.get(p, ZERO)

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, ZERO) + c
        return GroupAlgebraElement(t, self.arity)

    def __neg__(self):
        return GroupAlgebraElement({p: -c for p, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            if self.arity != other.arity:
                raise ValueError("arity mismatch")
            t: dict = {}
            for p, a in self.terms.items():
                for q, b in other.terms.items():
                    r = p * q
                    t[r] = t.get(r, ZERO) + a * b
            return GroupAlgebraElement(t, self.arity)
        c = as_rational(other)
        return GroupAlgebraElement({p: c * v for p, v in self.terms.items()}, self.arity)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, tuple(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{format_rational(c)}*{p.images}" for p, c in self.terms.items())
        return f"GroupAlgebraElement({body or '0'})"


ID3 = Permutation((1, 2, 3))
TAU12 = Permutation((2, 1, 3))
TAU13 = Permutation((3, 2, 1))
TAU23 = Permutation((1, 3, 2))
CYCLE = Permutation((2, 3, 1))    # c = (1 2 3)
CYCLE2 = Permutation((3, 1, 2))   # c^2

_G = GroupAlgebraElement.of


def alternating_sum(k: int) -> GroupAlgebraElement:
    """V_k: the signed sum of all permutations of k letters."""
    return GroupAlgebraElement({p: p.sign for p in all_permutations(k)}, k)


def symmetric_sum(k: int) -> GroupAlgebraElement:
    return GroupAlgebraElement({p: 1 for p in all_permutations(k)}, k)


@dataclass(frozen=True)
class Constants:
    v_P: GroupAlgebraElement
    v_L: GroupAlgebraElement
    V: dict  # k -> V_k, k = 1..4


def constants() -> Constants:
    v_P = _G((3, ID3), (-1, TAU23), (1, TAU12), (-1, CYCLE), (1, CYCLE2))
    v_L = _G((1, ID3), (-1, TAU12), (-1, TAU13), (-1, TAU23), (1, CYCLE), (1, CYCLE2))
    return Constants(v_P, v_L, {k: alternating_sum(k) for k in range(1, MAX_ARITY + 1)})


# --------------------------------------------------------------------------
# multilinear maps


def _object_zeros(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(ZERO)
    return a


def _to_object(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx in np.ndindex(*a.shape):
        out[idx] = as_rational(a[idx])
    return out


class MultilinearMap:
    """A k-linear map Q^n x ... x Q^n -> Q^n with exact coefficients."""

    __slots__ = ("arity", "dim", "tensor")

    def __init__(self, tensor, *, _trusted: bool = False):
        t = tensor if _trusted else _to_object(tensor)
        if t.ndim < 2 or len(set(t.shape)) != 1:
            raise ValueError(f"tensor shape {t.shape} is not (n,)*k + (n,)")
        t.flags.writeable = False
        self.tensor = t
        self.arity = t.ndim - 1
        self.dim = t.shape[0]

    @classmethod
    def zero(cls, arity: int, dim: int) -> "MultilinearMap":
        return cls(_object_zeros((dim,) * (arity + 1)), _trusted=True)

    @classmethod
    def from_entries(cls, arity: int, dim: int, entries: Iterable) -> "MultilinearMap":
        """Build from ``((i1, ..., ik), s, value)`` triples with 1-based indices."""
        t = _object_zeros((dim,) * (arity + 1))
        for ins, out, val in entries:
            ins = tuple(ins)
            if len(ins) != arity:
                raise ValueError(f"entry {ins} has {len(ins)} inputs, expected {arity}")
            idx = tuple(i - 1 for i in ins) + (out - 1,)
            if any(not 0 <= i < dim for i in idx):
                raise ValueError(f"entry index {ins}->{out} outside 1..{dim}")
            t[idx] = t[idx] + as_rational(val)
        return cls(t, _trusted=True)

    @classmethod
    def from_vector(cls, arity: int, dim: int, vec) -> "MultilinearMap":
        t = np.empty(dim ** (arity + 1), dtype=object)
        for i, x in enumerate(vec):
            t[i] = as_rational(x)
        return cls(t.reshape((dim,) * (arity + 1)), _trusted=True)

    @classmethod
    def basis_element(cls, arity: int, dim: int, flat_index: int) -> "MultilinearMap":
        t = _object_zeros(dim ** (arity + 1))
        t[flat_index] = ONE
        return cls(t.reshape((dim,) * (arity + 1)), _trusted=True)

    @classmethod
    def random(cls, arity: int, dim: int, rng: random.Random | None = None,
               lo: int = -5, hi: int = 5, den: int = 1) -> "MultilinearMap":
        rng = rng or random.Random()
        size = dim ** (arity + 1)
        vec = [Rational(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(size)]
        return cls.from_vector(arity, dim, vec)

    def to_vector(self) -> tuple:
        return tuple(self.tensor.reshape(-1))

    def entries(self):
        """Nonzero ``((i1..ik), s, value)`` triples, 1-based, in lexicographic order."""
        for idx in np.ndindex(*self.tensor.shape):
            v = self.tensor[idx]
            if v:
                yield tuple(i + 1 for i in idx[:-1]), idx[-1] + 1, v

    def __call__(self, *vectors):
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(vectors)}")
        r = self.tensor
        for v in vectors:
            v = np.asarray(v, dtype=object)
            if v.shape != (self.dim,):
                raise ValueError(f"argument of shape {v.shape}, expected ({self.dim},)")
            r = np.tensordot(v, r, axes=([0], [0]))
        return r

    def is_zero(self) -> bool:
        return not any(self.tensor.flat)

    def _check(self, other):
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        if (self.arity, self.dim) != (other.arity, other.dim):
            raise ValueError(f"shape mismatch: arity/dim {(self.arity, self.dim)} vs {(other.arity, other.dim)}")
        return True

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return MultilinearMap(self.tensor + other.tensor, _trusted=True)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return MultilinearMap(self.tensor - other.tensor, _trusted=True)

    def __neg__(self):
        return MultilinearMap(-self.tensor, _trusted=True)

    def __mul__(self, scalar):
        return MultilinearMap(self.tensor * as_rational(scalar), _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (ONE / as_rational(scalar))

    def __eq__(self, other):
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        return (self.arity, self.dim) == (other.arity, other.dim) and \
            bool(np.all(self.tensor == other.tensor))

    def __hash__(self):
        return hash((self.arity, self.dim, self.to_vector()))

    def __repr__(self):
        body = ", ".join(f"{ins}->{s}:{format_rational(v)}" for ins, s, v in self.entries())
        return f"MultilinearMap(arity={self.arity}, dim={self.dim}, {{{body}}})"

    def swapped(self) -> "MultilinearMap":
        """The bilinear map (x, y) -> phi(y, x)."""
        if self.arity != 2:
            raise ValueError("swap is defined for bilinear maps")
        return MultilinearMap(np.transpose(self.tensor, (1, 0, 2)).copy(), _trusted=True)


def _permuted(sigma: Permutation, t: np.ndarray) -> np.ndarray:
    # out[i_1..i_k] = t[i_sigma(1), ..., i_sigma(k)]: t's axis b reads out's axis sigma(b)
    k = sigma.arity
    inv = sigma.inverse()
    axes = [inv(a + 1) - 1 for a in range(k)] + [k]
    return np.transpose(t, axes)


def act(v, T: MultilinearMap) -> MultilinearMap:
    """T composed with the argument action of ``v`` (a Permutation or group-algebra element)."""
    if isinstance(v, Permutation):
        v = GroupAlgebraElement({v: ONE}, v.arity)
    if v.arity != T.arity:
        raise ValueError(f"group-algebra arity {v.arity} against map arity {T.arity}")
    out = _object_zeros(T.tensor.shape)
    for p, c in v.terms.items():
        out = out + c * _permuted(p, T.tensor)
    return MultilinearMap(out, _trusted=True)


def comp(i: int, mu: MultilinearMap, nu: MultilinearMap) -> MultilinearMap:
    """Insertion of ``nu`` into slot ``i`` of ``mu``.

    comp(1, mu, nu)(x, y, z) = mu(nu(x, y), z)
    comp(2, mu, nu)(x, y, z) = mu(x, nu(y, z))
    """
    if mu.arity != 2 or nu.arity != 2:
        raise ValueError("comp is defined on bilinear maps")
    if mu.dim != nu.dim:
        raise ValueError(f"dimension mismatch: {mu.dim} vs {nu.dim}")
    if i == 1:
        t = np.einsum("ijl,lks->ijks", nu.tensor, mu.tensor)
    elif i == 2:
        t = np.einsum("jkl,ils->ijks", nu.tensor, mu.tensor)
    else:
        raise ValueError("insertion slot must be 1 or 2")
    return MultilinearMap(t, _trusted=True)


def sym_skew_parts(phi: MultilinearMap) -> tuple[MultilinearMap, MultilinearMap]:
    """(phi_s, phi_a) = ((phi + phi~)/2, (phi - phi~)/2)."""
    if phi.arity != 2:
        raise ValueError("symmetric/skew parts are taken of bilinear maps")
    sw = phi.swapped()
    half = Rational(1, 2)
    return (phi + sw) * half, (phi - sw) * half


def is_V_symmetric(T: MultilinearMap) -> bool:
    """True iff act(V_k, T) = 0, the signed-sum notion of symmetry."""
    if T.arity > MAX_ARITY:
        raise ValueError(f"arity capped at {MAX_ARITY}")
    return act(alternating_sum(T.arity), T).is_zero()


def is_fully_symmetric(T: MultilinearMap) -> bool:
    k = T.arity
    return all(act(Permutation.transposition(i, i + 1, k), T) == T for i in range(1, k))


def is_alternating(T: MultilinearMap) -> bool:
    k = T.arity
    return all(act(Permutation.transposition(i, i + 1, k), T) == -T for i in range(1, k))


def cochain_dim(arity: int, n: int) -> int:
    return n ** (arity + 1)


def slice_basis(arity: int, n: int, symmetry: str = "none") -> list[MultilinearMap]:
    """A basis of all k-linear maps, or of the fully symmetric / alternating ones.

    The symmetric and skew slices are spanned by symmetrized (antisymmetrized)
    basis cochains, one per orbit of input index tuples.
    """
    if symmetry == "none":
        return [MultilinearMap.basis_element(arity, n, f) for f in range(cochain_dim(arity, n))]
    if symmetry not in ("symmetric", "skew"):
        raise ValueError(f"unknown symmetry filter {symmetry!r}")
    out = []
    for ins in itertools.combinations_with_replacement(range(n), arity):
        if symmetry == "skew" and len(set(ins)) < arity:
            continue
        for s in range(n):
            t = _object_zeros((n,) * (arity + 1))
            for p in itertools.permutations(range(arity)):
                idx = tuple(ins[a] for a in p) + (s,)
                if symmetry == "symmetric":
                    t[idx] = ONE
                else:
                    t[idx] = Rational(Permutation(tuple(a + 1 for a in p)).sign)
            out.append(MultilinearMap(t, _trusted=True))
    return out
