import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from poissondef.algebra import combine
from poissondef.catalog import instantiate, sl2_bracket
from poissondef.multilinear import (
    CYCLE, CYCLE2, ID3, TAU12, TAU13, TAU23, GroupAlgebraElement, MultilinearMap, Permutation,
    act, all_permutations, alternating_sum, comp, constants, is_alternating, is_fully_symmetric,
    is_V_symmetric, slice_basis, sym_skew_parts,
)

G = GroupAlgebraElement.of
S3 = all_permutations(3)


def rand(arity, n, seed):
    return MultilinearMap.random(arity, n, random.Random(seed), lo=-4, hi=4, den=3)


def e(n, i):
    return [1 if j == i - 1 else 0 for j in range(n)]


def test_permutation_basics():
    assert TAU12 * TAU12 == ID3
    assert CYCLE * CYCLE == CYCLE2
    assert CYCLE.inverse() == CYCLE2
    assert [p.sign for p in (ID3, TAU12, TAU13, TAU23, CYCLE, CYCLE2)] == [1, -1, -1, -1, 1, 1]
    assert Permutation.transposition(1, 3, 3) == TAU13
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_action_composition_law_exhaustive():
    t = rand(3, 2, 1)
    for p, q in itertools.product(S3, S3):
        assert act(p, act(q, t)) == act(p * q, t)


def test_group_algebra_product_matches_action():
    t = rand(3, 2, 2)
    v = G((3, ID3), (-1, TAU23), (2, CYCLE))
    w = G((1, TAU12), (-5, CYCLE2))
    assert act(v, act(w, t)) == act(v * w, t)
    assert act(v + w, t) == act(v, t) + act(w, t)
    assert act(GroupAlgebraElement.identity(3), t) == t


def test_action_examples():
    phi = rand(2, 3, 3)
    s, a = sym_skew_parts(phi)
    id2, t12 = Permutation.identity(2), Permutation((2, 1))
    assert act(G((1, id2), (-1, t12)), s).is_zero()
    assert act(t12, phi) == phi.swapped()
    assert act(alternating_sum(2), phi) == 2 * a
    x, y = [1, 2, -1], [0, 3, 5]
    assert list(act(t12, phi)(x, y)) == list(phi(y, x))


def test_constants():
    c = constants()
    assert c.v_P.coefficient(ID3) == 3
    assert c.V[2] == G((1, Permutation.identity(2)), (-1, Permutation((2, 1))))
    assert sum(c.v_L.terms.values()) == 0
    assert c.v_L == c.V[3]


def test_comp_examples():
    p = instantiate("P_12^3", bracket=sl2_bracket())
    mu = combine(p).mu
    assert comp(1, mu, MultilinearMap.zero(2, 3)).is_zero()
    e1, e2, e3 = e(3, 1), e(3, 2), e(3, 3)
    assert not any(comp(1, mu, mu)(e2, e3, e1))
    assert not any(comp(2, mu, mu)(e1, e2, e3))
    x, y, z = [1, 0, 2], [3, -1, 1], [0, 2, 2]
    assert list(comp(1, mu, mu)(x, y, z)) == list(mu(mu(x, y), z))
    assert list(comp(2, mu, mu)(x, y, z)) == list(mu(x, mu(y, z)))
    with pytest.raises(ValueError):
        comp(3, mu, mu)


def test_sym_skew_parts():
    phi = rand(2, 2, 4)
    s, a = sym_skew_parts(phi)
    assert s + a == phi and s.swapped() == s and a.swapped() == -a
    assert sym_skew_parts(s) == (s, MultilinearMap.zero(2, 2))
    assert sym_skew_parts(a) == (MultilinearMap.zero(2, 2), a)
    mu = combine(instantiate("P_12^3", bracket=sl2_bracket())).mu
    assert sym_skew_parts(mu) == (MultilinearMap.zero(2, 3), mu)
    with pytest.raises(ValueError):
        sym_skew_parts(rand(3, 2, 0))


def test_symmetry_predicates():
    phi = rand(2, 3, 5)
    s, a = sym_skew_parts(phi)
    assert is_V_symmetric(s)
    assert not is_V_symmetric(a)
    # symmetric in the first two slots only: V_3-symmetric but not fully symmetric
    t = rand(3, 2, 6)
    t12 = t + act(TAU12, t)
    assert is_V_symmetric(t12)
    assert not is_fully_symmetric(t12)
    full = act(G(*[(1, p) for p in S3]), t)
    assert is_fully_symmetric(full) and is_V_symmetric(full)
    assert is_alternating(act(alternating_sum(3), t))


@pytest.mark.parametrize("arity,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_slice_basis_dimensions(arity, n):
    from math import comb
    assert len(slice_basis(arity, n)) == n ** (arity + 1)
    assert len(slice_basis(arity, n, "symmetric")) == comb(n + arity - 1, arity) * n
    assert len(slice_basis(arity, n, "skew")) == comb(n, arity) * n
    assert all(is_fully_symmetric(b) for b in slice_basis(arity, n, "symmetric"))
    assert all(is_alternating(b) for b in slice_basis(arity, n, "skew"))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_vector_round_trip_and_linearity(seed, n):
    a, b = rand(2, n, seed), rand(2, n, seed + 1)
    assert MultilinearMap.from_vector(2, n, a.to_vector()) == a
    x, y = [1, -2, 3][:n], [2, 0, 1][:n]
    assert list((a + 3 * b)(x, y)) == list(a(x, y) + 3 * b(x, y))
    assert hash(a) == hash(MultilinearMap.from_entries(2, n, a.entries()))


def test_errors():
    with pytest.raises(ValueError):
        MultilinearMap.from_entries(2, 2, [((1, 3), 1, 1)])
    with pytest.raises(ValueError):
        MultilinearMap.from_entries(2, 2, [((1,), 1, 1)])
    with pytest.raises(ValueError):
        rand(2, 2, 0) + rand(2, 3, 0)
    with pytest.raises(ValueError):
        act(TAU12, rand(2, 2, 0))
    with pytest.raises(ValueError):
        rand(2, 2, 0)([1, 0])
