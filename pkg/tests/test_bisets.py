import random

import pytest

from heckering.arith import IDENTITY, GroupElement
from heckering.bisets import (
    AnchoredBiSet,
    ProductElement,
    bucket_action_is_trivial,
    canonicalize,
    omega,
    omega_canonical,
    parametrize,
    product_act_left,
    product_act_right,
    product_anchor,
    random_coset_element,
)
from heckering.congruence import CongruenceSubgroup
from heckering.errors import NotInCoset, NotInGroup
from heckering.hecke_ring import double_coset, label_action, shimura_product

SL2 = CongruenceSubgroup.sl2z()
G11 = CongruenceSubgroup.gamma0(11)
D = GroupElement.diag


def witness(group, a, b):
    return shimura_product(double_coset(group, a), double_coset(group, b))[1]


def test_bi_set_actions():
    V = AnchoredBiSet((double_coset(SL2, D(1, 2)),))
    e = V.element(0, GroupElement(1, 1, 0, 2))
    g, d = GroupElement(1, 1, 0, 1), GroupElement(0, -1, 1, 0)
    moved = V.act(g, e, d)
    assert V.anchor(moved) == g * e.matrix * d
    with pytest.raises(NotInCoset):
        V.element(0, D(1, 3))
    with pytest.raises(NotInGroup):
        V.act(D(1, 2), e, IDENTITY)


@pytest.mark.parametrize("group", [SL2, G11])
def test_canonical_forms_are_invariant(group):
    w = witness(group, D(1, 2), D(1, 3))
    rng = random.Random(5)
    for _ in range(30):
        v = random_coset_element(double_coset(group, D(1, 2)), rng)
        x = random_coset_element(double_coset(group, D(1, 3)), rng)
        g = group.random_element(rng)
        p = canonicalize(w.left, w.right, v, x)
        # (v g, x) ~ (v, g x)
        assert canonicalize(w.left, w.right, v * g, g.inverse() * x) == p
        assert product_anchor(w.left, w.right, p) == v * x
        d = group.random_element(rng)
        assert product_act_right(p, d) == canonicalize(w.left, w.right, v, x * d)
        assert product_act_left(w.left, w.right, g, p) == canonicalize(w.left, w.right, g * v, x)


@pytest.mark.parametrize("pair,sizes", [((D(1, 2), D(1, 3)), 12), ((D(1, 2), D(1, 2)), 9)])
def test_omega_index_bijection(pair, sizes):
    w = witness(SL2, *pair)
    image = w.bijection_image()
    assert len(image) == sizes
    assert w.is_bijection()


def test_omega_anchor_and_parametrization():
    w = witness(SL2, D(1, 2), D(1, 2))
    rng = random.Random(2)
    for k, orbit in enumerate(w.orbits):
        for ell in range(orbit.m):
            for _ in range(10):
                x = random_coset_element(orbit.coset, rng)
                n, delta = parametrize(w, k, ell, x)
                assert orbit.gammas[n] * w.z(k, ell) * delta == x
                p = omega_canonical(w, k, ell, x)
                assert product_anchor(w.left, w.right, p) == x
                d = SL2.random_element(rng)
                assert omega_canonical(w, k, ell, x * d) == product_act_right(p, d)
    with pytest.raises(NotInGroup):
        omega(w, 0, 0, D(1, 2), IDENTITY)


def test_omega_is_a_bijection_on_a_window():
    """Images of distinct copies never collide and cover every (i, j) class."""
    w = witness(SL2, D(1, 2), D(1, 2))
    seen = {}
    for k, orbit in enumerate(w.orbits):
        for ell in range(orbit.m):
            for g in orbit.gammas:
                p = omega(w, k, ell, g, IDENTITY)
                assert p not in seen
                seen[p] = (k, ell)
    assert {(p.i, p.j) for p in seen} == {(i, j) for i in range(3) for j in range(3)}


def test_left_equivariance_single_summand():
    w = witness(G11, D(1, 2), D(1, 3))
    rng = random.Random(7)
    orbit = w.orbits[0]
    for _ in range(30):
        x = random_coset_element(orbit.coset, rng)
        g = G11.random_element(rng)
        assert omega_canonical(w, 0, 0, g * x) == product_act_left(w.left, w.right, g, omega_canonical(w, 0, 0, x))


def test_stabilizer_permutes_a_multiple_bucket():
    """For T2 * T2 the stabilizer of 2 SL2(Z) = SL2(Z) moves the three pairs of its bucket.

    So no relabelling copy by copy can be left-equivariant there.
    """
    w = witness(SL2, D(1, 2), D(1, 2))
    orbit = w.orbits[1]
    assert orbit.m == 3 and orbit.d == 1
    S, T = GroupElement(0, -1, 1, 0), GroupElement(1, 1, 0, 1)
    assert not bucket_action_is_trivial(w, 1, [S, T])
    orbit_of_pair = {label_action(w.left, w.right, g, orbit.pairs[0]) for g in (IDENTITY, S, T, S * T, T * S)}
    assert orbit_of_pair == set(orbit.pairs)
    assert bucket_action_is_trivial(w, 0, [S, T])


def test_product_element_is_hashable():
    p = ProductElement(0, 1, IDENTITY)
    assert {p: 1}[ProductElement(0, 1, GroupElement(1, 0, 0, 1))] == 1
