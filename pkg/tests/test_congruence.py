import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from heckering.arith import IDENTITY, GroupElement
from heckering.congruence import (
    CongruenceSubgroup,
    Kind,
    P1Table,
    gamma0_index,
    lift_bottom_row,
    lift_first_column,
    parse_group,
)
from heckering.errors import Unsupported


def brute_index(kind: str, N: int) -> int:
    """Count reductions mod N of SL2(Z) modulo the subgroup's image."""
    sl2 = [(a, b, c, d) for a in range(N) for b in range(N) for c in range(N) for d in range(N)
           if (a * d - b * c) % N == 1 % N]
    if kind == "gamma0":
        sub = [m for m in sl2 if m[2] == 0]
    elif kind == "gamma1":
        sub = [m for m in sl2 if m[2] == 0 and m[0] == 1 % N and m[3] == 1 % N]
    else:
        sub = [m for m in sl2 if m == (1 % N, 0, 0, 1 % N)]
    return len(sl2) // len(sub)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 6, 11, 12])
def test_indices_match_brute_force(N):
    for kind, ctor in (("gamma0", CongruenceSubgroup.gamma0), ("gamma1", CongruenceSubgroup.gamma1),
                       ("gamma", CongruenceSubgroup.gamma)):
        assert ctor(N).index == brute_index(kind, N)


@pytest.mark.parametrize("N", [1, 2, 5, 11, 12, 14, 36])
def test_p1_size_is_gamma0_index(N):
    assert len(P1Table(N)) == gamma0_index(N)


def test_p1_examples():
    assert len(P1Table(11)) == 12
    assert len(P1Table(14)) == 24
    t = P1Table(6)
    assert t.canonical(5, 5) == t.canonical(1, 1)
    assert t.index(2, 3) == t.index(4, 3)  # 5 * (2, 3) = (4, 3) mod 6


@pytest.mark.parametrize("N", [2, 7, 11, 12])
def test_p1_action_is_a_right_action(N):
    t = P1Table(N)
    S, T = GroupElement(0, -1, 1, 0), GroupElement(1, 1, 0, 1)
    for i in range(len(t)):
        assert t.act(i, S) == t.S[i]
        assert t.act(t.act(i, S), T) == t.act(i, S * T)


@given(st.integers(0, 200), st.integers(0, 200), st.integers(1, 60))
def test_lifts(c, d, N):
    if gcd(gcd(c, d), N) != 1:
        return
    m = lift_bottom_row(c, d, N)
    assert m.det == 1 and m.is_integral()
    assert (int(m.c) - c) % N == 0 and (int(m.d) - d) % N == 0
    f = lift_first_column(c, d, N)
    assert f.det == 1 and (int(f.a) - c) % N == 0 and (int(f.c) - d) % N == 0


def test_membership():
    G = CongruenceSubgroup.gamma0(11)
    assert G.contains(GroupElement(1, 5, 11, 56))
    assert not G.contains(GroupElement(1, 0, 1, 1))
    assert not G.contains(GroupElement.diag(1, 2))
    assert CongruenceSubgroup.gamma1(5).contains(GroupElement(6, 1, 5, 1))
    assert not CongruenceSubgroup.gamma1(5).contains(GroupElement(-1, 0, 0, -1))
    assert CongruenceSubgroup.gamma(3).contains(GroupElement(4, 3, 9, 7))


@pytest.mark.parametrize("N", [1, 2, 6, 11, 14])
def test_schreier_generators(N):
    G = CongruenceSubgroup.gamma0(N)
    gens = G.generators()
    assert all(G.contains(g) for g in gens)
    assert len(G.transversal()) == G.index
    # transversal represents every coset exactly once
    t = P1Table(N)
    assert sorted(t.index(int(x.c), int(x.d)) for x in G.transversal()) == list(range(G.index))


def test_gamma0_11_has_eight_generators():
    assert len(CongruenceSubgroup.gamma0(11).generators()) == 8


def test_random_elements_are_members():
    rng = random.Random(3)
    for G in (CongruenceSubgroup.sl2z(), CongruenceSubgroup.gamma0(11)):
        for _ in range(50):
            assert G.contains(G.random_element(rng))


def test_unsupported_generators():
    with pytest.raises(Unsupported):
        CongruenceSubgroup.gamma1(5).generators()


def test_right_coset_key_is_invariant():
    rng = random.Random(1)
    for G in (CongruenceSubgroup.sl2z(), CongruenceSubgroup.gamma0(11)):
        x = GroupElement(2, 1, 11, 6)
        for _ in range(30):
            g = G.random_element(rng)
            assert G.right_coset_key(x * g) == G.right_coset_key(x)
        assert G.coset_key_rep(G.right_coset_key(x)) is not None
        rep = G.coset_key_rep(G.right_coset_key(x))
        assert G.same_right_coset(rep, x)


def test_right_coset_key_distinguishes_level_structure():
    G = CongruenceSubgroup.gamma0(11)
    assert G.right_coset_key(IDENTITY) != G.right_coset_key(GroupElement(0, -1, 1, 0))
    H = CongruenceSubgroup.gamma(3)
    y = GroupElement(1, 1, 0, 1)
    assert H.right_coset_key(y) != H.right_coset_key(IDENTITY)
    assert H.right_coset_key(y * GroupElement(1, 3, 0, 1)) == H.right_coset_key(y)


def test_parse_and_json():
    assert parse_group("gamma0:11") == CongruenceSubgroup.gamma0(11)
    assert parse_group("SL2Z").kind is Kind.FULL
    G = CongruenceSubgroup.gamma1(7)
    assert CongruenceSubgroup.from_json(G.to_json()) == G
    with pytest.raises(ValueError):
        CongruenceSubgroup.gamma0(0)
