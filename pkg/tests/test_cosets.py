import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckering.arith import IDENTITY, GroupElement, hermite_right
from heckering.congruence import CongruenceSubgroup
from heckering.cosets import cocycle, decompose, stabilizer_contains
from heckering.errors import CapExceeded, NonIntegral, NotInGroup

from oracles import column_hermite_forms, elementary_divisors, right_coset_count

SL2 = CongruenceSubgroup.sl2z()
G11 = CongruenceSubgroup.gamma0(11)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_degree_p_plus_one(p):
    assert decompose(SL2, GroupElement.diag(1, p)).degree == p + 1


@pytest.mark.parametrize("pair", [(1, 2), (1, 4), (2, 2), (1, 6), (1, 9), (3, 3), (2, 4), (1, 12)])
def test_reps_are_exactly_the_hermite_forms(pair):
    dec = decompose(SL2, GroupElement.diag(*pair))
    got = sorted(hermite_right(r)[0] for r in dec.reps)
    want = sorted(h for h in column_hermite_forms(pair[0] * pair[1])
                  if elementary_divisors(h[0], h[1], 0, h[2]) == pair)
    assert got == want
    assert dec.degree == right_coset_count(*pair)


def test_sl2z_diag_1_2_representatives():
    dec = decompose(SL2, GroupElement.diag(1, 2))
    assert dec.reps[0] == GroupElement.diag(1, 2)
    assert dec.deltas[0] == IDENTITY
    assert {hermite_right(r)[0] for r in dec.reps} == {(1, 0, 2), (2, 0, 1), (2, 1, 1)}


@pytest.mark.parametrize("pair", [(1, 2), (1, 3), (1, 4), (2, 2), (1, 6)])
def test_gamma0_degree_matches_sl2z_for_coprime_det(pair):
    assert decompose(G11, GroupElement.diag(*pair)).degree == right_coset_count(*pair)


def test_gamma0_degree_at_the_level():
    # Gamma0(N) diag(1, p) Gamma0(N) for p | N is the U_p double coset with p right cosets
    assert decompose(CongruenceSubgroup.gamma0(11), GroupElement.diag(1, 11)).degree == 11
    assert decompose(CongruenceSubgroup.gamma0(6), GroupElement.diag(1, 2)).degree == 2


@pytest.mark.parametrize("group,a", [(SL2, GroupElement.diag(1, 2)), (G11, GroupElement.diag(1, 3)),
                                     (G11, GroupElement(2, 1, 11, 7)), (CongruenceSubgroup.gamma0(14),
                                                                        GroupElement.diag(1, 5))])
def test_verify(group, a):
    dec = decompose(group, a)
    dec.verify()
    for r, d in zip(dec.reps, dec.deltas):
        assert group.contains(d) and d * a == r
        assert dec.index_of(r) == dec.reps.index(r)


def test_index_of_outside():
    dec = decompose(SL2, GroupElement.diag(1, 2))
    assert dec.index_of(GroupElement.diag(1, 3)) is None
    assert dec.index_of(GroupElement.diag(2, 2)) is None


def test_errors():
    with pytest.raises(NonIntegral):
        decompose(SL2, GroupElement(Fraction(1, 2), 0, 0, 2))
    with pytest.raises(CapExceeded):
        decompose(SL2, GroupElement.diag(1, 50), cap=10)
    dec = decompose(SL2, GroupElement.diag(1, 2))
    with pytest.raises(NotInGroup):
        cocycle(dec, GroupElement.diag(1, 2))
    with pytest.raises(NotInGroup):
        cocycle(decompose(G11, GroupElement.diag(1, 2)), GroupElement(1, 0, 1, 1))


def test_cocycle_of_t():
    dec = decompose(SL2, GroupElement.diag(1, 2))
    T = GroupElement(1, 1, 0, 1)
    c = cocycle(dec, T)
    assert sorted(c.permutation) == [0, 1, 2]
    # T fixes the coset of diag(1, 2) and swaps the two cosets with a = 2
    assert c(0) == 0 and c(1) == 2 and c(2) == 1
    for i, t in enumerate(c.values):
        assert dec.reps[c(i)] * t == T * dec.reps[i]
        assert SL2.contains(t)


def test_stabilizer():
    a = GroupElement.diag(1, 2)
    assert stabilizer_contains(SL2, a, GroupElement(1, 1, 0, 1))
    assert stabilizer_contains(SL2, a, GroupElement(1, 0, 2, 1))
    assert not stabilizer_contains(SL2, a, GroupElement(1, 0, 1, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([(SL2, (1, 2)), (G11, (1, 3)), (SL2, (2, 4)), (G11, (1, 4))]))
def test_cocycle_relations(seed, case):
    group, pair = case
    dec = decompose(group, GroupElement.diag(*pair))
    rng = random.Random(seed)
    g1, g2 = group.random_element(rng), group.random_element(rng)
    c1, c2, c12 = cocycle(dec, g1), cocycle(dec, g2), cocycle(dec, g1 * g2)
    cinv = cocycle(dec, g1.inverse())
    for i in range(dec.degree):
        assert c12(i) == c1(c2(i))
        assert c12.values[i] == c1.values[c2(i)] * c2.values[i]
        assert cinv.values[i] == c1.values[cinv(i)].inverse()
        # t_i(g) lies in the group and conjugates back into it through the representatives
        t = c1.values[i]
        assert group.contains(t)
        assert group.contains(dec.deltas[c1(i)] * dec.a * t * dec.a.inverse() * dec.deltas[i].inverse())
