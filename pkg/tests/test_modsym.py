import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import ImmutableMatrix, eye

from heckering.arith import IDENTITY, GroupElement
from heckering.congruence import CongruenceSubgroup
from heckering.cosets import decompose
from heckering.errors import BadDeterminant, BadReduction, GroupMismatch
from heckering.hecke_ring import HeckeElement, hecke_T, hecke_Tp, hecke_Tpp
from heckering.modsym import (
    CURVES,
    ap_oracle,
    boundary_compatible,
    build_space,
    count_points,
    cuspidal_matrix,
    cuspidal_subspace,
    eigen_data,
    eisenstein_eigenvalues,
    expected_dimension,
    genus,
    hecke_element_matrix,
    hecke_matrix,
    nu_inf,
    pairing_adjointness_check,
    ring_hom_check,
    tp_matrix,
)

from oracles import cusp_count, genus_x0, point_count

D = GroupElement.diag
E11 = CURVES[11]


# oracles ----------------------------------------------------------------------------

@pytest.mark.parametrize("N", [1, 2, 11, 14, 15, 17, 20, 27, 36, 37, 49, 64])
def test_genus_formula_matches_brute_force(N):
    assert genus(N) == genus_x0(N)
    assert nu_inf(N) == cusp_count(N)


def test_genus_examples():
    assert (genus(11), nu_inf(11), expected_dimension(11)) == (1, 2, 3)
    assert (genus(14), nu_inf(14), expected_dimension(14)) == (1, 4, 5)
    assert (genus(1), nu_inf(1), expected_dimension(1)) == (0, 1, 0)


def test_point_counts():
    # 11a1: y^2 + y = x^3 - x^2 - 10x - 20
    assert [ap_oracle(E11, p) for p in (2, 3, 5, 7, 13)] == [-2, -1, 1, -2, 4]
    assert count_points(E11, 2) == 5
    for p in (2, 3, 5, 7, 13, 17, 19):
        assert count_points(E11, p) == point_count(E11, p)
    with pytest.raises(BadReduction):
        ap_oracle(E11, 11)
    with pytest.raises(ValueError):
        ap_oracle(E11, 4)


# the space ----------------------------------------------------------------------------

@pytest.mark.parametrize("N", list(range(1, 61)))
def test_dimension_and_cusps(N):
    basis, cusps = build_space(N)
    assert basis.dim == expected_dimension(N)
    assert len(cusps) == nu_inf(N)
    assert basis.coordinates_integral()


@pytest.mark.parametrize("N,dim", [(11, 2), (1, 0), (15, 2), (14, 2), (17, 2), (37, 4)])
def test_cuspidal_dimension(N, dim):
    basis, cusps = build_space(N)
    assert cuspidal_subspace(basis, cusps).cols == dim == 2 * genus(N)


def test_relations_vanish_on_boundary():
    for N in (11, 14, 15):
        basis, cusps = build_space(N)
        for x in range(len(basis.table)):
            bnd = cusps.symbol_boundary(x)
            y = basis.table.S[x]
            assert [u + v for u, v in zip(bnd, cusps.symbol_boundary(y))] == [0] * len(cusps)


def test_path_examples():
    basis, _ = build_space(11)
    assert basis.path_reduce(Fraction(0), Fraction(0)) == basis.zero()
    assert basis.path_reduce(Fraction(0), None) == basis.symbol(0, 1)
    assert basis.path_reduce(None, Fraction(0)) == tuple(-x for x in basis.symbol(0, 1))


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=200), st.fractions(max_denominator=200), st.fractions(max_denominator=200),
       st.sampled_from([11, 14, 15, 23]))
def test_path_additivity(a, b, c, N):
    basis, _ = build_space(N)
    ab, bc, ac = basis.path_reduce(a, b), basis.path_reduce(b, c), basis.path_reduce(a, c)
    assert tuple(x + y for x, y in zip(ab, bc)) == ac


@settings(max_examples=50, deadline=None)
@given(st.fractions(max_denominator=100), st.fractions(max_denominator=100), st.integers(0, 10**6))
def test_paths_are_gamma0_invariant(a, b, seed):
    basis, _ = build_space(11)
    g = CongruenceSubgroup.gamma0(11).random_element(random.Random(seed))
    assert basis.path_reduce(g.act(a), g.act(b)) == basis.path_reduce(a, b)


# Hecke operators ----------------------------------------------------------------------

def test_identity_operator():
    basis, _ = build_space(11)
    M = hecke_matrix(decompose(CongruenceSubgroup.gamma0(11), IDENTITY), basis).matrix
    assert M == eye(3)


def test_t2_level_11():
    M = tp_matrix(11, 2)
    assert all(x.is_integer for x in M)
    C = cuspidal_matrix(11, 2).matrix
    assert C.trace() == 2 * ap_oracle(E11, 2) == -4
    data = eigen_data(C)
    assert data.charpoly == (4, 4, 1)  # (x + 2)^2
    assert data.eigenvalues == (-2, -2)


@pytest.mark.parametrize("p,ev", [(3, -1), (5, 1), (7, -2), (13, 4)])
def test_eigenvalues_level_11(p, ev):
    assert eigen_data(cuspidal_matrix(11, p).matrix).eigenvalues == (ev, ev)


@pytest.mark.parametrize("N,curve", [(14, (1, 0, 1, 4, -6)), (17, (1, -1, 1, -1, -14))])
def test_eigenvalues_other_levels(N, curve):
    for p in (3, 5, 11, 13):
        if N % p:
            ev = ap_oracle(curve, p)
            assert eigen_data(cuspidal_matrix(N, p).matrix).eigenvalues == (ev, ev)


@pytest.mark.parametrize("N", [11, 14, 15, 17])
def test_boundary_compatibility_and_eisenstein(N):
    for p in (2, 3, 5, 7):
        if N % p == 0:
            continue
        assert boundary_compatible(N, D(1, p))
        assert set(eisenstein_eigenvalues(N, p)) == {p + 1}


def test_bad_determinant_and_group():
    basis, _ = build_space(11)
    with pytest.raises(BadDeterminant):
        hecke_matrix(decompose(CongruenceSubgroup.gamma0(11), D(1, 11)), basis)
    with pytest.raises(GroupMismatch):
        hecke_matrix(decompose(CongruenceSubgroup.gamma0(14), D(1, 3)), basis)


def test_commutativity():
    ps = (2, 3, 5, 7, 13)
    for p in ps:
        for q in ps:
            assert tp_matrix(11, p) * tp_matrix(11, q) == tp_matrix(11, q) * tp_matrix(11, p)


def test_hecke_recursion():
    G = CongruenceSubgroup.gamma0(11)
    basis, _ = build_space(11)
    for p in (2, 3):
        lhs = hecke_element_matrix(hecke_T(G, p * p), basis)
        assert lhs == tp_matrix(11, p) ** 2 - p * hecke_element_matrix(hecke_Tpp(G, p), basis)


def test_ring_hom_checks():
    G = CongruenceSubgroup.gamma0(11)
    one = HeckeElement.unit(G)
    assert ring_hom_check(11, one, one).passed
    assert ring_hom_check(11, hecke_Tp(G, 2), hecke_Tp(G, 2)).passed
    assert ring_hom_check(11, hecke_Tp(G, 2), hecke_Tp(G, 3)).passed
    basis, _ = build_space(11)
    T2 = tp_matrix(11, 2)
    # matrix(T(4)) + 2 matrix(T(2,2)) = T2^2, with T(4) = [1,4] + [2,2]
    assert hecke_element_matrix(hecke_T(G, 4), basis) + 2 * eye(3) == T2 * T2


@pytest.mark.parametrize("a", [IDENTITY, D(1, 2), D(1, 3), D(2, 3)])
def test_adjointness(a):
    rep = pairing_adjointness_check(11, a, random.Random(0))
    assert rep.passed, rep.lines()
    with pytest.raises(BadDeterminant):
        pairing_adjointness_check(11, D(1, 11))


def test_level_one_is_empty():
    basis, cusps = build_space(1)
    assert basis.dim == 0 and len(cusps) == 1
    assert eigen_data(ImmutableMatrix.zeros(0, 0)).eigenvalues == ()
