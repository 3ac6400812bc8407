"""Seeded verification suites shared by the CLI and the test-suite."""
from __future__ import annotations

import random
from math import gcd

from . import congruence, cosets, hecke_ring, modsym
from .arith import GroupElement, smith_form
from .bimodule import (
    TRIVIAL,
    alpha_coset_report,
    alpha_tensor_report,
    covariant_rep_check,
    finite_set_algebra,
    heckemod_check,
)
from .bisets import omega_canonical, product_act_left, product_act_right, random_coset_element
from .congruence import CongruenceSubgroup, Kind
from .cosets import cocycle, decompose
from .hecke_ring import HeckeElement, double_coset, hecke_T, hecke_Tpp, label_action, shimura_product
from .modsym import (
    CURVES,
    ap_oracle,
    boundary_compatible,
    build_space,
    cuspidal_matrix,
    eigen_data,
    eisenstein_eigenvalues,
    expected_dimension,
    hecke_element_matrix,
    pairing_adjointness_check,
    ring_hom_check,
    tp_matrix,
)
from .report import Report

SUITES = ("cocycle", "bieq", "shimura-witness", "unitary", "heckemod", "ring-hom", "commute", "eigs")
PRIMES = (2, 3, 5, 7, 13)


def cocycle_suite(group: CongruenceSubgroup, a: GroupElement, rng: random.Random, trials: int) -> Report:
    dec = decompose(group, a)
    rep = Report("cocycle")
    chain = rep.check("product_rule")
    inv = rep.check("inverse_rule")
    perm = rep.check("permutation")
    inside = rep.check("values_in_group")
    for _ in range(trials):
        g1, g2 = group.random_element(rng), group.random_element(rng)
        c1, c2, c12 = cocycle(dec, g1), cocycle(dec, g2), cocycle(dec, g1 * g2)
        cinv = cocycle(dec, g1.inverse())
        for i in range(dec.degree):
            chain.record(c12.values[i] == c1.values[c2(i)] * c2.values[i], f"i={i}, {g1}, {g2}")
            inv.record(cinv.values[i] == c1.values[cinv(i)].inverse(), f"i={i}, {g1}")
            perm.record(c12(i) == c1(c2(i)), f"i={i}")
            inside.record(group.contains(c1.values[i]), f"t_{i}({g1}) not in the group")
    return rep


def bieq_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
               rng: random.Random, trials: int) -> Report:
    _, w = shimura_product(double_coset(group, a), double_coset(group, b))
    rep = Report("bieq")
    rep.check("bijection").record(w.is_bijection(), "(n, k, l) -> gamma^k_n (i, j) is not a bijection")
    rep.check("counting").record(w.counting_identity(), "sum m_k d_k != |I||J|")
    cosets = rep.check("coset_compatibility")
    for k, orbit in enumerate(w.orbits):
        dec_z = decompose(group, orbit.z)
        for ell in range(orbit.m):
            for n, g in enumerate(orbit.gammas):
                i, j = label_action(w.left, w.right, g, orbit.pairs[ell])
                cosets.record(dec_z.index_of(w.left.reps[i] * w.right.reps[j]) == n, f"(n, k, l)=({n}, {k}, {ell})")
    right = rep.check("right_equivariance")
    left = rep.check("left_equivariance")
    for _ in range(trials):
        k = rng.randrange(len(w.orbits))
        ell = rng.randrange(w.orbits[k].m)
        x = random_coset_element(w.orbits[k].coset, rng)
        g, d = group.random_element(rng), group.random_element(rng)
        base = omega_canonical(w, k, ell, x)
        right.record(omega_canonical(w, k, ell, x * d) == product_act_right(base, d), f"copy ({k}, {ell})")
        left.record(omega_canonical(w, k, ell, g * x) == product_act_left(w.left, w.right, g, base),
                    f"copy ({k}, {ell})")
    for k, orbit in enumerate(w.orbits):
        if orbit.m > 1:
            rep.notes.append(f"summand {k} has multiplicity {orbit.m}")
    return rep


def _pool(group: CongruenceSubgroup) -> list[GroupElement]:
    return [GroupElement.diag(1, 2), GroupElement.diag(1, 3), GroupElement.diag(1, 5), GroupElement.diag(2, 2)]


def witness_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                  rng: random.Random, trials: int) -> Report:
    rep = Report("shimura-witness")
    counting = rep.check("counting")
    mult = rep.check("multiplicities")
    labels = rep.check("labels")
    pool = _pool(group)
    pairs = [(a, b)] + [(rng.choice(pool), rng.choice(pool)) for _ in range(trials)]
    for x, y in pairs:
        prod, w = shimura_product(double_coset(group, x), double_coset(group, y))
        counting.record(w.counting_identity(), f"{x} * {y}")
        mult.record(w.multiplicities_well_defined(), f"{x} * {y}")
        ok = sum(c * dc.degree for dc, c in prod.terms()) == w.left.degree * w.right.degree
        if group.kind is Kind.FULL:
            ok = ok and all(smith_form(o.z).pair == o.coset.label for o in w.orbits)
        labels.record(ok, f"{x} * {y}")
    return rep


def unitary_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                  rng: random.Random, trials: int) -> Report:
    rep = Report("unitary")
    finite = finite_set_algebra(int(a.det), int(b.det))
    for algebra in (TRIVIAL, finite):
        rep.extend(_rename(alpha_coset_report(group, a, algebra, rng, trials), algebra))
        rep.extend(_rename(alpha_tensor_report(group, a, b, algebra, rng, trials), algebra))
        gamma = group.random_element(rng)
        rep.extend(_rename(covariant_rep_check(decompose(group, a), algebra.random(rng), gamma, algebra, rng,
                                               max(1, trials // 4)), algebra))
    return rep


def _rename(report: Report, algebra) -> Report:
    report.suite = f"{report.suite}[{algebra.name}]"
    return report


def heckemod_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                   rng: random.Random, trials: int) -> Report:
    rep = Report("heckemod")
    finite = finite_set_algebra(int(a.det), int(b.det))
    for algebra in (TRIVIAL, finite):
        rep.extend(_rename(heckemod_check(group, a, b, algebra, rng, max(1, trials // 10)), algebra))
    return rep


def _level(group: CongruenceSubgroup) -> int:
    if group.kind not in (Kind.FULL, Kind.GAMMA0):
        raise ValueError("modular-symbol suites need SL2(Z) or Gamma0(N)")
    return group.level


def _coprime(N: int, x: GroupElement) -> bool:
    return gcd(int(x.det), N) == 1


def ring_hom_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                   rng: random.Random, trials: int) -> Report:
    N = _level(group)
    G = CongruenceSubgroup.gamma0(N)
    rep = Report("ring-hom")
    cands = [x for x in (GroupElement.diag(1, 2), GroupElement.diag(1, 3), GroupElement.diag(1, 5)) if _coprime(N, x)]
    items = [HeckeElement.of(G, x) for x in cands]
    if _coprime(N, a) and _coprime(N, b):
        items.append(HeckeElement.of(G, a))
        items.append(HeckeElement.of(G, b))
    for A in items:
        for B in items:
            rep.extend(ring_hom_check(N, A, B))
    basis, _ = build_space(N)
    rec = rep.check("recursion")
    for p in (2, 3):
        if N % p:
            lhs = hecke_element_matrix(hecke_T(G, p * p), basis)
            Tp = tp_matrix(N, p)
            rhs = Tp * Tp - p * hecke_element_matrix(hecke_Tpp(G, p), basis)
            rec.record(lhs == rhs, f"T({p * p}) != T_{p}^2 - {p} T_({p},{p})")
    return rep


def commute_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                  rng: random.Random, trials: int) -> Report:
    N = _level(group)
    rep = Report("commute")
    c = rep.check("pairs")
    ps = [p for p in PRIMES if N % p]
    for p in ps:
        for q in ps:
            Mp, Mq = tp_matrix(N, p), tp_matrix(N, q)
            c.record(Mp * Mq == Mq * Mp, f"T_{p} and T_{q} do not commute")
    integral = rep.check("integral")
    for p in ps:
        integral.record(all(x.is_integer for x in tp_matrix(N, p)), f"T_{p} is not integral")
    return rep


def eigs_suite(group: CongruenceSubgroup, a: GroupElement, b: GroupElement, rng: random.Random, trials: int,
               curve: tuple[int, ...] | None = None) -> Report:
    N = _level(group)
    rep = Report("eigs")
    basis, cusps = build_space(N)
    rep.check("dimension").record(basis.dim == expected_dimension(N), f"dim {basis.dim} != {expected_dimension(N)}")
    curve = curve or CURVES.get(N)
    ps = [p for p in PRIMES if N % p]
    eis = rep.check("eisenstein")
    bnd = rep.check("boundary_compatibility")
    for p in ps:
        eis.record(all(v == p + 1 for v in eisenstein_eigenvalues(N, p)), f"boundary eigenvalues for T_{p}")
        bnd.record(boundary_compatible(N, GroupElement.diag(1, p)), f"T_{p}")
    if curve is not None:
        ap = rep.check("cuspidal_vs_point_count")
        for p in ps:
            data = eigen_data(cuspidal_matrix(N, p).matrix)
            expected = ap_oracle(curve, p)
            ap.record(len(data.eigenvalues) == basis.dim - len(cusps) + 1
                      and all(v == expected for v in data.eigenvalues),
                      f"T_{p}: {data.eigenvalues} vs a_p = {expected}")
    else:
        rep.notes.append(f"no curve known for level {N}; point-count comparison skipped")
    for p in ps[:2]:
        rep.extend(pairing_adjointness_check(N, GroupElement.diag(1, p), rng, max(1, trials // 2)))
    return rep


def run_suite(name: str, group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
              seed: int = 0, trials: int = 20, curve: tuple[int, ...] | None = None) -> Report:
    names = SUITES if name == "all" else (name,)
    out = Report(name)
    for s in names:
        rng = random.Random(f"{seed}:{s}")
        if s == "cocycle":
            sub = cocycle_suite(group, a, rng, trials)
            second = cocycle_suite(group, b, rng, trials)
            second.suite = "cocycle_b"
            sub.suite = "cocycle_a"
            out.extend(sub)
            out.extend(second)
            continue
        if s == "eigs":
            sub = eigs_suite(group, a, b, rng, trials, curve)
        else:
            fn = {
                "bieq": bieq_suite,
                "shimura-witness": witness_suite,
                "unitary": unitary_suite,
                "heckemod": heckemod_suite,
                "ring-hom": ring_hom_suite,
                "commute": commute_suite,
            }.get(s)
            if fn is None:
                raise ValueError(f"unknown suite {s}")
            sub = fn(group, a, b, rng, trials)
        if name == "all" or sub.suite != name:
            out.extend(sub)
        else:
            out.checks.extend(sub.checks)
            out.notes.extend(sub.notes)
    return out


def clear_caches() -> None:
    """Drop memoized decompositions, products and modular-symbol spaces."""
    for fn in (cosets._decompose, cosets._cocycle, hecke_ring._shimura_product, hecke_ring._double_coset,
               modsym.build_space, modsym.tp_matrix, congruence.coset_action, congruence._schreier_data):
        fn.cache_clear()
