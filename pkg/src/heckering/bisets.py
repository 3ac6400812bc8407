"""Anchored bi-Gamma-sets built from double cosets, and their Gamma-products.

Nothing here is materialized: a double coset is infinite, so elements are
matrices and the Gamma-product V x_Gamma W is handled through canonical
forms.  Every class [v, w] with v in Gamma a Gamma and w in Gamma b Gamma has
a unique representative [g_i, h_j delta] with delta in Gamma, recorded as the
triple (i, j, delta).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .arith import GroupElement
from .cosets import CosetDecomposition, decompose
from .errors import NotInCoset, NotInGroup
from .hecke_ring import DoubleCoset, ProductWitness, label_action

__all__ = [
    "AnchoredBiSet",
    "BiSetElement",
    "ProductElement",
    "canonicalize",
    "label_action",
    "omega",
    "omega_canonical",
    "product_anchor",
    "product_act_left",
    "product_act_right",
]


@dataclass(frozen=True)
class AnchoredBiSet:
    """Formal disjoint union of double cosets anchored by inclusion."""

    components: tuple[DoubleCoset, ...]

    def anchor(self, element: "BiSetElement") -> GroupElement:
        return element.matrix

    def element(self, component: int, matrix: GroupElement) -> "BiSetElement":
        dc = self.components[component]
        if dc.decomposition.index_of(matrix) is None:
            raise NotInCoset(f"{matrix} is not in {dc}")
        return BiSetElement(component, matrix)

    def act(self, gamma: GroupElement, element: "BiSetElement", delta: GroupElement) -> "BiSetElement":
        group = self.components[element.component].group
        for x in (gamma, delta):
            if not group.contains(x):
                raise NotInGroup(f"{x} is not in {group}")
        return BiSetElement(element.component, gamma * element.matrix * delta)


class BiSetElement(NamedTuple):
    component: int
    matrix: GroupElement


class ProductElement(NamedTuple):
    """Canonical form (i, j, delta) of the class [g_i, h_j delta]."""

    i: int
    j: int
    delta: GroupElement


def canonicalize(dec_g: CosetDecomposition, dec_h: CosetDecomposition,
                 v: GroupElement, w: GroupElement) -> ProductElement:
    i = dec_g.index_of(v)
    if i is None:
        raise NotInCoset(f"{v} is not in the left factor")
    gamma = dec_g.reps[i].inverse() * v
    u = gamma * w
    j = dec_h.index_of(u)
    if j is None:
        raise NotInCoset(f"{w} is not in the right factor")
    return ProductElement(i, j, dec_h.reps[j].inverse() * u)


def product_anchor(dec_g: CosetDecomposition, dec_h: CosetDecomposition,
                   p: ProductElement) -> GroupElement:
    """[v, w] -> v w."""
    return dec_g.reps[p.i] * dec_h.reps[p.j] * p.delta


def product_act_left(dec_g: CosetDecomposition, dec_h: CosetDecomposition,
                     gamma: GroupElement, p: ProductElement) -> ProductElement:
    return canonicalize(dec_g, dec_h, gamma * dec_g.reps[p.i], dec_h.reps[p.j] * p.delta)


def product_act_right(p: ProductElement, delta: GroupElement) -> ProductElement:
    return ProductElement(p.i, p.j, p.delta * delta)


def omega(witness: ProductWitness, k: int, ell: int,
          gamma: GroupElement, delta: GroupElement) -> ProductElement:
    """Image of gamma z_(k,l) delta: the class [gamma g_i(k,l), h_j(k,l) delta]."""
    group = witness.left.group
    for x in (gamma, delta):
        if not group.contains(x):
            raise NotInGroup(f"{x} is not in {group}")
    i, j = witness.orbits[k].pairs[ell]
    return canonicalize(witness.left, witness.right,
                        gamma * witness.left.reps[i], witness.right.reps[j] * delta)


def parametrize(witness: ProductWitness, k: int, ell: int, x: GroupElement) -> tuple[int, GroupElement]:
    """Write x in Gamma z_k Gamma as gamma^k_n z_(k,l) delta; returns (n, delta)."""
    orbit = witness.orbits[k]
    n = decompose(witness.left.group, orbit.z).index_of(x)
    if n is None:
        raise NotInCoset(f"{x} is not in the double coset of z_{k}")
    zkl = witness.z(k, ell)
    delta = (orbit.gammas[n] * zkl).inverse() * x
    return n, delta


def omega_canonical(witness: ProductWitness, k: int, ell: int, x: GroupElement) -> ProductElement:
    """omega evaluated through the canonical factorization x = gamma^k_n z_(k,l) delta.

    This is a well-defined map on matrices of the (k, l)-th copy; it is a
    bijection onto the Gamma-product and right-equivariant.  It is
    left-equivariant exactly when the stabilizer of z_k Gamma fixes every
    index pair of its bucket under the label action.
    """
    n, delta = parametrize(witness, k, ell, x)
    return omega(witness, k, ell, witness.orbits[k].gammas[n], delta)


def bucket_action_is_trivial(witness: ProductWitness, k: int, samples: Sequence[GroupElement]) -> bool:
    """Whether sampled stabilizer elements of z_k Gamma fix the bucket pointwise."""
    group = witness.left.group
    orbit = witness.orbits[k]
    zk = orbit.z
    for s in samples:
        if not group.contains(zk.inverse() * s * zk):
            continue
        for pair in orbit.pairs:
            if label_action(witness.left, witness.right, s, pair) != pair:
                return False
    return True


def random_coset_element(dc: DoubleCoset, rng: random.Random, max_length: int = 6) -> GroupElement:
    g = dc.group
    return g.random_element(rng, max_length) * dc.rep * g.random_element(rng, max_length)
