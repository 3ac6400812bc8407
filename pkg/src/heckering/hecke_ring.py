"""The double-coset Hecke ring Z[Gamma, GL2(Q)+].

Elements are finite integer combinations of double cosets keyed by a
canonical label.  The product of two double cosets is computed from their
right-coset decompositions {g_i} and {h_j}: the |I||J| products g_i h_j are
bucketed by right coset, the buckets are grouped into double cosets, and the
multiplicity m_k is the size of a bucket.  Every product also returns a
witness carrying the index data used by the bi-set bijection.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .arith import IDENTITY, GroupElement, smith_form
from .congruence import CongruenceSubgroup, Kind, prime_factors
from .cosets import CosetDecomposition, cocycle, decompose
from .errors import GroupMismatch, NonIntegral


class DoubleCoset:
    """Gamma a Gamma for an integral a of positive determinant."""

    def __init__(self, group: CongruenceSubgroup, a: GroupElement):
        if not a.is_integral():
            raise NonIntegral(f"{a} is not integral")
        self.group = group
        self.rep = a

    @cached_property
    def decomposition(self) -> CosetDecomposition:
        return decompose(self.group, self.rep)

    @property
    def degree(self) -> int:
        return self.decomposition.degree

    @cached_property
    def label(self) -> tuple:
        if self.group.kind is Kind.FULL:
            return smith_form(self.rep).pair
        return min(self.decomposition.keys)

    @cached_property
    def canonical_rep(self) -> GroupElement:
        if self.group.kind is Kind.FULL:
            d1, d2 = self.label
            return GroupElement.diag(d1, d2)
        return self.group.coset_key_rep(self.label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DoubleCoset):
            return NotImplemented
        return self.group == other.group and self.label == other.label

    def __hash__(self) -> int:
        return hash((self.group, self.label))

    def __repr__(self) -> str:
        return f"DoubleCoset({self.group}, {self.canonical_rep})"


def double_coset(group: CongruenceSubgroup, a: GroupElement) -> DoubleCoset:
    return _double_coset(group, a)


@lru_cache(maxsize=4096)
def _double_coset(group: CongruenceSubgroup, a: GroupElement) -> DoubleCoset:
    return DoubleCoset(group, a)


def double_coset_eq(group: CongruenceSubgroup, a: GroupElement, b: GroupElement) -> bool:
    """b in Gamma a Gamma.

    Decided by membership against the right cosets of Gamma a Gamma; for
    SL2(Z) the Smith pairs are compared as well and must agree.
    """
    if not (a.is_integral() and b.is_integral()):
        raise NonIntegral("double coset comparison needs integral matrices")
    if a.det != b.det:
        found = False
    else:
        dec = decompose(group, a)
        found = any(group.contains(r.inverse() * b) for r in dec.reps)
    if group.kind is Kind.FULL:
        fast = smith_form(a).pair == smith_form(b).pair
        if fast != found:
            raise AssertionError(f"Smith invariant disagrees with membership for {a}, {b}")
    return found


# Hecke elements -----------------------------------------------------------------

class HeckeElement:
    """Finite Z-linear combination of double cosets of one group."""

    def __init__(self, group: CongruenceSubgroup, terms: Mapping[DoubleCoset, int] | None = None):
        self.group = group
        merged: dict[tuple, int] = {}
        cosets: dict[tuple, DoubleCoset] = {}
        for dc, c in (terms or {}).items():
            if dc.group != group:
                raise GroupMismatch(f"{dc} is not a double coset of {group}")
            merged[dc.label] = merged.get(dc.label, 0) + c
            cosets.setdefault(dc.label, dc)
        self._terms = {k: v for k, v in merged.items() if v != 0}
        self._cosets = {k: cosets[k] for k in self._terms}

    @classmethod
    def of(cls, group: CongruenceSubgroup, a: GroupElement, coeff: int = 1) -> "HeckeElement":
        return cls(group, {double_coset(group, a): coeff})

    @classmethod
    def unit(cls, group: CongruenceSubgroup) -> "HeckeElement":
        return cls.of(group, IDENTITY)

    def terms(self) -> list[tuple[DoubleCoset, int]]:
        """(double coset, coefficient) pairs sorted by label."""
        return [(self._cosets[k], self._terms[k]) for k in sorted(self._terms)]

    def coefficient(self, dc: DoubleCoset) -> int:
        return self._terms.get(dc.label, 0)

    def _check(self, other: "HeckeElement") -> None:
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        terms: dict[DoubleCoset, int] = {}
        for dc, c in self.terms() + other.terms():
            terms[dc] = terms.get(dc, 0) + c
        return HeckeElement(self.group, terms)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.group, {dc: -c for dc, c in self.terms()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "HeckeElement":
        if not isinstance(k, int):
            return NotImplemented
        return HeckeElement(self.group, {dc: k * c for dc, c in self.terms()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return hecke_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.group == other.group and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.group, tuple(sorted(self._terms.items()))))

    def __repr__(self) -> str:
        inner = " + ".join(f"{c}*[{dc.canonical_rep}]" for dc, c in self.terms())
        return f"HeckeElement({self.group}: {inner or '0'})"

    def degree(self) -> int:
        return sum(c * dc.degree for dc, c in self.terms())

    def to_json(self) -> list[dict]:
        return [{"label": str(dc.canonical_rep), "coeff": c} for dc, c in self.terms()]


# Shimura product --------------------------------------------------------------

@dataclass(frozen=True)
class ProductOrbit:
    """One double coset Gamma z_k Gamma occurring in a product."""

    z: GroupElement
    m: int
    d: int
    pairs: tuple[tuple[int, int], ...]
    gammas: tuple[GroupElement, ...]
    coset: DoubleCoset

    def to_json(self) -> dict:
        return {
            "z": self.z.to_json(),
            "label": str(self.coset.canonical_rep),
            "m": self.m,
            "d": self.d,
            "pairs": [list(p) for p in self.pairs],
            "gammas": [g.to_json() for g in self.gammas],
        }


@dataclass(frozen=True)
class ProductWitness:
    left: CosetDecomposition
    right: CosetDecomposition
    orbits: tuple[ProductOrbit, ...]
    bucket_sizes: tuple[tuple[int, ...], ...]

    def z(self, k: int, ell: int) -> GroupElement:
        """z_(k, l) = g_i(k,l) h_j(k,l)."""
        i, j = self.orbits[k].pairs[ell]
        return self.left.reps[i] * self.right.reps[j]

    def counting_identity(self) -> bool:
        total = sum(o.m * o.d for o in self.orbits)
        return total == self.left.degree * self.right.degree

    def multiplicities_well_defined(self) -> bool:
        return all(len(set(sizes)) == 1 and sizes[0] == o.m
                   for sizes, o in zip(self.bucket_sizes, self.orbits))

    def bijection_image(self) -> list[tuple[int, int]]:
        """Images of (n, k, l) -> gamma^k_n . (i(k,l), j(k,l)), in (k, l, n) order."""
        out = []
        for orbit in self.orbits:
            for pair in orbit.pairs:
                for gamma in orbit.gammas:
                    out.append(label_action(self.left, self.right, gamma, pair))
        return out

    def is_bijection(self) -> bool:
        image = self.bijection_image()
        target = {(i, j) for i in range(self.left.degree) for j in range(self.right.degree)}
        return len(image) == len(target) and set(image) == target

    def to_json(self) -> dict:
        return {
            "left": [r.to_json() for r in self.left.reps],
            "right": [r.to_json() for r in self.right.reps],
            "orbits": [o.to_json() for o in self.orbits],
        }


def label_action(dec_g: CosetDecomposition, dec_h: CosetDecomposition,
                 gamma: GroupElement, pair: tuple[int, int]) -> tuple[int, int]:
    """gamma . (i, j) = (gamma(i), t^g_i(gamma)(j))."""
    i, j = pair
    cg = cocycle(dec_g, gamma)
    return cg.permutation[i], cocycle(dec_h, cg.values[i]).permutation[j]


def shimura_product(A: DoubleCoset, B: DoubleCoset) -> tuple[HeckeElement, ProductWitness]:
    if A.group != B.group:
        raise GroupMismatch(f"{A.group} vs {B.group}")
    return _shimura_product(A.group, A.rep, B.rep)


@lru_cache(maxsize=1024)
def _shimura_product(group: CongruenceSubgroup, a: GroupElement, b: GroupElement):
    left, right = decompose(group, a), decompose(group, b)
    buckets: dict[tuple, list[tuple[int, int]]] = {}
    for i, g in enumerate(left.reps):
        for j, h in enumerate(right.reps):
            buckets.setdefault(group.right_coset_key(g * h), []).append((i, j))

    unassigned = sorted(buckets)
    assigned: set[tuple] = set()
    orbits, sizes = [], []
    terms: dict[DoubleCoset, int] = {}
    for key in unassigned:
        if key in assigned:
            continue
        pairs = tuple(sorted(buckets[key]))
        i, j = pairs[0]
        z = left.reps[i] * right.reps[j]
        dec_z = decompose(group, z)
        missing = [k for k in dec_z.keys if k not in buckets]
        if missing:
            raise AssertionError("double coset of a product is not covered by the products")
        assigned.update(dec_z.keys)
        dc = double_coset(group, z)
        orbits.append(ProductOrbit(z, len(pairs), dec_z.degree, pairs, dec_z.deltas, dc))
        sizes.append(tuple(len(buckets[k]) for k in dec_z.keys))
        terms[dc] = terms.get(dc, 0) + len(pairs)
    witness = ProductWitness(left, right, tuple(orbits), tuple(sizes))
    return HeckeElement(group, terms), witness


def hecke_mul(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    if x.group != y.group:
        raise GroupMismatch(f"{x.group} vs {y.group}")
    out = HeckeElement(x.group)
    for A, ca in x.terms():
        for B, cb in y.terms():
            prod, _ = shimura_product(A, B)
            out = out + (ca * cb) * prod
    return out


def degree(x: HeckeElement) -> int:
    return x.degree()


# classical operators --------------------------------------------------------------

def smith_pairs(n: int) -> list[tuple[int, int]]:
    """(d1, d2) with d1 | d2 and d1 * d2 == n."""
    return [(d1, n // d1) for d1 in range(1, n + 1)
            if n % (d1 * d1) == 0 and (n // d1) % d1 == 0]


def hecke_T(group: CongruenceSubgroup, n: int) -> HeckeElement:
    """Classical T(n): the sum of all double cosets of determinant n."""
    N = group.level
    terms = {}
    for d1, d2 in smith_pairs(n):
        if any(d1 % p == 0 for p in prime_factors(N)):
            continue
        terms[double_coset(group, GroupElement.diag(d1, d2))] = 1
    return HeckeElement(group, terms)


def hecke_Tpp(group: CongruenceSubgroup, p: int) -> HeckeElement:
    """T(p, p) = [Gamma diag(p, p) Gamma]."""
    return HeckeElement.of(group, GroupElement.diag(p, p))


def hecke_Tp(group: CongruenceSubgroup, p: int) -> HeckeElement:
    """[Gamma diag(1, p) Gamma]."""
    return HeckeElement.of(group, GroupElement.diag(1, p))


def from_terms(group: CongruenceSubgroup, items: Iterable[tuple[GroupElement, int]]) -> HeckeElement:
    terms: dict[DoubleCoset, int] = {}
    for a, c in items:
        dc = double_coset(group, a)
        terms[dc] = terms.get(dc, 0) + c
    return HeckeElement(group, terms)
