"""Right-coset decompositions of double cosets and the permutation cocycle.

Convention: the public argument is the integral matrix ``a``; in the
notation of the Hecke-operator formulas it is ``g^-1``.  A decomposition
    Gamma a Gamma = a_1 Gamma u ... u a_d Gamma,   a_i = delta_i a,
is found by breadth-first search over left multiplication by the group
generators, starting from a_1 = a (so delta_1 = 1).  For gamma in Gamma the
cocycle is t_i(gamma) = a_{gamma(i)}^-1 gamma a_i, where gamma(i) is the
index of the coset gamma a_i Gamma.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import IDENTITY, GroupElement
from .congruence import CongruenceSubgroup
from .errors import CapExceeded, NonIntegral, NotInGroup

DEFAULT_CAP = 10_000
EAGER_CHECKS = os.environ.get("HECKERING_CHECK", "") not in ("", "0")


@dataclass(frozen=True)
class CosetDecomposition:
    group: CongruenceSubgroup
    a: GroupElement
    reps: tuple[GroupElement, ...]
    deltas: tuple[GroupElement, ...]
    keys: tuple[tuple, ...]
    _lookup: dict = field(repr=False, compare=False, hash=False)

    @property
    def degree(self) -> int:
        return len(self.reps)

    def index_of(self, x: GroupElement) -> int | None:
        """Index i with x in a_i Gamma, or None if x is not in Gamma a Gamma."""
        return self._lookup.get(self.group.right_coset_key(x))

    def verify(self) -> None:
        """Check disjointness, left-Gamma closure and the delta relations."""
        G = self.group
        for i, ai in enumerate(self.reps):
            if self.deltas[i] * self.a != ai or not G.contains(self.deltas[i]):
                raise AssertionError(f"delta_{i} does not relate a_{i} to a")
            for j in range(i):
                if G.same_right_coset(self.reps[j], ai):
                    raise AssertionError(f"cosets {j} and {i} coincide")
        for g in G.generators():
            for ai in self.reps:
                x = g * ai
                if not any(G.same_right_coset(aj, x) for aj in self.reps):
                    raise AssertionError("decomposition is not closed under the group")
        if self.deltas[0] != IDENTITY:
            raise AssertionError("first delta must be the identity")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "reps": [r.to_json() for r in self.reps],
            "deltas": [d.to_json() for d in self.deltas],
        }


def stabilizer_contains(group: CongruenceSubgroup, a: GroupElement, x: GroupElement) -> bool:
    """x in Gamma and a^-1 x a in Gamma."""
    return group.contains(x) and group.contains(a.inverse() * x * a)


def decompose(group: CongruenceSubgroup, a: GroupElement, cap: int = DEFAULT_CAP) -> CosetDecomposition:
    if not a.is_integral():
        raise NonIntegral(f"{a} is not integral")
    return _decompose(group, a, cap)


@lru_cache(maxsize=4096)
def _decompose(group: CongruenceSubgroup, a: GroupElement, cap: int) -> CosetDecomposition:
    gens = group.generators()
    start = group.right_coset_key(a)
    found: dict[tuple, GroupElement] = {start: a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            k = group.right_coset_key(y)
            if k not in found:
                found[k] = y
                if len(found) > cap:
                    raise CapExceeded(f"more than {cap} cosets in the double coset of {a}")
                queue.append(y)
    keys = [start] + sorted(k for k in found if k != start)
    reps = tuple(found[k] for k in keys)
    a_inv = a.inverse()
    deltas = tuple(r * a_inv for r in reps)
    dec = CosetDecomposition(
        group, a, reps, deltas, tuple(keys), {k: i for i, k in enumerate(keys)}
    )
    if EAGER_CHECKS:
        dec.verify()
    return dec


@dataclass(frozen=True)
class Cocycle:
    gamma: GroupElement
    permutation: tuple[int, ...]
    values: tuple[GroupElement, ...]

    def __call__(self, i: int) -> int:
        return self.permutation[i]


def cocycle(dec: CosetDecomposition, gamma: GroupElement) -> Cocycle:
    if not dec.group.contains(gamma):
        raise NotInGroup(f"{gamma} is not in {dec.group}")
    return _cocycle(dec, gamma)


@lru_cache(maxsize=65536)
def _cocycle(dec: CosetDecomposition, gamma: GroupElement) -> Cocycle:
    perm, vals = [], []
    for ai in dec.reps:
        x = gamma * ai
        j = dec.index_of(x)
        if j is None:
            raise AssertionError("left translate left the double coset")
        perm.append(j)
        vals.append(dec.reps[j].inverse() * x)
    return Cocycle(gamma, tuple(perm), tuple(vals))
