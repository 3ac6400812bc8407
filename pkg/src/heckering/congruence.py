"""Congruence subgroups of SL2(Z): membership, indices, P^1(Z/N), generators.

Right cosets Gamma0(N) g of SL2(Z) are labelled by the bottom row of g read
in P^1(Z/N); right multiplication by SL2(Z) permutes the labels.  A
breadth-first search over S and T on this table gives a transversal and
hence Schreier generators.
"""
from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, prod

from .arith import IDENTITY, S_MATRIX, T_MATRIX, GroupElement, egcd, hermite_right
from .errors import NonIntegral, Unsupported


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gamma0_index(N: int) -> int:
    """mu(N) = N * prod_{p | N} (1 + 1/p)."""
    out = Fraction(N)
    for p in prime_factors(N):
        out *= Fraction(p + 1, p)
    assert out.denominator == 1
    return int(out)


class Kind(enum.Enum):
    FULL = "sl2z"
    GAMMA0 = "gamma0"
    GAMMA1 = "gamma1"
    GAMMAFULL = "gamma"


# P^1(Z/N) -----------------------------------------------------------------

class P1Table:
    """Points of P^1(Z/N) with the right action of S and T.

    Canonical representative of (c:d): the lexicographically least
    (u*c mod N, u*d mod N) over units u, scanning units in increasing order.
    """

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("level must be positive")
        self.N = N
        self.units = [u for u in range(N) if gcd(u, N) == 1] if N > 1 else [0]
        lookup: dict[tuple[int, int], tuple[int, int]] = {}
        for c in range(N):
            for d in range(N):
                if gcd(gcd(c, d), N) != 1 or (c, d) in lookup:
                    continue
                orbit = [((u * c) % N, (u * d) % N) for u in self.units]
                rep = min(orbit)
                for pt in orbit:
                    lookup[pt] = rep
        self.points: list[tuple[int, int]] = sorted(set(lookup.values()))
        position = {pt: i for i, pt in enumerate(self.points)}
        self._index = {pt: position[rep] for pt, rep in lookup.items()}
        self.S = [self.index(d, -c) for c, d in self.points]
        self.T = [self.index(c, c + d) for c, d in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def index(self, c: int, d: int) -> int:
        """Index of (c:d); raises KeyError if the pair is not primitive mod N."""
        return self._index[(c % self.N, d % self.N)]

    def canonical(self, c: int, d: int) -> tuple[int, int]:
        return self.points[self.index(c, d)]

    def act(self, i: int, g: GroupElement) -> int:
        """Right action of an integral matrix on point i."""
        c, d = self.points[i]
        a_, b_, c_, d_ = g.int_entries()
        return self.index(c * a_ + d * c_, c * b_ + d * d_)

    def lift(self, i: int) -> GroupElement:
        """An element of SL2(Z) whose bottom row reduces to point i."""
        c, d = self.points[i]
        return lift_bottom_row(c, d, self.N)


@lru_cache(maxsize=None)
def coset_action(N: int) -> P1Table:
    return P1Table(N)


def lift_bottom_row(c: int, d: int, N: int) -> GroupElement:
    """Deterministic [[a, b], [c', d']] in SL2(Z) with (c', d') = (c, d) mod N."""
    c %= N
    d %= N
    if c == 0:
        c = N
    t = 0
    while gcd(c, d + t * N) != 1:
        t += 1
    d += t * N
    g, x, y = egcd(d, c)  # d*x + c*y == 1  ->  a = x, b = -y
    assert g == 1
    return GroupElement(x, -y, c, d)


def lift_first_column(a: int, c: int, N: int) -> GroupElement:
    """Element of SL2(Z) whose first column reduces to (a, c) mod N."""
    m = lift_bottom_row(a, c, N)
    # [[x, -y], [a, c]] -> transpose-and-swap keeps determinant 1
    return GroupElement(m.c, -m.a, m.d, -m.b)


# subgroups ----------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceSubgroup:
    kind: Kind
    level: int = 1

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.kind is Kind.FULL and self.level != 1:
            raise ValueError("SL2(Z) has level 1")

    @classmethod
    def sl2z(cls) -> "CongruenceSubgroup":
        return cls(Kind.FULL, 1)

    @classmethod
    def gamma0(cls, N: int) -> "CongruenceSubgroup":
        return cls(Kind.GAMMA0, N)

    @classmethod
    def gamma1(cls, N: int) -> "CongruenceSubgroup":
        return cls(Kind.GAMMA1, N)

    @classmethod
    def gamma(cls, N: int) -> "CongruenceSubgroup":
        return cls(Kind.GAMMAFULL, N)

    @classmethod
    def from_json(cls, obj: dict) -> "CongruenceSubgroup":
        return cls(Kind(obj["kind"]), int(obj.get("level", 1)))

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "level": self.level}

    def __str__(self) -> str:
        if self.kind is Kind.FULL:
            return "SL2(Z)"
        name = {Kind.GAMMA0: "Gamma0", Kind.GAMMA1: "Gamma1", Kind.GAMMAFULL: "Gamma"}
        return f"{name[self.kind]}({self.level})"

    # membership and index ---------------------------------------------------
    def contains(self, x: GroupElement) -> bool:
        if not x.is_integral() or x.det != 1:
            return False
        a, b, c, d = x.int_entries()
        N = self.level
        if self.kind is Kind.FULL:
            return True
        if self.kind is Kind.GAMMA0:
            return c % N == 0
        if self.kind is Kind.GAMMA1:
            return c % N == 0 and (a - 1) % N == 0 and (d - 1) % N == 0
        return b % N == 0 and c % N == 0 and (a - 1) % N == 0 and (d - 1) % N == 0

    @cached_property
    def index(self) -> int:
        """Index in SL2(Z), from the closed formulas."""
        N = self.level
        if self.kind in (Kind.FULL, Kind.GAMMA0):
            return gamma0_index(N)
        ps = prime_factors(N)
        factor = prod(Fraction(p * p - 1, p * p) for p in ps)
        power = 2 if self.kind is Kind.GAMMA1 else 3
        out = N**power * factor
        assert out.denominator == 1
        return int(out)

    # generators ---------------------------------------------------------------
    def generators(self) -> tuple[GroupElement, ...]:
        return _generators(self)

    def transversal(self) -> tuple[GroupElement, ...]:
        """Right-coset representatives t_r of the subgroup in SL2(Z), by BFS."""
        return _schreier_data(self)[0]

    def random_element(self, rng: random.Random, max_length: int = 6) -> GroupElement:
        """Random word of length <= max_length in the generators and inverses."""
        gens = self.generators()
        out = IDENTITY
        for _ in range(rng.randint(0, max_length)):
            g = rng.choice(gens)
            out = out * (g if rng.random() < 0.5 else g.inverse())
        return out

    # right cosets inside GL2(Q)+ -------------------------------------------------
    def right_coset_key(self, x: GroupElement) -> tuple:
        """Complete invariant of x * Gamma for x in GL2(Q)+.

        x is scaled to an integral matrix m*x, written as H * w^-1 with H the
        column-Hermite form and w in SL2(Z); the remaining datum is the left
        coset w^-1 * Gamma inside SL2(Z), read off the first column of w^-1.
        """
        m = x.denominator()
        y = x.scale(m) if m != 1 else x
        herm, u = hermite_right(y)
        N = self.level
        if self.kind is Kind.FULL:
            return (m, herm)
        a, c = int(u.d), int(-u.c)  # first column of u^-1 = [[d, -b], [-c, a]]
        if self.kind is Kind.GAMMA0:
            return (m, herm, coset_action(N).canonical(a, c))
        if self.kind is Kind.GAMMA1:
            return (m, herm, (a % N, c % N))
        v = u.inverse()
        return (m, herm, tuple(int(e) % N for e in v.entries()))

    def same_right_coset(self, x: GroupElement, y: GroupElement) -> bool:
        """x * Gamma == y * Gamma, by exact membership of x^-1 y."""
        return self.contains(x.inverse() * y)

    def coset_key_rep(self, key: tuple) -> GroupElement:
        """A representative matrix of the right coset with the given key."""
        m, (a, b, d), *rest = key
        H = GroupElement(a, b, 0, d)
        if self.kind is Kind.FULL:
            rep = H
        elif self.kind is Kind.GAMMA0:
            rep = H * lift_first_column(rest[0][0], rest[0][1], self.level)
        else:
            raise Unsupported(f"canonical representatives for {self}")
        return rep.scale(Fraction(1, m)) if m != 1 else rep


@lru_cache(maxsize=None)
def _schreier_data(group: CongruenceSubgroup) -> tuple[tuple[GroupElement, ...], tuple[GroupElement, ...]]:
    if group.kind is Kind.FULL:
        return (IDENTITY,), (S_MATRIX, T_MATRIX)
    if group.kind is not Kind.GAMMA0:
        raise Unsupported(f"generators are implemented for SL2(Z) and Gamma0(N), not {group}")
    table = coset_action(group.level)
    start = table.index(0, 1)
    trans: dict[int, GroupElement] = {start: IDENTITY}
    queue = deque([start])
    order = [start]
    while queue:
        r = queue.popleft()
        for s, perm in ((S_MATRIX, table.S), (T_MATRIX, table.T)):
            r2 = perm[r]
            if r2 not in trans:
                trans[r2] = trans[r] * s
                order.append(r2)
                queue.append(r2)
    gens: list[GroupElement] = []
    seen = {IDENTITY}
    for r in order:
        for s, perm in ((S_MATRIX, table.S), (T_MATRIX, table.T)):
            g = trans[r] * s * trans[perm[r]].inverse()
            if g not in seen:
                seen.add(g)
                gens.append(g)
    return tuple(trans[r] for r in order), tuple(gens)


def _generators(group: CongruenceSubgroup) -> tuple[GroupElement, ...]:
    gens = _schreier_data(group)[1]
    for g in gens:
        if not group.contains(g):
            raise AssertionError(f"Schreier generator {g} not in {group}")
    return gens


def parse_group(text: str) -> CongruenceSubgroup:
    """'sl2z', 'gamma0:11', 'gamma1:5', 'gamma:3'."""
    text = text.strip().lower()
    if text in ("sl2z", "sl2(z)"):
        return CongruenceSubgroup.sl2z()
    kind, _, level = text.partition(":")
    return CongruenceSubgroup(Kind(kind), int(level))


__all__ = [
    "CongruenceSubgroup",
    "Kind",
    "NonIntegral",
    "P1Table",
    "coset_action",
    "gamma0_index",
    "lift_bottom_row",
    "lift_first_column",
    "parse_group",
    "prime_factors",
]
