"""Finitely supported B-valued functions on Gamma, on double cosets and on Gamma-products.

The coefficient algebra B is either Q(i) with the trivial action or the
algebra of Q(i)-valued functions on P^1(F_l), on which a matrix acts by
its Moebius transformation mod l.  The second action is only defined for
l-integral matrices whose determinant is prime to l; it is computed on
demand and cached.

A domain exposes its elements, the anchor map to GL2(Q)+, the two
Gamma-actions and the right quotient (the unique delta with v delta = w,
if any).  All module operations below are written against that interface.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arith import IDENTITY, GroupElement
from .congruence import CongruenceSubgroup
from .cosets import CosetDecomposition, cocycle
from .errors import DomainMismatch, NotInCoset, NotInGroup, Unsupported
from .gaussian import I, ONE, ZERO, GaussianRational
from .hecke_ring import DoubleCoset, ProductWitness, double_coset, shimura_product
from .bisets import (
    ProductElement,
    canonicalize,
    omega_canonical,
    product_act_left,
    product_act_right,
    product_anchor,
    random_coset_element,
)
from .report import Report


# coefficient algebras -----------------------------------------------------------

class CoefficientAlgebra:
    """A unital *-algebra over Q(i) with a partial action of GL2(Q)+."""

    name = "abstract"

    def zero(self): raise NotImplementedError
    def one(self): raise NotImplementedError
    def add(self, x, y): raise NotImplementedError
    def mul(self, x, y): raise NotImplementedError
    def star(self, x): raise NotImplementedError
    def act(self, g: GroupElement, x): raise NotImplementedError
    def is_zero(self, x) -> bool: raise NotImplementedError
    def random(self, rng: random.Random): raise NotImplementedError
    def basis(self) -> list: raise NotImplementedError

    def neg(self, x):
        return self.mul(self.scalar(-ONE), x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar(self, c: GaussianRational): raise NotImplementedError


@dataclass(frozen=True)
class TrivialAlgebra(CoefficientAlgebra):
    name = "trivial"

    def zero(self): return ZERO
    def one(self): return ONE
    def add(self, x, y): return x + y
    def mul(self, x, y): return x * y
    def star(self, x): return x.conjugate()
    def act(self, g, x): return x
    def is_zero(self, x): return not x
    def scalar(self, c): return c
    def random(self, rng): return GaussianRational.random(rng)
    def basis(self): return [ONE, I]


@dataclass(frozen=True)
class FiniteSetAlgebra(CoefficientAlgebra):
    """Functions P^1(F_l) -> Q(i), pointwise operations, (g.b)(x) = b(g^-1 x)."""

    prime: int = 5
    _table: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    name = "finite-set"

    @property
    def size(self) -> int:
        return self.prime + 1

    def _reduce(self, q) -> int:
        if q.denominator % self.prime == 0:
            raise Unsupported(f"{q} is not {self.prime}-integral")
        return q.numerator * pow(q.denominator, -1, self.prime) % self.prime

    def permutation(self, g: GroupElement) -> tuple[int, ...]:
        """The permutation of P^1(F_l) induced by g; point l stands for infinity."""
        perm = self._table.get(g)
        if perm is not None:
            return perm
        p = self.prime
        a, b, c, d = (self._reduce(x) for x in g.entries())
        if (a * d - b * c) % p == 0:
            raise Unsupported(f"{g} is singular mod {p}")
        out = []
        for x in range(p + 1):
            u, v = (x, 1) if x < p else (1, 0)
            s, t = (a * u + b * v) % p, (c * u + d * v) % p
            out.append(s * pow(t, -1, p) % p if t else p)
        perm = tuple(out)
        self._table[g] = perm
        return perm

    def table_is_consistent(self) -> bool:
        """Composition holds on all recorded pairs and the identity acts trivially."""
        if self.permutation(IDENTITY) != tuple(range(self.size)):
            return False
        entries = list(self._table.items())[:40]
        for g, pg in entries:
            for h, ph in entries:
                if self.permutation(g * h) != tuple(pg[ph[x]] for x in range(self.size)):
                    return False
        return True

    def zero(self): return (ZERO,) * self.size
    def one(self): return (ONE,) * self.size
    def add(self, x, y): return tuple(s + t for s, t in zip(x, y))
    def mul(self, x, y): return tuple(s * t for s, t in zip(x, y))
    def star(self, x): return tuple(s.conjugate() for s in x)
    def is_zero(self, x): return not any(x)
    def scalar(self, c): return (c,) * self.size

    def act(self, g, x):
        perm = self.permutation(g)
        out = [ZERO] * self.size
        for f, v in enumerate(x):
            out[perm[f]] = v
        return tuple(out)

    def random(self, rng):
        return tuple(GaussianRational.random(rng) if rng.random() < 0.6 else ZERO
                     for _ in range(self.size))

    def basis(self):
        return [tuple(ONE if k == f else ZERO for k in range(self.size)) for f in range(self.size)]


TRIVIAL = TrivialAlgebra()


def finite_set_algebra(*dets: int, start: int = 5) -> FiniteSetAlgebra:
    """The FINITE_SET algebra over the least prime >= start dividing none of dets."""
    p = start
    while True:
        if all(p % q for q in range(2, int(p ** 0.5) + 1)) and all(int(d) % p for d in dets):
            return FiniteSetAlgebra(p)
        p += 1


# domains ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaDomain:
    group: CongruenceSubgroup

    def contains(self, e) -> bool:
        return isinstance(e, GroupElement) and self.group.contains(e)

    def anchor(self, e: GroupElement) -> GroupElement:
        return e

    def left(self, gamma: GroupElement, e: GroupElement) -> GroupElement:
        return gamma * e

    def right(self, e: GroupElement, delta: GroupElement) -> GroupElement:
        return e * delta

    def quotient(self, v: GroupElement, w: GroupElement) -> GroupElement | None:
        d = v.inverse() * w
        return d if self.group.contains(d) else None


@dataclass(frozen=True)
class CosetDomain(GammaDomain):
    """Gamma a Gamma with its right-coset decomposition."""

    dc: DoubleCoset = None

    @property
    def dec(self) -> CosetDecomposition:
        return self.dc.decomposition

    def contains(self, e) -> bool:
        return isinstance(e, GroupElement) and self.dec.index_of(e) is not None

    def quotient(self, v, w):
        if self.dec.index_of(v) != self.dec.index_of(w):
            return None
        return v.inverse() * w


def coset_domain(group: CongruenceSubgroup, a: GroupElement) -> CosetDomain:
    return CosetDomain(group, double_coset(group, a))


@dataclass(frozen=True)
class ProductDomain:
    """The Gamma-product of Gamma a Gamma and Gamma b Gamma in canonical forms."""

    left_dec: CosetDecomposition
    right_dec: CosetDecomposition

    @property
    def group(self) -> CongruenceSubgroup:
        return self.left_dec.group

    def contains(self, e) -> bool:
        return (isinstance(e, ProductElement) and 0 <= e.i < self.left_dec.degree
                and 0 <= e.j < self.right_dec.degree and self.group.contains(e.delta))

    def anchor(self, e: ProductElement) -> GroupElement:
        return product_anchor(self.left_dec, self.right_dec, e)

    def left(self, gamma, e):
        return product_act_left(self.left_dec, self.right_dec, gamma, e)

    def right(self, e, delta):
        return product_act_right(e, delta)

    def quotient(self, v, w):
        if (v.i, v.j) != (w.i, w.j):
            return None
        return v.delta.inverse() * w.delta

    def canonical(self, v: GroupElement, w: GroupElement) -> ProductElement:
        return canonicalize(self.left_dec, self.right_dec, v, w)


# functions ----------------------------------------------------------------------------

class FinSuppFunction:
    """A finitely supported B-valued function on a domain; zero values are dropped."""

    def __init__(self, domain, algebra: CoefficientAlgebra, values: dict | Iterable = (), check: bool = True):
        self.domain = domain
        self.algebra = algebra
        items = values.items() if isinstance(values, dict) else values
        support: dict = {}
        for e, b in items:
            support[e] = algebra.add(support[e], b) if e in support else b
        if check:
            for e in support:
                if not domain.contains(e):
                    raise NotInCoset(f"{e} is not in the domain")
        self.values = {e: b for e, b in support.items() if not algebra.is_zero(b)}

    @classmethod
    def point(cls, domain, algebra, e, b) -> "FinSuppFunction":
        return cls(domain, algebra, [(e, b)])

    def __call__(self, e):
        return self.values.get(e, self.algebra.zero())

    def items(self):
        return self.values.items()

    def __len__(self) -> int:
        return len(self.values)

    def _same(self, other: "FinSuppFunction") -> None:
        if self.domain != other.domain or self.algebra != other.algebra:
            raise DomainMismatch("functions live on different domains or algebras")

    def __add__(self, other: "FinSuppFunction") -> "FinSuppFunction":
        self._same(other)
        return FinSuppFunction(self.domain, self.algebra, list(self.items()) + list(other.items()), check=False)

    def __neg__(self) -> "FinSuppFunction":
        A = self.algebra
        return FinSuppFunction(self.domain, A, [(e, A.neg(b)) for e, b in self.items()], check=False)

    def __sub__(self, other: "FinSuppFunction") -> "FinSuppFunction":
        return self + (-other)

    def scale(self, c: GaussianRational) -> "FinSuppFunction":
        A = self.algebra
        return FinSuppFunction(self.domain, A, [(e, A.mul(A.scalar(c), b)) for e, b in self.items()],
                               check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSuppFunction):
            return NotImplemented
        return self.domain == other.domain and self.algebra == other.algebra and self.values == other.values

    def __repr__(self) -> str:
        return f"FinSuppFunction({len(self.values)} points)"


def zero_function(domain, algebra) -> FinSuppFunction:
    return FinSuppFunction(domain, algebra)


def _gamma_side(f: FinSuppFunction, group: CongruenceSubgroup) -> None:
    if not isinstance(f.domain, GammaDomain) or type(f.domain) is not GammaDomain or f.domain.group != group:
        raise DomainMismatch("expected a function on the group itself")


def convolve_left(f: FinSuppFunction, psi: FinSuppFunction) -> FinSuppFunction:
    """(f * Psi)(xi) = sum_gamma f(gamma) gamma(Psi(gamma^-1 xi))."""
    _gamma_side(f, psi.domain.group)
    if f.algebra != psi.algebra:
        raise DomainMismatch("coefficient algebras differ")
    A, D = psi.algebra, psi.domain
    out = []
    for gamma, b in f.items():
        for e, c in psi.items():
            out.append((D.left(gamma, e), A.mul(b, A.act(gamma, c))))
    return FinSuppFunction(D, A, out, check=False)


def convolve_right(psi: FinSuppFunction, f: FinSuppFunction) -> FinSuppFunction:
    """(Psi * f)(xi) = sum over v eps = xi of Psi(v) m(v)(f(eps))."""
    _gamma_side(f, psi.domain.group)
    if f.algebra != psi.algebra:
        raise DomainMismatch("coefficient algebras differ")
    A, D = psi.algebra, psi.domain
    out = []
    for e, c in psi.items():
        m = D.anchor(e)
        for eps, b in f.items():
            out.append((D.right(e, eps), A.mul(c, A.act(m, b))))
    return FinSuppFunction(D, A, out, check=False)


def convolve(f: FinSuppFunction, g: FinSuppFunction) -> FinSuppFunction:
    """Product in the crossed-product algebra C_c(Gamma, B)."""
    return convolve_left(f, g)


def adjoint(f: FinSuppFunction) -> FinSuppFunction:
    """f*(gamma) = gamma(f(gamma^-1)^*)."""
    A = f.algebra
    return FinSuppFunction(f.domain, A, [(g.inverse(), A.act(g.inverse(), A.star(b))) for g, b in f.items()],
                           check=False)


def inner_product(phi: FinSuppFunction, psi: FinSuppFunction) -> FinSuppFunction:
    """<Phi, Psi>(delta) = sum_xi m(xi)^-1 (Phi(xi)^* Psi(xi delta))."""
    if phi.domain != psi.domain or phi.algebra != psi.algebra:
        raise DomainMismatch("inner product needs a common domain and algebra")
    A, D = phi.algebra, phi.domain
    out = []
    for v, x in phi.items():
        minv = D.anchor(v).inverse()
        for w, y in psi.items():
            delta = D.quotient(v, w)
            if delta is not None:
                out.append((delta, A.act(minv, A.mul(A.star(x), y))))
    return FinSuppFunction(GammaDomain(D.group), A, out, check=False)


# vectors of functions on Gamma ---------------------------------------------------------

Vector = tuple  # tuple of FinSuppFunction on Gamma, one per right coset


def vector_inner(u: Sequence[FinSuppFunction], w: Sequence[FinSuppFunction]) -> FinSuppFunction:
    total = inner_product(u[0], w[0])
    for x, y in zip(u[1:], w[1:]):
        total = total + inner_product(x, y)
    return total


def alpha_coset(psi: FinSuppFunction) -> Vector:
    """alpha(Psi)_i(delta) = a_i^-1 (Psi(a_i delta))."""
    D = psi.domain
    if not isinstance(D, CosetDomain):
        raise DomainMismatch("alpha_coset needs a function on a double coset")
    dec, A = D.dec, psi.algebra
    parts: list[list] = [[] for _ in range(dec.degree)]
    for e, b in psi.items():
        i = dec.index_of(e)
        ainv = dec.reps[i].inverse()
        parts[i].append((ainv * e, A.act(ainv, b)))
    G = GammaDomain(D.group)
    return tuple(FinSuppFunction(G, A, p, check=False) for p in parts)


def alpha_coset_inverse(vec: Sequence[FinSuppFunction], domain: CosetDomain) -> FinSuppFunction:
    dec = domain.dec
    A = vec[0].algebra
    out = []
    for i, f in enumerate(vec):
        ai = dec.reps[i]
        out.extend((ai * d, A.act(ai, b)) for d, b in f.items())
    return FinSuppFunction(domain, A, out, check=False)


def rep_scalar(dec: CosetDecomposition, b, vec: Sequence[FinSuppFunction]) -> Vector:
    """t(b): component i is multiplied on the left by a_i^-1(b)."""
    A = vec[0].algebra
    out = []
    for i, f in enumerate(vec):
        c = A.act(dec.reps[i].inverse(), b)
        out.append(FinSuppFunction(f.domain, A, [(d, A.mul(c, x)) for d, x in f.items()], check=False))
    return tuple(out)


def rep_unitary(dec: CosetDecomposition, gamma: GroupElement, vec: Sequence[FinSuppFunction]) -> Vector:
    """t(u_gamma): component i is t^-1 (Phi_j(t .)) with j = gamma^-1(i), t = t_i(gamma^-1)."""
    if not dec.group.contains(gamma):
        raise NotInGroup(f"{gamma} is not in {dec.group}")
    A = vec[0].algebra
    c = cocycle(dec, gamma.inverse())
    out = []
    for i in range(dec.degree):
        j, t = c.permutation[i], c.values[i]
        tinv = t.inverse()
        src = vec[j]
        out.append(FinSuppFunction(src.domain, A, [(tinv * d, A.act(tinv, x)) for d, x in src.items()],
                                   check=False))
    return tuple(out)


def hecke_rep(dec: CosetDecomposition, f: FinSuppFunction, vec: Sequence[FinSuppFunction]) -> Vector:
    """t(f) = sum_gamma t(f(gamma)) t(u_gamma)."""
    total = None
    for gamma, b in f.items():
        term = rep_scalar(dec, b, rep_unitary(dec, gamma, vec))
        total = term if total is None else tuple(x + y for x, y in zip(total, term))
    if total is None:
        return tuple(zero_function(v.domain, v.algebra) for v in vec)
    return total


def alpha_tensor(phi: FinSuppFunction, psi: FinSuppFunction) -> FinSuppFunction:
    """Sum over (xi, eta) in the supports of delta_[xi, eta] (x) Phi(xi) xi(Psi(eta))."""
    if not (isinstance(phi.domain, CosetDomain) and isinstance(psi.domain, CosetDomain)):
        raise DomainMismatch("alpha_tensor needs functions on double cosets")
    if phi.algebra != psi.algebra or phi.domain.group != psi.domain.group:
        raise DomainMismatch("alpha_tensor needs a common group and algebra")
    A = phi.algebra
    P = ProductDomain(phi.domain.dec, psi.domain.dec)
    out = []
    for xi, x in phi.items():
        for eta, y in psi.items():
            out.append((P.canonical(xi, eta), A.mul(x, A.act(xi, y))))
    return FinSuppFunction(P, A, out, check=False)


# random elements ----------------------------------------------------------------------

def random_gamma_function(group: CongruenceSubgroup, algebra: CoefficientAlgebra, rng: random.Random,
                          size: int = 4, max_length: int = 6) -> FinSuppFunction:
    n = rng.randint(1, size)
    pts = [(group.random_element(rng, max_length), algebra.random(rng)) for _ in range(n)]
    return FinSuppFunction(GammaDomain(group), algebra, pts, check=False)


def random_coset_function(domain: CosetDomain, algebra: CoefficientAlgebra, rng: random.Random,
                          size: int = 4, max_length: int = 6) -> FinSuppFunction:
    n = rng.randint(1, size)
    pts = [(random_coset_element(domain.dc, rng, max_length), algebra.random(rng)) for _ in range(n)]
    return FinSuppFunction(domain, algebra, pts, check=False)


def random_vector(dec: CosetDecomposition, algebra, rng, size: int = 3) -> Vector:
    return tuple(random_gamma_function(dec.group, algebra, rng, size) for _ in range(dec.degree))


# checks ---------------------------------------------------------------------------------

def _vec_eq(u: Sequence[FinSuppFunction], w: Sequence[FinSuppFunction]) -> bool:
    return all(x == y for x, y in zip(u, w))


def covariant_rep_check(dec: CosetDecomposition, b, gamma: GroupElement,
                        algebra: CoefficientAlgebra = TRIVIAL, rng: random.Random | None = None,
                        trials: int = 20) -> Report:
    """Representation identities of the covariant pair (t(b), t(u_gamma)) on random vectors."""
    if not dec.group.contains(gamma):
        raise NotInGroup(f"{gamma} is not in {dec.group}")
    rng = rng or random.Random(0)
    G, A = dec.group, algebra
    rep = Report("covariant")
    single = rep.check("scalar_times_unitary")
    mult = rep.check("multiplicativity")
    cov = rep.check("covariance")
    ident = rep.check("identity")
    reassemble = rep.check("reassembly")
    for _ in range(trials):
        v = random_vector(dec, A, rng)
        point = FinSuppFunction(GammaDomain(G), A, [(gamma, b)], check=False)
        single.record(_vec_eq(rep_scalar(dec, b, rep_unitary(dec, gamma, v)), hecke_rep(dec, point, v)),
                      f"t(b)t(u_gamma) != t(b u_gamma) for {gamma}")
        g1, g2 = G.random_element(rng), G.random_element(rng)
        mult.record(_vec_eq(rep_unitary(dec, g1, rep_unitary(dec, g2, v)), rep_unitary(dec, g1 * g2, v)),
                    f"u({g1}) u({g2}) != u({g1 * g2})")
        c = A.random(rng)
        lhs = rep_unitary(dec, g1, rep_scalar(dec, c, v))
        rhs = rep_scalar(dec, A.act(g1, c), rep_unitary(dec, g1, v))
        cov.record(_vec_eq(lhs, rhs), f"covariance fails for {g1}")
        ident.record(_vec_eq(rep_unitary(dec, IDENTITY, v), v), "u(1) is not the identity")
        f = random_gamma_function(G, A, rng)
        direct = hecke_rep(dec, f, v)
        summed = None
        for g, x in f.items():
            term = rep_scalar(dec, x, rep_unitary(dec, g, v))
            summed = term if summed is None else tuple(p + q for p, q in zip(summed, term))
        reassemble.record(summed is None or _vec_eq(direct, summed), "t(f) != sum t(f(g)) t(u_g)")
    if isinstance(A, FiniteSetAlgebra):
        rep.check("action_table").record(A.table_is_consistent(), "action table does not compose")
    return rep


def alpha_coset_report(group: CongruenceSubgroup, a: GroupElement, algebra: CoefficientAlgebra,
                       rng: random.Random, trials: int = 100) -> Report:
    """Unitarity of alpha_coset and intertwining of the left module structures."""
    D = coset_domain(group, a)
    rep = Report("alpha_coset")
    unit = rep.check("inner_product")
    inter = rep.check("left_intertwining")
    inv = rep.check("inverse")
    for t in range(trials):
        phi = random_coset_function(D, algebra, rng)
        psi = random_coset_function(D, algebra, rng)
        unit.record(vector_inner(alpha_coset(phi), alpha_coset(psi)) == inner_product(phi, psi),
                    f"trial {t}")
        inv.record(alpha_coset_inverse(alpha_coset(phi), D) == phi, f"trial {t}")
        if t % 2 == 0:
            f = random_gamma_function(group, algebra, rng)
            inter.record(alpha_coset(convolve_left(f, psi)) == hecke_rep(D.dec, f, alpha_coset(psi)),
                         f"trial {t}")
    return rep


def alpha_tensor_report(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                        algebra: CoefficientAlgebra, rng: random.Random, trials: int = 100) -> Report:
    """Inner-product preservation and bimodule property of alpha_tensor."""
    Da, Db = coset_domain(group, a), coset_domain(group, b)
    rep = Report("alpha_tensor")
    unit = rep.check("inner_product")
    left = rep.check("left_module")
    right = rep.check("right_module")
    for t in range(trials):
        phi, phi2 = random_coset_function(Da, algebra, rng), random_coset_function(Da, algebra, rng)
        psi, psi2 = random_coset_function(Db, algebra, rng), random_coset_function(Db, algebra, rng)
        lhs = inner_product(alpha_tensor(phi, psi), alpha_tensor(phi2, psi2))
        rhs = inner_product(psi, convolve_left(inner_product(phi, phi2), psi2))
        unit.record(lhs == rhs, f"trial {t}")
        if t % 2 == 0:
            f = random_gamma_function(group, algebra, rng)
            left.record(alpha_tensor(convolve_left(f, phi), psi) == convolve_left(f, alpha_tensor(phi, psi)),
                        f"trial {t}")
            right.record(alpha_tensor(phi, convolve_right(psi, f)) == convolve_right(alpha_tensor(phi, psi), f),
                         f"trial {t}")
    return rep


def transport(witness: ProductWitness, k: int, ell: int, F: FinSuppFunction, P: ProductDomain) -> FinSuppFunction:
    """Relabel a function on the (k, l)-th copy of Gamma z_k Gamma onto the Gamma-product."""
    return FinSuppFunction(P, F.algebra, [(omega_canonical(witness, k, ell, x), b) for x, b in F.items()],
                           check=False)


def heckemod_check(group: CongruenceSubgroup, a: GroupElement, b: GroupElement,
                   algebra: CoefficientAlgebra = TRIVIAL, rng: random.Random | None = None,
                   trials: int = 4) -> Report:
    """Compare the Gamma-product module of (a, b) with the sum of m_k copies of the z_k modules.

    The spanning set consists of single points gamma^k_n z_(k,l) with basis
    coefficients.  The left-action check is sensitive to how the
    stabilizer of z_k Gamma permutes the index pairs of its bucket.
    """
    rng = rng or random.Random(0)
    A = algebra
    _, witness = shimura_product(double_coset(group, a), double_coset(group, b))
    P = ProductDomain(witness.left, witness.right)
    G = GammaDomain(group)
    rep = Report("heckemod")
    rep.check("counting").record(witness.counting_identity(), "sum m_k d_k != |I||J|")
    rep.check("bijection").record(witness.is_bijection(), "omega is not a bijection on index pairs")

    spanning = []  # (k, l, target function)
    for k, orbit in enumerate(witness.orbits):
        Dk = CosetDomain(group, orbit.coset)
        for ell in range(orbit.m):
            zkl = witness.z(k, ell)
            for g in orbit.gammas:
                for c in A.basis():
                    spanning.append((k, ell, FinSuppFunction.point(Dk, A, g * zkl, c)))

    anchor = rep.check("anchor")
    for k, ell, F in spanning:
        for x, _ in F.items():
            anchor.record(P.anchor(omega_canonical(witness, k, ell, x)) == x, f"anchor of {x}")

    images = [transport(witness, k, ell, F, P) for k, ell, F in spanning]
    inner = rep.check("inner_product")
    for s, (k, ell, F) in enumerate(spanning):
        for t, (k2, ell2, F2) in enumerate(spanning):
            lhs = inner_product(images[s], images[t])
            rhs = inner_product(F, F2) if (k, ell) == (k2, ell2) else zero_function(G, A)
            inner.record(lhs == rhs, f"<{s}, {t}>")

    right = rep.check("right_action")
    left = rep.check("left_action")
    for s, (k, ell, F) in enumerate(spanning):
        for _ in range(trials):
            f = random_gamma_function(group, A, rng)
            right.record(transport(witness, k, ell, convolve_right(F, f), P) == convolve_right(images[s], f),
                         f"copy ({k}, {ell}), element {s}")
            left.record(transport(witness, k, ell, convolve_left(f, F), P) == convolve_left(f, images[s]),
                        f"copy ({k}, {ell}), element {s}")

    dense = rep.check("dense_range")
    Da, Db = CosetDomain(group, double_coset(group, a)), CosetDomain(group, double_coset(group, b))
    for i, gi in enumerate(witness.left.reps):
        for j, hj in enumerate(witness.right.reps):
            for c in A.basis():
                phi = FinSuppFunction.point(Da, A, gi, c)
                psi = FinSuppFunction.point(Db, A, hj, A.act(gi.inverse(), A.one()))
                target = FinSuppFunction.point(P, A, ProductElement(i, j, IDENTITY), c)
                dense.record(alpha_tensor(phi, psi) == target, f"pair ({i}, {j})")

    for k, orbit in enumerate(witness.orbits):
        if orbit.m > 1:
            rep.notes.append(f"summand {k} has multiplicity {orbit.m}; its bucket is {list(orbit.pairs)}")
    return rep


__all__ = [
    "CoefficientAlgebra", "TrivialAlgebra", "FiniteSetAlgebra", "TRIVIAL", "finite_set_algebra",
    "GammaDomain", "CosetDomain", "ProductDomain", "coset_domain", "FinSuppFunction", "zero_function",
    "convolve", "convolve_left", "convolve_right", "adjoint", "inner_product", "vector_inner",
    "alpha_coset", "alpha_coset_inverse", "rep_scalar", "rep_unitary", "hecke_rep", "alpha_tensor",
    "random_gamma_function", "random_coset_function", "random_vector", "covariant_rep_check",
    "alpha_coset_report", "alpha_tensor_report", "transport", "heckemod_check",
]
