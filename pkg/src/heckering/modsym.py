"""Weight-2 modular symbols for Gamma0(N) with trivial coefficients.

Manin symbols are the points (c:d) of P^1(Z/N); the point of a coset
Gamma0(N) g is the bottom row of g and stands for the path g{0, oo}.  The
space is the quotient by x + xS = 0 and x + x tau + x tau^2 = 0.  A Hecke
operator Gamma a Gamma = u a_i Gamma acts on paths through the left coset
representatives adj(a_i) of Gamma a Gamma (valid when det a is prime to N),
and the image paths are rewritten as Manin symbols by continued fractions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import sympy
from sympy import ImmutableMatrix, Matrix, Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .arith import GroupElement, egcd
from .congruence import CongruenceSubgroup, P1Table, coset_action, gamma0_index, prime_factors
from .cosets import CosetDecomposition, decompose
from .errors import BadDeterminant, BadReduction, GroupMismatch
from .hecke_ring import HeckeElement, double_coset, hecke_mul
from .report import Report

Cusp = Fraction | None  # None is the cusp at infinity
X = Symbol("x")


# oracles -------------------------------------------------------------------------

def _legendre_count(N: int, D: int) -> int:
    """prod over p | N of (1 + (D/p)) for D = -1 or -3, or 0 when the square condition fails."""
    out = 1
    for p in prime_factors(N):
        if p == 2:
            s = 0 if D == -1 else -1
        elif p == 3 and D == -3:
            s = 0
        else:
            s = 1 if pow(D % p, (p - 1) // 2, p) == 1 else -1
        out *= 1 + s
    return out


def nu2(N: int) -> int:
    return 0 if N % 4 == 0 else _legendre_count(N, -1)


def nu3(N: int) -> int:
    return 0 if N % 9 == 0 else _legendre_count(N, -3)


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out = out // p * (p - 1)
    return out


def nu_inf(N: int) -> int:
    return sum(euler_phi(gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)


def genus(N: int) -> int:
    g = 1 + Fraction(gamma0_index(N), 12) - Fraction(nu2(N), 4) - Fraction(nu3(N), 3) - Fraction(nu_inf(N), 2)
    assert g.denominator == 1
    return int(g)


def expected_dimension(N: int) -> int:
    return 2 * genus(N) + nu_inf(N) - 1


def _discriminant(a1: int, a2: int, a3: int, a4: int, a6: int) -> int:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def count_points(curve: Sequence[int], p: int) -> int:
    """Number of projective points of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p."""
    a1, a2, a3, a4, a6 = curve
    n = 1
    for x in range(p):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                n += 1
    return n


def ap_oracle(curve: Sequence[int], p: int) -> int:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if _discriminant(*curve) % p == 0:
        raise BadReduction(f"bad reduction at {p}")
    return p + 1 - count_points(curve, p)


CURVES: dict[int, tuple[int, int, int, int, int]] = {11: (0, -1, 1, -10, -20)}


# Manin symbols ----------------------------------------------------------------------

class ManinBasis:
    """Quotient of Q[P^1(Z/N)] by the two- and three-term relations."""

    def __init__(self, N: int):
        self.N = N
        self.table: P1Table = coset_action(N)
        n = len(self.table)
        S = self.table.S
        tau = [self.table.index(d, -c - d) for c, d in self.table.points]

        # two-term relations: x = -xS; fixed points of S die
        sign = [0] * n
        gen_of = [-1] * n
        gens: list[int] = []
        for x in range(n):
            if gen_of[x] != -1 or sign[x] != 0:
                continue
            y = S[x]
            if y == x:
                continue
            gen_of[x], sign[x] = len(gens), 1
            gen_of[y], sign[y] = len(gens), -1
            gens.append(x)

        rows, seen = [], set()
        for x in range(n):
            if x in seen:
                continue
            orbit = [x, tau[x], tau[tau[x]]]
            seen.update(orbit)
            row = [0] * len(gens)
            for y in (orbit if tau[x] != x else [x, x, x]):
                if sign[y]:
                    row[gen_of[y]] += sign[y]
            if any(row):
                rows.append(row)
        self.relations = rows
        ng = len(gens)
        if rows:
            rref, pivots = DomainMatrix([[QQ(v) for v in r] for r in rows], (len(rows), ng), QQ).rref()
            R = rref.to_Matrix()
        else:
            pivots, R = (), Matrix.zeros(0, ng)
        free = [g for g in range(ng) if g not in pivots]
        col = {g: k for k, g in enumerate(free)}
        dim = len(free)
        gen_coords: list[tuple[Fraction, ...]] = []
        pivot_row = {p: r for r, p in enumerate(pivots)}
        for g in range(ng):
            v = [Fraction(0)] * dim
            if g in col:
                v[col[g]] = Fraction(1)
            else:
                r = pivot_row[g]
                for f in free:
                    e = R[r, f]
                    if e:
                        v[col[f]] = -Fraction(int(e.p), int(e.q))
            gen_coords.append(tuple(v))
        zero = tuple([Fraction(0)] * dim)
        self.coords: list[tuple[Fraction, ...]] = [
            tuple(sign[x] * c for c in gen_coords[gen_of[x]]) if sign[x] else zero for x in range(n)
        ]
        self.dim = dim
        self.basis_symbols: list[int] = [gens[g] for g in free]
        self.symbols = self.table.points

    # vectors are tuples of Fractions of length dim

    def zero(self) -> tuple[Fraction, ...]:
        return tuple([Fraction(0)] * self.dim)

    def symbol(self, c: int, d: int) -> tuple[Fraction, ...]:
        return self.coords[self.table.index(c, d)]

    def coordinates_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.coords for v in row)

    def unimodular_terms(self, cusp: Cusp) -> list[tuple[int, int]]:
        """Bottom rows (c, d) with {0, cusp} = sum of the Manin symbols (c:d)."""
        if cusp is None:
            return [(0, 1)]
        q = Fraction(cusp)
        a, b = q.numerator, q.denominator
        # convergents p_k / q_k for k = -2, -1, 0, ..., n
        ps, qs = [0, 1], [1, 0]
        while True:
            t = a // b
            ps.append(t * ps[-1] + ps[-2])
            qs.append(t * qs[-1] + qs[-2])
            a, b = b, a - t * b
            if b == 0:
                break
        out = []
        for k in range(-1, len(ps) - 2):
            s = -1 if (k - 1) % 2 else 1
            out.append((s * qs[k + 2], qs[k + 1]))
        return out

    def path_from_zero(self, cusp: Cusp) -> tuple[Fraction, ...]:
        total = [Fraction(0)] * self.dim
        for c, d in self.unimodular_terms(cusp):
            for k, v in enumerate(self.symbol(c, d)):
                total[k] += v
        return tuple(total)

    def path_reduce(self, alpha: Cusp, beta: Cusp) -> tuple[Fraction, ...]:
        """{alpha, beta} = {0, beta} - {0, alpha}."""
        return tuple(x - y for x, y in zip(self.path_from_zero(beta), self.path_from_zero(alpha)))

    def symbol_path(self, i: int) -> tuple[Cusp, Cusp]:
        """Endpoints (g 0, g oo) of the path of Manin symbol i."""
        g = self.table.lift(i)
        return g.act(Fraction(0)), g.act(None)

    def linear_map(self, image) -> ImmutableMatrix:
        """Matrix (columns = images of the basis symbols) of a map given on symbols."""
        cols = [image(s) for s in self.basis_symbols]
        if not cols:
            return ImmutableMatrix.zeros(0, 0)
        rows = len(cols[0])
        return ImmutableMatrix(rows, len(cols), lambda r, c: sympy.Rational(cols[c][r].numerator,
                                                                                  cols[c][r].denominator))


class CuspClassSet:
    """Gamma0(N)-classes of cusps: orbits of T on P^1(Z/N)."""

    def __init__(self, basis: ManinBasis):
        table = basis.table
        n = len(table)
        cls = [-1] * n
        reps: list[int] = []
        for x in range(n):
            if cls[x] != -1:
                continue
            y = x
            while cls[y] == -1:
                cls[y] = len(reps)
                y = table.T[y]
            reps.append(x)
        self.table = table
        self.point_class = cls
        self.rep_points = reps
        self.representatives: list[Cusp] = [table.lift(i).act(None) for i in reps]
        self.boundary = basis.linear_map(self.symbol_boundary)

    def __len__(self) -> int:
        return len(self.rep_points)

    def class_of(self, cusp: Cusp) -> int:
        if cusp is None:
            p, q = 1, 0
        else:
            p, q = cusp.numerator, cusp.denominator
        g, x, y = egcd(p, q)  # p x + q y = 1 -> matrix [[p, -y], [q, x]]
        assert g == 1
        return self.point_class[self.table.index(q, x)]

    def symbol_boundary(self, i: int) -> tuple[Fraction, ...]:
        """[g oo] - [g 0] for the symbol i = Gamma0(N) g."""
        v = [Fraction(0)] * len(self)
        v[self.point_class[i]] += 1
        v[self.point_class[self.table.S[i]]] -= 1
        return tuple(v)


@lru_cache(maxsize=64)
def build_space(N: int) -> tuple[ManinBasis, CuspClassSet]:
    basis = ManinBasis(N)
    return basis, CuspClassSet(basis)


# Hecke operators -------------------------------------------------------------------

@dataclass(frozen=True)
class HeckeMatrix:
    label: str
    matrix: ImmutableMatrix
    cuspidal: bool = False

    @property
    def is_integral(self) -> bool:
        return all(x.is_integer for x in self.matrix)

    def rows(self) -> list[list]:
        M = self.matrix
        return [[int(M[r, c]) if M[r, c].is_integer else M[r, c] for c in range(M.cols)]
                for r in range(M.rows)]

    def to_json(self) -> dict:
        return {"label": self.label, "dim": self.matrix.rows, "cuspidal": self.cuspidal,
                "matrix": [[str(x) for x in row] for row in self.rows()]}


def _check_level(dec: CosetDecomposition, basis: ManinBasis) -> None:
    G = dec.group
    if G != CongruenceSubgroup.gamma0(basis.N) and not (basis.N == 1 and G == CongruenceSubgroup.sl2z()):
        raise GroupMismatch(f"{G} does not match level {basis.N}")
    if gcd(int(dec.a.det), basis.N) != 1:
        raise BadDeterminant(f"det {dec.a.det} is not prime to {basis.N}")


def left_reps(dec: CosetDecomposition) -> list[GroupElement]:
    """adj(a_i): left coset representatives of Gamma a* Gamma = Gamma a Gamma."""
    return [r.adjugate() for r in dec.reps]


def _act(g: GroupElement, z: Cusp) -> Cusp:
    return g.act(z)


def apply_to_path(dec: CosetDecomposition, basis: ManinBasis, alpha: Cusp, beta: Cusp) -> tuple[Fraction, ...]:
    total = [Fraction(0)] * basis.dim
    for m in left_reps(dec):
        for k, v in enumerate(basis.path_reduce(_act(m, alpha), _act(m, beta))):
            total[k] += v
    return tuple(total)


def hecke_matrix(dec: CosetDecomposition, basis: ManinBasis) -> HeckeMatrix:
    _check_level(dec, basis)
    M = basis.linear_map(lambda i: apply_to_path(dec, basis, *basis.symbol_path(i)))
    return HeckeMatrix(f"[{dec.a}]", M)


def hecke_element_matrix(x: HeckeElement, basis: ManinBasis) -> ImmutableMatrix:
    M = Matrix.zeros(basis.dim, basis.dim)
    for dc, c in x.terms():
        M += c * hecke_matrix(dc.decomposition, basis).matrix
    return ImmutableMatrix(M)


def _group(N: int) -> CongruenceSubgroup:
    return CongruenceSubgroup.gamma0(N)


@lru_cache(maxsize=256)
def tp_matrix(N: int, p: int) -> ImmutableMatrix:
    """Matrix of [Gamma0(N) diag(1, p) Gamma0(N)] on the full space."""
    basis, _ = build_space(N)
    return hecke_matrix(decompose(_group(N), GroupElement.diag(1, p)), basis).matrix


def cusp_action(dec: CosetDecomposition, cusps: CuspClassSet) -> ImmutableMatrix:
    """Induced action on cusp divisors: [alpha] -> sum [adj(a_i) alpha]."""
    n = len(cusps)
    M = Matrix.zeros(n, n)
    for k, alpha in enumerate(cusps.representatives):
        for m in left_reps(dec):
            M[cusps.class_of(_act(m, alpha)), k] += 1
    return ImmutableMatrix(M)


def cuspidal_subspace(basis: ManinBasis, cusps: CuspClassSet) -> ImmutableMatrix:
    """Columns span the kernel of the boundary map."""
    if basis.dim == 0:
        return ImmutableMatrix.zeros(0, 0)
    ker = cusps.boundary.nullspace()
    if not ker:
        return ImmutableMatrix.zeros(basis.dim, 0)
    return ImmutableMatrix.hstack(*ker)


def restrict(M: ImmutableMatrix, K: ImmutableMatrix) -> ImmutableMatrix:
    """R with M K = K R, for K with independent columns spanning an M-stable space."""
    if K.cols == 0:
        return ImmutableMatrix.zeros(0, 0)
    sol = (K.T * K).inv() * K.T * M * K
    if M * K != K * sol:
        raise AssertionError("subspace is not stable")
    return ImmutableMatrix(sol)


def cuspidal_matrix(N: int, p: int) -> HeckeMatrix:
    basis, cusps = build_space(N)
    return HeckeMatrix(f"T{p}", restrict(tp_matrix(N, p), cuspidal_subspace(basis, cusps)), cuspidal=True)


@dataclass(frozen=True)
class EigenData:
    charpoly: tuple[int, ...]  # coefficients c0, c1, ..., leading last
    eigenvalues: tuple[int, ...]  # integer roots with multiplicity, ascending

    def to_json(self) -> dict:
        return {"charpoly": [str(c) for c in self.charpoly], "eigenvalues": list(self.eigenvalues)}


def eigen_data(M: ImmutableMatrix) -> EigenData:
    if M.rows == 0:
        return EigenData((1,), ())
    poly = Poly(M.charpoly(X).as_expr(), X)
    coeffs = poly.all_coeffs()[::-1]
    if not all(c.is_integer for c in coeffs):
        raise AssertionError(f"characteristic polynomial {poly} is not integral")
    roots = []
    for r, mult in sympy.roots(poly, filter="Z").items():
        roots.extend([int(r)] * mult)
    return EigenData(tuple(int(c) for c in coeffs), tuple(sorted(roots)))


# checks ----------------------------------------------------------------------------

def boundary_compatible(N: int, a: GroupElement) -> bool:
    basis, cusps = build_space(N)
    dec = decompose(_group(N), a)
    T = hecke_matrix(dec, basis).matrix
    return cusps.boundary * T == cusp_action(dec, cusps) * cusps.boundary


def eisenstein_eigenvalues(N: int, p: int) -> tuple[int, ...]:
    """Eigenvalues of T_p on the image of the boundary map."""
    basis, cusps = build_space(N)
    B = cusps.boundary
    if B.rows == 0 or B.rank() == 0:
        return ()
    img = ImmutableMatrix.hstack(*B.columnspace())
    dec = decompose(_group(N), GroupElement.diag(1, p))
    return eigen_data(restrict(cusp_action(dec, cusps), img)).eigenvalues


def pairing_adjointness_check(N: int, a: GroupElement, rng: random.Random | None = None,
                              trials: int = 20) -> Report:
    """Transpose form of Hecke adjointness on the symbol space and its dual."""
    rng = rng or random.Random(0)
    G = _group(N)
    basis, _ = build_space(N)
    if gcd(int(a.det), N) != 1:
        raise BadDeterminant(f"det {a.det} is not prime to {N}")
    rep = Report("adjointness")
    at = a.transpose()
    same = rep.check("same_double_coset")
    valid = at.c.numerator % N == 0
    same.record(valid and double_coset(G, a) == double_coset(G, at), f"{at} is not in the double coset of {a}")
    T = hecke_matrix(decompose(G, a), basis).matrix
    if valid:
        Tt = hecke_matrix(decompose(G, at), basis).matrix
        rep.check("matrix_equal").record(T == Tt, "matrices of a and its transpose differ")
    pair = rep.check("pairing")
    d = basis.dim
    for _ in range(trials):
        x = Matrix([rng.randint(-5, 5) for _ in range(d)])
        y = Matrix([rng.randint(-5, 5) for _ in range(d)])
        pair.record(((T * x).T * y)[0, 0] == (x.T * (T.T * y))[0, 0] if d else True, "pairing mismatch")
    return rep


def ring_hom_check(N: int, A: HeckeElement, B: HeckeElement) -> Report:
    basis, _ = build_space(N)
    rep = Report("ring_hom")
    MA, MB = hecke_element_matrix(A, basis), hecke_element_matrix(B, basis)
    MAB = hecke_element_matrix(hecke_mul(A, B), basis)
    rep.check("product").record(MAB == MA * MB, "matrix(A*B) != matrix(A) matrix(B)")
    rep.check("reversed").record(MAB == MB * MA, "matrix(A*B) != matrix(B) matrix(A)")
    rep.check("integral").record(all(x.is_integer for x in MAB), "non-integral matrix")
    return rep


__all__ = [
    "ManinBasis", "CuspClassSet", "HeckeMatrix", "EigenData", "build_space", "hecke_matrix",
    "hecke_element_matrix", "tp_matrix", "cusp_action", "cuspidal_subspace", "cuspidal_matrix",
    "restrict", "eigen_data", "ap_oracle", "count_points", "genus", "nu2", "nu3", "nu_inf",
    "expected_dimension", "boundary_compatible", "eisenstein_eigenvalues",
    "pairing_adjointness_check", "ring_hom_check", "CURVES",
]
