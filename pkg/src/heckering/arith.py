"""Exact 2x2 matrices over Q with positive determinant, and integer normal forms.

Scalars are :class:`fractions.Fraction`; nothing in the package touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Union

from .errors import NonIntegral

Rational = Fraction
Scalar = Union[int, Fraction, str]

# A point of P^1(Q): a Fraction, or None for the cusp at infinity.
Cusp = Optional[Fraction]


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _to_fraction(v: Scalar) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot use {type(v).__name__} as a matrix entry")


@dataclass(frozen=True, slots=True)
class GroupElement:
    """Immutable element of GL2(Q)+, stored row-major as [[a, b], [c, d]]."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _to_fraction(getattr(self, name)))
        if self.a * self.d - self.b * self.c <= 0:
            raise ValueError(f"determinant of {self} is not positive")

    # construction ---------------------------------------------------------
    @classmethod
    def diag(cls, x: Scalar, y: Scalar) -> "GroupElement":
        return cls(x, 0, 0, y)

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """Parse the "a,b;c,d" syntax; entries may be integers or "p/q"."""
        rows = [r for r in text.strip().split(";")]
        if len(rows) != 2:
            raise ValueError(f"expected two rows separated by ';' in {text!r}")
        entries = [e for r in rows for e in r.split(",")]
        if len(entries) != 4:
            raise ValueError(f"expected a 2x2 matrix in {text!r}")
        return cls(*(Fraction(e.strip()) for e in entries))

    @classmethod
    def from_json(cls, obj: dict) -> "GroupElement":
        (a, b), (c, d) = obj["m"]
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    # serialization --------------------------------------------------------
    def __str__(self) -> str:
        return f"{_fmt(self.a)},{_fmt(self.b)};{_fmt(self.c)},{_fmt(self.d)}"

    def __repr__(self) -> str:
        return f"GroupElement({self})"

    def to_json(self) -> dict:
        return {"m": [[_fmt(self.a), _fmt(self.b)], [_fmt(self.c), _fmt(self.d)]]}

    # arithmetic -----------------------------------------------------------
    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return GroupElement(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "GroupElement":
        det = self.det
        return GroupElement(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def adjugate(self) -> "GroupElement":
        """det * inverse; integral whenever self is."""
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def transpose(self) -> "GroupElement":
        return GroupElement(self.a, self.c, self.b, self.d)

    def scale(self, k: Scalar) -> "GroupElement":
        k = _to_fraction(k)
        return GroupElement(k * self.a, k * self.b, k * self.c, k * self.d)

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries())

    def int_entries(self) -> tuple[int, int, int, int]:
        if not self.is_integral():
            raise NonIntegral(f"{self} has non-integral entries")
        return tuple(x.numerator for x in self.entries())  # type: ignore[return-value]

    def denominator(self) -> int:
        """Least positive m with m * self integral."""
        return lcm(*(x.denominator for x in self.entries()))

    def act(self, z: Cusp) -> Cusp:
        """Fractional linear action on P^1(Q); None stands for infinity."""
        if z is None:
            return None if self.c == 0 else self.a / self.c
        den = self.c * z + self.d
        if den == 0:
            return None
        return (self.a * z + self.b) / den


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


IDENTITY = GroupElement(1, 0, 0, 1)
S_MATRIX = GroupElement(0, -1, 1, 0)
T_MATRIX = GroupElement(1, 1, 0, 1)


def product(elements: Iterable[GroupElement]) -> GroupElement:
    out = IDENTITY
    for x in elements:
        out = out * x
    return out


# Smith form ---------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """U * A * V == diag(d1, d2) with d1 | d2 and U, V in SL2(Z)."""

    d1: int
    d2: int
    U: GroupElement
    V: GroupElement

    @property
    def pair(self) -> tuple[int, int]:
        return (self.d1, self.d2)


def _mat_mul(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def smith_form(x: GroupElement) -> SmithForm:
    """Smith normal form of an integral matrix of positive determinant.

    Row and column reductions driven by gcd steps; the transforms are kept
    so the result doubles as a witness that ``x`` lies in
    SL2(Z) diag(d1, d2) SL2(Z).
    """
    A = [list(r) for r in _rows(x.int_entries())]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def row_op(m: list[list[int]]) -> None:
        nonlocal A, U
        A = _mat_mul(m, A)
        U = _mat_mul(m, U)

    def col_op(m: list[list[int]]) -> None:
        nonlocal A, V
        A = _mat_mul(A, m)
        V = _mat_mul(V, m)

    while True:
        # clear the first column below the pivot with a gcd step
        if A[1][0] != 0:
            if A[0][0] != 0 and A[1][0] % A[0][0] == 0:
                row_op([[1, 0], [-(A[1][0] // A[0][0]), 1]])
            else:
                g, s, t = egcd(A[0][0], A[1][0])
                p, q = A[0][0] // g, A[1][0] // g
                row_op([[s, t], [-q, p]])
        # clear the first row right of the pivot
        if A[0][1] != 0:
            if A[0][1] % A[0][0] == 0:
                col_op([[1, -(A[0][1] // A[0][0])], [0, 1]])
            else:
                g, s, t = egcd(A[0][0], A[0][1])
                p, q = A[0][0] // g, A[0][1] // g
                col_op([[s, -q], [t, p]])
            continue
        if A[1][0] != 0:
            continue
        if A[1][1] % A[0][0] != 0:
            row_op([[1, 1], [0, 1]])
            continue
        break

    # make both diagonal entries positive; det(x) > 0 forces equal signs
    if A[0][0] < 0:
        row_op([[-1, 0], [0, -1]])
    d1, d2 = A[0][0], A[1][1]
    Ug, Vg = _rows_to_elem_pm(U), _rows_to_elem_pm(V)
    return SmithForm(d1, d2, Ug, Vg)


def _rows(e: tuple[int, int, int, int]) -> list[list[int]]:
    return [[e[0], e[1]], [e[2], e[3]]]


def _rows_to_elem_pm(m: list[list[int]]) -> GroupElement:
    # transforms produced above have det +1: every step matrix is in SL2(Z)
    return GroupElement(m[0][0], m[0][1], m[1][0], m[1][1])


# Hermite form for right cosets ------------------------------------------------

def hermite_right(x: GroupElement) -> tuple[tuple[int, int, int], GroupElement]:
    """Column-Hermite form of an integral matrix.

    Returns ``((a, b, d), u)`` with ``u`` in SL2(Z) and
    ``x * u == [[a, b], [0, d]]``, where ``a, d > 0`` and ``0 <= b < a``.
    The triple is a complete invariant of the right coset x SL2(Z).
    """
    p, q, r, s = x.int_entries()
    g, e, f = egcd(r, s)
    if g == 0:
        raise ValueError("singular matrix")
    # (r, s) . [[s/g, e], [-r/g, f]] = (0, g)
    u11, u12, u21, u22 = s // g, e, -r // g, f
    a = p * u11 + q * u21
    b = p * u12 + q * u22
    d = g
    if a < 0:
        # det(x) > 0 and d > 0 imply a > 0; guard anyway
        raise ValueError("unexpected sign in Hermite reduction")
    k = -(b // a)
    b += k * a
    u12 += k * u11
    u22 += k * u21
    return (a, b, d), GroupElement(u11, u12, u21, u22)
