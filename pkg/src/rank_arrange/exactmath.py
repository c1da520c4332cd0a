"""Exact integer/rational helpers: polynomials, interpolation, Stirling numbers
and rational linear algebra.

Python ``int`` is the big integer type and ``fractions.Fraction`` the rational
type throughout; nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InsufficientPoints, NoSolution, NonIntegralCoefficient

Matrix = list  # list of rows of Fraction


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial in ``t`` with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def divmod_linear(self, root: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by ``t - root``; returns (quotient, remainder)."""
        if not self.coeffs:
            return IntPolynomial(()), 0
        q = [0] * (len(self.coeffs) - 1)
        acc = 0
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * root + self.coeffs[k]
            q[k - 1] = acc
        rem = acc * root + self.coeffs[0]
        return IntPolynomial(tuple(q)), rem

    def t_adic_valuation(self) -> int:
        """Largest k with t**k dividing the polynomial (0 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def shift_down(self, k: int) -> "IntPolynomial":
        """Divide by t**k, which must divide exactly."""
        if any(self.coeffs[:k]):
            raise ValueError(f"t^{k} does not divide {self}")
        return IntPolynomial(self.coeffs[k:])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def rising_factorial_poly(m: int) -> IntPolynomial:
    return IntPolynomial.from_roots(range(0, -m, -1))


@lru_cache(maxsize=None)
def _stirling_row(m: int) -> tuple[int, ...]:
    if m == 0:
        return (1,)
    prev = _stirling_row(m - 1)
    row = [0] * (m + 1)
    for k in range(1, m + 1):
        row[k] = prev[k - 1] + (m - 1) * (prev[k] if k < len(prev) else 0)
    return tuple(row)


def stirling_first_signless(m: int, k: int) -> int:
    """Coefficient of t**k in t(t+1)...(t+m-1), the empty product being 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k < 0 or k > m:
        return 0
    return _stirling_row(m)[k]


def interpolate_integer_polynomial(points: Sequence[tuple[int, int]], degree: int) -> IntPolynomial:
    """Lagrange interpolation through ``points`` with an integrality check.

    Exactly ``degree + 1`` points are used; surplus points are checked against
    the result. A non-integral coefficient usually means one of the sample
    values came from a bad prime.
    """
    pts = list(points)
    xs = [int(q) for q, _ in pts]
    if len(set(xs)) != len(xs):
        raise InsufficientPoints("interpolation nodes must be distinct")
    if len(pts) < degree + 1:
        raise InsufficientPoints(f"need {degree + 1} points, got {len(pts)}")
    use = pts[: degree + 1]
    n = len(use)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(use):
        # basis numerator prod_{j != i} (t - xj), built incrementally
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(use):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                nxt[k] -= b * xj
                nxt[k + 1] += b
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi, denom)
        for k, b in enumerate(basis):
            coeffs[k] += b * scale
    for k, c in enumerate(coeffs):
        if c.denominator != 1:
            raise NonIntegralCoefficient(f"coefficient of t^{k} is {c}")
    poly = IntPolynomial(tuple(int(c) for c in coeffs))
    for q, v in pts[degree + 1:]:
        if poly(q) != v:
            raise NonIntegralCoefficient(f"extra point ({q}, {v}) off the interpolant")
    return poly


# ---------------------------------------------------------------------------
# rational linear algebra


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = to_matrix(rows)
    if not a:
        return [], []
    ncols = len(a[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        if p != 1:
            a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def transpose(rows: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(f"{len(a[0])} columns vs vector of length {len(v)}")
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """One exact solution of ``a x = b`` (free variables set to zero)."""
    if len(a) != len(b):
        raise DimensionMismatch(f"{len(a)} rows vs rhs of length {len(b)}")
    if not a:
        return []
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug, ncols=ncols + 1)
    if piv and piv[-1] == ncols:
        raise NoSolution("inconsistent system")
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def nullspace(a: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : a x = 0}."""
    red, piv = rref(a, ncols=ncols) if a else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def project_onto_column_space(a: Sequence[Sequence], u: Sequence) -> list[Fraction]:
    """Orthogonal projection of ``u`` onto the column space of ``a``."""
    if len(a) != len(u):
        raise DimensionMismatch(f"{len(a)} rows vs vector of length {len(u)}")
    u = [Fraction(x) for x in u]
    if not a or not a[0]:
        return [Fraction(0)] * len(u)
    red, piv = rref(transpose(a))
    if not piv:
        return [Fraction(0)] * len(u)
    basis = red  # rows span the column space of a
    gram = [[dot(p, q) for q in basis] for p in basis]
    rhs = [dot(p, u) for p in basis]
    coef = solve(gram, rhs)
    out = [Fraction(0)] * len(u)
    for c, p in zip(coef, basis):
        for i, x in enumerate(p):
            out[i] += c * x
    return out


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
