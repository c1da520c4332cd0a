"""Closed-form bounds for r0(m) and the comparison sequences a(m), f(m).

Everything is exact.  The upper bound involves e, so it is carried as an
interval of rationals built from a certified enclosure of e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .reference import load_reference

E_TERMS = 40


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def floor(self) -> int:
        """Floor of the enclosed value; refuses when the interval straddles an integer."""
        a, b = self.lo.__floor__(), self.hi.__floor__()
        if a != b:
            raise ArithmeticError("interval straddles an integer; floor is ambiguous")
        return b


@lru_cache(maxsize=None)
def e_enclosure(terms: int = E_TERMS) -> Interval:
    # sum_{k<=N} 1/k! < e < that + 1/(N! N)
    s = Fraction(0)
    f = 1
    for k in range(terms + 1):
        if k:
            f *= k
        s += Fraction(1, f)
    return Interval(s, s + Fraction(1, f * terms))


def lower_ell(m: int) -> Fraction:
    if m < 4:
        raise ValueError("m must be at least 4")
    return 2 * Fraction(3, 4) ** (m - 4) * factorial(m - 3) ** 2


def _u_at(m: int, e: Fraction) -> Fraction:
    return Fraction(2, factorial(m)) * (e * m * (m - 1) ** 2 / 8) ** (m - 2)


def upper_u(m: int) -> Interval:
    """Enclosure of 2/m! (e m (m-1)^2 / 8)^(m-2); monotone in e, so the ends map to the ends."""
    if m < 4:
        raise ValueError("m must be at least 4")
    e = e_enclosure()
    return Interval(_u_at(m, e.lo), _u_at(m, e.hi))


def a_seq(m: int) -> int:
    if m < 4:
        raise ValueError("m must be at least 4")
    num = (m - 2) * ((m - 2) ** (m - 3) - 1) * factorial(m - 4)
    q, r = divmod(num, m - 3)
    assert r == 0, f"a({m}) is not integral"
    return q


def f_seq(m: int) -> int:
    if m < 3:
        raise ValueError("m must be at least 3")
    num = factorial(m * (m - 1) // 2) * prod(factorial(i) for i in range(1, m - 1))
    den = prod(factorial(2 * i - 1) for i in range(1, m))
    q, r = divmod(num, den)
    assert r == 0, f"f({m}) is not integral"
    return q


# display helpers --------------------------------------------------------

def group_digits(n: int) -> str:
    return f"{n:,}"


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _sig3(n: int) -> str:
    """Render an integer that has at most three significant digits as 'd.dde<k>'."""
    k = len(str(n)) - 1
    mant = str(n)[:3].ljust(3, "0")
    return f"{mant[0]}.{mant[1:]}e{k}"


def _scale_exponent(x: Fraction) -> int:
    # keep three significant figures
    digits = len(str(int(x)))
    return max(digits - 3, 0)


def ell_display(m: int) -> str:
    ell = lower_ell(m)
    if m <= 9:
        return group_digits(_ceil(ell))
    k = 4
    return _sig3(_ceil(ell / 10**k) * 10**k)


def u_display(m: int) -> str:
    u = upper_u(m)
    if m <= 6:
        return group_digits(u.floor())
    k = _scale_exponent(u.hi)
    scaled = Interval(u.lo / 10**k, u.hi / 10**k)
    return _sig3(scaled.floor() * 10**k)


@dataclass(frozen=True)
class BoundsRow:
    m: int
    r0: int | None
    r0_source: str
    a: int
    ell: Fraction
    ell_ceil: int
    u: Interval
    u_floor: int
    f: int

    def display(self) -> dict[str, str]:
        return {
            "m": str(self.m),
            "r0": group_digits(self.r0) if self.r0 is not None else "",
            "a": group_digits(self.a),
            "ell": ell_display(self.m),
            "u": u_display(self.m),
            "f": group_digits(self.f),
        }

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r0": None if self.r0 is None else str(self.r0),
            "r0_source": self.r0_source,
            "a": str(self.a),
            "ell": f"{self.ell.numerator}/{self.ell.denominator}",
            "ell_ceil": str(self.ell_ceil),
            "u_lo": f"{self.u.lo.numerator}/{self.u.lo.denominator}",
            "u_hi": f"{self.u.hi.numerator}/{self.u.hi.denominator}",
            "u_floor": str(self.u_floor),
            "f": str(self.f),
            "display": self.display(),
        }


def bounds_row(m: int, r0: int | None = None, r0_source: str = "reference") -> BoundsRow:
    if r0 is None:
        r0 = load_reference().r0.get(m)
        if r0 is None:
            r0_source = "unknown"
    ell = lower_ell(m)
    u = upper_u(m)
    return BoundsRow(m, r0, r0_source, a_seq(m), ell, _ceil(ell), u, u.floor(), f_seq(m))


def bounds_table(m_max: int = 10, m_min: int = 4) -> list[BoundsRow]:
    if m_max > 10:
        raise ValueError("r0 is only tabulated up to m = 10")
    return [bounds_row(m) for m in range(m_min, m_max + 1)]


def order_relations(row: BoundsRow) -> dict[str, bool]:
    """The inequalities the table is supposed to exhibit, evaluated exactly."""
    out = {"f_vs_u": None}
    if row.r0 is not None:
        out["ell<=r0"] = row.ell <= row.r0
        out["r0<u"] = row.r0 < row.u.lo
        out["r0<=f"] = row.r0 <= row.f
        out["r0=a"] = row.r0 == row.a
        out["r0>a"] = row.r0 > row.a
    out["f_vs_u"] = "f<u" if row.f < row.u.lo else ("f>u" if row.f > row.u.hi else "undecided")
    return out


# asymptotics ------------------------------------------------------------

def _mul(a: Interval, b: Interval) -> Interval:
    # both positive here
    return Interval(a.lo * b.lo, a.hi * b.hi)


def _pow(a: Interval, k: int) -> Interval:
    return Interval(a.lo**k, a.hi**k)


def asymptotic_check(m: int, which: str, tol: Fraction = Fraction(1, 20)) -> bool:
    """Is x(m)^(1/m) / m^2 within a relative `tol` of its limit?

    `which` is "u" (limit e^2/8) or "ell" (limit 3/(4 e^2)).  The test is
    done by raising both sides to the m-th power, so no roots are taken.
    Raises ArithmeticError if the enclosures cannot decide.
    """
    e = e_enclosure()
    if which == "u":
        x = upper_u(m)
        target = Interval(e.lo**2 / 8, e.hi**2 / 8)
    elif which == "ell":
        v = lower_ell(m)
        x = Interval(v, v)
        target = Interval(Fraction(3, 4) / e.hi**2, Fraction(3, 4) / e.lo**2)
    else:
        raise ValueError(f"unknown sequence {which!r}")
    m2 = Fraction(m * m)
    low_edge = _pow(Interval((1 - tol) * target.lo * m2, (1 - tol) * target.hi * m2), m)
    high_edge = _pow(Interval((1 + tol) * target.lo * m2, (1 + tol) * target.hi * m2), m)
    if x.lo >= low_edge.hi and x.hi <= high_edge.lo:
        return True
    if x.hi < low_edge.lo or x.lo > high_edge.hi:
        return False
    raise ArithmeticError("enclosure too coarse to decide")


def asymptotic_ratio(m: int, which: str) -> float:
    """Floating-point value of x(m)^(1/m) / (m^2 * limit), for reporting only."""
    import math

    if which == "u":
        lx = math.log(2) - math.lgamma(m + 1) + (m - 2) * (1 + math.log(m * (m - 1) ** 2 / 8))
        lim = math.e**2 / 8
    else:
        lx = math.log(2) + (m - 4) * math.log(0.75) + 2 * math.lgamma(m - 2)
        lim = 3 / (4 * math.e**2)
    return math.exp(lx / m) / m**2 / lim
