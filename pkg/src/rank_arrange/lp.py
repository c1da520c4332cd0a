"""Exact linear programming for small feasibility questions.

Problems are held in dictionary (Tucker) form, ``basic = b - A . nonbasic``,
so slack columns are never stored.  The tableau stays integral through
fraction-free exchange pivots: every entry shares the positive denominator
``d`` and every division is exact.  Bland's rule picks entering and leaving
variables, so degenerate cycling cannot happen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import BudgetExceeded

# Cooperative cap on the number of LPs solved in this process (None: no cap).
_lp_limit: int | None = None
_lp_used = 0


def set_lp_limit(limit: int | None) -> None:
    global _lp_limit, _lp_used
    _lp_limit, _lp_used = limit, 0


def lp_count() -> int:
    return _lp_used


@dataclass
class LPResult:
    status: str  # "optimal" or "unbounded"
    value: Fraction | None
    x: list[Fraction] | None


def _ints(row: Sequence) -> tuple[list[int], int]:
    """Integer multiple of a rational row, and the multiplier used."""
    if all(type(v) is int for v in row):
        return list(row), 1
    fr = [Fraction(v) for v in row]
    den = lcm(*(v.denominator for v in fr)) if fr else 1
    return [v.numerator * (den // v.denominator) for v in fr], den


def _simplex(T: list[list[int]], row_var: list[int], col_var: list[int]) -> tuple[str, int]:
    """Primal simplex in place on the integer dictionary ``T``.

    Rows ``0..k-1`` are constraints, the last row is the objective written as
    ``z = T[-1][rhs] - sum T[-1][j] x_j``; the last column is the rhs.
    """
    d = 1
    nrows = len(T) - 1
    rhs = len(T[0]) - 1
    while True:
        obj = T[-1]
        enter = None
        for j in range(rhs):
            if obj[j] < 0 and (enter is None or col_var[j] < col_var[enter]):
                enter = j
        if enter is None:
            return "optimal", d
        leave = None
        for i in range(nrows):
            a = T[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            lhs = T[i][rhs] * T[leave][enter]
            cur = T[leave][rhs] * a
            if lhs < cur or (lhs == cur and row_var[i] < row_var[leave]):
                leave = i
        if leave is None:
            return "unbounded", d
        p = T[leave][enter]
        prow = T[leave]
        for i in range(len(T)):
            if i == leave:
                continue
            row = T[i]
            f = row[enter]
            if f == 0:
                if p != d:
                    new = [v * p // d for v in row]
                else:
                    new = row[:]
            else:
                new = [(v * p - f * w) // d for v, w in zip(row, prow)]
            new[enter] = -f
            T[i] = new
        prow = prow[:]
        prow[enter] = d
        T[leave] = prow
        row_var[leave], col_var[enter] = col_var[enter], row_var[leave]
        d = p


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence, free: int | None = None) -> LPResult:
    """Maximize ``c.x`` subject to ``A x <= b`` with ``b >= 0``.

    The first ``free`` variables (default: all) are unrestricted in sign and
    are split into positive and negative parts; the rest are nonnegative.
    ``b >= 0`` makes the origin feasible, so no phase one is needed.
    """
    global _lp_used
    _lp_used += 1
    if _lp_limit is not None and _lp_used > _lp_limit:
        raise BudgetExceeded(f"more than {_lp_limit} linear programs")
    n = len(c)
    free = n if free is None else free
    T = []
    for row, rhs in zip(A, b):
        ints, _ = _ints(list(row) + [rhs])
        if ints[-1] < 0:
            raise ValueError("maximize() needs a nonnegative right-hand side")
        T.append(ints[:n] + [-v for v in ints[:free]] + [ints[-1]])
    cint, cden = _ints(list(c))
    T.append([-v for v in cint] + cint[:free] + [0])
    ncols = n + free
    col_var = list(range(ncols))
    row_var = list(range(ncols, ncols + len(A)))
    status, d = _simplex(T, row_var, col_var)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    vals = [Fraction(0)] * ncols
    for i, v in enumerate(row_var):
        if v < ncols:
            vals[v] = Fraction(T[i][-1], d)
    x = [vals[j] - (vals[n + j] if j < free else 0) for j in range(n)]
    return LPResult("optimal", Fraction(T[-1][-1], d * cden), x)


def strictly_feasible(strict: Sequence[tuple[Sequence, object]],
                      equalities: Sequence[tuple[Sequence, object]] = (),
                      dim: int | None = None) -> list[Fraction] | None:
    """Return a point with ``a.x < b`` for every strict pair and ``a.x = b``
    for every equality pair, or None when no such point exists.

    The system is homogenized with a scale ``t > 0`` and a common margin
    ``s``; maximizing ``s`` (capped at 1) decides feasibility and the optimal
    vertex, divided by ``t``, is a witness with a large margin.
    """
    if dim is None:
        rows = list(strict) + list(equalities)
        if not rows:
            raise ValueError("dimension needed for an empty system")
        dim = len(rows[0][0])
    # variables: x (dim, free), t >= 0, s >= 0
    A, b = [], []
    for a, rhs in strict:
        A.append(list(a) + [-rhs, 1])
        b.append(0)
    for a, rhs in equalities:
        A.append(list(a) + [-rhs, 0])
        b.append(0)
        A.append([-v for v in a] + [rhs, 0])
        b.append(0)
    A.append([0] * dim + [-1, 1])
    b.append(0)
    A.append([0] * dim + [0, 1])
    b.append(1)
    c = [0] * dim + [0, 1]
    res = maximize(c, A, b, free=dim)
    if res.status != "optimal" or res.value <= 0:
        return None
    t = res.x[dim]
    return [v / t for v in res.x[:dim]]


def cone_is_trivial(rows: Sequence[Sequence], dim: int) -> bool:
    """True iff ``{d : rows . d <= 0}`` is just the origin."""
    for k in range(dim):
        for sgn in (1, -1):
            c = [0] * dim
            c[k] = sgn
            A = [list(r) for r in rows] + [c]
            b = [0] * len(rows) + [1]
            res = maximize(c, A, b)
            if res.status != "optimal" or res.value > 0:
                return False
    return True
