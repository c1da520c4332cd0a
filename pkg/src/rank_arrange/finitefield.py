"""Characteristic polynomials by counting complement points over F_q.

Subsets of F_q are Python ints used as bitsets (bit ``v`` set <=> ``v`` in
the set), so translating a set by ``r`` is a rotation of the bitset.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path

import numpy as np

from . import arrangement as arr
from .errors import BadPrime, BudgetExceeded, ConsistencyFailure, NonIntegralCoefficient
from .exactmath import IntPolynomial, interpolate_integer_polynomial

FAMILIES = ("braid", "mid", "allsubset0", "allsubset0_union_braid0")
DEFAULT_POINT_BUDGET = 10**9


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_above(lo: int):
    """Odd primes strictly greater than ``lo``, in increasing order."""
    n = max(lo + 1, 3)
    while True:
        if n % 2 and is_prime(n):
            yield n
        n += 1


def family_arrangement(family: str, m: int) -> arr.Arrangement:
    if family == "braid":
        return arr.braid(m)
    if family == "mid":
        return arr.mid_hyperplane(m)
    if family == "allsubset0":
        return arr.all_subset_restricted(m)
    if family == "allsubset0_union_braid0":
        return arr.union(arr.all_subset_restricted(m), arr.braid_restricted(m))
    raise ValueError(f"unknown family {family!r}")


def ambient_dim(family: str, m: int) -> int:
    return m if family in ("braid", "mid") else m - 1


# ---------------------------------------------------------------------------
# generic counter


def count_complement_generic(a: arr.Arrangement, q: int, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """Points of F_q^dim on no hyperplane of ``a`` (equations reduced mod q)."""
    if not is_prime(q):
        raise BadPrime(f"{q} is not prime")
    d = a.dim
    if q ** d > budget:
        raise BudgetExceeded(f"{q}^{d} points exceed the budget of {budget}")
    normals = np.array([[c % q for c in h.normal] for h in a.hyperplanes], dtype=np.int64).reshape(len(a), d)
    if len(a) and (normals == 0).all(axis=1).any():
        raise BadPrime(f"a hyperplane normal vanishes mod {q}")
    offsets = np.array([h.offset % q for h in a.hyperplanes], dtype=np.int64)
    if d == 0:
        return 1 if len(a) == 0 else 0
    inner = 1
    while inner < d and q ** (inner + 1) <= 2_000_000:
        inner += 1
    grid = np.array(list(itertools.product(range(q), repeat=inner)), dtype=np.int64)
    base = grid @ normals[:, d - inner:].T  # points x hyperplanes
    total = 0
    for outer in itertools.product(range(q), repeat=d - inner):
        shift = normals[:, : d - inner] @ np.array(outer, dtype=np.int64) if outer else 0
        vals = (base + shift - offsets) % q
        total += int(np.count_nonzero((vals != 0).all(axis=1)))
    return total


# ---------------------------------------------------------------------------
# specialized counters


def _rot(s: int, r: int, q: int, full: int) -> int:
    """The set s + r (mod q)."""
    r %= q
    if r == 0:
        return s
    return ((s << r) | (s >> (q - r))) & full


def _neg(s: int, q: int) -> int:
    """The set -s (mod q)."""
    out = s & 1
    v = s >> 1
    k = 1
    while v:
        if v & 1:
            out |= 1 << (q - k)
        v >>= 1
        k += 1
    return out


def _mid_stratum(m: int, q: int, x3: int) -> int:
    """Increasing tuples 1 < x3 < x4 < ... < x_m with x1=0, x2=1 fixed.

    D is the set of used values, P the set of pairwise sums.  A new value x
    is forbidden if it is in D or if x + x_j hits an old pair sum for some
    used x_j.  The last coordinate is counted by a popcount.
    """
    full = (1 << q) - 1
    used = [0, 1]
    D = 0b11
    P = 1 << 1

    def forbidden(D, P, used):
        F = D
        for v in used:
            F |= _rot(P, -v, q, full)
        return F

    def extend(D, P, used, x):
        return D | (1 << x), P | _rot(D, x, q, full), used + [x]

    F = forbidden(D, P, used)
    if (F >> x3) & 1:
        return 0
    D, P, used = extend(D, P, used, x3)

    def rec(D, P, used, last, remaining):
        F = forbidden(D, P, used)
        allowed = (~F & full) >> (last + 1)
        if remaining == 1:
            return allowed.bit_count()
        total = 0
        x = last
        while allowed:
            low = allowed & -allowed
            step = low.bit_length()
            x += step
            allowed >>= step
            total += rec(*extend(D, P, used, x), x, remaining - 1)
        return total

    remaining = m - 3
    if remaining == 0:
        return 1
    return rec(D, P, used, x3, remaining)


def _map(fn, args, workers: int):
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def count_mid_complement(m: int, q: int, workers: int = 1) -> int:
    """Complement points of the mid-hyperplane arrangement in F_q^m.

    The arrangement is invariant under x -> a x + b, which acts freely on the
    complement, so the count is q(q-1) times the number of points with
    x1 = 0, x2 = 1.  The remaining m-2 coordinates are pairwise distinct and
    interchangeable, so only increasing tuples are searched and the result is
    multiplied by (m-2)!.  Work is split by the value of x3.
    """
    if q == 2 or q <= m or not is_prime(q):
        raise BadPrime(f"mid-hyperplane counting needs an odd prime q > m, got q={q}")
    if m < 3:
        raise ValueError("m must be at least 3")
    args = [(m, q, x3) for x3 in range(2, q)]
    parts = _map(_mid_stratum, args, workers)
    normalized = factorial(m - 2) * sum(parts)
    return q * (q - 1) * normalized


def _h0_search(m: int, q: int, prefix: tuple[int, ...], with_braid: bool) -> int:
    """Tuples (x_1, ..., x_{m-1}) starting with ``prefix`` whose nonempty
    subset sums are all nonzero in F_q.

    S holds the nonempty subset sums reached so far.  With ``with_braid`` the
    coordinates must also be distinct and differ from x_m = -(sum of all).
    """
    full = (1 << q) - 1
    k = m - 1  # free coordinates in H_0
    inv2 = pow(2, -1, q) if q % 2 else None

    def ok_new(S, vals, x):
        if x == 0 or (_rot(S, x, q, full) & 1):
            return False
        return not (with_braid and x in vals)

    def step(S, vals, T, x):
        return S | (1 << x) | _rot(S, x, q, full), vals + [x], (T + x) % q

    def last_level(S, vals, T):
        F = 1 | _neg(S, q)
        if not with_braid:
            return q - F.bit_count()
        for v in vals:
            F |= 1 << v
            F |= 1 << ((-v - T) % q)  # keeps x_v away from x_m
        if inv2 is not None:
            F |= 1 << ((-T * inv2) % q)  # last coordinate vs x_m
        elif T == 0:
            return 0
        return q - F.bit_count()

    def rec(S, vals, T):
        if len(vals) == k - 1:
            return last_level(S, vals, T)
        total = 0
        for x in range(1, q):
            if ok_new(S, vals, x):
                total += rec(*step(S, vals, T, x))
        return total

    S, vals, T = 0, [], 0
    for x in prefix:
        x %= q
        if not ok_new(S, vals, x):
            return 0
        S, vals, T = step(S, vals, T, x)
    return rec(S, vals, T)


def count_allsubset_complement(m: int, q: int, workers: int = 1, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """Points x of F_q^m with sum 0 and no proper nonempty subset summing to 0.

    Eliminating x_m, this is the number of (m-1)-tuples all of whose nonempty
    subset sums are nonzero.  Scaling by F_q^* acts freely, so x1 = 1 is
    fixed and the count multiplied by q-1; the last coordinate is counted by
    a popcount over the forbidden set {0} u (-S).
    """
    return _count_h0(m, q, False, workers, budget)


def count_union_braid_complement(m: int, q: int, workers: int = 1, budget: int = DEFAULT_POINT_BUDGET) -> int:
    """As :func:`count_allsubset_complement`, also avoiding x_i = x_j."""
    return _count_h0(m, q, True, workers, budget)


def _count_h0(m, q, with_braid, workers, budget):
    if not is_prime(q):
        raise BadPrime(f"{q} is not prime")
    if m < 3:
        raise ValueError("m must be at least 3")
    if q ** max(m - 3, 0) > budget:
        raise BudgetExceeded(f"{q}^{m - 3} search nodes exceed the budget of {budget}")
    if m == 3:
        args = [(m, q, (1,), with_braid)]
    else:
        args = [(m, q, (1, x2), with_braid) for x2 in range(1, q)]
    return (q - 1) * sum(_map(_h0_search, args, workers))


def count_braid_complement(m: int, q: int) -> int:
    """Tuples of m distinct values in F_q."""
    out = 1
    for k in range(m):
        out *= q - k
    return max(out, 0)


def count_family(family: str, m: int, q: int, workers: int = 1, budget: int = DEFAULT_POINT_BUDGET) -> int:
    if family == "braid":
        return count_braid_complement(m, q)
    if family == "mid":
        return count_mid_complement(m, q, workers)
    if family == "allsubset0":
        return count_allsubset_complement(m, q, workers, budget)
    if family == "allsubset0_union_braid0":
        return count_union_braid_complement(m, q, workers, budget)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# cache and interpolation


@dataclass(frozen=True)
class PointCountRecord:
    family: str
    m: int
    q: int
    count: int

    def line(self) -> str:
        return f"{self.family}\t{self.m}\t{self.q}\t{self.count}\n"


class CountsCache:
    """Append-only ``counts.tsv`` with lines ``family<TAB>m<TAB>q<TAB>count``."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self.records: dict[tuple[str, int, int], int] = {}
        if self.path and self.path.exists():
            for raw in self.path.read_text().splitlines():
                if not raw.strip() or raw.startswith("#"):
                    continue
                fam, m, q, c = raw.split("\t")
                self.records[(fam, int(m), int(q))] = int(c)

    def get(self, family: str, m: int, q: int) -> int | None:
        return self.records.get((family, m, q))

    def put(self, rec: PointCountRecord) -> None:
        key = (rec.family, rec.m, rec.q)
        if key in self.records:
            if self.records[key] != rec.count:
                raise ConsistencyFailure(f"cached count for {key} disagrees: {self.records[key]} vs {rec.count}")
            return
        self.records[key] = rec.count
        if self.path:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(rec.line())


@dataclass
class CharPolyResult:
    family: str
    m: int
    poly: IntPolynomial
    primes_used: list[int]
    consistency_verified: bool
    records: list[PointCountRecord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "coefficients": [str(c) for c in self.poly.coeffs],
            "primes_used": self.primes_used,
            "verified": self.consistency_verified,
        }


# Defaults above which the count needs extended mode.
DEFAULT_MAX_M = {"braid": 12, "mid": 8, "allsubset0": 6, "allsubset0_union_braid0": 6}


def charpoly(family: str, m: int, *, extra_checks: int = 1, max_slides: int = 8,
             cache: CountsCache | None = None, workers: int = 1, extended: bool = False,
             prime_floor: int | None = None, budget: int = DEFAULT_POINT_BUDGET) -> CharPolyResult:
    """Interpolate chi(family_m, t) from point counts at odd primes q > m(m-1)/2.

    The first deg+1 primes of a window are interpolated and the next
    ``extra_checks`` primes must reproduce their counts.  On a non-integral
    coefficient or a mismatch, the window slides up by one prime.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if m > DEFAULT_MAX_M[family] and not extended:
        raise BudgetExceeded(f"{family} with m={m} needs extended mode")
    deg = ambient_dim(family, m)
    floor = m * (m - 1) // 2 if prime_floor is None else prime_floor
    gen = primes_above(floor)
    primes = [next(gen) for _ in range(deg + 1 + extra_checks)]
    cache = cache or CountsCache()

    def count(q):
        c = cache.get(family, m, q)
        if c is None:
            c = count_family(family, m, q, workers, budget)
            cache.put(PointCountRecord(family, m, q, c))
        return c

    last_err = None
    for _ in range(max_slides + 1):
        pts = [(q, count(q)) for q in primes]
        try:
            poly = interpolate_integer_polynomial(pts[: deg + 1], deg)
        except NonIntegralCoefficient as exc:
            last_err = exc
        else:
            extra = pts[deg + 1:]
            if all(poly(q) == c for q, c in extra) and poly.leading == 1 and poly.degree == deg:
                recs = [PointCountRecord(family, m, q, c) for q, c in pts]
                return CharPolyResult(family, m, poly, list(primes), bool(extra), recs)
            last_err = ConsistencyFailure(f"held-out primes disagree with interpolant for {family} m={m}")
        primes = primes[1:] + [next(gen)]
    raise last_err
